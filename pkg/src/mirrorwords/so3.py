"""SO(3) as words of reflections in lines through the origin.

A reflection in a line is the half-turn about it (det +1, unlike plane
reflections), so words of any length stay inside SO(3). Three relations
rewrite words: involution, pencil (coplanar quadruples) and the polar
frame relation R_c . R_b . R_a = id for pairwise orthogonal lines. The
quaternion product is the independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .moves import INVOLUTION, PENCIL, POLAR_SPLIT, Move, apply_move, replay
from .numerics import (
    EPS_COINCIDE,
    EPS_VERIFY,
    IdentityInput,
    NotOrthogonal,
    canonical_unit,
    cross3,
    dot3,
    norm3,
    rotate_about,
    signed_angle_about,
    wrap_angle,
)

_PROBES = (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))


class Axis:
    """A line through the origin, stored as a canonical-sign unit direction."""

    __slots__ = ("direction",)

    def __init__(self, direction):
        d = canonical_unit(direction)
        d.flags.writeable = False
        self.direction = d

    def __eq__(self, other):
        if not isinstance(other, Axis):
            return NotImplemented
        return bool(np.array_equal(self.direction, other.direction))

    def __hash__(self):
        return hash(self.direction.tobytes())

    def __repr__(self):
        return f"Axis({self.direction.tolist()!r})"


def coincident(a: Axis, b: Axis, eps: float = EPS_COINCIDE) -> bool:
    c = cross3(a.direction, b.direction)
    return norm3(c) <= eps


def same_mirror(a: Axis, b: Axis) -> bool:
    return coincident(a, b)


@dataclass(frozen=True, eq=False)
class Rotation:
    """Axis-angle rotation; axis has canonical sign, angle lies in (-pi, pi].

    The identity is the canonical pair (axis (0,0,1), angle 0).
    """

    axis: np.ndarray
    angle: float

    @property
    def is_identity(self) -> bool:
        return self.angle == 0.0


IDENTITY_ROTATION = Rotation(np.array([0.0, 0.0, 1.0]), 0.0)


def rotation(axis, angle: float) -> Rotation:
    """Canonicalize an axis-angle pair; (axis, angle) ~ (-axis, -angle)."""
    a = wrap_angle(angle)
    if abs(a) <= EPS_COINCIDE:
        return IDENTITY_ROTATION
    u = canonical_unit(axis)
    if dot3(u, axis) < 0.0:
        a = wrap_angle(-a)
    return Rotation(u, a)


def rotation_matrix(r: Rotation) -> np.ndarray:
    c = math.cos(r.angle)
    s = math.sin(r.angle)
    k = r.axis
    K = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return c * np.eye(3) + s * K + (1.0 - c) * np.outer(k, k)


def line_reflection_matrix(a: Axis) -> np.ndarray:
    """Half-turn about the line: 2dd^T - I, det +1, squares to I."""
    d = a.direction
    return 2.0 * np.outer(d, d) - np.eye(3)


def word_to_matrix(word) -> np.ndarray:
    k = len(word)
    dirs = np.empty((k, 3))
    for i, a in enumerate(word):
        dirs[i] = a.direction
    return kernels.line_word_matrix(dirs)


@dataclass(frozen=True)
class Quaternion:
    w: float
    x: float
    y: float
    z: float

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)


IDENTITY_QUATERNION = Quaternion(1.0, 0.0, 0.0, 0.0)


def word_to_quaternion(word) -> Quaternion:
    k = len(word)
    dirs = np.empty((k, 3))
    for i, a in enumerate(word):
        dirs[i] = a.direction
    q = kernels.line_word_quaternion(dirs)
    return Quaternion(q[0], q[1], q[2], q[3])


def rotation_to_quaternion(r: Rotation) -> Quaternion:
    h = r.angle / 2.0
    s = math.sin(h)
    return Quaternion(math.cos(h), s * r.axis[0], s * r.axis[1], s * r.axis[2])


def quaternion_to_rotation(q: Quaternion) -> Rotation:
    n = q.norm()
    w, x, y, z = q.w / n, q.x / n, q.y / n, q.z / n
    if w < 0.0:
        w, x, y, z = -w, -x, -y, -z
    s = math.sqrt(x * x + y * y + z * z)
    angle = 2.0 * math.atan2(s, w)
    if s <= EPS_COINCIDE or abs(angle) <= EPS_COINCIDE:
        return IDENTITY_ROTATION
    return rotation((x / s, y / s, z / s), angle)


def quaternion_from_matrix(M) -> Quaternion:
    """Unit quaternion of a rotation matrix (largest-pivot extraction)."""
    m00, m01, m02 = M[0]
    m10, m11, m12 = M[1]
    m20, m21, m22 = M[2]
    tr = m00 + m11 + m22
    if tr > max(m00, m11, m22):
        s = math.sqrt(tr + 1.0) * 2.0
        q = (0.25 * s, (m21 - m12) / s, (m02 - m20) / s, (m10 - m01) / s)
    elif m00 >= m11 and m00 >= m22:
        s = math.sqrt(1.0 + m00 - m11 - m22) * 2.0
        q = ((m21 - m12) / s, 0.25 * s, (m01 + m10) / s, (m02 + m20) / s)
    elif m11 >= m22:
        s = math.sqrt(1.0 + m11 - m00 - m22) * 2.0
        q = ((m02 - m20) / s, (m01 + m10) / s, 0.25 * s, (m12 + m21) / s)
    else:
        s = math.sqrt(1.0 + m22 - m00 - m11) * 2.0
        q = ((m10 - m01) / s, (m02 + m20) / s, (m12 + m21) / s, 0.25 * s)
    qq = Quaternion(*q)
    n = qq.norm()
    return Quaternion(qq.w / n, qq.x / n, qq.y / n, qq.z / n)


def rotation_from_matrix(M) -> Rotation:
    return quaternion_to_rotation(quaternion_from_matrix(M))


def quaternion_distance(a: Quaternion, b: Quaternion) -> float:
    """Rotation angle separating two unit quaternions (sign-insensitive)."""
    r = a * b.conjugate()
    s = math.sqrt(r.x * r.x + r.y * r.y + r.z * r.z)
    return 2.0 * math.atan2(s, abs(r.w))


def rotation_matrix_distance(A, B) -> float:
    """Rotation angle of A @ B^T, accurate near zero."""
    R = np.asarray(A) @ np.asarray(B).T
    wx = (R[2, 1] - R[1, 2]) / 2.0
    wy = (R[0, 2] - R[2, 0]) / 2.0
    wz = (R[1, 0] - R[0, 1]) / 2.0
    s = math.sqrt(wx * wx + wy * wy + wz * wz)
    c = (R[0, 0] + R[1, 1] + R[2, 2] - 1.0) / 2.0
    return abs(math.atan2(s, c))


def compose_line_reflections(a: Axis, b: Axis) -> Rotation:
    """R_b . R_a: rotation about the common perpendicular by twice the angle."""
    c = cross3(a.direction, b.direction)
    s = norm3(c)
    if s <= EPS_COINCIDE:
        return IDENTITY_ROTATION
    theta = math.atan2(s, dot3(a.direction, b.direction))
    return rotation(c / s, 2.0 * theta)


def probe_perpendicular(axis) -> np.ndarray:
    """Deterministic unit vector perpendicular to axis (probe-projection rule)."""
    for p in _PROBES:
        w = p - dot3(p, axis) * axis
        n = norm3(w)
        if n > EPS_COINCIDE:
            return canonical_unit(w)
    raise IdentityInput("axis projection failed for every probe")  # pragma: no cover


def rotation_to_line_pair(r: Rotation) -> tuple[Axis, Axis]:
    """Two lines perpendicular to the axis, half the angle apart, composing to r."""
    if r.is_identity:
        raise IdentityInput("the identity is the empty word, not a line pair")
    first = probe_perpendicular(r.axis)
    second = rotate_about(first, r.axis, r.angle / 2.0)
    return Axis(first), Axis(second)


def split_reflection(k: Axis, plane_normal) -> tuple[Axis, Axis]:
    """Write R_k = R_c . R_b with b inside the given plane through the origin.

    b is the line of the plane perpendicular to k; when the plane is k's
    orthogonal complement every line of it qualifies and the probe rule
    picks one. c completes (k, b) to an orthogonal triple.
    """
    n = canonical_unit(plane_normal)
    d = k.direction
    c = cross3(n, d)
    if norm3(c) > EPS_COINCIDE:
        b_dir = canonical_unit(c)
    else:
        b_dir = probe_perpendicular(d)
    c_dir = canonical_unit(cross3(d, b_dir))
    return Axis(b_dir), Axis(c_dir)


def _pencil_transport(a: Axis, b: Axis, a2: Axis) -> Axis:
    """b2 with R_b . R_a = R_b2 . R_a2 inside the common plane of a, b, a2."""
    u = cross3(a.direction, b.direction)
    s = norm3(u)
    if s <= EPS_COINCIDE:
        return a2
    u = u / s
    phi = signed_angle_about(a.direction, b.direction, u)
    return Axis(rotate_about(a2.direction, u, phi))


def _emit(w: list, sink: list, move: Move) -> None:
    sink.append(move)
    w[:] = apply_move(w, move, same_mirror)


def _reduce_leading_three(w: list, sink: list) -> None:
    """Rewrite the leading three lines of w down to two, recording moves.

    Splits the first line into an orthogonal pair whose second member lies
    in the plane of the other two, then collapses the coplanar triple by a
    pencil move and an involution.
    """
    for i in (0, 1):
        if coincident(w[i], w[i + 1]):
            _emit(w, sink, Move(INVOLUTION, i))
            return

    k, l, m = w[0], w[1], w[2]
    plane_normal = canonical_unit(cross3(l.direction, m.direction))
    b, c = split_reflection(k, plane_normal)
    # R_k = R_c . R_b = R_b . R_c (orthogonal pair), insert as [c, b]
    # so the coplanar triple (b, l, m) sits adjacently
    _emit(w, sink, Move(POLAR_SPLIT, 0, (c, b)))
    # rotate the pair (l, m), now at positions 2 and 3, so l lands on b
    phi = signed_angle_about(w[2].direction, b.direction, plane_normal)
    m2_new = Axis(rotate_about(w[3].direction, plane_normal, phi))
    _emit(w, sink, Move(PENCIL, 2, (b, m2_new)))
    _emit(w, sink, Move(INVOLUTION, 1))
    if len(w) >= 2 and coincident(w[0], w[1]):
        _emit(w, sink, Move(INVOLUTION, 0))


def _strip(w: list, sink: list) -> None:
    i = 0
    while i < len(w) - 1:
        if coincident(w[i], w[i + 1]):
            _emit(w, sink, Move(INVOLUTION, i))
            i = max(i - 1, 0)
        else:
            i += 1


def reduce_three(k: Axis, l: Axis, m: Axis, trace: list | None = None) -> list:
    """Reduce a three-line word to at most two lines, oracle-equal."""
    w = [k, l, m]
    sink = []
    _reduce_leading_three(w, sink)
    _strip(w, sink)
    if trace is not None:
        trace.extend(sink)
    return w


def normalize_word(word, trace: list | None = None) -> list:
    """Rewrite a word of line reflections to length at most 2 (0 for identity)."""
    w = list(word)
    sink = [] if trace is None else trace
    _strip(w, sink)
    while len(w) > 2:
        _reduce_leading_three(w, sink)
        _strip(w, sink)
    return w


def word_to_rotation(word) -> Rotation:
    """Rotation of a word via normalization (empty: identity; pair: composition)."""
    w = normalize_word(word)
    if len(w) == 0:
        return IDENTITY_ROTATION
    if len(w) == 1:
        return rotation(w[0].direction, math.pi)
    return compose_line_reflections(w[0], w[1])


def projective_representative(M) -> np.ndarray:
    """The det +1 member of {M, -M} for an orthogonal 3x3 matrix.

    This realizes the isomorphism between isometries of the projective
    plane and orientation-preserving isometries of the sphere: it is
    idempotent and multiplicative on +-M classes.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (3, 3) or float(np.abs(M.T @ M - np.eye(3)).max()) > EPS_VERIFY:
        raise NotOrthogonal("projective representative needs an orthogonal 3x3 matrix")
    return M if np.linalg.det(M) > 0.0 else -M


def replay_moves(word, moves) -> list:
    return replay(word, moves, same_mirror)
