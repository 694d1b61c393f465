"""Isometries of the Euclidean plane as words of line reflections.

A word is a plain list of Line mirrors, applied left to right (element 0
acts first); the composition written R_n . R_m . R_l . R_k is stored as
[k, l, m, n]. Rewriting uses two relations: the involution relation (a
mirror repeated twice cancels) and the pencil relation (an adjacent pair
may be replaced by any pair of the same pencil with the same signed gap).
Every rewrite is checked against the affine-map oracle in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .moves import INVOLUTION, PENCIL, Move, apply_move, replay
from .numerics import (
    EPS_COINCIDE,
    DegenerateInput,
    NotConcurrent,
    canonical_unit,
)

IDENTITY = "identity"
REFLECTION = "reflection"
TRANSLATION = "translation"
ROTATION = "rotation"
GLIDE = "glide"

_HALF_PI = math.pi / 2.0


class Line:
    """Mirror line {x : normal . x = offset}, one stored representative per line.

    The normal is unit with canonical sign (first significant component
    positive); flipping the sign of the normal flips the offset, so the
    representative is unique per geometric line.
    """

    __slots__ = ("nx", "ny", "offset")

    def __init__(self, normal, offset: float = 0.0):
        nx = float(normal[0])
        ny = float(normal[1])
        d = float(offset)
        norm = math.hypot(nx, ny)
        if norm <= EPS_COINCIDE:
            raise DegenerateInput(f"zero normal cannot define a line: {normal!r}")
        if abs(norm - 1.0) > 1e-13:
            nx /= norm
            ny /= norm
            d /= norm
        if (nx < 0.0 and abs(nx) > EPS_COINCIDE) or (
            abs(nx) <= EPS_COINCIDE and ny < 0.0
        ):
            nx, ny, d = -nx, -ny, -d
        # +0.0 uniformly: -0.0 would display oddly and break hashing
        self.nx = nx + 0.0
        self.ny = ny + 0.0
        self.offset = d + 0.0

    @property
    def normal(self) -> np.ndarray:
        return np.array([self.nx, self.ny])

    @property
    def direction(self) -> np.ndarray:
        return np.array([-self.ny, self.nx])

    def __eq__(self, other):
        if not isinstance(other, Line):
            return NotImplemented
        return self.nx == other.nx and self.ny == other.ny and self.offset == other.offset

    def __hash__(self):
        return hash((self.nx, self.ny, self.offset))

    def __repr__(self):
        return f"Line(({self.nx!r}, {self.ny!r}), {self.offset!r})"


def coincident(a: Line, b: Line, eps: float = EPS_COINCIDE) -> bool:
    """True when a and b are the same geometric line, within eps."""
    cross = a.nx * b.ny - a.ny * b.nx
    if abs(cross) > eps:
        return False
    dot = a.nx * b.nx + a.ny * b.ny
    db = b.offset if dot > 0.0 else -b.offset
    scale = 1.0 + abs(a.offset) + abs(db)
    return abs(a.offset - db) <= eps * scale


def parallel(a: Line, b: Line, eps: float = EPS_COINCIDE) -> bool:
    return abs(a.nx * b.ny - a.ny * b.nx) <= eps


def _offset_in_frame(l: Line, frame: Line) -> float:
    """Offset of l re-expressed with frame's normal orientation."""
    dot = frame.nx * l.nx + frame.ny * l.ny
    return l.offset if dot > 0.0 else -l.offset


def _intersection(a: Line, b: Line) -> tuple[float, float]:
    det = a.nx * b.ny - a.ny * b.nx
    x = (a.offset * b.ny - a.ny * b.offset) / det
    y = (a.nx * b.offset - a.offset * b.nx) / det
    return x, y


def _passes_through(l: Line, px: float, py: float, eps: float = EPS_COINCIDE) -> bool:
    scale = 1.0 + math.hypot(px, py)
    return abs(l.nx * px + l.ny * py - l.offset) <= eps * scale


def _fold_half(delta: float) -> float:
    """Fold an angle to (-pi/2, pi/2] (line angles live mod pi)."""
    while delta > _HALF_PI:
        delta -= math.pi
    while delta <= -_HALF_PI:
        delta += math.pi
    return delta


def _signed_gap(a: Line, b: Line) -> float:
    """Signed line angle from a to b, in (-pi/2, pi/2]."""
    cross = a.nx * b.ny - a.ny * b.nx
    dot = a.nx * b.nx + a.ny * b.ny
    return _fold_half(math.atan2(cross, dot))


def _rotated_about(l: Line, px: float, py: float, delta: float) -> Line:
    """Rotate a line passing through (px, py) about that point by delta."""
    c = math.cos(delta)
    s = math.sin(delta)
    nx = l.nx * c - l.ny * s
    ny = l.nx * s + l.ny * c
    return Line((nx, ny), nx * px + ny * py)


def _parallel_through(l: Line, px: float, py: float) -> Line:
    return Line((l.nx, l.ny), l.nx * px + l.ny * py)


def reflect_point(l: Line, p) -> np.ndarray:
    """Mirror image of point p in line l."""
    w = l.nx * p[0] + l.ny * p[1] - l.offset
    return np.array([p[0] - 2.0 * w * l.nx, p[1] - 2.0 * w * l.ny])


@dataclass(frozen=True, eq=False)
class Isometry:
    """Oracle representation: x -> linear @ x + translation."""

    linear: np.ndarray
    translation: np.ndarray


def word_to_isometry(word) -> Isometry:
    k = len(word)
    normals = np.empty((k, 2))
    offsets = np.empty(k)
    for i, l in enumerate(word):
        normals[i, 0] = l.nx
        normals[i, 1] = l.ny
        offsets[i] = l.offset
    A, t = kernels.plane_word_map(normals, offsets)
    return Isometry(A, t)


def isometry_distance(a: Isometry, b: Isometry) -> float:
    """Frobenius distance of linear parts plus Euclidean distance of translations."""
    dl = a.linear - b.linear
    dt = a.translation - b.translation
    return math.sqrt(float((dl * dl).sum())) + math.sqrt(float(dt @ dt))


@dataclass(frozen=True, eq=False)
class Classification:
    kind: str
    axis: Line | None = None
    vector: np.ndarray | None = None
    center: np.ndarray | None = None
    angle: float | None = None


@dataclass(frozen=True, eq=False)
class Pencil:
    kind: str  # "parallel" | "concurrent"
    direction: np.ndarray | None = None
    point: np.ndarray | None = None


def compose_reflections(l: Line, m: Line) -> Classification:
    """Classify R_m . R_l: identity, translation (parallel) or rotation (transverse).

    The translation moves by twice the line distance, perpendicular to the
    lines; the rotation angle is twice the signed angle from l to m about
    the intersection point.
    """
    cross = l.nx * m.ny - l.ny * m.nx
    if abs(cross) <= EPS_COINCIDE:
        gap = _offset_in_frame(m, l) - l.offset
        if abs(gap) <= EPS_COINCIDE:
            return Classification(IDENTITY)
        return Classification(
            TRANSLATION, vector=np.array([2.0 * gap * l.nx, 2.0 * gap * l.ny])
        )
    px, py = _intersection(l, m)
    return Classification(
        ROTATION, center=np.array([px, py]), angle=2.0 * _signed_gap(l, m)
    )


def pencil_of(l: Line, m: Line) -> Pencil:
    """The pencil spanned by two lines: parallel family or point family."""
    if parallel(l, m):
        return Pencil("parallel", direction=canonical_unit((-l.ny, l.nx)))
    px, py = _intersection(l, m)
    return Pencil("concurrent", point=np.array([px, py]))


def pencil_completion(l: Line, m: Line, l2: Line) -> Line:
    """The unique m2 with R_m . R_l = R_m2 . R_l2, all four in one pencil.

    Transports the signed pencil gap from the pair (l, m) onto l2. Raises
    NotConcurrent when l2 does not belong to the pencil of l and m.
    """
    if coincident(l, m):
        return l2
    if parallel(l, m):
        if not parallel(l, l2):
            raise NotConcurrent("third line is not parallel to the pencil")
        gap = _offset_in_frame(m, l) - l.offset
        return Line((l.nx, l.ny), _offset_in_frame(l2, l) + gap)
    px, py = _intersection(l, m)
    if not _passes_through(l2, px, py):
        raise NotConcurrent("third line misses the pencil's common point")
    return _rotated_about(_parallel_through(l2, px, py), px, py, _signed_gap(l, m))


def verify_pencil_relation(l: Line, m: Line, l2: Line, m2: Line) -> bool:
    """True iff all four lines share a pencil with matching signed gaps.

    Signed gaps (offset differences in a parallel pencil, line angles mod
    pi in a concurrent one) characterize R_m . R_l = R_m2 . R_l2 exactly;
    the unsigned distances of the two-sided relation follow.
    """
    if coincident(l, m):
        return coincident(l2, m2)
    if coincident(l2, m2):
        return False
    if parallel(l, m):
        if not (parallel(l, l2) and parallel(l, m2)):
            return False
        gap1 = _offset_in_frame(m, l) - l.offset
        gap2 = _offset_in_frame(m2, l) - _offset_in_frame(l2, l)
        return abs(gap1 - gap2) <= EPS_COINCIDE * (1.0 + abs(gap1) + abs(gap2))
    if parallel(l2, m2):
        return False
    px, py = _intersection(l, m)
    if not (_passes_through(l2, px, py) and _passes_through(m2, px, py)):
        return False
    return abs(_fold_half(_signed_gap(l, m) - _signed_gap(l2, m2))) <= EPS_COINCIDE


def same_mirror(a: Line, b: Line) -> bool:
    return coincident(a, b)


def _emit(w: list, sink: list, move: Move) -> None:
    sink.append(move)
    w[:] = apply_move(w, move, same_mirror)


def _reduce_leading_four(w: list, sink: list) -> None:
    """Rewrite the leading four mirrors of w down to two, recording moves.

    Follows the four-reflection case analysis: cancel adjacent coincident
    mirrors; otherwise slide or rotate both pairs onto a common middle
    mirror and cancel it.
    """
    for i in (0, 1, 2):
        if coincident(w[i], w[i + 1]):
            _emit(w, sink, Move(INVOLUTION, i))
            return

    k, l, m, n = w[0], w[1], w[2], w[3]
    kl_par = parallel(k, l)
    mn_par = parallel(m, n)

    if kl_par and mn_par:
        if parallel(l, m):
            # all four parallel: slide the pair (k, l) until l lands on m
            gap = _offset_in_frame(m, l) - l.offset
            k2 = Line((l.nx, l.ny), _offset_in_frame(k, l) + gap)
            _emit(w, sink, Move(PENCIL, 0, (k2, m)))
            _emit(w, sink, Move(INVOLUTION, 1))
            return
        # two parallel pairs in different directions: rotate the middle
        # pair by a right angle about its intersection, making both outer
        # pairs transverse, then fall through to the generic case
        px, py = _intersection(l, m)
        l2 = _rotated_about(l, px, py, _HALF_PI)
        m2 = _rotated_about(m, px, py, _HALF_PI)
        _emit(w, sink, Move(PENCIL, 1, (l2, m2)))
        _reduce_leading_four(w, sink)
        return

    if kl_par:
        # slide k.l so that l passes through the intersection of m and n,
        # then rotate m.n so that its first mirror is that same line
        px, py = _intersection(m, n)
        mid = _parallel_through(l, px, py)
        gap = mid.offset - _offset_in_frame(l, mid)
        k2 = Line((mid.nx, mid.ny), _offset_in_frame(k, mid) + gap)
        _emit(w, sink, Move(PENCIL, 0, (k2, mid)))
        n2 = pencil_completion(w[2], w[3], mid)
        _emit(w, sink, Move(PENCIL, 2, (mid, n2)))
        _emit(w, sink, Move(INVOLUTION, 1))
        return

    if mn_par:
        px, py = _intersection(k, l)
        mid = _parallel_through(m, px, py)
        gap = mid.offset - _offset_in_frame(m, mid)
        n2 = Line((mid.nx, mid.ny), _offset_in_frame(n, mid) + gap)
        _emit(w, sink, Move(PENCIL, 2, (mid, n2)))
        k2 = pencil_completion(w[1], w[0], mid)
        _emit(w, sink, Move(PENCIL, 0, (k2, mid)))
        _emit(w, sink, Move(INVOLUTION, 1))
        return

    p1x, p1y = _intersection(k, l)
    p2x, p2y = _intersection(m, n)
    if math.hypot(p1x - p2x, p1y - p2y) <= EPS_COINCIDE * (
        1.0 + math.hypot(p1x, p1y) + math.hypot(p2x, p2y)
    ):
        # all four concurrent: rotate the pair (m, n) so that m lands on l
        n2 = pencil_completion(m, n, l)
        _emit(w, sink, Move(PENCIL, 2, (l, n2)))
        _emit(w, sink, Move(INVOLUTION, 1))
        return

    # generic case: rotate both pairs onto the line through both points
    dx, dy = p2x - p1x, p2y - p1y
    mid = Line((-dy, dx), -dy * p1x + dx * p1y)
    k2 = pencil_completion(l, k, mid)
    _emit(w, sink, Move(PENCIL, 0, (k2, mid)))
    n2 = pencil_completion(w[2], w[3], mid)
    _emit(w, sink, Move(PENCIL, 2, (mid, n2)))
    _emit(w, sink, Move(INVOLUTION, 1))


def _strip(w: list, sink: list) -> None:
    i = 0
    while i < len(w) - 1:
        if coincident(w[i], w[i + 1]):
            _emit(w, sink, Move(INVOLUTION, i))
            i = max(i - 1, 0)
        else:
            i += 1


def reduce_four(k: Line, l: Line, m: Line, n: Line, trace: list | None = None) -> list:
    """Reduce a four-mirror word to at most two mirrors, oracle-equal."""
    w = [k, l, m, n]
    sink = []
    _reduce_leading_four(w, sink)
    _strip(w, sink)
    if trace is not None:
        trace.extend(sink)
    return w


def normalize_word(word, trace: list | None = None) -> list:
    """Rewrite a word to length at most 3 (2 for even length), oracle-equal."""
    w = list(word)
    sink = [] if trace is None else trace
    _strip(w, sink)
    while len(w) > 3:
        _reduce_leading_four(w, sink)
        _strip(w, sink)
    return w


def classify_word(word) -> Classification:
    """Normalize and classify: identity, reflection, translation, rotation or glide.

    Length three is split into reflection vs. glide by extracting the
    invariant axis from the oracle matrix: the linear part of an odd word
    is I - 2uu^T, the axis is the line {u.x = d} with d = u.t/2, and the
    glide vector is the component of the translation along the axis.
    """
    w = normalize_word(word)
    if len(w) == 0:
        return Classification(IDENTITY)
    if len(w) == 1:
        return Classification(REFLECTION, axis=w[0])
    if len(w) == 2:
        return compose_reflections(w[0], w[1])
    iso = word_to_isometry(w)
    B = (np.eye(2) - iso.linear) / 2.0  # = uu^T
    if B[0, 0] >= B[1, 1]:
        u = np.array([B[0, 0], B[1, 0]])
    else:
        u = np.array([B[0, 1], B[1, 1]])
    u /= math.hypot(u[0], u[1])
    t = iso.translation
    d = (u[0] * t[0] + u[1] * t[1]) / 2.0
    g = -u[1] * t[0] + u[0] * t[1]
    axis = Line(u, d)
    if abs(g) <= EPS_COINCIDE:
        return Classification(REFLECTION, axis=axis)
    return Classification(GLIDE, axis=axis, vector=np.array([-g * u[1], g * u[0]]))


def replay_moves(word, moves) -> list:
    """All intermediate words of a recorded rewrite, starting word included."""
    return replay(word, moves, same_mirror)
