"""Shared numeric substrate: tolerances, canonical directions, angle helpers.

Every geometry module stores mirror directions through canonical_unit so
that one geometric mirror has exactly one stored representative, which is
what makes exact equality usable in golden tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Predicate tolerance (is this the same line? are these parallel?) must be
# stricter than the verification tolerance that bounds accumulated oracle
# residuals, otherwise a predicate could accept what verification rejects.
EPS_COINCIDE = 1e-9
EPS_VERIFY = 1e-8

# Relative norm deviation below which a vector is treated as already unit;
# skipping the redundant division makes canonical_unit exactly idempotent.
_UNIT_SLACK = 1e-13


class GeometryError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(GeometryError):
    """A vector was too short to define a direction."""


class NotConcurrent(GeometryError):
    """Mirrors do not belong to a common pencil."""


class NotOrthogonal(GeometryError):
    """A matrix claimed to be orthogonal is not, within tolerance."""


class NotCoplanarNormals(GeometryError):
    """Hyperplane normals do not span a common 2-plane."""


class WrongLength(GeometryError):
    """A word has the wrong number of mirrors for the requested operation."""


class IdentityInput(GeometryError):
    """The identity has no reflection-pair or arc representation here."""


class DegenerateArc(GeometryError):
    """The degenerate (identity) arc does not support this move."""


@dataclass(frozen=True)
class Tolerance:
    """Two-tier tolerance policy: predicates vs. oracle verification."""

    eps_coincide: float = EPS_COINCIDE
    eps_verify: float = EPS_VERIFY

    def __post_init__(self):
        if not (0.0 < self.eps_coincide < self.eps_verify < 1e-3):
            raise ValueError(
                "tolerances must satisfy 0 < eps_coincide < eps_verify < 1e-3, "
                f"got {self.eps_coincide!r}, {self.eps_verify!r}"
            )


DEFAULT_TOLERANCE = Tolerance()


def canonical_unit(v, eps: float = EPS_COINCIDE) -> np.ndarray:
    """Normalize v and fix its sign so the first significant component is positive.

    The sign convention gives unsigned directions (mirror normals, axes) a
    unique representative: canonical_unit(v) == canonical_unit(-v).
    Raises DegenerateInput on (near-)zero input.
    """
    a = np.asarray(v, dtype=float)
    norm = math.sqrt(float(a @ a))
    if norm <= eps:
        raise DegenerateInput(f"zero vector cannot define a direction: {v!r}")
    if abs(norm - 1.0) > _UNIT_SLACK:
        a = a / norm
    else:
        a = a.copy()
    for x in a:
        if abs(x) > eps:
            if x < 0.0:
                a = -a
            break
    # -0.0 components would display oddly and break hash-equality of the
    # byte representation
    a += 0.0
    return a


def angle_between_directions(u, v) -> float:
    """Unsigned angle in [0, pi/2] between the unoriented lines spanned by u, v."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = float(u @ v)
    w = u - c * v
    s = math.sqrt(float(w @ w))
    return math.atan2(s, abs(c))


def wrap_angle(theta: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    t = math.fmod(theta, 2.0 * math.pi)
    if t > math.pi:
        t -= 2.0 * math.pi
    elif t <= -math.pi:
        t += 2.0 * math.pi
    return t


def cross3(a, b) -> np.ndarray:
    # np.cross has high per-call overhead on single 3-vectors
    return np.array(
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    )


def dot3(a, b) -> float:
    return float(a[0] * b[0] + a[1] * b[1] + a[2] * b[2])


def norm3(a) -> float:
    return math.sqrt(float(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]))


def normalized3(a) -> np.ndarray:
    n = norm3(a)
    if n <= EPS_COINCIDE:
        raise DegenerateInput("zero 3-vector")
    return np.array([a[0] / n, a[1] / n, a[2] / n])


def rotate_about(v, axis, angle: float) -> np.ndarray:
    """Rotate 3-vector v about a unit axis by angle (Rodrigues formula)."""
    c = math.cos(angle)
    s = math.sin(angle)
    k = axis
    kv = dot3(k, v)
    kxv = cross3(k, v)
    return np.array(
        [
            v[0] * c + kxv[0] * s + k[0] * kv * (1.0 - c),
            v[1] * c + kxv[1] * s + k[1] * kv * (1.0 - c),
            v[2] * c + kxv[2] * s + k[2] * kv * (1.0 - c),
        ]
    )


def signed_angle_about(u, v, axis) -> float:
    """Signed angle from u to v measured right-handedly about axis.

    u and v are expected to lie in the plane perpendicular to axis; the
    projection onto that plane is implicit in the atan2 arguments.
    """
    return math.atan2(dot3(cross3(u, v), axis), dot3(u, v))
