"""Isometries of the 2-sphere (= O(3)) as words of reflections in great circles.

A great circle is stored by its pole; the reflection is the restriction of
the 3-space reflection in the circle's 2-subspace. Any two distinct great
circles intersect, so only the doubly-transverse case of the plane
reduction survives here: rotate both pairs onto the circle through both
intersection axes and cancel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels, so3
from .moves import INVOLUTION, PENCIL, Move, apply_move, replay
from .numerics import (
    EPS_COINCIDE,
    NotConcurrent,
    canonical_unit,
    cross3,
    dot3,
    norm3,
    rotate_about,
    signed_angle_about,
    wrap_angle,
)

IDENTITY = "identity"
REFLECTION = "reflection"
ROTATION = "rotation"
GLIDE = "glide"


class GreatCircle:
    """Great circle {x on S2 : pole . x = 0}, pole stored with canonical sign."""

    __slots__ = ("pole",)

    def __init__(self, pole):
        p = canonical_unit(pole)
        p.flags.writeable = False
        self.pole = p

    def __eq__(self, other):
        if not isinstance(other, GreatCircle):
            return NotImplemented
        return bool(np.array_equal(self.pole, other.pole))

    def __hash__(self):
        return hash(self.pole.tobytes())

    def __repr__(self):
        return f"GreatCircle({self.pole.tolist()!r})"


def coincident(a: GreatCircle, b: GreatCircle, eps: float = EPS_COINCIDE) -> bool:
    return norm3(cross3(a.pole, b.pole)) <= eps


def same_mirror(a: GreatCircle, b: GreatCircle) -> bool:
    return coincident(a, b)


def reflect_point(c: GreatCircle, p) -> np.ndarray:
    """Mirror image on the sphere: p - 2(pole.p) pole."""
    w = 2.0 * dot3(c.pole, p)
    return np.array([p[0] - w * c.pole[0], p[1] - w * c.pole[1], p[2] - w * c.pole[2]])


def reflection_matrix(c: GreatCircle) -> np.ndarray:
    p = c.pole
    return np.eye(3) - 2.0 * np.outer(p, p)


def word_to_matrix(word) -> np.ndarray:
    k = len(word)
    poles = np.empty((k, 3))
    for i, c in enumerate(word):
        poles[i] = c.pole
    return kernels.householder_word_matrix(poles)


@dataclass(frozen=True, eq=False)
class Classification:
    kind: str
    circle: GreatCircle | None = None
    axis: np.ndarray | None = None
    angle: float | None = None


def compose_reflections(l: GreatCircle, m: GreatCircle) -> Classification:
    """R_m . R_l: identity when the circles coincide, else a rotation about
    their intersection pair by twice the dihedral angle."""
    c = cross3(l.pole, m.pole)
    s = norm3(c)
    if s <= EPS_COINCIDE:
        return Classification(IDENTITY)
    theta = math.atan2(s, dot3(l.pole, m.pole))
    r = so3.rotation(c / s, 2.0 * theta)
    return Classification(ROTATION, axis=r.axis, angle=r.angle)


def _common_axis(l: GreatCircle, m: GreatCircle) -> np.ndarray:
    c = cross3(l.pole, m.pole)
    return c / norm3(c)


def pencil_completion(
    l: GreatCircle, m: GreatCircle, l2: GreatCircle
) -> GreatCircle:
    """The m2 with R_m . R_l = R_m2 . R_l2 through the same intersection pair.

    The three poles must be coplanar (the circles share an antipodal point
    pair); the signed pole angle from l to m is transported onto l2.
    """
    if coincident(l, m):
        return l2
    u = _common_axis(l, m)
    if abs(dot3(l2.pole, u)) > EPS_COINCIDE:
        raise NotConcurrent("third circle misses the pencil's intersection pair")
    phi = signed_angle_about(l.pole, m.pole, u)
    return GreatCircle(rotate_about(l2.pole, u, phi))


def _emit(w: list, sink: list, move: Move) -> None:
    sink.append(move)
    w[:] = apply_move(w, move, same_mirror)


def _transport_onto(a: GreatCircle, b: GreatCircle, target: GreatCircle) -> GreatCircle:
    """b2 such that (a, b) ~ (target, b2) in the pencil of a and b."""
    u = _common_axis(a, b)
    phi = signed_angle_about(a.pole, target.pole, u)
    return GreatCircle(rotate_about(b.pole, u, phi))


def _reduce_leading_four(w: list, sink: list) -> None:
    for i in (0, 1, 2):
        if coincident(w[i], w[i + 1]):
            _emit(w, sink, Move(INVOLUTION, i))
            return

    k, l, m, n = w[0], w[1], w[2], w[3]
    axis_kl = _common_axis(k, l)
    axis_mn = _common_axis(m, n)
    link = cross3(axis_kl, axis_mn)
    if norm3(link) <= EPS_COINCIDE:
        # both pairs share one pencil: rotate (m, n) so that m lands on l
        n2 = _transport_onto(m, n, l)
        _emit(w, sink, Move(PENCIL, 2, (l, n2)))
        _emit(w, sink, Move(INVOLUTION, 1))
        return

    # the circle through both intersection pairs
    mid = GreatCircle(link)
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


def reduce_four(
    k: GreatCircle,
    l: GreatCircle,
    m: GreatCircle,
    n: GreatCircle,
    trace: list | None = None,
) -> list:
    """Reduce a four-circle word to at most two circles, oracle-equal."""
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
    """Normalize and classify: identity, reflection, rotation or glide reflection.

    An odd word is a rotoreflection M = Rot(u, psi) . S(u) with S the
    reflection in the circle polar to u; since -S(u) is the half-turn
    about u, -M is the rotation about u by psi + pi, which hands the axis
    and glide angle to the SO(3) extractor.
    """
    w = normalize_word(word)
    if len(w) == 0:
        return Classification(IDENTITY)
    if len(w) == 1:
        return Classification(REFLECTION, circle=w[0])
    if len(w) == 2:
        return compose_reflections(w[0], w[1])
    M = word_to_matrix(w)
    r = so3.rotation_from_matrix(-M)
    psi = wrap_angle(r.angle - math.pi)
    if abs(psi) <= EPS_COINCIDE:
        return Classification(REFLECTION, circle=GreatCircle(r.axis))
    return Classification(GLIDE, axis=r.axis, angle=psi)


def replay_moves(word, moves) -> list:
    return replay(word, moves, same_mirror)
