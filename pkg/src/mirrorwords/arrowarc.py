"""Directed great-circle arcs encoding rotations, and the triangle rule.

An arc from tail to head encodes the rotation R_b . R_a where a and b are
the lines through the endpoints; the rotation angle is twice the arc
length. Sliding an arc along its great circle and replacing the head by
its antipode leave the rotation unchanged, which is exactly the freedom
the triangle rule exploits: slide two arcs until head meets tail on the
other circle and close the triangle.
"""

from __future__ import annotations

import math

import numpy as np

from . import so3
from .numerics import (
    EPS_COINCIDE,
    DegenerateArc,
    DegenerateInput,
    canonical_unit,
    cross3,
    dot3,
    norm3,
    rotate_about,
    signed_angle_about,
)

_DEFAULT_ANCHOR = np.array([1.0, 0.0, 0.0])


def _unit_point(p) -> np.ndarray:
    a = np.asarray(p, dtype=float)
    n = math.sqrt(float(a @ a))
    if n <= EPS_COINCIDE:
        raise DegenerateInput(f"zero vector is not a point on the sphere: {p!r}")
    if abs(n - 1.0) > 1e-13:
        a = a / n
    else:
        a = a.copy()
    a.flags.writeable = False
    return a


def _points_close(a, b, eps: float = EPS_COINCIDE) -> bool:
    d0 = a[0] - b[0]
    d1 = a[1] - b[1]
    d2 = a[2] - b[2]
    return math.sqrt(d0 * d0 + d1 * d1 + d2 * d2) <= eps


class Arc:
    """Directed arc on a great circle; tail and head must not be antipodal.

    The antipodal configuration would encode a full turn, i.e. the
    identity, whose canonical arc is the degenerate one with tail == head.
    """

    __slots__ = ("tail", "head")

    def __init__(self, tail, head):
        t = _unit_point(tail)
        h = _unit_point(head)
        if _points_close(t, -h):
            raise DegenerateArc("antipodal endpoints encode the identity; use tail == head")
        self.tail = t
        self.head = h

    @property
    def is_identity(self) -> bool:
        return _points_close(self.tail, self.head)

    def circle_axis(self) -> np.ndarray:
        """Unit axis of the arc's great circle, oriented tail towards head."""
        c = cross3(self.tail, self.head)
        n = norm3(c)
        if n <= EPS_COINCIDE:
            raise DegenerateArc("the degenerate arc lies on no unique great circle")
        return c / n

    def __repr__(self):
        return f"Arc({self.tail.tolist()!r}, {self.head.tolist()!r})"


def identity_arc(anchor=None) -> Arc:
    """The degenerate arc of the identity, anchored at the probe point."""
    p = _DEFAULT_ANCHOR if anchor is None else anchor
    return Arc(p, p)


def arc_to_rotation(arc: Arc) -> so3.Rotation:
    """The rotation encoded by an arc: twice the arc length about its axis."""
    c = cross3(arc.tail, arc.head)
    s = norm3(c)
    if s <= EPS_COINCIDE:
        return so3.IDENTITY_ROTATION
    theta = math.atan2(s, dot3(arc.tail, arc.head))
    return so3.rotation(c / s, 2.0 * theta)


def rotation_to_arc(r: so3.Rotation, anchor=None) -> Arc:
    """A half-angle arc on the circle polar to the axis, tail chosen by probe."""
    if r.is_identity:
        return identity_arc(anchor)
    tail = so3.probe_perpendicular(r.axis) if anchor is None else _unit_point(anchor)
    head = rotate_about(tail, r.axis, r.angle / 2.0)
    return Arc(tail, head)


def slide(arc: Arc, delta: float) -> Arc:
    """Glide the arc along its great circle; the encoded rotation is unchanged."""
    if arc.is_identity:
        return arc
    axis = arc.circle_axis()
    return Arc(rotate_about(arc.tail, axis, delta), rotate_about(arc.head, axis, delta))


def antipode_head(arc: Arc) -> Arc:
    """Replace the head by its antipodal point; an involution on arcs."""
    if arc.is_identity:
        raise DegenerateArc("the identity arc has no antipodal-head variant")
    return Arc(arc.tail, -arc.head)


def _closing_arc(a, d) -> Arc:
    # the closing pair may degenerate two ways: same point (zero rotation)
    # or antipodal points (the two boundary lines coincide, a full turn)
    if _points_close(a, d) or _points_close(a, -d):
        return Arc(a, a)
    return Arc(a, d)


def triangle_compose(u: Arc, v: Arc) -> Arc:
    """Arc of the composition (v after u) by the head-meets-tail triangle rule.

    On distinct circles both arcs slide so that u's head and v's tail meet
    at an intersection point of the circles; the closing arc from u's tail
    to v's head encodes the composite rotation. On a shared circle the
    slide alone suffices.
    """
    if u.is_identity:
        return v
    if v.is_identity:
        return u
    axis_u = u.circle_axis()
    axis_v = v.circle_axis()
    link = cross3(axis_u, axis_v)
    if norm3(link) <= EPS_COINCIDE:
        # same great circle: bring v's tail onto u's head
        delta = signed_angle_about(v.tail, u.head, axis_v)
        head = rotate_about(v.head, axis_v, delta)
        return _closing_arc(u.tail, head)
    meet = canonical_unit(link)
    du = signed_angle_about(u.head, meet, axis_u)
    dv = signed_angle_about(v.tail, meet, axis_v)
    tail = rotate_about(u.tail, axis_u, du)
    head = rotate_about(v.head, axis_v, dv)
    return _closing_arc(tail, head)


def arcs_to_svg(arcs, size: int = 400) -> str:
    """Orthographic (view down +z) SVG rendering of arcs on the unit sphere."""
    cx = cy = size / 2.0
    radius = size * 0.42

    def project(p):
        return cx + radius * p[0], cy - radius * p[1]

    paths = []
    for arc in arcs:
        if arc.is_identity:
            x, y = project(arc.tail)
            paths.append(
                f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#c0392b"/>'
            )
            continue
        axis = arc.circle_axis()
        total = signed_angle_about(arc.tail, arc.head, axis)
        steps = 32
        pts = []
        for i in range(steps + 1):
            q = rotate_about(arc.tail, axis, total * i / steps)
            x, y = project(q)
            pts.append(f"{x:.2f} {y:.2f}")
        d = "M " + pts[0] + " L " + " L ".join(pts[1:])
        paths.append(
            '<path fill="none" stroke="#c0392b" stroke-width="2" '
            f'marker-end="url(#arrowhead)" d="{d}"/>'
        )
    body = "\n  ".join(paths)
    return f"""<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">
  <defs>
    <marker id="arrowhead" markerWidth="8" markerHeight="6" refX="7" refY="3" orient="auto">
      <path d="M0,0 L8,3 L0,6 z" fill="#c0392b"/>
    </marker>
  </defs>
  <circle cx="{cx}" cy="{cy}" r="{radius}" fill="none" stroke="#888" stroke-width="1"/>
  {body}
</svg>
"""
