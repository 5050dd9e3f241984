"""Low-level planar primitives with a single absolute tolerance."""
from __future__ import annotations

import math
from typing import NamedTuple, Sequence, Union

import numpy as np

EPS = 1e-9


class Point(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    a: Point
    b: Point

    @property
    def length(self) -> float:
        return dist(self.a, self.b)


def as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite coordinates {p!r}")
    return Point(x, y)


def dist(p, q) -> float:
    return math.hypot(q[0] - p[0], q[1] - p[1])


def cross(o, a, b) -> float:
    """z-component of (a - o) x (b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def line_distance(p, q, r) -> float:
    """Signed distance of ``r`` from the directed line through p and q."""
    return cross(p, q, r) / dist(p, q)


def orientation(p, q, r) -> int:
    """+1 if r lies left of the directed line pq, -1 if right, 0 if collinear.

    Collinearity means ``r`` is within EPS of the line (or p, q coincide).
    """
    d = dist(p, q)
    if d <= EPS:
        return 0
    c = cross(p, q, r) / d
    if abs(c) <= EPS:
        return 0
    return 1 if c > 0 else -1


def point_segment_distance(p, a, b) -> float:
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    den = dx * dx + dy * dy
    if den == 0.0:
        return dist(p, a)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / den
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - (ax + t * dx), p[1] - (ay + t * dy))


def lerp(a, b, t: float) -> Point:
    return Point(float(a[0] + t * (b[0] - a[0])), float(a[1] + t * (b[1] - a[1])))


Intersection = Union[None, Point, Segment]


def segment_intersection(s1: Sequence, s2: Sequence) -> Intersection:
    """Classify the intersection of two closed segments.

    Returns ``None`` when they are disjoint, a :class:`Point` for a single
    common point (endpoint touches report the shared endpoint exactly) and a
    :class:`Segment` for a collinear overlap of positive length.
    """
    a1, b1 = as_point(s1[0]), as_point(s1[1])
    a2, b2 = as_point(s2[0]), as_point(s2[1])
    ends = (a1, b1, a2, b2)

    da2 = line_distance(a1, b1, a2)
    db2 = line_distance(a1, b1, b2)
    da1 = line_distance(a2, b2, a1)
    db1 = line_distance(a2, b2, b1)

    if abs(da2) <= EPS and abs(db2) <= EPS:
        return _collinear_overlap(a1, b1, a2, b2)

    # endpoint lying on the other segment
    for p, (q, r) in ((a2, (a1, b1)), (b2, (a1, b1)), (a1, (a2, b2)), (b1, (a2, b2))):
        if point_segment_distance(p, q, r) <= EPS:
            return _snap(p, ends)

    if (da2 > 0) != (db2 > 0) and (da1 > 0) != (db1 > 0):
        t = da1 / (da1 - db1)
        return _snap(lerp(a1, b1, t), ends)
    return None


def _snap(p: Point, candidates) -> Point:
    for c in candidates:
        if dist(p, c) <= EPS:
            return c
    return p


def _collinear_overlap(a1, b1, a2, b2) -> Intersection:
    d = (b1[0] - a1[0], b1[1] - a1[1])
    den = d[0] * d[0] + d[1] * d[1]

    def proj(p):
        return ((p[0] - a1[0]) * d[0] + (p[1] - a1[1]) * d[1]) / den

    t_a2, t_b2 = proj(a2), proj(b2)
    lo_t, hi_t = max(0.0, min(t_a2, t_b2)), min(1.0, max(t_a2, t_b2))
    length = math.sqrt(den)
    if (hi_t - lo_t) * length < -EPS:
        return None
    lo = _pick_end(lo_t, a1, b1, a2, b2, t_a2, t_b2)
    hi = _pick_end(hi_t, a1, b1, a2, b2, t_a2, t_b2)
    if dist(lo, hi) <= EPS:
        return lo
    return Segment(lo, hi)


def _pick_end(t, a1, b1, a2, b2, t_a2, t_b2) -> Point:
    # Prefer reporting an actual input endpoint over an interpolated one.
    for tt, p in ((0.0, a1), (1.0, b1), (t_a2, a2), (t_b2, b2)):
        if tt == t:
            return p
    return lerp(a1, b1, t)


def convex_hull(points: Sequence) -> list[Point]:
    """Counter-clockwise hull (monotone chain); collinear points are dropped."""
    pts = sorted({as_point(p) for p in points})
    if not pts:
        raise ValueError("convex_hull needs at least one point")
    uniq: list[Point] = []
    for p in pts:
        if not uniq or dist(uniq[-1], p) > EPS:
            uniq.append(p)
    if len(uniq) <= 2:
        return uniq

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(uniq)
    upper = half(reversed(uniq))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 or all(orientation(hull[0], hull[1], p) == 0 for p in hull):
        return [uniq[0], uniq[-1]]
    return hull


def point_in_convex_polygon(p, hull: Sequence[Point], tol: float = EPS) -> bool:
    if len(hull) == 1:
        return dist(p, hull[0]) <= tol
    if len(hull) == 2:
        return point_segment_distance(p, hull[0], hull[1]) <= tol
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if line_distance(a, b, p) < -tol:
            return False
    return True


def line_contacts(p, q, vertices: np.ndarray, edges: np.ndarray):
    """Contacts of the infinite line through p, q with a set of edges.

    The line is parameterized as ``p + s (q - p)``. Returns

    * ``on_line``: boolean mask over vertices lying within EPS of the line,
    * ``vs``: line parameter of every vertex (projection),
    * ``cross_mask``: edges whose endpoints lie strictly on opposite sides,
    * ``cross_t``/``cross_s``: edge parameter and line parameter of those
      crossings,
    * ``collinear``: edges with both endpoints on the line.
    """
    p = np.asarray(p, dtype=float)
    d = np.asarray(q, dtype=float) - p
    length = math.hypot(d[0], d[1])
    if length <= EPS:
        raise ValueError("degenerate line")
    rel = vertices - p
    side = (d[0] * rel[:, 1] - d[1] * rel[:, 0]) / length
    vs = (rel @ d) / (length * length)
    on_line = np.abs(side) <= EPS
    ea, eb = edges[:, 0], edges[:, 1]
    sa, sb = side[ea], side[eb]
    cross_mask = (~on_line[ea]) & (~on_line[eb]) & ((sa > 0) != (sb > 0))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(cross_mask, sa / (sa - sb), 0.0)
    cross_s = vs[ea] + t * (vs[eb] - vs[ea])
    collinear = on_line[ea] & on_line[eb]
    return on_line, vs, cross_mask, t, cross_s, collinear
