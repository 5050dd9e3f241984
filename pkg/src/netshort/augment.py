"""Inserting a straight segment into a network.

Under the planar model every point where the segment meets the network
becomes a vertex, so paths may switch between the segment and the network
at any contact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .distance import diameter_value, vertex_distances
from .errors import CollinearOverlap, DegenerateSegment, EndpointOffLocus, NoIntersection
from .geometry import EPS, Point, Segment, dist, lerp, line_contacts
from .network import LocusPoint, Network, _raw_network


class Contact(NamedTuple):
    """Where a line meets the network.

    ``s`` is the distance along the line from its origin, ``vertex`` is set
    when the contact is a network vertex (then ``edge``/``t`` give the
    vertex's canonical locus address).
    """

    edge: int
    point: Point
    t: float
    vertex: int | None
    s: float


@dataclass(frozen=True)
class LineProfile:
    """All contacts of an infinite line with the network, sorted along it."""

    origin: Point
    direction: tuple[float, float]  # unit vector
    contacts: tuple[Contact, ...]
    blocks: tuple[tuple[float, float], ...]  # s-intervals covered by collinear edges

    def at(self, s: float) -> Point:
        return Point(float(self.origin[0] + s * self.direction[0]), float(self.origin[1] + s * self.direction[1]))

    def blocked(self, s0: float, s1: float) -> bool:
        """True if the open interval (s0, s1) runs along a collinear edge."""
        lo, hi = min(s0, s1), max(s0, s1)
        return any(min(hi, b1) - max(lo, b0) > EPS for b0, b1 in self.blocks)


def line_profile(net: Network, p, q) -> LineProfile:
    p = Point(float(p[0]), float(p[1]))
    length = dist(p, q)
    if length <= EPS:
        raise DegenerateSegment("segment endpoints coincide")
    direction = ((q[0] - p[0]) / length, (q[1] - p[1]) / length)
    on_line, vs, cross_mask, cross_t, cross_s, collinear = line_contacts(p, q, net.vertices, net.edges)
    raw: list[Contact] = []
    for v in np.flatnonzero(on_line):
        if net.degree[v] == 0:
            continue
        lp = net.vertex_locus(int(v))
        raw.append(Contact(lp.edge, net.point(int(v)), lp.t, int(v), float(vs[v]) * length))
    for e in np.flatnonzero(cross_mask):
        t = float(cross_t[e])
        a, b = net.edge_segment(int(e))
        raw.append(Contact(int(e), lerp(a, b, t), t, None, float(cross_s[e]) * length))
    raw.sort(key=lambda c: (c.s, c.vertex is None))
    merged: list[Contact] = []
    for c in raw:
        if merged and c.s - merged[-1].s <= EPS:
            if merged[-1].vertex is None and c.vertex is not None:
                merged[-1] = c
            continue
        merged.append(c)
    blocks = []
    for e in np.flatnonzero(collinear):
        a, b = net.edges[e]
        s0, s1 = sorted((float(vs[a]) * length, float(vs[b]) * length))
        blocks.append((s0, s1))
    return LineProfile(p, direction, tuple(merged), tuple(sorted(blocks)))


@dataclass(frozen=True)
class Candidate:
    """A segment with both endpoints on the network.

    ``crossings`` lists the contacts strictly inside the segment, ordered
    from ``a`` towards ``b``; their ``s`` is measured from ``a``.
    """

    a: LocusPoint
    b: LocusPoint
    geometry: Segment
    crossings: tuple[Contact, ...]

    @property
    def length(self) -> float:
        return self.geometry.length

    @property
    def endpoints(self) -> tuple[LocusPoint, LocusPoint]:
        return self.a, self.b

    @property
    def is_simple(self) -> bool:
        return not self.crossings


def make_candidate(net: Network, a: LocusPoint, b: LocusPoint) -> Candidate:
    """Validate a segment between two locus points and find its crossings.

    Endpoints within EPS of a vertex snap to it. Raises DegenerateSegment
    when the endpoints coincide and CollinearOverlap when the segment runs
    along an edge.
    """
    a, b = net.normalize(a), net.normalize(b)
    pa, pb = net.locate(a), net.locate(b)
    length = dist(pa, pb)
    if length <= EPS:
        raise DegenerateSegment("segment endpoints coincide")
    prof = line_profile(net, pa, pb)
    if prof.blocked(0.0, length):
        raise CollinearOverlap("segment runs along a network edge")
    inner = tuple(c for c in prof.contacts if EPS < c.s < length - EPS)
    return Candidate(a, b, Segment(pa, pb), inner)


def candidate_from_points(net: Network, p, q, tol: float = 1e-7) -> Candidate:
    """Candidate between two plane points that must lie on the network."""
    return make_candidate(net, locate_point(net, p, tol), locate_point(net, q, tol))


def locate_point(net: Network, p, tol: float = 1e-7) -> LocusPoint:
    """Locus address of the nearest network point to ``p``, which must lie
    within ``tol`` of the network."""
    P = net.vertices
    A, B = P[net.edges[:, 0]], P[net.edges[:, 1]]
    d = B - A
    pt = np.asarray(p, dtype=float)
    t = np.clip(np.einsum("ij,ij->i", pt - A, d) / np.einsum("ij,ij->i", d, d), 0.0, 1.0)
    gap = np.hypot(*(A + t[:, None] * d - pt).T)
    e = int(np.argmin(gap))
    if gap[e] > tol:
        raise EndpointOffLocus(f"point {tuple(map(float, pt))} is not on the network")
    return net.normalize(LocusPoint(e, float(t[e])))


@dataclass(frozen=True, eq=False)
class AugmentedNetwork:
    """The network with a candidate inserted under the planar model.

    ``edge_source[k]`` is the base edge that new edge ``k`` came from, or -1
    for pieces of the candidate; ``edge_span[k]`` holds the covered parameter
    range on the base edge (or distances along the candidate from ``a``).
    ``vertex_origin`` maps every new vertex to ``(base edge, t)``.
    """

    network: Network
    base: Network
    candidate: Candidate
    edge_source: np.ndarray = field(repr=False)
    edge_span: np.ndarray = field(repr=False)
    vertex_origin: dict[int, tuple[int, float]] = field(repr=False)
    segment_vertices: tuple[int, ...] = field(repr=False)

    @property
    def segment_edges(self) -> np.ndarray:
        return np.flatnonzero(self.edge_source < 0)

    def lift(self, lp: LocusPoint) -> LocusPoint:
        """Address in the augmented network of a base-network locus point."""
        rows = np.flatnonzero(self.edge_source == lp.edge)
        for k in rows:
            t0, t1 = self.edge_span[k]
            if t0 - 1e-12 <= lp.t <= t1 + 1e-12:
                frac = (lp.t - t0) / (t1 - t0)
                return LocusPoint(int(k), float(min(max(frac, 0.0), 1.0)))
        raise ValueError(f"{lp} not found in augmented network")

    def segment_point(self, s: float) -> LocusPoint:
        """Address of the point at distance ``s`` from ``a`` along the candidate."""
        for k in self.segment_edges:
            s0, s1 = self.edge_span[k]
            if s0 - 1e-12 <= s <= s1 + 1e-12:
                frac = (s - s0) / (s1 - s0)
                return LocusPoint(int(k), float(min(max(frac, 0.0), 1.0)))
        raise ValueError(f"s={s} outside the candidate")


def insert_segment(net: Network, c: Candidate) -> AugmentedNetwork:
    verts = [tuple(v) for v in net.vertices.tolist()]
    splits: dict[int, list[tuple[float, int]]] = {}
    origin: dict[int, tuple[int, float]] = {}

    def vertex_for(lp: LocusPoint, point) -> int:
        v = net.locus_vertex(lp)
        if v is not None:
            return v
        for t, idx in splits.get(lp.edge, ()):
            if abs(t - lp.t) * net.lengths[lp.edge] <= EPS:
                return idx
        verts.append((float(point[0]), float(point[1])))
        idx = len(verts) - 1
        splits.setdefault(lp.edge, []).append((lp.t, idx))
        origin[idx] = (lp.edge, lp.t)
        return idx

    chain = [vertex_for(c.a, c.geometry.a)]
    chain_s = [0.0]
    for x in c.crossings:
        if x.vertex is not None:
            chain.append(x.vertex)
        else:
            chain.append(vertex_for(LocusPoint(x.edge, x.t), x.point))
        chain_s.append(x.s)
    chain.append(vertex_for(c.b, c.geometry.b))
    chain_s.append(c.length)

    edges: list[tuple[int, int]] = []
    source: list[int] = []
    span: list[tuple[float, float]] = []
    for e, (u, v) in enumerate(net.edges.tolist()):
        pts = sorted(splits.get(e, ()))
        seq = [(0.0, u)] + pts + [(1.0, v)]
        for (t0, i0), (t1, i1) in zip(seq, seq[1:]):
            edges.append((i0, i1))
            source.append(e)
            span.append((t0, t1))
    for (s0, i0), (s1, i1) in zip(zip(chain_s, chain), zip(chain_s[1:], chain[1:])):
        edges.append((i0, i1))
        source.append(-1)
        span.append((s0, s1))
    out = _raw_network(verts, edges)
    return AugmentedNetwork(
        out, net, c,
        np.array(source, dtype=np.int64), np.array(span, dtype=float).reshape(-1, 2),
        origin, tuple(chain),
    )


def diameter_with_segment(net: Network, c: Candidate) -> float:
    """Continuous diameter after inserting ``c``; may exceed the original."""
    return diameter_value(insert_segment(net, c).network)


def is_shortcut(net: Network, c: Candidate, base_diameter: float | None = None) -> bool:
    if base_diameter is None:
        base_diameter = diameter_value(net)
    return diameter_with_segment(net, c) < base_diameter - 1e-9


def maximal_extension(net: Network, c: Candidate) -> Candidate:
    """Extend ``c`` along its line to the extreme contacts on either side.

    Extension passes through vertices and crossings but never runs along a
    collinear edge.
    """
    prof = line_profile(net, c.geometry.a, c.geometry.b)
    length = c.length
    lo = hi = None
    for x in prof.contacts:
        if x.s < -EPS and not prof.blocked(x.s, 0.0):
            lo = x if lo is None or x.s < lo.s else lo
        if x.s > length + EPS and not prof.blocked(length, x.s):
            hi = x if hi is None or x.s > hi.s else hi
    a = c.a if lo is None else LocusPoint(lo.edge, lo.t)
    b = c.b if hi is None else LocusPoint(hi.edge, hi.t)
    if lo is None and hi is None:
        return c
    return make_candidate(net, a, b)


# pair functions along a family of lines --------------------------------------

def element_ecc(net: Network, dm: np.ndarray, w: int, alpha) -> float:
    """ecc(w, alpha): farthest distance from vertex ``w`` to ``alpha``.

    ``alpha`` is ``("vertex", i)`` or ``("edge", j)``.
    """
    kind, idx = alpha
    if kind == "vertex":
        return float(dm[w, idx])
    if kind == "edge":
        s, t = net.edges[idx]
        return float((dm[w, s] + dm[w, t] + net.lengths[idx]) / 2)
    raise ValueError(f"unknown element kind {kind!r}")


def line_edge_hit(net: Network, a: float, b: float, e: int) -> Point:
    """Intersection of the line y = a x + b with edge ``e``."""
    (x0, y0), (x1, y1) = net.edge_segment(e)
    g0 = y0 - (a * x0 + b)
    g1 = y1 - (a * x1 + b)
    scale = math.sqrt(1 + a * a)
    if g0 == g1 or (g0 / scale > EPS and g1 / scale > EPS) or (g0 / scale < -EPS and g1 / scale < -EPS):
        raise NoIntersection(f"line y={a}x+{b} misses edge {e}")
    t = min(max(g0 / (g0 - g1), 0.0), 1.0)
    return lerp((x0, y0), (x1, y1), t)


def f_eval(net: Network, alpha, beta, w: int, z: int, line: tuple[float, float], e: int, e2: int,
           dm: np.ndarray | None = None) -> float:
    """ecc(w, alpha) + |wp| + |pq| + |qz| + ecc(z, beta) where the line
    meets ``e`` at p and ``e2`` at q."""
    if w not in net.edges[e]:
        raise ValueError(f"vertex {w} is not an endpoint of edge {e}")
    if z not in net.edges[e2]:
        raise ValueError(f"vertex {z} is not an endpoint of edge {e2}")
    if dm is None:
        dm = vertex_distances(net)
    a, b = line
    p = line_edge_hit(net, a, b, e)
    q = line_edge_hit(net, a, b, e2)
    return (element_ecc(net, dm, w, alpha) + dist(net.point(w), p) + dist(p, q)
            + dist(q, net.point(z)) + element_ecc(net, dm, z, beta))
