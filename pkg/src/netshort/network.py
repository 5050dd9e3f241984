"""Plane Euclidean networks: validation, locus addressing, JSON I/O."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    BadEdgeId,
    BadParameter,
    DegenerateEdge,
    Disconnected,
    NotAPath,
    NotPlanar,
    ParseError,
)
from .geometry import EPS, Point, lerp


@dataclass(frozen=True, order=True)
class LocusPoint:
    """A point on the network: ``t`` is the fraction of edge ``edge`` measured
    from the edge's first endpoint."""

    edge: int
    t: float

    def __post_init__(self):
        object.__setattr__(self, "edge", int(self.edge))
        object.__setattr__(self, "t", float(self.t))


@dataclass(frozen=True, eq=False)
class Network:
    vertices: np.ndarray
    edges: np.ndarray
    lengths: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def rho(self) -> float:
        return float(self.lengths.max()) if self.m else 0.0

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for k, (a, b) in enumerate(self.edges):
            inc[a].append(k)
            inc[b].append(k)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degree(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)

    @cached_property
    def edge_lookup(self) -> dict[tuple[int, int], int]:
        return {(min(a, b), max(a, b)): k for k, (a, b) in enumerate(self.edges.tolist())}

    def point(self, v: int) -> Point:
        return Point(float(self.vertices[v, 0]), float(self.vertices[v, 1]))

    def edge_segment(self, e: int) -> tuple[Point, Point]:
        a, b = self.edges[e]
        return self.point(a), self.point(b)

    def _check(self, lp: LocusPoint) -> None:
        if not (0 <= lp.edge < self.m):
            raise BadEdgeId(f"edge {lp.edge} out of range 0..{self.m - 1}")
        if not (0.0 <= lp.t <= 1.0) or math.isnan(lp.t):
            raise BadParameter(f"t={lp.t} outside [0, 1]")

    def locate(self, lp: LocusPoint) -> Point:
        self._check(lp)
        a, b = self.edge_segment(lp.edge)
        if lp.t == 0.0:
            return a
        if lp.t == 1.0:
            return b
        return lerp(a, b, lp.t)

    def vertex_locus(self, v: int) -> LocusPoint:
        """Canonical locus address of vertex ``v``: lowest-indexed incident
        edge with t in {0, 1}."""
        inc = self.incident[v]
        if not inc:
            raise BadEdgeId(f"vertex {v} has no incident edge")
        e = min(inc)
        return LocusPoint(e, 0.0 if self.edges[e, 0] == v else 1.0)

    def locus_vertex(self, lp: LocusPoint) -> int | None:
        """Vertex index when ``lp`` sits on a vertex, else None."""
        tol = EPS / self.lengths[lp.edge]
        if lp.t <= tol:
            return int(self.edges[lp.edge, 0])
        if lp.t >= 1.0 - tol:
            return int(self.edges[lp.edge, 1])
        return None

    def normalize(self, lp: LocusPoint) -> LocusPoint:
        self._check(lp)
        v = self.locus_vertex(lp)
        if v is not None:
            return self.vertex_locus(v)
        return lp

    def to_json(self, meta: dict | None = None) -> dict:
        obj = {
            "vertices": [[float(x), float(y)] for x, y in self.vertices],
            "edges": [[int(a), int(b)] for a, b in self.edges],
        }
        if meta is not None:
            obj["meta"] = meta
        return obj


def _raw_network(vertices, edges) -> Network:
    """Assemble a Network without validation (callers guarantee validity)."""
    v = np.array(vertices, dtype=float).reshape(-1, 2)
    e = np.array(edges, dtype=np.int64).reshape(-1, 2)
    lengths = np.hypot(*(v[e[:, 1]] - v[e[:, 0]]).T) if len(e) else np.zeros(0)
    v.setflags(write=False)
    e.setflags(write=False)
    lengths.setflags(write=False)
    return Network(v, e, lengths)


def build_network(vertices: Sequence, edges: Iterable, *, check_planar: bool = True) -> Network:
    """Validate raw vertex/edge lists and return an immutable Network.

    Vertices closer than EPS are merged. Raises DegenerateEdge, NotPlanar or
    Disconnected.
    """
    coords = np.array(vertices, dtype=float).reshape(-1, 2)
    if coords.size and not np.all(np.isfinite(coords)):
        raise ParseError("vertex coordinates must be finite")
    remap = _dedupe(coords)
    keep = sorted(set(remap))
    new_index = {old: i for i, old in enumerate(keep)}
    verts = coords[keep]
    seen: set[tuple[int, int]] = set()
    out_edges = []
    for raw in edges:
        i, j = int(raw[0]), int(raw[1])
        if not (0 <= i < len(coords) and 0 <= j < len(coords)):
            raise BadEdgeId(f"edge {raw!r} references a missing vertex")
        a, b = new_index[remap[i]], new_index[remap[j]]
        if a == b:
            raise DegenerateEdge(f"edge {raw!r} has length below {EPS}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise NotPlanar(f"duplicate edge {raw!r}")
        seen.add(key)
        out_edges.append((a, b))
    net = _raw_network(verts, out_edges)
    if net.m and net.lengths.min() < EPS:
        raise DegenerateEdge("edge shorter than EPS")
    if net.n == 0:
        raise Disconnected("empty network")
    if check_planar:
        bad = find_crossing(net.vertices, net.edges)
        if bad is not None:
            raise NotPlanar(f"edges {bad[0]} and {bad[1]} intersect")
    if net.n > 1:
        if net.m == 0:
            raise Disconnected("network has no edges")
        g = coo_matrix((np.ones(net.m), (net.edges[:, 0], net.edges[:, 1])), shape=(net.n, net.n))
        ncomp, _ = connected_components(g, directed=False)
        if ncomp > 1:
            raise Disconnected(f"network has {ncomp} components")
    return net


def _dedupe(coords: np.ndarray) -> list[int]:
    remap = list(range(len(coords)))
    order = np.lexsort((coords[:, 1], coords[:, 0]))
    for idx, i in enumerate(order):
        j = idx - 1
        while j >= 0 and coords[i, 0] - coords[order[j], 0] <= EPS:
            k = order[j]
            if math.hypot(*(coords[i] - coords[k])) <= EPS:
                remap[i] = remap[k]
                break
            j -= 1
    return remap


def find_crossing(vertices: np.ndarray, edges: np.ndarray) -> tuple[int, int] | None:
    """First pair of edges violating planarity, or None.

    Edges may only meet at a shared endpoint, and two edges sharing an
    endpoint must not overlap along a common direction.
    """
    m = len(edges)
    if m < 2:
        return None
    P = vertices
    A, B = P[edges[:, 0]], P[edges[:, 1]]
    lo, hi = np.minimum(A, B) - EPS, np.maximum(A, B) + EPS
    for i in range(m - 1):
        js = np.arange(i + 1, m)
        box = np.all(lo[js] <= hi[i], axis=1) & np.all(hi[js] >= lo[i], axis=1)
        js = js[box]
        if not len(js):
            continue
        bad = _pair_violations(P, edges, i, js)
        if bad.any():
            return i, int(js[np.argmax(bad)])
    return None


def _seg_dist(p, a, b):
    d = b - a
    den = np.einsum("ij,ij->i", d, d)
    t = np.clip(np.einsum("ij,ij->i", p - a, d) / den, 0.0, 1.0)
    proj = a + t[:, None] * d
    return np.hypot(*(p - proj).T)


def _pair_violations(P, edges, i, js):
    a1, b1 = P[edges[i, 0]], P[edges[i, 1]]
    a2, b2 = P[edges[js, 0]], P[edges[js, 1]]
    ia, ib = edges[i]
    ja, jb = edges[js, 0], edges[js, 1]
    shared_a = (ja == ia) | (ja == ib)
    shared_b = (jb == ia) | (jb == ib)

    a1r = np.broadcast_to(a1, a2.shape)
    b1r = np.broadcast_to(b1, a2.shape)
    # distances of each endpoint to the other segment
    d_a2 = _seg_dist(a2, a1r, b1r)
    d_b2 = _seg_dist(b2, a1r, b1r)
    d_a1 = _seg_dist(a1r, a2, b2)
    d_b1 = _seg_dist(b1r, a2, b2)

    def side(o, p, q):
        d = p - o
        ln = np.hypot(d[..., 0], d[..., 1])
        return (d[..., 0] * (q[..., 1] - o[..., 1]) - d[..., 1] * (q[..., 0] - o[..., 0])) / ln

    s1 = side(a1r, b1r, a2)
    s2 = side(a1r, b1r, b2)
    s3 = side(a2, b2, a1r)
    s4 = side(a2, b2, b1r)
    proper = (s1 * s2 < 0) & (s3 * s4 < 0) & (np.abs(s1) > EPS) & (np.abs(s2) > EPS) \
        & (np.abs(s3) > EPS) & (np.abs(s4) > EPS)

    none_shared = ~shared_a & ~shared_b
    touch = (d_a2 <= EPS) | (d_b2 <= EPS) | (d_a1 <= EPS) | (d_b1 <= EPS)
    bad_free = none_shared & (proper | touch)

    # one shared endpoint: the unshared endpoint of either edge must stay off
    # the other edge
    one_shared = shared_a ^ shared_b
    other_j_dist = np.where(shared_a, d_b2, d_a2)
    # unshared endpoint of edge i
    i_other_is_b = np.where(shared_a, ja == ia, jb == ia)
    other_i_dist = np.where(i_other_is_b, d_b1, d_a1)
    bad_one = one_shared & ((other_j_dist <= EPS) | (other_i_dist <= EPS))

    duplicate = shared_a & shared_b
    return bad_free | bad_one | duplicate


@dataclass(frozen=True, eq=False)
class PathNetwork:
    """A network whose edges form one open polygonal chain from u to v."""

    network: Network
    order: tuple[int, ...]
    prefix: np.ndarray = field(repr=False)
    edge_order: tuple[int, ...] = field(repr=False)
    forward: tuple[bool, ...] = field(repr=False)

    @property
    def u(self) -> int:
        return self.order[0]

    @property
    def v(self) -> int:
        return self.order[-1]

    @property
    def length(self) -> float:
        return float(self.prefix[-1])

    @cached_property
    def position(self) -> dict[int, int]:
        return {vtx: i for i, vtx in enumerate(self.order)}

    @cached_property
    def edge_rank(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.edge_order)}

    def arclength(self, lp: LocusPoint) -> float:
        """Distance from u along the path."""
        k = self.edge_rank[lp.edge]
        t = lp.t if self.forward[k] else 1.0 - lp.t
        return float(self.prefix[k] + t * self.network.lengths[lp.edge])

    def locus_at(self, s: float) -> LocusPoint:
        s = min(max(s, 0.0), self.length)
        k = int(np.searchsorted(self.prefix, s, side="right") - 1)
        k = min(max(k, 0), len(self.edge_order) - 1)
        e = self.edge_order[k]
        frac = (s - self.prefix[k]) / self.network.lengths[e]
        frac = min(max(frac, 0.0), 1.0)
        return LocusPoint(e, frac if self.forward[k] else 1.0 - frac)

    def point_at(self, s: float) -> Point:
        return self.network.locate(self.locus_at(s))

    def vertex_points(self) -> np.ndarray:
        return self.network.vertices[list(self.order)]


def as_path(net: Network) -> PathNetwork:
    """View a network as a path; raises NotAPath otherwise."""
    if net.m != net.n - 1 or net.n < 2:
        raise NotAPath("a path on n vertices has n - 1 edges")
    deg = net.degree
    ends = np.flatnonzero(deg == 1)
    if len(ends) != 2 or np.any(deg > 2):
        raise NotAPath("network is not a simple path")
    start = int(ends.min())
    order = [start]
    edge_order: list[int] = []
    forward: list[bool] = []
    prev_edge = -1
    cur = start
    while len(order) < net.n:
        nxt = [e for e in net.incident[cur] if e != prev_edge]
        if not nxt:
            raise NotAPath("network is not connected as a path")
        e = nxt[0]
        a, b = net.edges[e]
        forward.append(bool(a == cur))
        cur = int(b if a == cur else a)
        order.append(cur)
        edge_order.append(e)
        prev_edge = e
    prefix = np.concatenate([[0.0], np.cumsum(net.lengths[edge_order])])
    prefix.setflags(write=False)
    return PathNetwork(net, tuple(order), prefix, tuple(edge_order), tuple(forward))


def path_network(points: Sequence) -> PathNetwork:
    pts = list(points)
    return as_path(build_network(pts, [(i, i + 1) for i in range(len(pts) - 1)]))


def subdivide_with_map(net: Network, max_len: float) -> tuple[Network, np.ndarray]:
    """Split every edge into equal pieces no longer than ``max_len``.

    Returns the new network and an ``(m', 3)`` array giving, for each new
    edge, ``(original edge, t_start, t_end)`` in the original parameter.
    """
    if not max_len > EPS:
        raise BadParameter("max_len must exceed EPS")
    verts = [tuple(v) for v in net.vertices.tolist()]
    edges = []
    back = []
    for e, (a, b) in enumerate(net.edges.tolist()):
        k = max(1, math.ceil(net.lengths[e] / max_len - 1e-12))
        chain = [a]
        pa, pb = verts[a], verts[b]
        for i in range(1, k):
            verts.append(tuple(lerp(pa, pb, i / k)))
            chain.append(len(verts) - 1)
        chain.append(b)
        for i in range(k):
            edges.append((chain[i], chain[i + 1]))
            back.append((e, i / k, (i + 1) / k))
    return _raw_network(verts, edges), np.array(back, dtype=float).reshape(-1, 3)


def subdivide(net: Network, max_len: float) -> Network:
    return subdivide_with_map(net, max_len)[0]


def _reject_constant(token):
    raise ParseError(f"non-finite number {token!r} in network JSON")


def network_from_json(obj) -> Network:
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj, parse_constant=_reject_constant)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise ParseError("network JSON needs 'vertices' and 'edges'")
    try:
        verts = [(float(x), float(y)) for x, y in obj["vertices"]]
        edges = [(int(a), int(b)) for a, b in obj["edges"]]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed vertices or edges: {exc}") from exc
    if any(not (math.isfinite(x) and math.isfinite(y)) for x, y in verts):
        raise ParseError("non-finite coordinate")
    return build_network(verts, edges)


def load_network(path) -> Network:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return network_from_json(text)


def dump_network(net: Network, meta: dict | None = None) -> str:
    return json.dumps(net.to_json(meta), indent=2)
