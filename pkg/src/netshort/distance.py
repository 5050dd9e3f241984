"""Network distances, eccentricity profiles and the continuous diameter.

Every point on an edge other than the target edge reaches it through one of
the edge's endpoints, so the farthest distance from a point at offset ``x``
on edge ``uv`` to edge ``st`` (length ``l``) is

    (d(x, s) + d(x, t) + l) / 2,   d(x, s) = min(x + d(u, s), |uv| - x + d(v, s)).

That concave, piecewise linear function of ``x`` is the eccentricity profile;
its maximum over all edge pairs is the continuous diameter.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import SameEdge
from .network import LocusPoint, Network

TIE = 1e-9


def vertex_distances(net: Network) -> np.ndarray:
    """All-pairs shortest path lengths between vertices (Dijkstra)."""
    if net.m == 0:
        return np.zeros((net.n, net.n))
    g = csr_matrix((net.lengths, (net.edges[:, 0], net.edges[:, 1])), shape=(net.n, net.n))
    return shortest_path(g, method="D", directed=False)


def _offset(net: Network, lp: LocusPoint) -> float:
    return lp.t * float(net.lengths[lp.edge])


def point_distance(net: Network, a: LocusPoint, b: LocusPoint, dm: np.ndarray | None = None) -> float:
    """Shortest path length between two locus points."""
    if dm is None:
        dm = vertex_distances(net)
    ea, eb = a.edge, b.edge
    xa, xb = _offset(net, a), _offset(net, b)
    if ea == eb:
        return abs(xa - xb)
    u, v = net.edges[ea]
    s, t = net.edges[eb]
    la, lb = net.lengths[ea], net.lengths[eb]
    return float(min(
        xa + dm[u, s] + xb,
        xa + dm[u, t] + lb - xb,
        la - xa + dm[v, s] + xb,
        la - xa + dm[v, t] + lb - xb,
    ))


def distance_to_vertex(net: Network, a: LocusPoint, w: int, dm: np.ndarray) -> float:
    u, v = net.edges[a.edge]
    x = _offset(net, a)
    return float(min(x + dm[u, w], net.lengths[a.edge] - x + dm[v, w]))


def pair_maxima(dm, ends_i, len_i, ends_j, len_j) -> np.ndarray:
    """max over a in edge i, b in edge j of d(a, b), for every (i, j).

    ``ends_*`` are ``(k, 2)`` endpoint arrays and ``len_*`` lengths. Same-edge
    entries are meaningless and must be masked by the caller.
    """
    u, v = ends_i[:, 0][:, None], ends_i[:, 1][:, None]
    s, t = ends_j[:, 0][None, :], ends_j[:, 1][None, :]
    li = len_i[:, None]
    lj = len_j[None, :]
    dus, dvs, dut, dvt = dm[u, s], dm[v, s], dm[u, t], dm[v, t]
    xa = np.clip((li + dvs - dus) / 2, 0.0, li)
    xb = np.clip((li + dvt - dut) / 2, 0.0, li)
    best = None
    for x in (0.0, li, xa, xb):
        val = np.minimum(x + dus, li - x + dvs) + np.minimum(x + dut, li - x + dvt)
        best = val if best is None else np.maximum(best, val)
    return (best + lj) / 2


def edge_pair_maxima(net: Network, dm: np.ndarray, rows=None, cols=None) -> np.ndarray:
    rows = np.arange(net.m) if rows is None else np.asarray(rows, dtype=np.int64)
    cols = np.arange(net.m) if cols is None else np.asarray(cols, dtype=np.int64)
    out = pair_maxima(dm, net.edges[rows], net.lengths[rows], net.edges[cols], net.lengths[cols])
    out[rows[:, None] == cols[None, :]] = -np.inf
    return out


def diameter_value(net: Network, dm: np.ndarray | None = None) -> float:
    """Continuous diameter as a bare number."""
    if net.m == 0:
        return 0.0
    if dm is None:
        dm = vertex_distances(net)
    if net.m == 1:
        return float(net.lengths[0])
    return float(edge_pair_maxima(net, dm).max())


@dataclass(frozen=True)
class EccProfile:
    """Farthest distance from the point at parameter t of ``source`` to the
    edge ``target``; concave with at most three linear pieces."""

    source: int
    target: int
    ts: tuple[float, ...]
    values: tuple[float, ...]
    witness_start: LocusPoint
    witness_end: LocusPoint

    def __call__(self, t):
        return np.interp(t, self.ts, self.values)

    @property
    def max_value(self) -> float:
        return max(self.values)

    @property
    def slopes(self) -> list[float]:
        return [
            (self.values[i + 1] - self.values[i]) / (self.ts[i + 1] - self.ts[i])
            for i in range(len(self.ts) - 1)
        ]

    def argmax_interval(self, tol: float = TIE) -> tuple[float, float]:
        top = self.max_value
        hits = [t for t, v in zip(self.ts, self.values) if v >= top - tol]
        return min(hits), max(hits)


def _farthest_on_edge(net: Network, dm: np.ndarray, w_dist_s: float, w_dist_t: float, e: int) -> float:
    """Parameter on edge ``e`` of the farthest point from a source whose
    distances to the endpoints are given."""
    lb = float(net.lengths[e])
    y = (w_dist_t + lb - w_dist_s) / 2
    return float(min(max(y / lb, 0.0), 1.0))


def ecc_profile(net: Network, dm: np.ndarray, uv: int, st: int) -> EccProfile:
    if uv == st:
        raise SameEdge(f"profile of edge {uv} against itself")
    u, v = net.edges[uv]
    s, t = net.edges[st]
    la, lb = float(net.lengths[uv]), float(net.lengths[st])
    dus, dvs, dut, dvt = dm[u, s], dm[v, s], dm[u, t], dm[v, t]

    def phi(x):
        return (min(x + dus, la - x + dvs) + min(x + dut, la - x + dvt) + lb) / 2

    tol = 1e-12 * max(1.0, la)
    xs = [0.0]
    for x in sorted((float(min(max((la + dvs - dus) / 2, 0.0), la)), float(min(max((la + dvt - dut) / 2, 0.0), la)))):
        if tol < x < la - tol and x - xs[-1] > tol:
            xs.append(x)
    xs.append(la)
    ts: list[float] = []
    vals: list[float] = []
    for x in xs:
        val = phi(x)
        # drop interior points where the slope does not change
        if len(ts) >= 2:
            t0, t1 = ts[-2], ts[-1]
            slope_prev = (vals[-1] - vals[-2]) / (t1 - t0)
            slope_new = (val - vals[-1]) / (x / la - t1)
            if abs(slope_prev - slope_new) <= 1e-9 * max(1.0, la):
                ts.pop()
                vals.pop()
        ts.append(x / la)
        vals.append(float(val))
    w_u = LocusPoint(st, _farthest_on_edge(net, dm, dus, dut, st))
    w_v = LocusPoint(st, _farthest_on_edge(net, dm, dvs, dvt, st))
    return EccProfile(uv, st, tuple(ts), tuple(vals), w_u, w_v)


@dataclass(frozen=True)
class DiametralPair:
    kind: str  # "vertex-vertex" | "edge-edge" | "vertex-edge"
    a: LocusPoint
    b: LocusPoint
    value: float


def classify_pair(net: Network, a: LocusPoint, b: LocusPoint) -> str:
    va, vb = net.locus_vertex(a), net.locus_vertex(b)
    if va is not None and vb is not None:
        return "vertex-vertex"
    pend = net.degree == 1
    if (va is not None and pend[va]) or (vb is not None and pend[vb]):
        return "vertex-edge"
    return "edge-edge"


_KIND_RANK = {"edge-edge": 0, "vertex-edge": 1, "vertex-vertex": 2}


def continuous_diameter(net: Network, dm: np.ndarray | None = None) -> DiametralPair:
    """Maximum network distance over all pairs of locus points.

    Tied pairs are ranked edge-edge first, then vertex-edge, then
    vertex-vertex, and within a kind by the lexicographically smallest
    ``(first point, second point)``. On a profile plateau the first point is
    the plateau midpoint.
    """
    if dm is None:
        dm = vertex_distances(net)
    if net.m == 0:
        raise SameEdge("network without edges has no locus pairs")
    if net.m == 1:
        a, b = net.vertex_locus(int(net.edges[0, 0])), net.vertex_locus(int(net.edges[0, 1]))
        return DiametralPair("vertex-vertex", a, b, float(net.lengths[0]))
    vals = edge_pair_maxima(net, dm)
    top = float(vals.max())
    best = None
    for i, j in zip(*np.nonzero(vals >= top - TIE)):
        if i > j:
            continue
        a, b = _witness(net, dm, int(i), int(j))
        kind = classify_pair(net, a, b)
        key = (_KIND_RANK[kind], a, b)
        if best is None or key < best:
            best = key
    _, a, b = best
    return DiametralPair(classify_pair(net, a, b), a, b, top)


def _witness(net: Network, dm: np.ndarray, i: int, j: int) -> tuple[LocusPoint, LocusPoint]:
    prof = ecc_profile(net, dm, i, j)
    lo, hi = prof.argmax_interval()
    a = net.normalize(LocusPoint(i, (lo + hi) / 2))
    s, t = net.edges[j]
    ta = _farthest_on_edge(net, dm, distance_to_vertex(net, a, s, dm), distance_to_vertex(net, a, t, dm), j)
    b = net.normalize(LocusPoint(j, ta))
    return a, b


def eccentricity(net: Network, a: LocusPoint, dm: np.ndarray | None = None) -> float:
    """Farthest network distance from ``a`` to any locus point."""
    if dm is None:
        dm = vertex_distances(net)
    best = 0.0
    for e in range(net.m):
        if e == a.edge:
            x = _offset(net, a)
            best = max(best, x, float(net.lengths[e]) - x)
            continue
        s, t = net.edges[e]
        ds, dt = distance_to_vertex(net, a, s, dm), distance_to_vertex(net, a, t, dm)
        best = max(best, (ds + dt + net.lengths[e]) / 2)
    return float(best)
