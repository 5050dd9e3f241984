"""Brute-force reference values.

Both oracles sample the locus on a uniform grid per edge and report an
error bound derived from the grid spacing with every value.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .augment import Candidate, diameter_with_segment, make_candidate
from .distance import diameter_value, vertex_distances
from .errors import BadParameter, CollinearOverlap, DegenerateSegment
from .network import LocusPoint, Network


@dataclass(frozen=True)
class OracleConfig:
    diameter_samples_per_edge: int = 200
    endpoint_samples_per_edge: int = 50
    seed: int = 0
    max_pairs: int | None = None  # subsample endpoint pairs beyond this many

    def __post_init__(self):
        if self.diameter_samples_per_edge < 2 or self.endpoint_samples_per_edge < 2:
            raise BadParameter("oracle needs at least 2 samples per edge")


class OracleValue(NamedTuple):
    value: float
    error: float

    def __float__(self) -> float:
        return self.value


def sample_points(net: Network, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Edge id and offset of ``k`` evenly spaced samples on every edge."""
    t = np.linspace(0.0, 1.0, k)
    edge = np.repeat(np.arange(net.m), k)
    offset = (net.lengths[:, None] * t[None, :]).ravel()
    return edge, offset


def sampled_diameter(net: Network, cfg: OracleConfig | None = None, chunk: int = 1024) -> OracleValue:
    """Largest distance between grid samples.

    The true diameter lies in ``[value, value + error]``: moving both points
    of a diametral pair to their nearest samples changes the distance by at
    most one grid spacing.
    """
    cfg = cfg or OracleConfig()
    k = cfg.diameter_samples_per_edge
    if net.m == 0:
        return OracleValue(0.0, 0.0)
    dm = vertex_distances(net)
    edge, off = sample_points(net, k)
    u, v = net.edges[edge, 0], net.edges[edge, 1]
    rest = net.lengths[edge] - off
    best = 0.0
    for lo in range(0, len(edge), chunk):
        sl = slice(lo, lo + chunk)
        a_u, a_v = off[sl, None], rest[sl, None]
        d = np.minimum.reduce([
            a_u + dm[u[sl, None], u[None, :]] + off[None, :],
            a_u + dm[u[sl, None], v[None, :]] + rest[None, :],
            a_v + dm[v[sl, None], u[None, :]] + off[None, :],
            a_v + dm[v[sl, None], v[None, :]] + rest[None, :],
        ])
        same = edge[sl, None] == edge[None, :]
        d = np.where(same, np.abs(off[sl, None] - off[None, :]), d)
        best = max(best, float(d.max()))
    return OracleValue(best, float(net.lengths.max()) / (k - 1))


@dataclass(frozen=True)
class GridResult:
    candidate: Candidate | None
    diameter: float
    error: float
    base_diameter: float
    evaluated: int

    def __iter__(self):
        return iter((self.candidate, self.diameter))


def endpoint_grid(net: Network, k: int) -> list[LocusPoint]:
    """Distinct grid locus points, vertices counted once."""
    seen = set()
    out = []
    for e in range(net.m):
        for t in np.linspace(0.0, 1.0, k):
            lp = net.normalize(LocusPoint(e, float(t)))
            if lp not in seen:
                seen.add(lp)
                out.append(lp)
    return out


def grid_shortcut_search(net: Network, cfg: OracleConfig | None = None, simple_only: bool = False,
                         points: list[LocusPoint] | None = None) -> GridResult:
    """Best segment between grid points, by direct evaluation.

    The reported error is a heuristic: the optimum's endpoints are within one
    spacing of grid points, and the diameter moves by at most about twice the
    endpoint displacement per endpoint while the crossing pattern persists.
    """
    cfg = cfg or OracleConfig()
    k = cfg.endpoint_samples_per_edge
    base = diameter_value(net)
    pts = endpoint_grid(net, k) if points is None else points
    pairs = [(i, j) for i in range(len(pts)) for j in range(i + 1, len(pts))]
    if cfg.max_pairs is not None and len(pairs) > cfg.max_pairs:
        rng = np.random.default_rng(cfg.seed)
        keep = np.sort(rng.choice(len(pairs), cfg.max_pairs, replace=False))
        pairs = [pairs[i] for i in keep]
    best: tuple[float, LocusPoint, LocusPoint] | None = None
    best_c = None
    count = 0
    for i, j in pairs:
        a, b = pts[i], pts[j]
        if a.edge == b.edge and net.locus_vertex(a) is None and net.locus_vertex(b) is None:
            continue
        try:
            c = make_candidate(net, a, b)
        except (CollinearOverlap, DegenerateSegment):
            continue
        if c.length <= 1e-9 or (simple_only and not c.is_simple):
            continue
        count += 1
        key = (diameter_with_segment(net, c), c.a, c.b)
        if best is None or key < best:
            best, best_c = key, c
    error = 4.0 * float(net.lengths.max()) / (k - 1)
    if best is None or best[0] >= base - 1e-9:
        return GridResult(None, base, error, base, count)
    return GridResult(best_c, best[0], error, base, count)
