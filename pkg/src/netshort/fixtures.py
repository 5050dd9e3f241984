"""Named test networks and generators for known constructions."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .augment import Candidate, candidate_from_points, insert_segment
from .distance import point_distance, vertex_distances
from .errors import GeometryError, InfeasibleGeometry
from .network import LocusPoint, Network, PathNetwork, _pair_violations, build_network, path_network

# small named networks ---------------------------------------------------------


def unit_square() -> Network:
    return build_network([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1), (1, 2), (2, 3), (3, 0)])


def straight_path(length: float = 2.0, pieces: int = 2) -> PathNetwork:
    return path_network([(length * i / pieces, 0.0) for i in range(pieces + 1)])


def v_path() -> PathNetwork:
    """Symmetric right-angled V: (-1, 1), (0, 0), (1, 1)."""
    return path_network([(-1, 1), (0, 0), (1, 1)])


def u_path() -> PathNetwork:
    return path_network([(0, 0), (2, 0), (2, 2), (0, 2)])


def l_path() -> PathNetwork:
    return path_network([(0, 0), (1, 0), (1, 1)])


def s_path() -> PathNetwork:
    """Three horizontal runs joined by vertical steps; the vertical line
    x = 2 meets it three times."""
    return path_network([(0, 0), (4, 0), (4, 1), (0, 1), (0, 2), (4, 2)])


def plus_network() -> Network:
    """Four unit arms from the origin. The segment (1,0)-(0,1) makes the
    diameter worse: its midpoint is farther from the opposite arm tips."""
    return build_network([(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1), (0, 2), (0, 3), (0, 4)])


def limit_path() -> PathNetwork:
    """Path without an optimal simple shortcut: the best simple segments
    converge to one that touches the vertex (2.95, 0.41)."""
    return path_network([(2.77, 2.29), (1.84, 0.94), (3.65, 2.07), (2.95, 0.41), (3.82, 2.01), (3.45, -1.22)])


def w_path() -> PathNetwork:
    """Path whose hull closure has a reflex face although an optimal simple
    shortcut exists."""
    return path_network([(-2, 2), (-1, 0), (0, 1), (1, 0), (2, 2)])


# two-chain configurations -----------------------------------------------------


@dataclass(frozen=True)
class TwoChainFixture:
    kind: str
    path: PathNetwork
    candidate: Candidate
    first: tuple[float, float]  # x-extent of the first chain on the segment
    second: tuple[float, float]
    expected: float


def two_chain_fixture(kind: str) -> TwoChainFixture:
    """Paths on the x-axis segment with two chains of prescribed lengths in
    the given relation; the other chains are longer detours below or above
    and never shorten a route."""
    if kind == "disjoint":
        # (1,0)-(3,0) of length 4 above, (5,0)-(6,0) of length 3 above
        pts = [(0, 0), (0.5, -1), (1, 0), (2, math.sqrt(3)), (3, 0), (4, -1), (5, 0),
               (5.5, math.sqrt(2)), (6, 0), (8, -1), (10, 0)]
        return TwoChainFixture(kind, path_network(pts), _axis_candidate(pts, 0, 10), (1, 3), (5, 6), 7.0)
    if kind == "nested":
        # (1,0)-(9,0) of length 10 above, (4,0)-(5,0) of length 2 below
        pts = [(0, 0), (0.5, -1), (1, 0), (5, 3), (9, 0), (7, -1), (5, 0),
               (4.5, -math.sqrt(0.75)), (4, 0), (4, 1)]
        return TwoChainFixture(kind, path_network(pts), _axis_candidate(pts, 0, 9), (1, 9), (4, 5), 9.5)
    if kind == "overlapping":
        # (1,0)-(5,0) of length 6 above, (3,0)-(8,0) of length 7 below
        pts = [(0, 0), (0.5, -1), (1, 0), (3, math.sqrt(5)), (5, 0), (4, -0.5), (3, 0),
               (5.5, -math.sqrt(6)), (8, 0), (9, 1), (10, 0)]
        return TwoChainFixture(kind, path_network(pts), _axis_candidate(pts, 0, 10), (1, 5), (3, 8), 9.0)
    raise ValueError(f"unknown chain relation {kind!r}")


def _axis_candidate(pts, x0, x1) -> Candidate:
    net = path_network(pts).network
    return candidate_from_points(net, (x0, 0.0), (x1, 0.0))


# spike construction -----------------------------------------------------------


@dataclass(frozen=True)
class SpikeFixture:
    path: PathNetwork
    candidate: Candidate
    left_tops: tuple[LocusPoint, ...]
    right_tops: tuple[LocusPoint, ...]
    span: float
    excess: float  # bound on how far the diameter may exceed the span


SPIKE_HALF_WIDTH = 0.25


def gen_spike_fixture(k: int, span: float, depth: float = 5e-5) -> SpikeFixture:
    """Path whose augmented diameter ``span`` is attained by every pair of a
    left spike top and a right spike top.

    The segment is the x-axis from -span/2 to span/2 with middle o at the
    origin. k/2 thin triangular spikes stand above the axis on each side with
    centers one unit apart; between spikes the path dips slightly below the
    axis. A spike centered at ``x`` with sides of length ``span/2 - |x|`` has
    its farthest point from o (the top) at distance exactly span/2, so tops
    on opposite sides are exactly ``span`` apart. The two end dips reach a
    little beyond span/2; the depth is chosen so that ``excess`` stays tiny.
    """
    if k < 2 or k % 2:
        raise InfeasibleGeometry("spike count must be even and at least 2")
    w = SPIKE_HALF_WIDTH
    half = span / 2
    outer = half - (k / 2 - 0.5 + w)
    if outer < 0.05:
        raise InfeasibleGeometry(f"span {span} too short for {k} spikes (need > {k - 1 + 2 * w + 0.1})")
    depth = min(depth, math.sqrt(1e-9 * outer))
    centers = [-(j + 0.5) for j in reversed(range(k // 2))] + [j + 0.5 for j in range(k // 2)]
    pts = [(-half, 0.0)]
    apex_index = []
    prev = -half
    for x in centers:
        side = half - abs(x)
        pts.append(((prev + x - w) / 2, -depth))
        pts.append((x - w, 0.0))
        apex_index.append(len(pts))
        pts.append((x, math.sqrt(side * side - w * w)))
        pts.append((x + w, 0.0))
        prev = x + w
    pts.append(((prev + half) / 2, -depth))
    pts.append((half, 0.0))
    path = path_network(pts)
    left, right = [], []
    # edge ia - 1 runs left base -> apex, edge ia apex -> right base; the top
    # lies w past the apex going away from o
    for x, ia in zip(centers, apex_index):
        side = half - abs(x)
        if x < 0:
            left.append(LocusPoint(ia - 1, (side - w) / side))
        else:
            right.append(LocusPoint(ia, w / side))
    cand = candidate_from_points(path.network, pts[0], pts[-1])
    excess = 2 * depth * depth / outer
    fx = SpikeFixture(path, cand, tuple(left), tuple(right), float(span), excess)
    _check_spikes(fx)
    return fx


def spike_top_distances(fx: SpikeFixture) -> np.ndarray:
    """Distances in the augmented path between every left and right top."""
    aug = insert_segment(fx.path.network, fx.candidate)
    dm = vertex_distances(aug.network)
    return np.array([[point_distance(aug.network, aug.lift(a), aug.lift(b), dm) for b in fx.right_tops]
                     for a in fx.left_tops])


def _check_spikes(fx: SpikeFixture) -> None:
    d = spike_top_distances(fx)
    if np.abs(d - fx.span).max() > 1e-7:
        raise InfeasibleGeometry(f"spike tops are {np.abs(d - fx.span).max():.3g} off the span")


# random instances -------------------------------------------------------------


def random_path(rng: np.random.Generator, n: int, scale: float = 10.0, attempts: int = 200) -> PathNetwork:
    """Random simple polygonal path on ``n`` vertices (rejection sampling).

    Each new edge is checked only against the edges already placed.
    """
    for _ in range(attempts):
        pts = [rng.uniform(0, scale, 2)]
        ok = True
        while len(pts) < n and ok:
            for _ in range(50):
                nxt = pts[-1] + rng.normal(0, scale / 4, 2)
                if _extends_simply(pts, nxt):
                    pts.append(nxt)
                    break
            else:
                ok = False
        if ok:
            try:
                return path_network(pts)
            except GeometryError:
                continue
    raise InfeasibleGeometry(f"no simple path on {n} vertices found")


def _extends_simply(pts: list, nxt: np.ndarray) -> bool:
    k = len(pts)
    P = np.vstack(pts + [nxt])
    if math.dist(P[-1], P[-2]) <= 1e-6:
        return False
    if k == 1:
        return True
    edges = np.array([(i, i + 1) for i in range(k)])
    return not _pair_violations(P, edges, k - 1, np.arange(k - 1)).any()


def random_planar_network(rng: np.random.Generator, n: int, extra: float = 0.5, scale: float = 10.0) -> Network:
    """Connected plane network: a random spanning tree of nearby points plus
    non-crossing extra edges, all with vertices in general position."""
    from scipy.spatial import Delaunay

    P = rng.uniform(0, scale, (n, 2))
    tri = Delaunay(P)
    cand = set()
    for s in tri.simplices:
        for i in range(3):
            a, b = sorted((int(s[i]), int(s[(i + 1) % 3])))
            cand.add((a, b))
    cand = sorted(cand)
    # Delaunay edges never cross; a random spanning tree keeps it connected
    order = rng.permutation(len(cand))
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    chosen = []
    for k in order:
        a, b = cand[k]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            chosen.append((a, b))
        elif rng.random() < extra:
            chosen.append((a, b))
    return build_network(P, chosen)
