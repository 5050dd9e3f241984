"""Additive approximation over segments that contain two network vertices.

For one supporting line all contacts with the network are turned into
vertices once. A family of extensions shares its left endpoint and grows to
the right one contact at a time; each step adds one straight piece, which
updates all-pairs distances with a single rank-one relaxation. For every
extension two values are tracked:

* ``E``: the farthest distance from a point of the segment,
* ``N``: the farthest distance between two points of the original network.

The diameter is ``max(E, N)``. ``N`` can only drop as the segment grows, so
only extensions whose ``E`` is a suffix minimum are worth probing, and along
those ``E`` rises while ``N`` falls: a binary search finds the crossing.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .augment import Candidate, Contact, LineProfile, diameter_with_segment, line_profile, make_candidate
from .distance import diameter_value, edge_pair_maxima, pair_maxima, vertex_distances
from .errors import BadEpsilon, BudgetExceeded, CollinearOverlap, DegenerateSegment
from .geometry import EPS
from .network import LocusPoint, Network, _raw_network, subdivide_with_map

DEFAULT_BUDGET = 30


def enumerate_anchor_pairs(net: Network) -> list[tuple[int, int]]:
    """One vertex pair per distinct line through two vertices."""
    n = net.n
    covered = np.zeros((n, n), dtype=bool)
    out = []
    P = net.vertices
    for i in range(n):
        for j in range(i + 1, n):
            if covered[i, j]:
                continue
            d = P[j] - P[i]
            side = (d[0] * (P[:, 1] - P[i, 1]) - d[1] * (P[:, 0] - P[i, 0])) / math.hypot(*d)
            on = np.flatnonzero(np.abs(side) <= EPS)
            covered[np.ix_(on, on)] = True
            out.append((i, j))
    return out


class _LineEngine:
    """Pre-split network and contact bookkeeping for one line."""

    def __init__(self, net: Network, prof: LineProfile):
        self.net = net
        self.prof = prof
        verts = [tuple(v) for v in net.vertices.tolist()]
        split_at: dict[int, int] = {}
        vid = []
        for c in prof.contacts:
            if c.vertex is not None:
                vid.append(c.vertex)
            else:
                verts.append((c.point[0], c.point[1]))
                split_at[c.edge] = len(verts) - 1
                vid.append(len(verts) - 1)
        edges = []
        for e, (u, v) in enumerate(net.edges.tolist()):
            if e in split_at:
                w = split_at[e]
                edges += [(u, w), (w, v)]
            else:
                edges.append((u, v))
        self.split = _raw_network(verts, edges)
        self.vid = vid
        self.s = np.array([c.s for c in prof.contacts])
        self.is_vertex = np.array([c.vertex is not None for c in prof.contacts], dtype=bool)
        self._dm = None

    @property
    def dm(self) -> np.ndarray:
        if self._dm is None:
            self._dm = vertex_distances(self.split)
        return self._dm

    def groups(self) -> list[range]:
        """Maximal runs of contacts not separated by a collinear edge."""
        k = len(self.prof.contacts)
        out = []
        start = 0
        for i in range(1, k + 1):
            if i == k or self.prof.blocked(self.s[i - 1], self.s[i]):
                out.append(range(start, i))
                start = i
        return out

    def group_of(self, i: int) -> range:
        for g in self.groups():
            if i in g:
                return g
        raise IndexError(i)

    def family(self, left: int, rights: Sequence[int]) -> "ExtensionFamily":
        split = self.split
        base_m = split.m
        d = self.dm.copy()
        ends = [tuple(e) for e in split.edges.tolist()]
        lens = list(split.lengths)
        seg = []
        E = []
        snaps = []
        cur = left
        for j in rights:
            step = 1 if j > cur else -1
            for k in range(cur, j, step):
                a, b = self.vid[k], self.vid[k + step]
                w = abs(self.s[k + step] - self.s[k])
                T = d[:, a, None] + w + d[None, b, :]
                d = np.minimum(d, np.minimum(T, T.T))
                seg.append(len(ends))
                ends.append((a, b))
                lens.append(w)
            cur = j
            all_ends = np.array(ends, dtype=np.int64)
            all_lens = np.array(lens)
            rows = np.array(seg)
            vals = pair_maxima(d, all_ends[rows], all_lens[rows], all_ends, all_lens)
            vals[np.arange(len(rows)), rows] = -np.inf
            E.append(float(max(vals.max(), all_lens[rows].max())))
            snaps.append(d)
        return ExtensionFamily(self, left, tuple(rights), np.array(E), snaps, base_m)

    def contact_locus(self, i: int) -> LocusPoint:
        c = self.prof.contacts[i]
        return LocusPoint(c.edge, c.t)

    def candidate(self, i: int, j: int) -> Candidate:
        lo, hi = min(i, j), max(i, j)
        return make_candidate(self.net, self.contact_locus(lo), self.contact_locus(hi))


@dataclass(eq=False)
class ExtensionFamily:
    """Extensions sharing the left endpoint ``left``; ``rights[k]`` is the
    contact index of the k-th right endpoint."""

    engine: _LineEngine = field(repr=False)
    left: int
    rights: tuple[int, ...]
    E: np.ndarray
    snapshots: list = field(repr=False)
    base_m: int = field(repr=False)
    N: dict[int, float] = field(default_factory=dict)

    @property
    def contacts(self) -> tuple[Contact, ...]:
        return tuple(self.engine.prof.contacts[j] for j in self.rights)

    def network_side(self, k: int) -> float:
        """N(k): farthest pair of original network points with extension k."""
        if k not in self.N:
            split = self.engine.split
            vals = pair_maxima(self.snapshots[k], split.edges, split.lengths, split.edges, split.lengths)
            np.fill_diagonal(vals, -np.inf)
            self.N[k] = float(max(vals.max(), split.lengths.max()))
        return self.N[k]

    def value(self, k: int) -> float:
        return max(float(self.E[k]), self.network_side(k))

    def staircase(self) -> list[int]:
        """Indices k with E[k] <= E[k'] for every k' > k, ascending."""
        out = []
        best = math.inf
        for k in range(len(self.E) - 1, -1, -1):
            if self.E[k] <= best:
                out.append(k)
                best = self.E[k]
        return out[::-1]

    def best(self) -> tuple[int, float]:
        """Index and value minimizing max(E, N), probing N O(log k) times."""
        st = self.staircase()
        lo, hi = 0, len(st)
        while lo < hi:
            mid = (lo + hi) // 2
            k = st[mid]
            if self.E[k] >= self.network_side(k):
                hi = mid
            else:
                lo = mid + 1
        picks = [st[t] for t in (lo - 1, lo) if 0 <= t < len(st)]
        return min(((self.value(k), k) for k in picks), key=lambda vk: (vk[0], vk[1]))[::-1]

    def exhaustive(self) -> tuple[int, float]:
        vals = [(self.value(k), k) for k in range(len(self.E))]
        v, k = min(vals)
        return k, v

    def candidate(self, k: int) -> Candidate:
        return self.engine.candidate(self.left, self.rights[k])


# single-anchor entry points ------------------------------------------------

def _anchor_engine(net: Network, u: int, v: int):
    if u == v:
        raise DegenerateSegment("anchor vertices coincide")
    prof = line_profile(net, net.point(u), net.point(v))
    eng = _LineEngine(net, prof)
    iu = next(i for i, c in enumerate(prof.contacts) if c.vertex == u)
    iv = next(i for i, c in enumerate(prof.contacts) if c.vertex == v)
    return eng, iu, iv


def _covered(eng: _LineEngine, i: int, j: int) -> bool:
    lo, hi = min(i, j), max(i, j)
    return all(eng.prof.blocked(eng.s[k], eng.s[k + 1]) for k in range(lo, hi))


def _ray(eng: _LineEngine, start: int, step: int, along_network: bool) -> list[int]:
    out = [start]
    k = start
    while 0 <= k + step < len(eng.s):
        blocked = eng.prof.blocked(eng.s[k], eng.s[k + step])
        if blocked != along_network:
            break
        k += step
        out.append(k)
    return out


def extension_eccentricities(net: Network, u: int, v: int, direction: str = "right") -> list[float]:
    """E for the extensions of ``uv`` beyond ``v`` (right) or beyond ``u``
    (left), starting with ``uv`` itself."""
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    eng, iu, iv = _anchor_engine(net, u, v)
    anchor, far = (iu, iv) if direction == "right" else (iv, iu)
    step = 1 if far > anchor else -1
    if _covered(eng, anchor, far):
        # the segment already lies on the network: nothing is added
        rights = _ray(eng, far, step, along_network=True)
        return [_covered_ecc(eng, anchor, j) for j in rights]
    if any(eng.prof.blocked(eng.s[k], eng.s[k + 1]) for k in range(min(anchor, far), max(anchor, far))):
        raise CollinearOverlap("segment runs along a network edge")
    rights = _ray(eng, far, step, along_network=False)
    return eng.family(anchor, rights).E.tolist()


def _covered_ecc(eng: _LineEngine, i: int, j: int) -> float:
    split, dm = eng.split, eng.dm
    lo, hi = min(i, j), max(i, j)
    rows = [split.edge_lookup[tuple(sorted((eng.vid[k], eng.vid[k + 1])))] for k in range(lo, hi)]
    vals = edge_pair_maxima(split, dm, rows)
    return float(max(vals.max(), split.lengths[rows].max()))


def best_extension(net: Network, u: int, v: int) -> tuple[Candidate | None, float]:
    """Best extension of ``uv`` over all left and right endpoints.

    Returns ``(None, diameter)`` when ``uv`` runs along the network.
    """
    eng, iu, iv = _anchor_engine(net, u, v)
    if iu > iv:
        iu, iv = iv, iu
    if any(eng.prof.blocked(eng.s[k], eng.s[k + 1]) for k in range(iu, iv)):
        return None, diameter_value(net)
    lefts = _ray(eng, iu, -1, along_network=False)
    rights = _ray(eng, iv, 1, along_network=False)
    best = None
    for i in lefts:
        fam = eng.family(i, rights)
        k, val = fam.best()
        key = (val, i, rights[k])
        if best is None or key < best:
            best = key
    val, i, j = best
    return eng.candidate(i, j), val


# full search ----------------------------------------------------------------

@dataclass(frozen=True)
class DiameterGuarantee:
    """Reported diameter exceeds the optimum by at most ``additive``."""

    additive: float
    basis: str  # "4rho" or "4eps"
    rho: float
    base_diameter: float


class ApproxResult(NamedTuple):
    candidate: Candidate | None
    diameter: float
    guarantee: DiameterGuarantee


@dataclass
class SearchStats:
    lines: int = 0
    families: int = 0
    extensions: int = 0
    probes: int = 0


def _line_best(net: Network, u: int, v: int, stats: SearchStats | None):
    prof = line_profile(net, net.point(u), net.point(v))
    eng = _LineEngine(net, prof)
    best = None
    for g in eng.groups():
        verts = [k for k in g if eng.is_vertex[k]]
        if len(verts) < 2:
            continue
        for i in g:
            after = [k for k in verts if k >= i]
            if len(after) < 2:
                break
            rights = list(range(after[1], g[-1] + 1))
            fam = eng.family(i, rights)
            k, val = fam.best()
            if stats is not None:
                stats.families += 1
                stats.extensions += len(rights)
                stats.probes += len(fam.N)
            key = (val, i, rights[k])
            if best is None or key < best:
                best = key
    if best is None:
        return None
    val, i, j = best
    return val, eng.candidate(i, j)


def _workers(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("NETSHORT_THREADS", "1") or 1)
    return max(1, threads)


def s2_search(net: Network, threads: int | None = None, stats: SearchStats | None = None):
    """Best ``(diameter, candidate)`` over all of S2, or None."""
    pairs = enumerate_anchor_pairs(net)
    if stats is not None:
        stats.lines += len(pairs)
    workers = _workers(threads)
    if workers == 1:
        results = [_line_best(net, u, v, stats) for u, v in pairs]
    else:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda uv: _line_best(net, uv[0], uv[1], None), pairs))
    best = None
    for r in results:
        if r is None:
            continue
        key = (r[0], r[1].a, r[1].b)
        if best is None or key < best[0]:
            best = (key, r)
    return None if best is None else best[1]


def _map_back(lp: LocusPoint, back: np.ndarray) -> LocusPoint:
    e, t0, t1 = back[lp.edge]
    return LocusPoint(int(e), float(t0 + lp.t * (t1 - t0)))


def approx_optimal_shortcut(net: Network, epsilon: float | None = None, *, budget: int | None = DEFAULT_BUDGET,
                            threads: int | None = None, stats: SearchStats | None = None) -> ApproxResult:
    """Best segment of S2; its diameter is within 4 rho (or 4 epsilon after
    subdividing edges to length epsilon) of the optimum.

    The candidate is None when no segment of S2 improves the diameter.
    ``budget`` caps the vertex count of the input network.
    """
    if budget is not None and net.n > budget:
        raise BudgetExceeded(f"network has {net.n} vertices, budget is {budget}")
    base = diameter_value(net)
    rho = net.rho
    work, back = net, None
    if epsilon is not None:
        if not (0 < epsilon < rho / 2):
            raise BadEpsilon(f"epsilon must lie in (0, {rho / 2}), got {epsilon}")
        work, back = subdivide_with_map(net, epsilon)
        guarantee = DiameterGuarantee(4 * epsilon, "4eps", work.rho, base)
    else:
        guarantee = DiameterGuarantee(4 * rho, "4rho", rho, base)
    found = s2_search(work, threads=threads, stats=stats)
    if found is None:
        return ApproxResult(None, base, guarantee)
    val, cand = found
    if back is not None:
        cand = make_candidate(net, _map_back(cand.a, back), _map_back(cand.b, back))
        val = diameter_with_segment(net, cand)
    if val < base - 1e-9:
        return ApproxResult(cand, val, guarantee)
    return ApproxResult(None, base, guarantee)
