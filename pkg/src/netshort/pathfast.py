"""Diameter of a path plus one maximal shortcut, chain by chain.

A maximal segment ``pq`` cuts the path into chains between consecutive
contacts. Every pair of chains is disjoint, nested or overlapping along
``pq``, and in each case their farthest points have a closed form in the
chain length and the endpoint offsets. A left-to-right sweep with two range
maximum structures finds the farthest pair without looking at all pairs.

Dangling ends of the path (before the first contact or after the last) are
loop chains with equal endpoints; they are handled by counting their length
twice, which makes ``D = |C|`` and keeps all formulas unchanged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .augment import Candidate, make_candidate, maximal_extension
from .errors import CollinearOverlap, DegenerateSegment, KindMismatch, NonMaximalCandidate
from .envelope import EnvelopeLine, upper_envelope
from .geometry import EPS, dist
from .network import LocusPoint, PathNetwork
from .rmq import SparseTableMax

TOL = 1e-9


@dataclass(frozen=True)
class Chain:
    index: int
    left: float
    right: float
    length: float
    pq_length: float
    degenerate: bool = False
    path_order: int = 0

    @classmethod
    def from_ends(cls, left: float, right: float, length: float, pq_length: float, index: int = 0) -> "Chain":
        lo, hi = sorted((left, right))
        return cls(index, lo, hi, length, pq_length, degenerate=hi - lo <= 0.0)

    @property
    def L(self) -> float:
        return self.left

    @property
    def R(self) -> float:
        return self.pq_length - self.right

    @property
    def s_length(self) -> float:
        return self.right - self.left

    @property
    def effective_length(self) -> float:
        return 2 * self.length if self.degenerate else self.length

    @property
    def D(self) -> float:
        return (self.effective_length + self.s_length) / 2


def chain_relation(ci: Chain, cj: Chain, tol: float = TOL) -> str:
    """Relation of ``cj`` to ``ci`` when ``ci`` does not start to its right."""
    if ci.right <= cj.left + tol:
        return "disjoint"
    if cj.right <= ci.right + tol:
        return "nested"
    return "overlapping"


def two_chain_diameter(kind: str, ci: Chain, cj: Chain) -> float:
    """Farthest distance between points of two chains.

    ``ci`` must be the chain whose left endpoint comes first.
    """
    if cj.left < ci.left - TOL:
        raise KindMismatch("first chain must start at or left of the second")
    actual = chain_relation(ci, cj)
    if kind != actual and not (kind == "disjoint" and abs(ci.right - cj.left) <= TOL):
        raise KindMismatch(f"chains are {actual}, not {kind}")
    if kind == "disjoint":
        return ci.D + (cj.left - ci.right) + cj.D
    a, b = ci.effective_length, cj.effective_length
    if kind == "nested":
        return (a + cj.L - ci.L + cj.R - ci.R + b) / 2
    if kind == "overlapping":
        return (a + cj.L - ci.L + ci.R - cj.R + b) / 2
    raise KindMismatch(f"unknown relation {kind!r}")


@dataclass(frozen=True, eq=False)
class ChainDecomposition:
    """Chains of a path cut by a maximal segment, sorted by (left, -right).

    Array fields are aligned with ``chains``.
    """

    candidate: Candidate | None
    pq_length: float
    left: np.ndarray = field(repr=False)
    right: np.ndarray = field(repr=False)
    length: np.ndarray = field(repr=False)
    degenerate: np.ndarray = field(repr=False)
    path_order: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.left)

    @property
    def chains(self) -> list[Chain]:
        return [
            Chain(i, float(self.left[i]), float(self.right[i]), float(self.length[i]), self.pq_length,
                  bool(self.degenerate[i]), int(self.path_order[i]))
            for i in range(len(self))
        ]

    @property
    def eff(self) -> np.ndarray:
        return np.where(self.degenerate, 2 * self.length, self.length)

    @property
    def L(self) -> np.ndarray:
        return self.left

    @property
    def R(self) -> np.ndarray:
        return self.pq_length - self.right

    @property
    def D(self) -> np.ndarray:
        return (self.eff + self.right - self.left) / 2


def _chains_from_contacts(sigma, xs, total: float, pq_length: float, candidate=None) -> ChainDecomposition:
    """``sigma``: arclengths of the contacts along the path (ascending);
    ``xs``: their offsets along the segment."""
    lefts, rights, lens, degen = [], [], [], []
    if sigma[0] > EPS:
        lefts.append(xs[0]); rights.append(xs[0]); lens.append(sigma[0]); degen.append(True)
    for k in range(len(sigma) - 1):
        lo, hi = sorted((xs[k], xs[k + 1]))
        lefts.append(lo); rights.append(hi); lens.append(sigma[k + 1] - sigma[k]); degen.append(False)
    if total - sigma[-1] > EPS:
        lefts.append(xs[-1]); rights.append(xs[-1]); lens.append(total - sigma[-1]); degen.append(True)
    left, right = np.array(lefts, dtype=float), np.array(rights, dtype=float)
    order = np.arange(len(left))
    perm = np.lexsort((order, -right, left))
    return ChainDecomposition(
        candidate, float(pq_length), left[perm], right[perm], np.array(lens, dtype=float)[perm],
        np.array(degen, dtype=bool)[perm], order[perm],
    )


def _require_maximal(path: PathNetwork, c: Candidate) -> None:
    ext = maximal_extension(path.network, c)
    if dist(ext.geometry.a, c.geometry.a) > 1e-9 or dist(ext.geometry.b, c.geometry.b) > 1e-9:
        raise NonMaximalCandidate("extend the candidate to its maximal extension first")


def decompose(path: PathNetwork, c: Candidate, check_maximal: bool = True) -> ChainDecomposition:
    if check_maximal:
        _require_maximal(path, c)
    pts = [(path.arclength(c.a), 0.0)]
    pts += [(path.arclength(LocusPoint(x.edge, x.t)), x.s) for x in c.crossings]
    pts.append((path.arclength(c.b), c.length))
    pts.sort()
    sigma = [p[0] for p in pts]
    xs = [p[1] for p in pts]
    return _chains_from_contacts(sigma, xs, path.length, c.length, c)


def chain_pair_matrix(dec: ChainDecomposition) -> np.ndarray:
    """All pairwise chain diameters; the diagonal holds each D."""
    l, r, L, R, c, D = dec.left, dec.right, dec.L, dec.R, dec.eff, dec.D
    k = len(l)
    i, j = np.triu_indices(k, 1)  # i precedes j in sort order
    disjoint = r[i] <= l[j] + TOL
    nested = ~disjoint & (r[j] <= r[i] + TOL)
    v_dis = D[i] + (l[j] - r[i]) + D[j]
    v_nest = (c[i] + L[j] - L[i] + R[j] - R[i] + c[j]) / 2
    v_over = (c[i] + L[j] - L[i] + R[i] - R[j] + c[j]) / 2
    vals = np.where(disjoint, v_dis, np.where(nested, v_nest, v_over))
    out = np.diag(D.astype(float))
    out[i, j] = vals
    out[j, i] = vals
    return out


@dataclass
class SweepStats:
    """Per-chain winners of the combined nested/overlapping range query."""

    queries: int = 0
    winners: list[tuple[int, int, str, float]] = field(default_factory=list)  # (k, j, "beta"|"gamma", value)


def sweep_diameter(dec: ChainDecomposition, stats: SweepStats | None = None) -> float:
    """max over chain pairs in O(m log m): prefix maxima for disjoint pairs,
    sparse-table range maxima for nested and overlapping ones."""
    m = len(dec)
    if m == 0:
        return 0.0
    l, r, L, R, c, D = dec.left, dec.right, dec.L, dec.R, dec.eff, dec.D
    best = float(D.max())

    # slots: one per chain endpoint, ordered along the segment
    coords = np.concatenate([l, r])
    owner = np.concatenate([np.arange(m), np.arange(m)])
    is_left = np.concatenate([np.ones(m, bool), np.zeros(m, bool)])
    slot_order = np.lexsort((~is_left, coords))
    coords, owner, is_left = coords[slot_order], owner[slot_order], is_left[slot_order]
    beta = np.where(is_left, (c + L + R)[owner], -np.inf)
    gamma = np.where(is_left, (c + L - R)[owner], -np.inf)
    An, Ao = SparseTableMax(beta), SparseTableMax(gamma)
    own_slot = np.empty(m, dtype=np.int64)
    own_slot[owner[is_left]] = np.flatnonzero(is_left)

    # disjoint: alpha = D + R over chains ending at or before l_k
    by_right = np.argsort(r, kind="stable")
    r_sorted = r[by_right]
    alpha = (D + R)[by_right]
    top1 = np.full(m, -np.inf); top1_i = np.full(m, -1)
    top2 = np.full(m, -np.inf); top2_i = np.full(m, -1)
    a1 = a2 = -np.inf; i1 = i2 = -1
    for t in range(m):
        v, idx = alpha[t], by_right[t]
        if v > a1:
            a2, i2, a1, i1 = a1, i1, v, idx
        elif v > a2:
            a2, i2 = v, idx
        top1[t], top1_i[t], top2[t], top2_i[t] = a1, i1, a2, i2

    for k in range(m):
        cnt = int(np.searchsorted(r_sorted, l[k] + TOL, side="right"))
        if cnt:
            av = top1[cnt - 1] if top1_i[cnt - 1] != k else top2[cnt - 1]
            if av > -np.inf:
                best = max(best, float(D[k] + l[k] - dec.pq_length + av))
        lo = int(np.searchsorted(coords, l[k] - TOL, side="left"))
        hi = int(np.searchsorted(coords, r[k] + TOL, side="right")) - 1
        own = int(own_slot[k])
        cand = []
        for a, b in ((lo, own - 1), (own + 1, hi)):
            jb, jg = An.argmax(a, b), Ao.argmax(a, b)
            if jb is not None and beta[jb] > -np.inf:
                cand.append(((c[k] - L[k] - R[k] + beta[jb]) / 2, int(owner[jb]), "beta"))
            if jg is not None and gamma[jg] > -np.inf:
                cand.append(((c[k] - L[k] + R[k] + gamma[jg]) / 2, int(owner[jg]), "gamma"))
        if stats is not None:
            stats.queries += 1
        if cand:
            val, j, via = max(cand, key=lambda t: t[0])
            best = max(best, float(val))
            if stats is not None:
                stats.winners.append((k, j, via, float(val)))
    return best


def path_diameter_with_shortcut(path: PathNetwork, c: Candidate, stats: SweepStats | None = None,
                                check_maximal: bool = True) -> float:
    """Continuous diameter of the path with the maximal segment ``c`` added."""
    return sweep_diameter(decompose(path, c, check_maximal), stats)


# fixed orientation -------------------------------------------------------------

def _rotated(path: PathNetwork, angle: float) -> np.ndarray:
    """Path vertices in path order, rotated by -angle so that direction
    ``angle`` becomes horizontal."""
    P = path.vertex_points()
    ca, sa = math.cos(angle), math.sin(angle)
    return np.column_stack([P[:, 0] * ca + P[:, 1] * sa, -P[:, 0] * sa + P[:, 1] * ca])


@dataclass(frozen=True)
class _Level:
    dec: ChainDecomposition
    ends: tuple[LocusPoint, LocusPoint]
    blocked: bool


def _level(path: PathNetwork, Q: np.ndarray, h: float) -> _Level | None:
    """Chains cut by the horizontal line y = h through the rotated path."""
    ys = Q[:, 1] - h
    on = np.abs(ys) <= EPS
    contacts = []  # (sigma, x, locus)
    blocked = False
    n = len(Q)
    for i in range(n):
        if on[i]:
            contacts.append((float(path.prefix[i]), float(Q[i, 0]), path.network.vertex_locus(path.order[i])))
    for k in range(n - 1):
        if on[k] and on[k + 1]:
            blocked = True
        if not on[k] and not on[k + 1] and (ys[k] > 0) != (ys[k + 1] > 0):
            t = ys[k] / (ys[k] - ys[k + 1])
            x = Q[k, 0] + t * (Q[k + 1, 0] - Q[k, 0])
            e = path.edge_order[k]
            lp = LocusPoint(e, t if path.forward[k] else 1.0 - t)
            contacts.append((float(path.prefix[k] + t * path.network.lengths[e]), float(x), lp))
    if len(contacts) < 2:
        return None
    contacts.sort(key=lambda c: c[0])
    xs = np.array([c[1] for c in contacts])
    lo, hi = int(np.argmin(xs)), int(np.argmax(xs))
    if xs[hi] - xs[lo] <= EPS:
        return None
    dec = _chains_from_contacts([c[0] for c in contacts], list(xs - xs[lo]), path.length, float(xs[hi] - xs[lo]))
    return _Level(dec, (contacts[lo][2], contacts[hi][2]), blocked)


@dataclass(frozen=True)
class FixedOrientationResult:
    candidate: Candidate | None
    diameter: float
    height: float | None
    base_diameter: float


def optimal_fixed_orientation_shortcut(path: PathNetwork, angle: float = 0.0) -> FixedOrientationResult:
    """Best maximal shortcut parallel to direction ``angle`` (radians).

    Between consecutive vertex heights every chain pair distance is linear
    in the height, so the diameter is the upper envelope of those lines.
    """
    base = float(path.length)  # a path's diameter is its length
    Q = _rotated(path, angle)
    heights = np.unique(Q[:, 1])
    merged = []
    for y in heights:
        if not merged or y - merged[-1] > EPS:
            merged.append(float(y))
    best = (base, None, None)  # (value, height, candidate)

    def consider(h: float):
        nonlocal best
        lev = _level(path, Q, h)
        if lev is None or lev.blocked:
            return
        try:
            cand = make_candidate(path.network, *lev.ends)
        except (CollinearOverlap, DegenerateSegment):
            return
        # score the candidate's own contacts so value and segment agree near vertex heights
        val = path_diameter_with_shortcut(path, cand, check_maximal=False)
        if val < best[0] - 1e-12:
            best = (val, h, cand)

    for y in merged:
        consider(y)
    for ya, yb in zip(merged, merged[1:]):
        if yb - ya <= 4 * EPS:
            continue
        h1, h2 = ya + (yb - ya) / 3, ya + 2 * (yb - ya) / 3
        l1, l2 = _level(path, Q, h1), _level(path, Q, h2)
        if l1 is None or l2 is None:
            continue
        m1, m2 = chain_pair_matrix(l1.dec), chain_pair_matrix(l2.dec)
        # same chains in path order at both heights
        p1, p2 = np.argsort(l1.dec.path_order), np.argsort(l2.dec.path_order)
        m1, m2 = m1[np.ix_(p1, p1)], m2[np.ix_(p2, p2)]
        iu = np.triu_indices(len(m1))
        slopes = (m2[iu] - m1[iu]) / (h2 - h1)
        inter = m1[iu] - slopes * h1
        env = upper_envelope([EnvelopeLine(float(a), float(b)) for a, b in zip(slopes, inter)], (ya, yb))
        delta = min(1e-7, (yb - ya) / 4)
        consider(min(max(env.min_y, ya + delta), yb - delta))
    val, h, cand = best
    if cand is None or val >= base - 1e-9:
        return FixedOrientationResult(None, base, None, base)
    return FixedOrientationResult(cand, val, h, base)
