"""Optimal simple shortcuts for paths.

For a simple segment ``pq`` on a path from ``u`` to ``v`` (``p`` first along
the path) put ``x = d(u, p)``, ``y = d(v, q)`` and ``z = (d_P(p, q) - |pq|)/2``.
The augmented path has one cycle and two tails, and its diameter is

    |pq| + x + y + z - min(x, y, z).

Optima balance the smallest of these values, so candidates are generated
from x = y = z and from the two smallest being equal (quadratics in
arclength), from stationary points of the x = y slide, vertex-vertex chords,
and from segments pivoting on a vertex, then sorted into simple (S), limit
(L: one extra tangential contact) and crossing (X) segments. An optimal
simple shortcut exists exactly when the best of S and L is simple.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .augment import Candidate, diameter_with_segment, line_profile, make_candidate
from .errors import CollinearOverlap, DegenerateSegment, NotSimple
from .faces import bounded_faces, face_is_convex
from .geometry import EPS, convex_hull, dist, orientation, point_segment_distance
from .network import LocusPoint, Network, PathNetwork, as_path

ROOT_TOL = 1e-12


@dataclass(frozen=True)
class SimpleShortcutDiagnostics:
    x: float
    y: float
    z: float
    pq: float
    path_distance: float
    p_bar: LocusPoint
    q_bar: LocusPoint
    formula: str  # "x+y+|pq|", "x+z+|pq|" or "y+z+|pq|"
    diameter: float

    @property
    def cycle_length(self) -> float:
        return self.path_distance + self.pq


def simple_value(x: float, y: float, pq: float, dp: float) -> float:
    z = (dp - pq) / 2
    return pq + x + y + z - min(x, y, z)


def _formula(x: float, y: float, z: float) -> str:
    m = min(x, y, z)
    if z == m:
        return "x+y+|pq|"
    if y == m:
        return "x+z+|pq|"
    return "y+z+|pq|"


def simple_diagnostics(path: PathNetwork, c: Candidate, require_simple: bool = True) -> SimpleShortcutDiagnostics:
    if require_simple and not c.is_simple:
        raise NotSimple(f"segment meets the path at {len(c.crossings)} interior points")
    sp, sq = path.arclength(c.a), path.arclength(c.b)
    if sp > sq:
        sp, sq = sq, sp
    x, y, pq = sp, path.length - sq, c.length
    dp = sq - sp
    z = (dp - pq) / 2
    return SimpleShortcutDiagnostics(
        x, y, z, pq, dp,
        path.locus_at(sp + pq + z), path.locus_at(sq - pq - z),
        _formula(x, y, z), simple_value(x, y, pq, dp),
    )


# candidate generation ---------------------------------------------------------

@dataclass(frozen=True)
class PoolEntry:
    """A candidate segment given by the arclengths of its endpoints."""

    sp: float
    sq: float
    source: str  # "equal", "equal-xy", "vertex", "anchored", "line", "pivot"
    pivot: int | None = None


def _solve_norm_eq(P0, W, alpha: float, beta: float) -> list[float]:
    """Real roots tau of |P0 + tau W| = alpha + beta tau (with rhs >= 0)."""
    a = float(W @ W - beta * beta)
    b = float(2 * (P0 @ W - alpha * beta))
    c = float(P0 @ P0 - alpha * alpha)
    scale = max(1.0, abs(a), abs(b), abs(c))
    if abs(a) <= 1e-14 * scale:
        roots = [] if abs(b) <= 1e-14 * scale else [-c / b]
    else:
        disc = b * b - 4 * a * c
        if disc < 0:
            if disc >= -ROOT_TOL * scale * scale:
                disc = 0.0
            else:
                return []
        sq = math.sqrt(disc)
        roots = [(-b - sq) / (2 * a), (-b + sq) / (2 * a)]
    return [t for t in roots if alpha + beta * t >= -1e-9]


def _pieces(path: PathNetwork):
    """Path edges in path order as (start arclength, length, start point, unit direction)."""
    P = path.vertex_points()
    out = []
    for k in range(len(P) - 1):
        d = P[k + 1] - P[k]
        ln = float(path.prefix[k + 1] - path.prefix[k])
        out.append((float(path.prefix[k]), ln, P[k], d / ln))
    return out


def _point(path: PathNetwork, pieces, s: float):
    k = int(np.clip(np.searchsorted(path.prefix, s, side="right") - 1, 0, len(pieces) - 1))
    s0, _, A, d = pieces[k]
    return A + (s - s0) * d, k


def solve_equal_offsets(path: PathNetwork) -> list[PoolEntry]:
    """Segments with x = y = z, and stationary segments of the x = y slide."""
    L = path.length
    pieces = _pieces(path)
    cuts = sorted({0.0, L / 2} | {float(s) for s in path.prefix if s < L / 2}
                  | {float(L - s) for s in path.prefix if L - s < L / 2})
    out = []
    for t0, t1 in zip(cuts, cuts[1:]):
        if t1 - t0 <= 1e-12:
            continue
        mid = (t0 + t1) / 2
        _, kp = _point(path, pieces, mid)
        _, kq = _point(path, pieces, L - mid)
        A = pieces[kp][2] + (t0 - pieces[kp][0]) * pieces[kp][3]
        B = pieces[kq][2] + (L - t0 - pieces[kq][0]) * pieces[kq][3]
        # p moves forward, q moves backward along the path as t grows
        W = -pieces[kq][3] - pieces[kp][3]
        for tau in _solve_norm_eq(B - A, W, L - 4 * t0, -4.0):
            t = t0 + tau
            if t0 - 1e-12 <= t <= t1 + 1e-12 and L - 2 * t > EPS:
                out.append(PoolEntry(t, L - t, "equal"))
        # with x = y < z the diameter is (L + |pq|)/2, so a stationary |pq|
        # along the slide is a candidate as well
        ww = float(W @ W)
        if ww > 1e-24:
            t = t0 - float((B - A) @ W) / ww
            if t0 < t < t1 and L - 2 * t > EPS:
                out.append(PoolEntry(t, L - t, "equal-xy"))
    return out


def solve_vertex_anchored(path: PathNetwork) -> list[PoolEntry]:
    """Vertex-vertex chords plus segments with one vertex endpoint where two
    of x, y, z agree."""
    L = path.length
    pieces = _pieces(path)
    P = path.vertex_points()
    pre = path.prefix
    n = len(P)
    out = [PoolEntry(float(pre[i]), float(pre[j]), "vertex") for i in range(n) for j in range(i + 2, n)]
    for i in range(n):
        X = float(pre[i])
        # p fixed at vertex i, q at arclength lam on a later edge
        for k in range(i, n - 1):
            s0, ln, A, d = pieces[k]
            P0 = A - s0 * d - P[i]
            for alpha, beta in ((-3 * X, 1.0), (-X - 2 * L, 3.0)):  # x = z, y = z
                for lam in _solve_norm_eq(P0, d, alpha, beta):
                    if s0 - 1e-12 <= lam <= s0 + ln + 1e-12 and lam > X + EPS:
                        out.append(PoolEntry(X, min(lam, s0 + ln), "anchored"))
        if L - X > X + EPS:  # x = y
            out.append(PoolEntry(X, L - X, "anchored"))
        # q fixed at vertex i, p at arclength mu on an earlier edge
        Lam, Y = X, L - X
        for k in range(0, i):
            s0, ln, A, d = pieces[k]
            P0 = A - s0 * d - P[i]
            for alpha, beta in ((Lam - 2 * Y, -1.0), (Lam, -3.0)):  # y = z, x = z
                for mu in _solve_norm_eq(P0, d, alpha, beta):
                    if s0 - 1e-12 <= mu <= s0 + ln + 1e-12 and mu < Lam - EPS:
                        out.append(PoolEntry(max(mu, s0), Lam, "anchored"))
        if Y < Lam - EPS:
            out.append(PoolEntry(Y, Lam, "anchored"))
    return out


def solve_vertex_lines(path: PathNetwork) -> list[PoolEntry]:
    """Segments on lines through two vertices whose endpoints are contacts
    with at most one contact between them.

    These are the corners of the candidate domain where two constraints meet:
    an endpoint at a vertex together with the line touching another vertex,
    or the line touching two vertices.
    """
    net = path.network
    P = path.vertex_points()
    n = len(P)
    out = []
    seen_lines = set()
    for i in range(n):
        for j in range(i + 1, n):
            prof = line_profile(net, P[i], P[j])
            key = tuple(c.vertex if c.vertex is not None else (c.edge, round(c.t, 12)) for c in prof.contacts)
            if key in seen_lines:
                continue
            seen_lines.add(key)
            ss = [path.arclength(LocusPoint(c.edge, c.t)) for c in prof.contacts]
            for a in range(len(ss)):
                for b in (a + 1, a + 2):
                    if b >= len(ss) or prof.blocked(prof.contacts[a].s, prof.contacts[b].s):
                        continue
                    lo, hi = sorted((ss[a], ss[b]))
                    out.append(PoolEntry(lo, hi, "line"))
    return out


def _cross2(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


class _PivotFamily:
    """Lines through vertex ``w`` meeting edge ``kb`` on one side of w and
    edge ``ka`` (later along the path) on the other, parameterized by the
    direction angle."""

    def __init__(self, path: PathNetwork, P: np.ndarray, iw: int, kb: int, ka: int):
        self.path, self.P, self.w = path, P, P[iw]
        self.kb, self.ka = kb, ka

    def _hit(self, k: int, phi: np.ndarray, sign: int):
        P, pre, w = self.P, self.path.prefix, self.w
        d = np.stack([np.cos(phi), np.sin(phi)], axis=-1) * sign
        A = P[k]
        e = np.broadcast_to(P[k + 1] - A, d.shape)
        den = _cross2(e, d)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = _cross2(np.broadcast_to(w - A, d.shape), d) / den
            r = _cross2(np.broadcast_to(w - A, d.shape), e) / den
        ok = (np.abs(den) > 1e-15) & (t >= 0) & (t <= 1) & (r > EPS)
        return np.where(ok, pre[k] + t * (pre[k + 1] - pre[k]), np.nan), np.where(ok, r, np.nan)

    def eval(self, phi):
        """(x, y, z, F, sp, sq) as arrays over ``phi``; NaN where invalid."""
        phi = np.asarray(phi, dtype=float)
        sp, rp = self._hit(self.kb, phi, -1)
        sq, rq = self._hit(self.ka, phi, 1)
        L = self.path.length
        pq = rp + rq
        x, y, z = sp, L - sq, (sq - sp - pq) / 2
        F = pq + x + y + z - np.minimum(np.minimum(x, y), z)
        return x, y, z, F, sp, sq


def solve_pivot(path: PathNetwork, samples: int = 720) -> list[PoolEntry]:
    """Segments through a vertex w with endpoints on two edges not incident
    to w. The vertex may be a path end or lie on a tail: roots of x = z, y = z and x = y in the line angle where
    the equal pair are the two smallest values, plus local minima of the
    diameter formula and the ends of each angular range."""
    P = path.vertex_points()
    n = len(P)
    phis = np.linspace(0.0, 2 * math.pi, samples, endpoint=False)
    out: list[PoolEntry] = []
    for iw in range(n):
        free = [k for k in range(n - 1) if k != iw and k != iw - 1]
        for j, kb in enumerate(free):
            for ka in free[j + 1:]:
                fam = _PivotFamily(path, P, iw, kb, ka)
                x, y, z, F, sp, sq = fam.eval(phis)
                ok = ~np.isnan(F)
                if not ok.any():
                    continue
                both = ok[:-1] & ok[1:]
                for a_id, b_id in ((0, 2), (1, 2), (0, 1)):
                    g = (x, y, z)[a_id] - (x, y, z)[b_id]
                    for i in np.flatnonzero(both & (np.sign(g[:-1]) * np.sign(g[1:]) <= 0)):
                        def gfun(ph, a_id=a_id, b_id=b_id):
                            v = fam.eval([ph])
                            return float(v[a_id][0] - v[b_id][0])
                        lo, hi = phis[i], phis[i + 1]
                        if gfun(lo) == 0.0:
                            root = lo
                        elif gfun(hi) == 0.0:
                            root = hi
                        else:
                            root = brentq(gfun, lo, hi, xtol=1e-15, rtol=1e-15)
                        vx, vy, vz, _, vp, vq = (float(a[0]) for a in fam.eval([root]))
                        small = sorted((vx, vy, vz))
                        if small[1] - small[0] <= 1e-7 * max(1.0, path.length):
                            out.append(PoolEntry(vp, vq, "pivot", iw))
                dip = ok[:-2] & ok[1:-1] & ok[2:] & (F[1:-1] <= F[:-2]) & (F[1:-1] <= F[2:])
                for i in np.flatnonzero(dip) + 1:
                    def fval(ph):
                        v = fam.eval([ph])[3][0]
                        return math.inf if math.isnan(v) else float(v)
                    res = minimize_scalar(fval, bounds=(phis[i - 1], phis[i + 1]), method="bounded",
                                          options={"xatol": 1e-12})
                    v = fam.eval([res.x])
                    if not math.isnan(v[3][0]):
                        out.append(PoolEntry(float(v[4][0]), float(v[5][0]), "pivot", iw))
    return out


# classification and selection -------------------------------------------------

class CandidateClass(str, Enum):
    S = "S"  # meets the path only at its endpoints
    L = "L"  # one more contact, touching a vertex without crossing
    X = "X"  # anything else


@dataclass(frozen=True)
class PoolMember:
    entry: PoolEntry
    candidate: Candidate
    label: CandidateClass
    value: float


def classify(path: PathNetwork, c: Candidate) -> CandidateClass:
    """S, L or X by the number of contacts of the closed segment.

    A three-contact segment counts as L only if the middle contact is a
    vertex the path touches from one side; otherwise nearby segments cannot
    be simple and it is X.
    """
    if not c.crossings:
        return CandidateClass.S
    if len(c.crossings) > 1:
        return CandidateClass.X
    x = c.crossings[0]
    if x.vertex is None:
        return CandidateClass.X
    net = path.network
    a, b = c.geometry
    sides = {orientation(a, b, net.point(int(o))) for e in net.incident[x.vertex]
             for o in net.edges[e] if o != x.vertex}
    sides.discard(0)
    return CandidateClass.L if len(sides) <= 1 else CandidateClass.X


def _member(path: PathNetwork, entry: PoolEntry) -> PoolMember | None:
    if entry.sq - entry.sp <= EPS:
        return None
    a, b = path.locus_at(entry.sp), path.locus_at(entry.sq)
    try:
        c = make_candidate(path.network, a, b)
    except (CollinearOverlap, DegenerateSegment):
        return None
    label = classify(path, c)
    sp, sq = path.arclength(c.a), path.arclength(c.b)
    if sp > sq:
        sp, sq = sq, sp
    value = simple_value(sp, path.length - sq, c.length, sq - sp)
    return PoolMember(entry, c, label, value)


def candidate_pool(path: PathNetwork, pivot_samples: int = 720) -> list[PoolMember]:
    entries = (solve_equal_offsets(path) + solve_vertex_anchored(path) + solve_vertex_lines(path)
               + solve_pivot(path, pivot_samples))
    seen = set()
    out = []
    for e in entries:
        key = (round(e.sp, 10), round(e.sq, 10))
        if key in seen:
            continue
        seen.add(key)
        m = _member(path, e)
        if m is not None:
            out.append(m)
    return out


@dataclass(frozen=True)
class SimpleShortcutResult:
    exists: bool
    candidate: Candidate | None
    diameter: float
    base_diameter: float
    limit: Candidate | None = None  # L-class segment realizing the infimum
    pool: tuple[PoolMember, ...] = field(default=(), repr=False)

    def __iter__(self):
        return iter((self.exists, self.candidate, self.diameter))


def optimal_simple_shortcut(path: PathNetwork, pivot_samples: int = 720) -> SimpleShortcutResult:
    """Decide whether an optimal simple shortcut exists and return it.

    When the infimum over simple shortcuts is only approached, ``exists`` is
    False, ``diameter`` is the infimum and ``limit`` the limit segment.
    """
    base = path.length
    pool = candidate_pool(path, pivot_samples)
    useful = [m for m in pool if m.label in (CandidateClass.S, CandidateClass.L)]
    if not useful:
        return SimpleShortcutResult(False, None, base, base, pool=tuple(pool))
    best_s = min((m for m in useful if m.label is CandidateClass.S), key=_rank, default=None)
    best_l = min((m for m in useful if m.label is CandidateClass.L), key=_rank, default=None)
    top = min(m.value for m in useful)
    if top >= base - 1e-9:
        return SimpleShortcutResult(False, None, base, base, pool=tuple(pool))
    if best_s is not None and best_s.value <= top + 1e-9:
        return SimpleShortcutResult(True, best_s.candidate, best_s.value, base, pool=tuple(pool))
    return SimpleShortcutResult(False, None, best_l.value, base, limit=best_l.candidate, pool=tuple(pool))


def _rank(m: PoolMember):
    return (m.value, m.candidate.a, m.candidate.b)


# sufficient condition for existence -----------------------------------------

class Existence(str, Enum):
    GUARANTEED = "guaranteed"  # every face of the hull-closed network is convex
    INCONCLUSIVE = "inconclusive"  # some face is not convex; existence undecided
    NO_SIMPLE_SHORTCUT = "no-simple-shortcut"  # sampling found no simple shortcut

    def __bool__(self) -> bool:
        return self is Existence.GUARANTEED


def hull_closure(net: Network) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Vertices and edges of the network plus its convex-hull edges, with
    hull edges split at vertices lying on them."""
    P = net.vertices
    hull = convex_hull(P)
    index = {tuple(map(float, P[i])): i for i in range(net.n)}
    edges = {(min(a, b), max(a, b)) for a, b in net.edges.tolist()}
    if len(hull) >= 3:
        for k in range(len(hull)):
            a, b = hull[k], hull[(k + 1) % len(hull)]
            on = [i for i in range(net.n) if point_segment_distance(P[i], a, b) <= EPS]
            on.sort(key=lambda i: dist(a, P[i]))
            for i, j in zip(on, on[1:]):
                edges.add((min(i, j), max(i, j)))
    return P, sorted(edges)


def has_simple_shortcut(net: Network, samples_per_edge: int = 12, seed: int = 0) -> Candidate | None:
    """Some simple segment that improves the diameter, found by sampling."""
    from .distance import diameter_value

    base = diameter_value(net)
    rng = np.random.default_rng(seed)
    ts = np.linspace(0.0, 1.0, samples_per_edge)
    pts = [LocusPoint(e, float(t)) for e in range(net.m) for t in ts]
    order = rng.permutation(len(pts) * len(pts))
    for flat in order:
        i, j = divmod(int(flat), len(pts))
        a, b = pts[i], pts[j]
        if a.edge == b.edge or i >= j:
            continue
        try:
            c = make_candidate(net, a, b)
        except (CollinearOverlap, DegenerateSegment):
            continue
        if c.is_simple and diameter_with_segment(net, c) < base - 1e-9:
            return c
    return None


def existence_sufficient(net: Network, samples_per_edge: int = 12, seed: int = 0) -> Existence:
    """Convex-faces test for existence of an optimal simple shortcut.

    GUARANTEED means an optimal simple shortcut exists; INCONCLUSIVE says
    nothing either way.
    """
    if has_simple_shortcut(net, samples_per_edge, seed) is None:
        return Existence.NO_SIMPLE_SHORTCUT
    P, edges = hull_closure(net)
    faces = bounded_faces(P, edges)
    if all(face_is_convex(P, f) for f in faces):
        return Existence.GUARANTEED
    return Existence.INCONCLUSIVE
