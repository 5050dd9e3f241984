"""The twelve acceptance criteria, one test each.

Every test records a PASS/FAIL line (printed in the terminal summary) before
asserting, so a failing criterion is visible by number.
"""
import math
import time

import numpy as np
import pytest

from netshort import fixtures
from netshort.approx import _anchor_engine, _ray, approx_optimal_shortcut, best_extension, enumerate_anchor_pairs
from netshort.augment import (
    diameter_with_segment,
    f_eval,
    insert_segment,
    line_edge_hit,
    make_candidate,
    maximal_extension,
)
from netshort.distance import diameter_value, point_distance, vertex_distances
from netshort.errors import CollinearOverlap, DegenerateSegment
from netshort.network import LocusPoint, path_network, subdivide
from netshort.oracle import OracleConfig, grid_shortcut_search
from netshort.pathfast import (
    _level,
    _rotated,
    chain_relation,
    decompose,
    optimal_fixed_orientation_shortcut,
    path_diameter_with_shortcut,
    two_chain_diameter,
)
from netshort.pathsimple import optimal_simple_shortcut, simple_diagnostics

SQRT2 = math.sqrt(2)
# closed form of the x = y = z optimum on the right-angled unit V
D_V = (4 * SQRT2 + 2) / 7
X_V = SQRT2 - D_V
DIAM_V = 2 * X_V + SQRT2 * D_V


def random_maximal(rng, path, tries=50):
    net = path.network
    for _ in range(tries):
        a = LocusPoint(int(rng.integers(net.m)), float(rng.random()))
        b = LocusPoint(int(rng.integers(net.m)), float(rng.random()))
        try:
            return maximal_extension(net, make_candidate(net, a, b))
        except (CollinearOverlap, DegenerateSegment):
            continue
    return None


def test_c01_diameter_exactness(report):
    cases = [("square", fixtures.unit_square(), 2.0), ("V", fixtures.v_path().network, 2 * SQRT2)]
    cases += [(f"line {L}", fixtures.straight_path(L, 3).network, L) for L in (1.0, 2.5, 7.0)]
    worst, slowest = 0.0, 0.0
    for _, net, want in cases:
        t = time.perf_counter()
        got = diameter_value(net)
        slowest = max(slowest, time.perf_counter() - t)
        worst = max(worst, abs(got - want))
    ok = worst <= 1e-9 and slowest < 1.0
    report(1, ok, f"max error {worst:.1e}, slowest {slowest:.3f}s")
    assert ok


def test_c02_cycle_not_improvable(report, square):
    t = time.perf_counter()
    res = grid_shortcut_search(square, OracleConfig(endpoint_samples_per_edge=50))
    elapsed = time.perf_counter() - t
    ok = res.candidate is None and res.diameter >= 2.0 - 1e-6 and elapsed < 120
    report(2, ok, f"{res.evaluated} segments, best {res.diameter:.9f}, {elapsed:.1f}s")
    assert ok


def test_c03_fast_equals_quadratic(report):
    rng = np.random.default_rng(3)
    t = time.perf_counter()
    worst, done = 0.0, 0
    while done < 200:
        path = fixtures.random_path(rng, int(rng.integers(3, 41)))
        c = random_maximal(rng, path)
        if c is None:
            continue
        worst = max(worst, abs(path_diameter_with_shortcut(path, c) - diameter_with_segment(path.network, c)))
        done += 1
    elapsed = time.perf_counter() - t
    ok = worst < 1e-7 and elapsed < 60
    report(3, ok, f"200 paths, max gap {worst:.1e}, {elapsed:.1f}s")
    assert ok


def _chain_oracle(path, c, iv1, iv2, k=200):
    aug = insert_segment(path.network, c)
    dm = vertex_distances(aug.network)
    p1 = [aug.lift(path.locus_at(s)) for s in np.linspace(*iv1, k)]
    p2 = [aug.lift(path.locus_at(s)) for s in np.linspace(*iv2, k)]
    return max(point_distance(aug.network, a, b, dm) for a in p1 for b in p2)


def test_c04_two_chain_closed_forms(report):
    details, ok = [], True
    for kind in ("disjoint", "nested", "overlapping"):
        fx = fixtures.two_chain_fixture(kind)
        dec = decompose(fx.path, fx.candidate, check_maximal=False)
        pick = lambda ext: next(ch for ch in dec.chains  # noqa: E731
                                if abs(ch.left - ext[0]) < 1e-9 and abs(ch.right - ext[1]) < 1e-9)
        ci, cj = pick(fx.first), pick(fx.second)
        value = two_chain_diameter(kind, ci, cj)
        c = fx.candidate
        sigma = sorted([fx.path.arclength(c.a), fx.path.arclength(c.b)]
                       + [fx.path.arclength(LocusPoint(x.edge, x.t)) for x in c.crossings])
        cuts = ([0.0] if sigma[0] > 1e-9 else []) + sigma + (
            [fx.path.length] if fx.path.length - sigma[-1] > 1e-9 else [])
        ivs = list(zip(cuts, cuts[1:]))
        k = 200
        sampled = _chain_oracle(fx.path, c, ivs[ci.path_order], ivs[cj.path_order], k)
        err = 2 * max(b - a for a, b in ivs) / (k - 1)
        good = (chain_relation(ci, cj) == kind and abs(value - fx.expected) <= 1e-9
                and value - err <= sampled <= value + 1e-9)
        ok &= good
        details.append(f"{kind} {value:g} (oracle {sampled:.4f})")
    report(4, ok, ", ".join(details))
    assert ok


def test_c05_spike_fixture(report):
    fx = fixtures.gen_spike_fixture(8, 16.0)
    d = fixtures.spike_top_distances(fx)
    diam = path_diameter_with_shortcut(fx.path, fx.candidate)
    counts = []
    ks = [4, 8, 16]
    for k in ks:
        f = fixtures.gen_spike_fixture(k, 16.0)
        dd = fixtures.spike_top_distances(f)
        counts.append(int((dd >= path_diameter_with_shortcut(f.path, f.candidate) - 1e-7).sum()))
    slope = float(np.polyfit(np.log(ks), np.log(counts), 1)[0])
    ok = d.size == 16 and np.abs(d - 16).max() <= 1e-7 and abs(diam - 16) <= 1e-7 and slope >= 1.8
    report(5, ok, f"16 top pairs off by {np.abs(d - 16).max():.1e}, diameter {diam:.9f}, "
                  f"pair counts {counts}, exponent {slope:.2f}")
    assert ok


def test_c06_f_linear_in_intercept(report):
    rng = np.random.default_rng(6)
    worst, done = 0.0, 0
    while done < 50:
        net = fixtures.random_planar_network(rng, 7)
        e, e2 = (int(v) for v in rng.choice(net.m, 2, replace=False))
        a = float(rng.normal())
        rng_b = []
        for k in (e, e2):
            (x0, y0), (x1, y1) = net.edge_segment(k)
            rng_b.append(sorted((y0 - a * x0, y1 - a * x1)))
        lo, hi = max(rng_b[0][0], rng_b[1][0]), min(rng_b[0][1], rng_b[1][1])
        if hi - lo < 1e-3:
            continue
        delta = (hi - lo) / 5
        b0 = lo + delta * rng.random()
        bs = [b0 + i * delta for i in range(3)]
        # |pq| is linear only while p and q keep their order along the line
        order = {np.sign(line_edge_hit(net, a, b, e)[0] - line_edge_hit(net, a, b, e2)[0]) for b in bs}
        if len(order) > 1:
            continue
        w, z = int(net.edges[e][int(rng.integers(2))]), int(net.edges[e2][int(rng.integers(2))])
        alpha = ("edge", int(rng.integers(net.m))) if rng.random() < 0.5 else ("vertex", int(rng.integers(net.n)))
        beta = ("edge", int(rng.integers(net.m))) if rng.random() < 0.5 else ("vertex", int(rng.integers(net.n)))
        dm = vertex_distances(net)
        f = [f_eval(net, alpha, beta, w, z, (a, b), e, e2, dm) for b in bs]
        worst = max(worst, abs(f[0] - 2 * f[1] + f[2]))
        done += 1
    ok = worst < 1e-6
    report(6, ok, f"50 configurations, max second difference {worst:.1e}")
    assert ok


def test_c07_additive_bound(report):
    rng = np.random.default_rng(7)
    t = time.perf_counter()
    ok, margins = True, []
    for _ in range(30):
        net = fixtures.random_planar_network(rng, int(rng.integers(4, 11)), extra=0.3)
        k = max(4, 150 // net.m + 1)
        g = grid_shortcut_search(net, OracleConfig(endpoint_samples_per_edge=k))
        s2 = approx_optimal_shortcut(net).diameter
        rho = net.rho
        good = g.diameter - g.error <= s2 <= g.diameter + 4 * rho + g.error
        ok &= good
        margins.append((s2 - g.diameter) / rho)
    elapsed = time.perf_counter() - t
    ok &= elapsed < 600
    report(7, ok, f"30 networks, (S2 - oracle)/rho in [{min(margins):.2f}, {max(margins):.2f}], {elapsed:.0f}s")
    assert ok


def test_c08_extension_families(report):
    rng = np.random.default_rng(8)
    nets = [fixtures.s_path().network, subdivide(fixtures.s_path().network, 2.0), fixtures.u_path().network,
            fixtures.v_path().network, fixtures.l_path().network, fixtures.gen_spike_fixture(4, 12.0).path.network]
    nets += [fixtures.two_chain_fixture(k).path.network for k in ("disjoint", "nested", "overlapping")]
    nets += [fixtures.random_planar_network(rng, 7) for _ in range(4)]
    families = monotone = exact = checked = 0
    for net in nets:
        for u, v in enumerate_anchor_pairs(net):
            eng, iu, iv = _anchor_engine(net, u, v)
            lo, hi = sorted((iu, iv))
            if any(eng.prof.blocked(eng.s[j], eng.s[j + 1]) for j in range(lo, hi)):
                continue
            rights = _ray(eng, hi, 1, along_network=False)
            lefts = _ray(eng, lo, -1, along_network=False)
            for i in lefts:
                fam = eng.family(i, rights)
                N = [fam.network_side(j) for j in range(len(rights))]
                families += 1
                monotone += all(b <= a + 1e-9 for a, b in zip(N, N[1:]))
            if len(eng.s) <= 12:
                _, val = best_extension(net, u, v)
                brute = min(eng.family(i, rights).exhaustive()[1] for i in lefts)
                checked += 1
                exact += abs(val - brute) <= 1e-12
    ok = monotone == families and exact == checked and checked > 0
    report(8, ok, f"N monotone on {monotone}/{families} families, best = exhaustive on {exact}/{checked} lines")
    assert ok


def test_c09_v_path_simple_optimum(report, vpath):
    res = optimal_simple_shortcut(vpath)
    c = res.candidate
    d_arm = math.dist(c.geometry.a, (0, 0)), math.dist(c.geometry.b, (0, 0))
    diag = simple_diagnostics(vpath, c)
    g = grid_shortcut_search(vpath.network, OracleConfig(endpoint_samples_per_edge=50), simple_only=True)
    ok = (res.exists and max(abs(x - D_V) for x in d_arm) <= 1e-6
          and max(abs(diag.x - X_V), abs(diag.y - X_V), abs(diag.z - X_V)) <= 1e-6
          and abs(res.diameter - DIAM_V) <= 1e-6 and res.diameter <= g.diameter + g.error)
    report(9, ok, f"d = {d_arm[0]:.7f} (closed form {D_V:.7f}), x = y = z = {diag.x:.7f}, "
                  f"diameter {res.diameter:.7f}, grid {g.diameter:.7f} +- {g.error:.3f}")
    assert ok


@pytest.mark.xfail(strict=True, reason="x = y < z optima exist; see the decision ledger")
def test_c10_equal_offsets_at_interior_optima(report):
    rng = np.random.default_rng(0)
    found, bad, worst, infeasible = 0, 0, 0.0, 0
    while found < 50:
        path = fixtures.random_path(rng, int(rng.integers(3, 11)))
        res = optimal_simple_shortcut(path)
        if not res.exists:
            infeasible += 1
            continue
        c = res.candidate
        if path.network.locus_vertex(c.a) is not None or path.network.locus_vertex(c.b) is not None:
            continue
        found += 1
        d = simple_diagnostics(path, c)
        gap = max(abs(d.x - d.y), abs(d.x - d.z))
        if gap >= 1e-6:
            bad += 1
            worst = max(worst, gap)
    ok = bad == 0
    report(10, ok, f"{bad}/50 interior optima violate x = y = z (largest gap {worst:.3f}); "
                   "expected failure, documented in the ledger")
    assert ok


def _sampled_same_angle(path, angle, heights):
    Q = _rotated(path, angle)
    best = path.length
    for h in heights:
        lev = _level(path, Q, h)
        if lev is None or lev.blocked:
            continue
        try:
            c = make_candidate(path.network, *lev.ends)
        except (CollinearOverlap, DegenerateSegment):
            continue
        best = min(best, diameter_with_segment(path.network, c))
    return best


def test_c11_fixed_orientation(report, vpath):
    v_fixed = optimal_fixed_orientation_shortcut(vpath, 0.0).diameter
    v_simple = optimal_simple_shortcut(vpath).diameter
    rng = np.random.default_rng(11)
    worst = -math.inf
    for _ in range(20):
        path = fixtures.random_path(rng, int(rng.integers(3, 11)))
        angle = float(rng.uniform(0, math.pi))
        y = _rotated(path, angle)[:, 1]
        fast = optimal_fixed_orientation_shortcut(path, angle).diameter
        sampled = _sampled_same_angle(path, angle, rng.uniform(y.min(), y.max(), 500))
        worst = max(worst, fast - sampled)
    ok = abs(v_fixed - v_simple) <= 1e-6 and worst <= 1e-6
    report(11, ok, f"V gap {abs(v_fixed - v_simple):.1e}; over 20 paths max(fixed - sampled) = {worst:.1e}")
    assert ok


def test_c12_non_existence(report):
    path = fixtures.limit_path()
    res = optimal_simple_shortcut(path)
    seq = []
    for k in (10, 20, 40):
        g = grid_shortcut_search(path.network, OracleConfig(endpoint_samples_per_edge=k), simple_only=True)
        seq.append((g.diameter, g.error))
    values = [v for v, _ in seq]
    decreasing = all(b < a for a, b in zip(values, values[1:]))
    above = all(v > res.diameter for v in values)
    gap = values[-1] - res.diameter
    ok = (not res.exists) and res.limit is not None and decreasing and above and gap < 2 * seq[-1][1]
    report(12, ok, f"exists={res.exists}, infimum {res.diameter:.6f}, grid "
                   + " > ".join(f"{v:.6f}" for v in values) + f", final gap {gap:.4f} < 2 x {seq[-1][1]:.4f}")
    assert ok
