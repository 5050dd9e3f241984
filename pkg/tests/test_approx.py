import math

import numpy as np
import pytest

from netshort import fixtures
from netshort.approx import (
    _anchor_engine,
    _ray,
    approx_optimal_shortcut,
    best_extension,
    enumerate_anchor_pairs,
    extension_eccentricities,
)
from netshort.augment import diameter_with_segment, insert_segment
from netshort.distance import diameter_value, edge_pair_maxima, vertex_distances
from netshort.errors import BadEpsilon, BudgetExceeded
from netshort.network import build_network, path_network, subdivide

V_OPT = 2.187672642712109


def scratch_E(net, c):
    """Farthest distance from a point of the inserted segment, rebuilt from nothing."""
    aug = insert_segment(net, c)
    N = aug.network
    dm = vertex_distances(N)
    rows = aug.segment_edges
    return max(edge_pair_maxima(N, dm, rows).max(), N.lengths[rows].max())


def scratch_N(net, c):
    aug = insert_segment(net, c)
    N = aug.network
    dm = vertex_distances(N)
    rows = np.flatnonzero(aug.edge_source >= 0)
    return edge_pair_maxima(N, dm, rows, rows).max()


def families(net):
    """Every right-growing family of each anchor line, with its contact list."""
    for u, v in enumerate_anchor_pairs(net):
        eng, iu, iv = _anchor_engine(net, u, v)
        if iu > iv:
            iu, iv = iv, iu
        if any(eng.prof.blocked(eng.s[k], eng.s[k + 1]) for k in range(iu, iv)):
            continue
        rights = _ray(eng, iv, 1, along_network=False)
        for i in _ray(eng, iu, -1, along_network=False):
            yield eng.family(i, rights)


def test_anchor_pair_examples(square):
    tri = build_network([(0, 0), (1, 0), (0, 1)], [(0, 1), (1, 2), (2, 0)])
    assert len(enumerate_anchor_pairs(tri)) == 3
    line = path_network([(0, 0), (1, 0), (2, 0), (3, 0)]).network
    assert len(enumerate_anchor_pairs(line)) == 1
    assert len(enumerate_anchor_pairs(square)) == 6


def test_extension_eccentricity_examples(square):
    line = path_network([(0, 0), (1, 0), (2, 0), (3, 0)]).network
    # segment already on the network: E is the eccentricity of the sub-segment
    assert extension_eccentricities(line, 1, 2, "right") == pytest.approx([2.0, 3.0])
    assert extension_eccentricities(line, 1, 2, "left") == pytest.approx([2.0, 3.0])
    diag = extension_eccentricities(square, 0, 2)
    assert len(diag) == 1
    with pytest.raises(ValueError):
        extension_eccentricities(square, 0, 2, "up")


def test_spath_subdivision_vertex_family():
    net = subdivide(fixtures.s_path().network, 2.0)
    u = int(np.flatnonzero(np.all(np.isclose(net.vertices, (2, 0)), axis=1))[0])
    v = int(np.flatnonzero(np.all(np.isclose(net.vertices, (2, 1)), axis=1))[0])
    E = extension_eccentricities(net, u, v)
    assert len(E) == 2
    eng, iu, iv = _anchor_engine(net, u, v)
    fam = eng.family(iu, _ray(eng, iv, 1, along_network=False))
    for k in range(len(E)):
        assert E[k] == pytest.approx(scratch_E(net, fam.candidate(k)), abs=1e-7)
    assert fam.candidate(1).geometry.b == pytest.approx((2, 2))


@pytest.mark.parametrize("seed", range(4))
def test_incremental_values_match_scratch(seed):
    rng = np.random.default_rng(seed)
    nets = [fixtures.random_path(rng, 8).network, fixtures.random_planar_network(rng, 8)]
    for net in nets:
        for fam in families(net):
            vals = []
            for k in range(len(fam.rights)):
                c = fam.candidate(k)
                assert fam.E[k] == pytest.approx(scratch_E(net, c), abs=1e-7)
                vals.append(fam.network_side(k))
                assert vals[-1] == pytest.approx(scratch_N(net, c), abs=1e-7)
                assert fam.value(k) == pytest.approx(diameter_with_segment(net, c), abs=1e-7)
            # the network side only drops as the segment grows
            assert all(b <= a + 1e-9 for a, b in zip(vals, vals[1:]))
            assert fam.best()[1] == pytest.approx(fam.exhaustive()[1], abs=1e-12)


def test_best_extension_is_exhaustive_optimum():
    for net in (fixtures.s_path().network, fixtures.v_path().network, fixtures.u_path().network):
        for u, v in enumerate_anchor_pairs(net):
            c, val = best_extension(net, u, v)
            if c is None:
                assert val == pytest.approx(diameter_value(net))
                continue
            assert val == pytest.approx(diameter_with_segment(net, c), abs=1e-9)
            eng, iu, iv = _anchor_engine(net, u, v)
            lo, hi = sorted((iu, iv))
            for i in _ray(eng, lo, -1, along_network=False):
                for j in _ray(eng, hi, 1, along_network=False):
                    assert val <= diameter_with_segment(net, eng.candidate(i, j)) + 1e-9


def test_approx_examples(square):
    assert approx_optimal_shortcut(fixtures.straight_path().network).candidate is None
    res = approx_optimal_shortcut(square)
    assert res.candidate is None
    assert res.diameter == pytest.approx(2.0)
    v = fixtures.v_path().network
    res = approx_optimal_shortcut(v, 0.1)
    assert res.guarantee.basis == "4eps"
    assert res.guarantee.additive == pytest.approx(0.4)
    assert V_OPT - 1e-9 <= res.diameter <= V_OPT + 0.4
    assert res.diameter == pytest.approx(diameter_with_segment(v, res.candidate), abs=1e-9)


def test_approx_errors(square):
    with pytest.raises(BadEpsilon):
        approx_optimal_shortcut(square, 0.5)
    with pytest.raises(BadEpsilon):
        approx_optimal_shortcut(square, -0.1)
    big = path_network([(i, (i % 2) * 0.5) for i in range(12)]).network
    with pytest.raises(BudgetExceeded):
        approx_optimal_shortcut(big, budget=10)


def test_threads_do_not_change_the_answer(rng):
    net = fixtures.random_planar_network(rng, 8)
    one = approx_optimal_shortcut(net, threads=1)
    four = approx_optimal_shortcut(net, threads=4)
    assert one.diameter == four.diameter
    assert (one.candidate is None) == (four.candidate is None)
    if one.candidate is not None:
        assert one.candidate.endpoints == four.candidate.endpoints


def test_guarantee_reports_rho(vpath):
    res = approx_optimal_shortcut(vpath.network)
    assert res.guarantee.basis == "4rho"
    assert res.guarantee.additive == pytest.approx(4 * math.sqrt(2))
