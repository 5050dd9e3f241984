import json

import numpy as np
import pytest

from netshort import fixtures
from netshort.distance import continuous_diameter
from netshort.errors import BadEdgeId, BadParameter, Disconnected, DegenerateEdge, NotAPath, NotPlanar, ParseError
from netshort.geometry import point_segment_distance
from netshort.network import (
    LocusPoint,
    as_path,
    build_network,
    dump_network,
    network_from_json,
    path_network,
    subdivide,
    subdivide_with_map,
)

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_square_rho(square):
    assert square.n == 4 and square.m == 4 and square.rho == pytest.approx(1.0)


def test_crossing_diagonals_rejected():
    with pytest.raises(NotPlanar):
        build_network(SQUARE, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])


def test_disconnected_and_degenerate():
    with pytest.raises(Disconnected):
        build_network([(0, 0), (1, 0), (5, 5), (6, 5)], [(0, 1), (2, 3)])
    with pytest.raises(DegenerateEdge):
        build_network([(0, 0), (1e-12, 0), (1, 1)], [(0, 1), (1, 2)])


def test_path_eligible():
    net = build_network([(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 2)])
    p = as_path(net)
    assert net.rho == pytest.approx(1.0)
    assert p.length == pytest.approx(2.0)
    with pytest.raises(NotAPath):
        as_path(fixtures.unit_square())


def test_locate(square):
    assert tuple(square.locate(LocusPoint(0, 0.5))) == (0.5, 0.0)
    for e in range(square.m):
        a, b = square.edge_segment(e)
        assert square.locate(LocusPoint(e, 0.0)) == a
        assert square.locate(LocusPoint(e, 1.0)) == b
    with pytest.raises(BadEdgeId):
        square.locate(LocusPoint(9, 0.5))
    with pytest.raises(BadParameter):
        square.locate(LocusPoint(0, 1.5))


def test_vertex_locus_normalizes_to_lowest_edge(square):
    # vertex 0 is shared by edges 0 and 3
    assert square.normalize(LocusPoint(3, 1.0)) == square.normalize(LocusPoint(0, 0.0))
    assert square.normalize(LocusPoint(3, 1.0)).edge == 0


def test_subdivide_examples(square):
    half = subdivide(square, 0.5)
    assert (half.n, half.m) == (8, 8) and half.rho == pytest.approx(0.5)
    same = subdivide(square, 2)
    assert (same.n, same.m) == (4, 4)
    p = subdivide(fixtures.straight_path(2.0).network, 0.3)
    assert continuous_diameter(p).value == pytest.approx(2.0, abs=1e-9)


def test_subdivide_back_map(square):
    net, back = subdivide_with_map(square, 0.3)
    assert back.shape == (net.m, 3)
    for e in range(net.m):
        orig, t0, t1 = back[e]
        a = square.locate(LocusPoint(int(orig), t0))
        b = square.locate(LocusPoint(int(orig), t1))
        assert np.allclose(net.edge_segment(e), (a, b))


def test_subdivide_preserves_diameter(rng):
    for _ in range(5):
        net = fixtures.random_planar_network(rng, 7)
        d0 = continuous_diameter(net).value
        assert continuous_diameter(subdivide(net, net.rho / 3)).value == pytest.approx(d0, abs=1e-7)


def test_locate_on_segment(rng):
    net = fixtures.random_planar_network(rng, 8)
    for _ in range(50):
        e = int(rng.integers(net.m))
        p = net.locate(LocusPoint(e, float(rng.random())))
        a, b = net.edge_segment(e)
        assert point_segment_distance(p, a, b) < 1e-9


def test_path_arclength_sums_edges(rng):
    p = fixtures.random_path(rng, 9)
    assert p.length == pytest.approx(float(p.network.lengths.sum()))
    assert np.all(np.diff(p.prefix) > 0)


def test_json_round_trip(square):
    text = dump_network(square, {"name": "square"})
    again = network_from_json(text)
    assert dump_network(again, {"name": "square"}) == text


@pytest.mark.parametrize("text", [
    '{"vertices": [[0, 0], [1, 0]], "edges": [[0, 1]',
    '{"vertices": [[0, NaN], [1, 0]], "edges": [[0, 1]]}',
    '{"vertices": [[0, 0], [1, 0]]}',
    '[1, 2]',
])
def test_json_rejects(text):
    with pytest.raises(ParseError):
        network_from_json(text)


def test_json_ignores_meta():
    obj = {"vertices": [[0, 0], [1, 0]], "edges": [[0, 1]], "meta": {"anything": [1, 2]}}
    assert network_from_json(json.dumps(obj)).m == 1


def test_path_locus_round_trip(rng):
    p = fixtures.random_path(rng, 6)
    for s in rng.uniform(0, p.length, 20):
        assert p.arclength(p.locus_at(float(s))) == pytest.approx(float(s), abs=1e-9)


def test_duplicate_vertices_merge():
    net = path_network([(0, 0), (1, 0), (1, 1)])
    assert net.network.n == 3
