import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semireg.errors import ParameterError, RewireError
from semireg.generators import RsrbParams, RsrParams, complete_bipartite, generate_regular, trial_rng
from semireg.graph_core import (
    Multigraph,
    UnionFind,
    add_loops,
    adjacency,
    closed_walk_counts,
    contract_degree2,
    cycle_graph,
    degree_sequence,
    from_edges,
    girth,
    is_connected,
    laplacian,
    offending_edge_count,
    read_edge_csv,
    rewire_to_simple,
    stub_degrees,
    subdivide,
    write_edge_csv,
)
from semireg.spectra import eigenvalues_sym


def _rng(i=0):
    return trial_rng(12345, i)


def test_multigraph_rejects_bad_endpoints():
    with pytest.raises(ParameterError):
        Multigraph(3, [(0, 3)])
    with pytest.raises(ParameterError):
        Multigraph(3, [(-1, 0)])


def test_multigraph_edges_read_only():
    g = from_edges([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        g.edges[0, 0] = 2
    assert g.m == 2 and g.n == 3


@pytest.mark.parametrize(
    "g, expected",
    [
        (cycle_graph(4), [2, 2, 2, 2]),
        (Multigraph(1, [(0, 0)]), [1]),
    ],
)
def test_degree_sequence(g, expected):
    assert degree_sequence(g).tolist() == expected


def test_degree_sequence_rsrb_parts():
    g = RsrbParams(2, 3, 30).generate(_rng())
    assert degree_sequence(g).tolist() == [2] * 30 + [3] * 20


@pytest.mark.parametrize(
    "edges, n, expected",
    [
        ([(0, 1)], 2, [[0, 1], [1, 0]]),
        ([(0, 1), (1, 0)], 2, [[0, 2], [2, 0]]),
        ([(0, 0)], 1, [[1]]),
    ],
)
def test_adjacency_small(edges, n, expected):
    np.testing.assert_array_equal(adjacency(Multigraph(n, edges)), expected)


def test_laplacian_single_edge_and_cycle():
    np.testing.assert_array_equal(laplacian(from_edges([(0, 1)])), [[1, -1], [-1, 1]])
    L = laplacian(cycle_graph(4))
    assert np.all(np.diag(L) == 2)
    np.testing.assert_array_equal(L[0], [2, -1, 0, -1])


def test_laplacian_counts_multiplicity():
    L = laplacian(Multigraph(2, [(0, 1), (0, 1), (0, 1)]))
    np.testing.assert_array_equal(L, [[3, -3], [-3, 3]])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.lists(st.integers(0, 3), min_size=30, max_size=30))
def test_laplacian_ignores_loops(seed, loops):
    g = RsrbParams(2, 3, 30).generate(trial_rng(seed, 0))
    np.testing.assert_array_equal(laplacian(g), laplacian(add_loops(g, loops + [0] * 20)))


@pytest.mark.parametrize(
    "g, expected",
    [
        (cycle_graph(5), True),
        (Multigraph(4, [(0, 1), (2, 3)]), False),
        (complete_bipartite(2, 7), True),
        (Multigraph(1, []), True),
    ],
)
def test_is_connected(g, expected):
    assert is_connected(g) is expected


def test_union_find_components():
    uf = UnionFind(5)
    assert uf.components == 5
    assert uf.union(0, 1) and uf.union(1, 2)
    assert not uf.union(0, 2)
    assert uf.components == 3
    assert uf.find(2) == uf.find(0)


def _tree7():
    return from_edges([(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])


@pytest.mark.parametrize(
    "g, expected",
    [
        (cycle_graph(5), 5),
        (complete_bipartite(3, 6), 4),
        (_tree7(), math.inf),
        (Multigraph(2, [(0, 1), (0, 1)]), 2),
        (Multigraph(2, [(0, 1), (1, 1)]), 1),
    ],
)
def test_girth(g, expected):
    assert girth(g) == expected


def test_subdivide_c3():
    h = subdivide(cycle_graph(3))
    assert h.n == 6 and h.m == 6 and girth(h) == 6
    assert sorted(degree_sequence(h).tolist()) == [2] * 6


def test_subdivide_regular_gives_two_d():
    g = rewire_to_simple(generate_regular(6, 40, _rng()), _rng(1))
    h = subdivide(g)
    assert h.n == 40 + 120
    assert sorted(set(degree_sequence(h).tolist())) == [2, 6]


def _petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(outer + spokes + inner)


def test_subdivide_petersen_doubles_girth():
    g = _petersen()
    assert girth(g) == 5
    h = subdivide(g)
    assert girth(h) == 10 and h.n == g.n + g.m


@pytest.mark.parametrize("seed", range(50))
def test_girth_doubles_under_subdivision(seed):
    g = rewire_to_simple(generate_regular(3, 20, trial_rng(seed, 0)), trial_rng(seed, 1))
    assert girth(subdivide(g)) == 2 * girth(g)


def test_subdivide_rejects_loops():
    with pytest.raises(ParameterError):
        subdivide(Multigraph(1, [(0, 0)]))


def test_contract_pure_cycle_errors():
    with pytest.raises(ParameterError):
        contract_degree2(cycle_graph(6))


def test_contract_round_trip_k4_spectrum():
    k4 = from_edges([(i, j) for i in range(4) for j in range(i + 1, 4)])
    back = contract_degree2(subdivide(k4))
    assert back.n == 4 and back.m == 6
    np.testing.assert_allclose(
        eigenvalues_sym(laplacian(back)).values, eigenvalues_sym(laplacian(k4)).values, atol=1e-12
    )


def test_contract_rsrb_2_6_gives_6_regular():
    g = rewire_to_simple(RsrbParams(2, 6, 60).generate(_rng()), _rng(1))
    h = contract_degree2(g)
    assert h.n == 20
    assert set(degree_sequence(h).tolist()) == {6}


def test_rewire_keeps_simple_graph():
    g = cycle_graph(7)
    assert rewire_to_simple(g, _rng()) == g


def test_rewire_impossible_raises():
    g = RsrbParams(2, 6, 3).generate(_rng())
    with pytest.raises(RewireError):
        rewire_to_simple(g, _rng(1))


@pytest.mark.parametrize("seed", range(5))
def test_rewire_preserves_degrees(seed):
    g = RsrParams(Fraction(1, 2), 2, 6, 300).generate(trial_rng(seed, 0))
    assert offending_edge_count(g) > 0
    h = rewire_to_simple(g, trial_rng(seed, 1))
    assert offending_edge_count(h) == 0 and h.loop_count == 0
    assert h.m == g.m
    np.testing.assert_array_equal(degree_sequence(h), stub_degrees(g))


@pytest.mark.parametrize("seed", range(5))
def test_rewire_bipartite_keeps_sides(seed):
    p = RsrbParams(2, 3, 300)
    g = p.generate(trial_rng(seed, 0))
    h = rewire_to_simple(g, trial_rng(seed, 1), bipartite=True)
    assert offending_edge_count(h) == 0
    assert np.all(h.edges[:, 0] < p.n1) and np.all(h.edges[:, 1] >= p.n1)
    np.testing.assert_array_equal(degree_sequence(h), degree_sequence(g))


def test_stub_degrees_count_loops_twice():
    g = Multigraph(2, [(0, 0), (0, 1)])
    assert stub_degrees(g).tolist() == [3, 1]
    assert degree_sequence(g).tolist() == [2, 1]


def test_closed_walks_trivial():
    g = rewire_to_simple(RsrbParams(2, 3, 30).generate(_rng()), _rng(1))
    phi = closed_walk_counts(g, 4)
    assert phi[0] == 1.0
    assert phi[2] == pytest.approx(2 * g.m / g.n)
    np.testing.assert_array_equal(closed_walk_counts(Multigraph(1, [(0, 0)]), 6), np.ones(7))


@pytest.mark.parametrize("seed", range(3))
def test_closed_walks_match_spectral_moments(seed):
    g = rewire_to_simple(RsrbParams(2, 3, 60).generate(trial_rng(seed, 0)), trial_rng(seed, 1))
    a = closed_walk_counts(g, 12, method="power")
    b = closed_walk_counts(g, 12, method="spectrum")
    np.testing.assert_allclose(b, a, rtol=1e-8, atol=1e-8)


def test_edge_csv_round_trip():
    g = RsrbParams(2, 3, 30).generate(_rng())
    buf = io.StringIO()
    write_edge_csv(g, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == "u,v"
    assert len(text.splitlines()) == g.m + 1
    back = read_edge_csv(io.StringIO(text), n=g.n)
    assert back == g
