import numpy as np
import pytest

from semireg.errors import ParameterError
from semireg.generators import RsrbParams, complete_bipartite, trial_rng
from semireg.graph_core import Multigraph, adjacency, add_loops, cycle_graph, from_edges, laplacian, rewire_to_simple
from semireg.spectra import (
    algebraic_connectivity,
    eigenvalues_sym,
    kernel_dimension,
    ks_distance,
    laplacian_spectrum,
    write_spectrum_csv,
    zero_eigenvalue_fraction,
)


@pytest.mark.parametrize(
    "M, expected",
    [
        ([[0, 1], [1, 0]], [-1, 1]),
        (np.eye(5), [1] * 5),
        (laplacian(cycle_graph(4)), [0, 2, 2, 4]),
    ],
)
def test_eigenvalues_small(M, expected):
    s = eigenvalues_sym(M)
    np.testing.assert_allclose(s.values, expected, atol=1e-12)
    assert s.tol > 0


def test_eigenvalues_rejects_asymmetric():
    with pytest.raises(ParameterError):
        eigenvalues_sym([[0, 1], [0, 0]])


@pytest.mark.parametrize(
    "g, expected",
    [
        (complete_bipartite(2, 7), 2.0),
        (Multigraph(4, [(0, 1), (2, 3)]), 0.0),
        (cycle_graph(4), 2.0),
    ],
)
def test_algebraic_connectivity_small(g, expected):
    assert algebraic_connectivity(g) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("b", [1, 2, 3])
@pytest.mark.parametrize("n", [10, 50])
def test_ac_complete_bipartite_oracle(b, n):
    assert algebraic_connectivity(complete_bipartite(b, n)) == pytest.approx(b, abs=1e-8)


def test_zero_fraction_small():
    assert zero_eigenvalue_fraction(eigenvalues_sym(adjacency(from_edges([(0, 1)])))) == 0.0
    star = eigenvalues_sym(adjacency(complete_bipartite(1, 4)))
    assert zero_eigenvalue_fraction(star) == 0.5


def test_zero_fraction_rsrb_2_3():
    g = rewire_to_simple(RsrbParams(2, 3, 600).generate(trial_rng(0, 0)), trial_rng(0, 1), bipartite=True)
    assert zero_eigenvalue_fraction(eigenvalues_sym(adjacency(g))) == pytest.approx(0.2, abs=0.02)


@pytest.mark.parametrize("seed", range(10))
def test_laplacian_psd_and_trace(seed):
    g = RsrbParams(2, 6, 120).generate(trial_rng(seed, 0))
    s = laplacian_spectrum(g).values
    assert abs(s[0]) <= 1e-9 and s.min() >= -1e-9
    looped = add_loops(g, [1] * g.n)
    adj = eigenvalues_sym(adjacency(looped)).values
    assert adj.sum() == pytest.approx(looped.loop_count, abs=1e-8)


@pytest.mark.parametrize("d1, d2", [(2, 3), (2, 6), (3, 6)])
def test_kernel_lower_bound(d1, d2):
    p = RsrbParams.near_n(d1, d2, 300)
    g = rewire_to_simple(p.generate(trial_rng(4, 0)), trial_rng(4, 1), bipartite=True)
    assert kernel_dimension(eigenvalues_sym(adjacency(g))) >= p.n1 - p.n2


def test_ks_uniform_grid():
    grid = (np.arange(1000) + 0.5) / 1000
    assert ks_distance(grid, lambda t: min(max(t, 0.0), 1.0)) <= 1e-3


def test_ks_step_sides():
    step = lambda t: 1.0 if t >= 0 else 0.0  # noqa: E731
    left = lambda t: 1.0 if t > 0 else 0.0  # noqa: E731
    # with the left limit supplied the atom is matched exactly
    assert ks_distance([0.0], step, left) == 0.0
    # treated as continuous, the jump is charged on the left side
    assert ks_distance([0.0], step) == 1.0


def test_ks_sample_at_atoms():
    sample = np.sort(np.repeat([0.0, 1.0], 50))
    cdf = lambda t: 0.0 if t < 0 else (0.5 if t < 1 else 1.0)  # noqa: E731
    left = lambda t: 0.0 if t <= 0 else (0.5 if t <= 1 else 1.0)  # noqa: E731
    assert ks_distance(sample, cdf, left) <= 1 / (2 * sample.size)


def test_ks_requires_sorted():
    with pytest.raises(ParameterError):
        ks_distance([1.0, 0.0], lambda t: t)


def test_spectrum_csv(tmp_path):
    s = eigenvalues_sym(laplacian(cycle_graph(4)))
    path = tmp_path / "s.csv"
    write_spectrum_csv(s, path)
    vals = np.loadtxt(path)
    np.testing.assert_array_equal(vals, s.values)
