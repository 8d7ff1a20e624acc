import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from semireg import asymptotics as asy
from semireg.errors import ParameterError
from semireg.generators import integer_pairs

TABLE_PAIRS = [pr for d in range(3, 9) for pr in integer_pairs(d)]
UNEQUAL_PAIRS = [pr for pr in TABLE_PAIRS if pr[0] < pr[1]]
SQRT2 = math.sqrt(2)


@pytest.mark.parametrize(
    "d1, d2, r_minus, r_plus",
    [
        (3, 3, 0.0, 2 * SQRT2),
        (2, 3, SQRT2 - 1, SQRT2 + 1),
        (2, 6, math.sqrt(5) - 1, math.sqrt(5) + 1),
    ],
)
def test_edge_radii(d1, d2, r_minus, r_plus):
    r = asy.edge_radii(d1, d2)
    assert r.r_minus == pytest.approx(r_minus, abs=1e-12)
    assert r.r_plus == pytest.approx(r_plus, abs=1e-12)


@pytest.mark.parametrize("x", [0.3, 1.0, 2.0, 2.7])
def test_density_regular_is_mckay(x):
    d = 4
    mckay = (d / 2) * math.sqrt(4 * (d - 1) - x * x) / (math.pi * (d * d - x * x))
    assert asy.rsrb_density(x, asy.density_model(d, d)) == pytest.approx(mckay, rel=1e-12)


def test_density_outside_support():
    m = asy.density_model(2, 3)
    assert asy.rsrb_density(3.0, m) == 0.0
    assert asy.rsrb_density(0.2, m) == 0.0


def test_positive_mass_2_3():
    m = asy.density_model(2, 3)
    mass, _ = integrate.quad(asy.rsrb_density, m.radii.r_minus, m.radii.r_plus, args=(m,), limit=200)
    assert mass == pytest.approx(2 / 5, abs=1e-7)
    assert m.delta_weight == pytest.approx(1 / 5)


@pytest.mark.parametrize("d1, d2", TABLE_PAIRS)
def test_density_normalization(d1, d2):
    m = asy.density_model(d1, d2)
    assert 2 * asy.continuous_mass(m) + m.delta_weight == pytest.approx(1, abs=1e-7)


def test_cdf_limits_and_atom():
    m = asy.density_model(2, 3)
    assert asy.rsrb_cdf(10.0, m) == pytest.approx(1.0, abs=1e-9)
    assert asy.rsrb_cdf(-10.0, m) == pytest.approx(0.0, abs=1e-9)
    assert asy.rsrb_cdf(0.0, m) - asy.rsrb_cdf_left(0.0, m) == pytest.approx(0.2, abs=1e-12)


@pytest.mark.parametrize("x", [0.5, 1.0, 1.7, 2.3])
def test_cdf_symmetry(x):
    m = asy.density_model(2, 3)
    assert asy.rsrb_cdf(-x, m) == pytest.approx(1 - asy.rsrb_cdf(x, m), abs=1e-9)


@pytest.mark.parametrize(
    "d1, d2, expected",
    [(3, 3, 0.17157), (2, 6, 0.19577), (4, 28, 2.1435)],
)
def test_mu_rsrb_values(d1, d2, expected):
    assert asy.mu_rsrb(d1, d2) == pytest.approx(expected, abs=1e-4)


@pytest.mark.parametrize("d, expected", [(3, 0.17157), (4, 0.5358), (2, 0.0)])
def test_mu_regular(d, expected):
    assert asy.mu_regular(d) == pytest.approx(expected, abs=1e-4)


@pytest.mark.parametrize("d", range(3, 21))
def test_rsrb_reduces_to_regular(d):
    assert asy.mu_rsrb(d, d) == pytest.approx(asy.mu_regular(d), abs=1e-12)


@pytest.mark.parametrize("d1, d2", UNEQUAL_PAIRS + [(2, 3)])
def test_quartic_residual(d1, d2):
    assert abs(asy.quartic_residual(d1, d2)) <= 1e-9


@pytest.mark.parametrize("d1, d2", [(2, 3), (2, 6), (4, 12)])
def test_printed_quartic_constant_is_off_by_two(d1, d2):
    assert asy.quartic_residual(d1, d2, printed=True) == pytest.approx(-2, abs=1e-9)


@pytest.mark.parametrize("d1, d2", UNEQUAL_PAIRS)
def test_mu_quartic_and_shift_agree(d1, d2):
    mu = asy.mu_rsrb(d1, d2)
    q = asy.mu_quartic_polynomial(d1, d2)
    assert abs(q(mu)) <= 1e-9 * max(1.0, d2 ** 4)
    y2 = (mu - (d1 + d2) / 2) ** 2
    assert abs(asy.mu_shifted_quadratic(d1, d2)(y2)) <= 1e-9 * max(1.0, d2 ** 4)


@pytest.mark.parametrize("d", range(3, 8))
def test_table_argmax_is_unequal_pair_below_eight(d):
    pairs = integer_pairs(d)
    best = max(pairs, key=lambda pr: asy.mu_rsrb(*pr))
    assert best[0] != best[1]


def test_table_argmax_at_eight_is_regular():
    assert max(integer_pairs(8), key=lambda pr: asy.mu_rsrb(*pr)) == (8, 8)


@pytest.mark.parametrize(
    "p, d1, d2, expected, tol",
    [
        (1, 2, 3, 3 - 2 * SQRT2, 1e-9),
        (0, 2, 3, 0.0, 1e-9),
        (Fraction(2, 3), 2, 5, 1 / 3, 1e-4),
        (Fraction(1, 2), 2, 3, 0.044241, 1e-4),
        (Fraction(1, 2), 3, 5, 0.44261, 1e-4),
        (Fraction(1, 3), 3, 6, 0.39162, 1e-4),
        (Fraction(1, 2), 2, 6, 0.25352, 1e-4),
        (Fraction(2, 5), 2, 7, 0.20748, 1e-4),
    ],
)
def test_mu_rsr_values(p, d1, d2, expected, tol):
    assert asy.mu_rsr(p, d1, d2) == pytest.approx(expected, abs=tol)


@pytest.mark.parametrize("d", [3, 4, 6])
@pytest.mark.parametrize("p", [0, Fraction(3, 10), Fraction(7, 10), 1])
def test_mu_rsr_equal_degrees_is_regular(p, d):
    assert asy.mu_rsr(p, d, d) == pytest.approx(asy.mu_regular(d), abs=1e-9)


def test_mu_rsr_monotone_in_p():
    ps = [Fraction(k, 20) for k in range(21)]
    vals = [asy.mu_rsr(p, 2, 3) for p in ps]
    assert vals[0] == pytest.approx(0, abs=1e-9)
    assert vals[-1] == pytest.approx(3 - 2 * SQRT2, abs=1e-9)
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    assert max(np.diff(vals)) < 0.05


def test_mu_rsr_small_p_law():
    assert asy.mu_rsr_small_p(0.1) == pytest.approx(0.0025)
    assert asy.mu_rsr_small_p(0.0) == 0.0
    ratio = asy.mu_rsr(Fraction(1, 50), 2, 3) / (0.02 ** 2 / 4)
    assert 0.85 <= ratio <= 1.15


def test_rsr_singularity_is_double_root():
    root = asy.rsr_singularity(Fraction(1, 2), 2, 3)
    a, b, c, d = (q(root.x) for q in asy.rsr_cubic(Fraction(1, 2), 2, 3))
    R = root.R
    assert R >= 1
    assert abs(a * R ** 3 + b * R ** 2 + c * R + d) < 1e-9
    assert abs(3 * a * R ** 2 + 2 * b * R + c) < 1e-7


def test_printed_mu23_factorization_at_p0():
    roots = asy.mu23_polynomial(0).real_roots()
    np.testing.assert_allclose(roots, [2 - math.sqrt(5), 0, 4, 2 + math.sqrt(5)], atol=1e-12)


def test_printed_mu23_at_p1():
    assert asy.mu23_polynomial(1).coeffs == (9, -64, 178, -74, 7)
    assert asy.mu23_polynomial(1)(3 - 2 * SQRT2) == pytest.approx(316 * SQRT2 - 444, abs=1e-9)


def test_regenerated_mu23_passes_regular_limit():
    q = asy.mu23_regenerated(1)
    assert abs(q(3 - 2 * SQRT2)) < 1e-10
    x = asy.RealPolynomial([0, 1])
    assert q == (x * x - 6 * x + 1) * (x * x - 3 * x + 3) ** 2


@pytest.mark.parametrize("p", [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
def test_regenerated_mu23_contains_solver_root(p):
    q = asy.mu23_regenerated(p)
    mu = asy.mu_rsr(p, 2, 3)
    assert abs(q(mu)) < 1e-8
    assert q.degree == 6


def test_small_world_polynomial():
    mu = asy.mu_small_world()
    assert mu == pytest.approx(0.0521926, abs=1e-6)
    assert abs(asy.SMALL_WORLD_POLYNOMIAL(mu)) <= 1e-10
    assert asy.SMALL_WORLD_POLYNOMIAL(Fraction(0)) == -136


def test_bad_parameters():
    with pytest.raises(ParameterError):
        asy.mu_rsrb(1, 3)
    with pytest.raises(ParameterError):
        asy.quartic_residual(3, 3)
