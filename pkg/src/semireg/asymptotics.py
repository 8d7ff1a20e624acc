"""Large-n predictions for the semi-regular graph families.

* Bipartite model: closed forms for the spectral density (continuous part
  on ``r_- < |x| < r_+`` plus an atom at 0) and for the algebraic
  connectivity.
* Mixed model: the algebraic connectivity is ``d2 - 1/x`` where ``x`` is the
  dominant singularity of the tree-walk generating function ``R(x)``; ``R``
  solves the cubic ``F(R, x) = 0`` and the singularity sits where ``F`` has a
  repeated root in ``R``.
* Small-world ring: smallest root of a fixed degree-9 polynomial.

All polynomial work is done in exact rational arithmetic (see
:mod:`semireg.polynomial`); floats only appear in the final root values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .errors import NoRootError, ParameterError
from .polynomial import RealPolynomial, _frac, smallest_real_root

__all__ = [
    "EdgeRadii",
    "DensityModel",
    "edge_radii",
    "density_model",
    "rsrb_density",
    "rsrb_cdf",
    "rsrb_cdf_left",
    "continuous_mass",
    "mu_rsrb",
    "mu_regular",
    "walk_quartic",
    "PRINTED_QUARTIC_CONSTANT",
    "quartic_residual",
    "mu_quartic_polynomial",
    "mu_shifted_quadratic",
    "rsr_cubic",
    "rsr_discriminant",
    "RsrRoot",
    "rsr_singularity",
    "mu_rsr",
    "mu23_polynomial",
    "mu23_regenerated",
    "SMALL_WORLD_POLYNOMIAL",
    "mu_small_world",
    "mu_rsr_small_p",
]


# -- bipartite model --------------------------------------------------------


@dataclass(frozen=True)
class EdgeRadii:
    r_minus: float
    r_plus: float


@dataclass(frozen=True)
class DensityModel:
    d1: int
    d2: int
    radii: EdgeRadii
    delta_weight: float


def edge_radii(d1, d2) -> EdgeRadii:
    """Inner and outer edge of the continuous spectral support."""
    if d1 < 1 or d2 < 1 or d1 + d2 < 3:
        raise ParameterError("need d1, d2 >= 1 and d1 + d2 >= 3")
    s = d1 + d2 - 2
    root = math.sqrt(s * s - (d2 - d1) ** 2)
    # s - root can round to a tiny negative number when d1 == d2
    return EdgeRadii(math.sqrt(max(s - root, 0.0)), math.sqrt(s + root))


def density_model(d1, d2) -> DensityModel:
    return DensityModel(d1, d2, edge_radii(d1, d2), abs(d2 - d1) / (d1 + d2))


def _as_model(model_or_d1, d2=None) -> DensityModel:
    if isinstance(model_or_d1, DensityModel):
        return model_or_d1
    return density_model(model_or_d1, d2)


def rsrb_density(x: float, model: DensityModel) -> float:
    """Continuous part of the limiting adjacency density.

    The atom at 0 is not part of this function; read it from
    ``model.delta_weight``.
    """
    rm, rp = model.radii.r_minus, model.radii.r_plus
    ax = abs(x)
    if not rm < ax < rp:
        return 0.0
    prod = model.d1 * model.d2
    c = prod / (model.d1 + model.d2) / math.pi
    x2 = ax * ax
    return c * math.sqrt((x2 - rm * rm) * (rp * rp - x2)) / ((prod - x2) * ax)


def _angle_integrand(theta: float, model: DensityModel) -> float:
    # x^2 = r_-^2 + (r_+^2 - r_-^2) sin^2(theta) turns rho(x) dx into a smooth
    # integrand on [0, pi/2] with no edge singularities
    rm2 = model.radii.r_minus ** 2
    span = model.radii.r_plus ** 2 - rm2
    s2 = math.sin(theta) ** 2
    c2 = 1.0 - s2
    x2 = rm2 + span * s2
    prod = model.d1 * model.d2
    c = prod / (model.d1 + model.d2) / math.pi
    if x2 == 0.0:
        # d1 == d2 at theta == 0: sin^2/x^2 -> 1/span
        return c * span * c2 / prod
    return c * span * span * s2 * c2 / ((prod - x2) * x2)


def _theta_of(x: float, model: DensityModel) -> float:
    rm2 = model.radii.r_minus ** 2
    span = model.radii.r_plus ** 2 - rm2
    t = (x * x - rm2) / span
    return math.asin(math.sqrt(min(max(t, 0.0), 1.0)))


def _positive_mass_to(x: float, model: DensityModel) -> float:
    """Integral of the density over ``(r_-, min(x, r_+))`` for ``x >= 0``."""
    if x <= model.radii.r_minus:
        return 0.0
    upper = math.pi / 2 if x >= model.radii.r_plus else _theta_of(x, model)
    val, _ = integrate.quad(_angle_integrand, 0.0, upper, args=(model,), epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def continuous_mass(model) -> float:
    """Mass of the continuous part on the positive half-line (by quadrature)."""
    model = _as_model(model)
    return _positive_mass_to(math.inf, model)


def rsrb_cdf(x: float, model) -> float:
    """Right-continuous CDF of the limiting spectral measure, atom included."""
    model = _as_model(model)
    half = continuous_mass(model)
    if x < 0:
        return half - _positive_mass_to(-x, model)
    return half + model.delta_weight + _positive_mass_to(x, model)


def rsrb_cdf_left(x: float, model) -> float:
    """Left limit of :func:`rsrb_cdf` (differs only at 0, by the atom)."""
    model = _as_model(model)
    if x == 0:
        return continuous_mass(model)
    return rsrb_cdf(x, model)


def mu_rsrb(d1, d2) -> float:
    """Limiting algebraic connectivity of the bipartite ``(d1, d2)`` model."""
    if d1 < 2 or d2 < 2 or (d1, d2) == (2, 2):
        raise ParameterError("need d1, d2 >= 2 and (d1, d2) != (2, 2)")
    rp = edge_radii(d1, d2).r_plus
    return (d1 + d2) / 2 - math.sqrt(((d2 - d1) / 2) ** 2 + rp * rp)


def mu_regular(d) -> float:
    """``d - 2 sqrt(d - 1)``."""
    if d < 2:
        raise ParameterError("need d >= 2")
    return d - 2 * math.sqrt(d - 1)


# The loop-padded bipartite walk system reduces to a quadratic in the
# A-series; its discriminant in x is the quartic below.  Solving it for the
# smallest positive x gives the expansion rate 1/x and mu = d2 - 1/x.


def walk_quartic(d1, d2) -> RealPolynomial:
    """Discriminant in ``x`` of the loop-padded quadratic for ``A``.

    With ``e = d2 - d1`` the quadratic is
    ``(d2-1)(e x - 1) x^2 A^2 + (1 - e x + e x^2) A - 1 = 0``.
    """
    e = d2 - d1
    lin = RealPolynomial([1, -e, e])
    quad = RealPolynomial([-1, e]) * RealPolynomial([0, 0, d2 - 1])
    return lin * lin + 4 * quad


# A sign slip in the published quartic: the constant term printed as -1 is +1
# in the discriminant above.  Kept for the regression that documents it.
PRINTED_QUARTIC_CONSTANT = -1


def quartic_residual(d1, d2, printed: bool = False) -> float:
    """Quartic evaluated at ``x = 1/(d2 - mu_rsrb(d1, d2))``.

    Zero (to rounding) for the derived quartic.  With ``printed=True`` the
    published constant term is used instead and the residual is exactly -2.

    The chain behind it: substituting ``x = 1/(d2 - mu)`` gives a quartic in
    ``mu`` (:func:`mu_quartic_polynomial`); shifting ``mu = y + (d1+d2)/2``
    removes both odd powers, leaving a quadratic in ``y^2``
    (:func:`mu_shifted_quadratic`) whose smaller root is the closed form.
    """
    if not d1 < d2:
        raise ParameterError("the quartic residual is defined for d1 < d2")
    q = walk_quartic(d1, d2)
    if printed:
        q = q + (PRINTED_QUARTIC_CONSTANT - q.coeffs[0])
    x = 1.0 / (d2 - mu_rsrb(d1, d2))
    return q(x)


def mu_quartic_polynomial(d1, d2) -> RealPolynomial:
    """Quartic in ``mu`` whose smallest root is :func:`mu_rsrb`."""
    s, p = d1 + d2, d1 * d2
    return RealPolynomial([
        (p - s) ** 2,
        2 * s * (s - 2 - p),
        s * s + 2 * p - 2 * s + 4,
        -2 * s,
        1,
    ])


def mu_shifted_quadratic(d1, d2) -> RealPolynomial:
    """Polynomial in ``Y = y^2`` after the shift ``mu = y + (d1 + d2)/2``."""
    e = Fraction(d2 - d1)
    s = d1 + d2
    return RealPolynomial([e ** 2 * s / 2 + e ** 4 / 16, 4 - 2 * s - e ** 2 / 2, 1])


# -- mixed model ------------------------------------------------------------


def rsr_cubic(p, d1, d2) -> tuple[RealPolynomial, RealPolynomial, RealPolynomial, RealPolynomial]:
    """Coefficients (in ``x``) of ``F(R, x) = a R^3 + b R^2 + c R + d``.

    ``F = x e (1 - R x) p + (R x^2 (d2-1) - 1)(R^2 x^2 (d1-1) + R x e - R + 1)``
    with ``e = d2 - d1``.
    """
    p = _frac(p)
    e = d2 - d1
    a = RealPolynomial([0, 0, 0, 0, (d1 - 1) * (d2 - 1)])
    b = RealPolynomial([0, 0, -(d2 - 1) - (d1 - 1), (d2 - 1) * e])
    c = RealPolynomial([1, -e, (d2 - 1) - p * e])
    d = RealPolynomial([-1, p * e])
    return a, b, c, d


def rsr_discriminant(p, d1, d2) -> RealPolynomial:
    """Discriminant of ``F`` in ``R``, as a polynomial in ``x``, x-factors removed."""
    a, b, c, d = rsr_cubic(p, d1, d2)
    disc = (
        b * b * c * c
        - 4 * a * c * c * c
        - 4 * b * b * b * d
        - 27 * a * a * d * d
        + 18 * a * b * c * d
    )
    return disc.strip_root_at_zero()


@dataclass(frozen=True)
class RsrRoot:
    x: float
    R: float
    mu: float
    candidates: tuple[float, ...]


def _cubic_roots(coeffs, x: float) -> np.ndarray:
    return np.roots([q(x) for q in coeffs])


def _principal_branch(coeffs, x_end: float, steps: int = 600) -> complex:
    """Follow the root of ``F(., x)`` with ``R(0) = 1`` out to ``x_end``.

    The start is tiny ``x`` where that root is the only one near 1 (the
    other two blow up like ``x^-2``); each step keeps the root nearest the
    previous value.  The grid is graded towards ``x_end`` where the branch
    approaches a square-root point.
    """
    t = 1.0 - np.geomspace(1.0, 1e-9, steps)
    xs = x_end * (1e-4 + (1.0 - 1e-4) * t)
    prev = 1.0 + 0j
    for x in xs:
        roots = _cubic_roots(coeffs, x)
        prev = roots[np.argmin(np.abs(roots - prev))]
    return prev


def rsr_singularity(p, d1, d2) -> RsrRoot:
    """Dominant singularity of the branch ``R(x)`` with ``R(0) = 1``.

    Candidates are the positive real roots of the discriminant, scanned in
    increasing order.  A candidate is accepted when the repeated root of
    ``F(., x)`` there is real, at least 1, and is reached by continuing the
    ``R(0) = 1`` branch from the origin.  The continuation test rejects
    points where two other branches collide (at ``p = 0`` such a point sits
    below the true singularity).
    """
    p = _frac(p)
    if not 0 <= p <= 1:
        raise ParameterError("p must lie in [0, 1]")
    if not 2 <= d1 <= d2:
        raise ParameterError("need 2 <= d1 <= d2")
    disc = rsr_discriminant(p, d1, d2)
    cands = [x for x in disc.real_roots(0, disc.root_bound()) if x > 0]
    coeffs = rsr_cubic(p, d1, d2)
    for x in cands:
        roots = _cubic_roots(coeffs, x)
        # the repeated root: the closest pair among the three
        i, j = min(((0, 1), (0, 2), (1, 2)), key=lambda ij: abs(roots[ij[0]] - roots[ij[1]]))
        rep = 0.5 * (roots[i] + roots[j])
        scale = max(1.0, abs(rep))
        if abs(rep.imag) > 1e-6 * scale or rep.real < 1 - 1e-9:
            continue
        branch = _principal_branch(coeffs, x)
        if abs(branch - rep) <= 1e-3 * scale:
            return RsrRoot(x, float(rep.real), d2 - 1 / x, tuple(cands))
    raise NoRootError(
        f"no admissible singularity for p={float(p)}, d1={d1}, d2={d2}; "
        f"discriminant roots: {disc.real_roots()}"
    )


def mu_rsr(p, d1, d2) -> float:
    """Limiting algebraic connectivity of the mixed ``(p, d1, d2)`` model."""
    return rsr_singularity(p, d1, d2).mu


def mu23_polynomial(p) -> RealPolynomial:
    """The published degree-4 polynomial in ``mu`` for ``(d1, d2) = (2, 3)``.

    Kept only for cross-examination; it misses the regular limit at
    ``p = 1``.  Use :func:`mu23_regenerated` for the consistent version.
    """
    p = _frac(p)
    mu = RealPolynomial([0, 1])
    return (
        mu * (mu - 4) * (mu * mu - 4 * mu - 1)
        + 2 * p * mu * (3 * mu ** 3 - 33 * mu ** 2 + 89 * mu - 19)
        + p * p * (-15 * mu * mu - 30 * mu + 1)
        + 8 * p ** 3
    )


def mu23_regenerated(p, d1: int = 2, d2: int = 3) -> RealPolynomial:
    """The discriminant of ``F`` rewritten in ``mu`` via ``x = 1/(d2 - mu)``.

    Multiplying ``sum c_k x^k`` by ``(d2 - mu)^deg`` gives
    ``sum c_k (d2 - mu)^(deg - k)``.  Normalized to a monic polynomial in ``mu``.
    """
    disc = rsr_discriminant(p, d1, d2)
    deg = disc.degree
    base = RealPolynomial([d2, -1])
    out = RealPolynomial([0])
    for k, c in enumerate(disc.coeffs):
        out = out + c * base ** (deg - k)
    return out.monic()


# -- small-world ring -------------------------------------------------------

SMALL_WORLD_POLYNOMIAL = RealPolynomial(
    [-136, 3108, -10368, 14848, -11400, 5184, -1454, 249, -24, 1]
)


def mu_small_world() -> float:
    """Smallest root in (0, 1) of the degree-9 small-world polynomial."""
    return smallest_real_root(SMALL_WORLD_POLYNOMIAL, 0, 1)


def mu_rsr_small_p(p) -> float:
    """Leading-order law ``p^2 / 4`` for the ``(p, 2, 3)`` model as ``p -> 0``."""
    if not 0 <= p <= 1:
        raise ParameterError("p must lie in [0, 1]")
    return p * p / 4
