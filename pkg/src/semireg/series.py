"""Truncated power series and order-by-order solution of polynomial
fixed-point systems ``u = P(x, unknowns)``.

A system is *admissible* when every term of ``P`` that mentions an unknown
carries a factor ``x**k`` with ``k >= 1``.  Then the order-``s`` coefficient
of each unknown depends only on lower orders, and a single forward sweep
solves the system exactly.

Coefficients of walk-count series grow geometrically, so in float mode the
solver runs on the rescaled variable ``y = rho * x``: it stores mantissas
``c_s / rho**s`` and remembers ``log(rho)``.  ``rho`` is picked from a short
preliminary solve so that the mantissas stay in range to high order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import InadmissibleSystemError, ParameterError

__all__ = [
    "Term",
    "GfSystem",
    "TruncatedSeries",
    "solve_gf_system",
    "builtin_system",
    "growth_rate",
    "BUILTIN_KINDS",
]


@dataclass(frozen=True)
class Term:
    """``coef * x**power * prod(factors)``."""

    coef: Fraction | float
    power: int
    factors: tuple[str, ...] = ()


@dataclass(frozen=True)
class GfSystem:
    """Fixed-point equations plus linear definitions.

    ``equations[u]`` is the term list of ``P`` in ``u = P``.  ``definitions``
    name linear combinations of unknowns (``{"phi": {"phiA": w1, "phiB": w2}}``);
    they may appear as factors in equations and are evaluated after the
    unknowns at every order.  ``output`` names the series of interest and
    ``step`` is its natural ratio step (2 when odd coefficients vanish).
    """

    equations: Mapping[str, tuple[Term, ...]]
    definitions: Mapping[str, Mapping[str, Fraction | float]] = field(default_factory=dict)
    output: str = ""
    step: int = 1
    name: str = ""

    def __post_init__(self):
        known = set(self.equations) | set(self.definitions)
        clash = set(self.equations) & set(self.definitions)
        if clash:
            raise InadmissibleSystemError(f"names defined twice: {sorted(clash)}")
        for u, terms in self.equations.items():
            for t in terms:
                if t.power < 0:
                    raise InadmissibleSystemError(f"negative power of x in equation for {u}")
                missing = set(t.factors) - known
                if missing:
                    raise InadmissibleSystemError(f"equation for {u} uses unknown names {sorted(missing)}")
                if t.factors and t.power == 0:
                    raise InadmissibleSystemError(
                        f"term {t} in equation for {u} has no x factor; the sweep would not be explicit"
                    )
        for name, combo in self.definitions.items():
            bad = set(combo) - set(self.equations)
            if bad:
                raise InadmissibleSystemError(f"definition {name} refers to non-unknowns {sorted(bad)}")
        if self.output and self.output not in known:
            raise InadmissibleSystemError(f"output {self.output!r} is not defined")

    @property
    def names(self) -> list[str]:
        return list(self.equations) + list(self.definitions)


@dataclass
class TruncatedSeries:
    """Coefficients ``c_0..c_N``.

    In exact mode ``mantissa`` holds :class:`Fraction` values and
    ``log_scale`` is 0.  In float mode ``c_s = mantissa[s] * exp(s * log_scale)``.
    """

    mantissa: np.ndarray | list
    log_scale: float = 0.0
    exact: bool = False

    @property
    def order(self) -> int:
        return len(self.mantissa) - 1

    def __len__(self):
        return len(self.mantissa)

    def coefficient(self, s: int):
        if self.exact:
            return self.mantissa[s]
        return float(self.mantissa[s]) * math.exp(s * self.log_scale)

    def coefficients(self, upto: int | None = None) -> list:
        """Plain coefficient values (floats may overflow to inf at high order)."""
        upto = self.order if upto is None else upto
        if self.exact:
            return list(self.mantissa[: upto + 1])
        with np.errstate(over="ignore"):
            s = np.arange(upto + 1)
            return list(np.asarray(self.mantissa[: upto + 1], dtype=float) * np.exp(s * self.log_scale))

    def log_abs(self, s: int) -> float:
        m = abs(float(self.mantissa[s]))
        return -math.inf if m == 0 else math.log(m) + s * self.log_scale


class _Sweep:
    """Forward sweep state: coefficient arrays and cached partial products."""

    def __init__(self, system: GfSystem, order: int, exact: bool, rho: float):
        self.system = system
        self.order = order
        self.exact = exact
        self.names = system.names
        if exact:
            self.data = {n: [Fraction(0)] * (order + 1) for n in self.names}
            self.scaled_terms = {
                u: [(Fraction(t.coef), t.power, t.factors) for t in terms]
                for u, terms in system.equations.items()
            }
            self.defs = {d: {k: Fraction(v) for k, v in c.items()} for d, c in system.definitions.items()}
        else:
            self.data = {n: np.zeros(order + 1) for n in self.names}
            self.scaled_terms = {
                u: [(float(t.coef) * rho ** (-t.power), t.power, t.factors) for t in terms]
                for u, terms in system.equations.items()
            }
            self.defs = {d: {k: float(v) for k, v in c.items()} for d, c in system.definitions.items()}
        # prefix products needed by terms with three or more factors,
        # keyed by the sorted factor tuple of the prefix
        self.prods: dict[tuple[str, ...], object] = {}
        for terms in self.scaled_terms.values():
            for _, _, f in terms:
                fs = tuple(sorted(f))
                for k in range(2, len(fs)):
                    self.prods.setdefault(fs[:k], self._zeros())
        self.prod_keys = sorted(self.prods, key=len)
        self.prod_done = -1

    def _zeros(self):
        return [Fraction(0)] * (self.order + 1) if self.exact else np.zeros(self.order + 1)

    def _series(self, fs: tuple[str, ...]):
        return self.data[fs[0]] if len(fs) == 1 else self.prods[fs]

    def _conv_at(self, a, b, t: int):
        if self.exact:
            return sum(a[j] * b[t - j] for j in range(t + 1))
        return float(np.dot(a[: t + 1], b[t::-1]))

    def _product_coeff(self, fs: tuple[str, ...], t: int):
        """Coefficient ``t`` of the product of the named series."""
        if len(fs) == 1:
            return self.data[fs[0]][t]
        return self._conv_at(self._series(fs[:-1]), self.data[fs[-1]], t)

    def _extend_products(self, upto: int):
        for t in range(self.prod_done + 1, upto + 1):
            for key in self.prod_keys:
                self.prods[key][t] = self._product_coeff(key, t)
        self.prod_done = max(self.prod_done, upto)

    def run(self):
        zero = Fraction(0) if self.exact else 0.0
        for s in range(self.order + 1):
            if self.prods and s:
                self._extend_products(s - 1)
            for u, terms in self.scaled_terms.items():
                acc = zero
                for coef, k, fs in terms:
                    if k > s:
                        continue
                    if not fs:
                        if k == s:
                            acc += coef
                        continue
                    acc += coef * self._product_coeff(tuple(sorted(fs)), s - k)
                self.data[u][s] = acc
            for d, combo in self.defs.items():
                self.data[d][s] = sum((w * self.data[k][s] for k, w in combo.items()), zero)
        return self.data


def _estimate_rate(values: Sequence[float]) -> float:
    """Crude growth estimate from the tail of a short float solve."""
    v = np.abs(np.asarray(values, dtype=float))
    pos = np.nonzero(v > 0)[0]
    if pos.size < 3:
        return 1.0
    s = int(pos[-1])
    s0 = s - 2 if s >= 2 and v[s - 2] > 0 else int(pos[-2])
    step = s - s0
    return float((v[s] / v[s0]) ** (1.0 / step) * ((s / max(s0, 1)) ** (1.5 / step)))


def solve_gf_system(
    system: GfSystem,
    order: int,
    exact: bool = False,
    scale: float | None = None,
) -> dict[str, TruncatedSeries]:
    """Solve ``system`` to ``order`` and return every unknown and definition.

    ``exact=True`` runs in :class:`Fraction` arithmetic (use modest orders).
    In float mode ``scale`` fixes the rescaling ``rho``; by default it is
    estimated from a preliminary solve and adjusted until the mantissas stay
    finite and non-vanishing.
    """
    if order < 0:
        raise ParameterError("order must be non-negative")
    if exact:
        data = _Sweep(system, order, True, 1.0).run()
        return {k: TruncatedSeries(v, 0.0, True) for k, v in data.items()}

    if scale is not None:
        data = _Sweep(system, order, False, scale).run()
        return {k: TruncatedSeries(v, math.log(scale), False) for k, v in data.items()}

    probe_order = min(order, 64)
    probe = _Sweep(system, probe_order, False, 1.0).run()
    key = system.output or system.names[0]
    rho = max(1.0, _estimate_rate(probe[key]))
    for _ in range(8):
        with np.errstate(over="ignore", invalid="ignore"):
            data = _Sweep(system, order, False, rho).run()
        tail = np.abs(data[key][max(0, order - 4):])
        if np.all(np.isfinite(tail)) and np.all(np.isfinite(np.concatenate(list(data.values())))):
            if tail.max() > 1e-250 or order < 8:
                break
            rho *= 0.9
        else:
            rho *= 1.1
    return {k: TruncatedSeries(v, math.log(rho), False) for k, v in data.items()}


def growth_rate(series: TruncatedSeries, step: int = 1) -> float:
    """Estimate the coefficient growth rate ``lambda`` from the series tail.

    Uses ``c_{s+step} / c_s`` at ``s = N - step`` and removes the
    ``s**(-3/2)`` factor of a square-root singularity by multiplying with
    ``((s + step) / s)**(3/2)``.  Returns the ``step``-th root.
    """
    if step not in (1, 2):
        raise ParameterError("step must be 1 or 2")
    N = series.order
    s = N - step
    if s <= 0:
        raise ParameterError("series too short for a ratio estimate")
    a, b = series.mantissa[s], series.mantissa[N]
    if not (a > 0 and b > 0):
        raise ParameterError("tail coefficients must be positive")
    if series.exact:
        log_ratio = math.log(b) - math.log(a)
    else:
        log_ratio = math.log(float(b) / float(a)) + step * series.log_scale
    log_ratio += 1.5 * math.log((s + step) / s)
    return math.exp(log_ratio / step)


# -- the systems used in this package ----------------------------------------


def _t(coef, power, *factors) -> Term:
    return Term(Fraction(coef) if not isinstance(coef, float) else coef, power, tuple(factors))


def _catalan() -> GfSystem:
    return GfSystem({"c": (_t(1, 0), _t(1, 1, "c", "c"))}, output="c", step=1, name="catalan")


def _rsrb(d1, d2) -> GfSystem:
    w = Fraction(1, d1 + d2)
    eqs = {
        "A": (_t(1, 0), _t(d1 - 1, 2, "A", "B")),
        "B": (_t(1, 0), _t(d2 - 1, 2, "B", "A")),
        "phiA": (_t(1, 0), _t(d2, 2, "phiA", "A")),
        "phiB": (_t(1, 0), _t(d1, 2, "phiB", "B")),
    }
    defs = {"phi": {"phiA": d1 * w, "phiB": d2 * w}}
    return GfSystem(eqs, defs, output="phi", step=2, name=f"rsrb({d1},{d2})")


def _rsrb_looped(d1, d2) -> GfSystem:
    e = d2 - d1
    w = Fraction(1, d1 + d2)
    eqs = {
        "A": (_t(1, 0), _t(e, 1, "A"), _t(d1 - 1, 2, "A", "B")),
        "B": (_t(1, 0), _t(d2 - 1, 2, "B", "A")),
        "phiA": (_t(1, 0), _t(d2, 2, "phiA", "A")),
        "phiB": (_t(1, 0), _t(e, 1, "phiB"), _t(d1, 2, "phiB", "B")),
    }
    defs = {"phi": {"phiA": d1 * w, "phiB": d2 * w}}
    return GfSystem(eqs, defs, output="phi", step=1 if e else 2, name=f"rsrb_looped({d1},{d2})")


def _rsr(p, d1, d2) -> GfSystem:
    # B carries the x^2 factor its tree decomposition requires
    p = Fraction(p) if not isinstance(p, float) else Fraction(p)
    e = d2 - d1
    eqs = {
        "A": (_t(1, 0), _t(e, 1, "A"), _t(d1 - 1, 2, "A", "R")),
        "B": (_t(1, 0), _t(d2 - 1, 2, "B", "R")),
        "phiA": (_t(1, 0), _t(e, 1, "phiA"), _t(d1, 2, "phiA", "R")),
        "phiB": (_t(1, 0), _t(d2, 2, "phiB", "R")),
    }
    defs = {"R": {"A": 1 - p, "B": p}, "phi": {"phiA": 1 - p, "phiB": p}}
    return GfSystem(eqs, defs, output="phi", step=1 if e else 2, name=f"rsr({float(p)},{d1},{d2})")


def _small_world() -> GfSystem:
    eqs = {
        "A": (_t(1, 0), _t(1, 2, "A", "Ahat"), _t(1, 2, "A", "B")),
        "Ahat": (_t(1, 0), _t(2, 2, "Ahat", "B")),
        "B": (_t(1, 0), _t(1, 1, "B"), _t(1, 2, "A", "B")),
        "phi_o": (_t(1, 0), _t(1, 2, "phi_o", "Ahat"), _t(2, 2, "phi_o", "B")),
        "phi_e": (_t(1, 0), _t(1, 1, "phi_e"), _t(2, 2, "phi_e", "A")),
    }
    defs = {"phi": {"phi_o": Fraction(1, 2), "phi_e": Fraction(1, 2)}}
    return GfSystem(eqs, defs, output="phi", step=1, name="small_world")


BUILTIN_KINDS = ("catalan", "rsrb", "rsrb_looped", "rsr", "small_world")


def builtin_system(kind: str, **params) -> GfSystem:
    """Named walk-count systems.

    ``rsrb`` / ``rsrb_looped`` take ``d1, d2``; ``rsr`` takes ``p, d1, d2``;
    ``catalan`` and ``small_world`` take nothing.
    """
    if kind == "catalan":
        return _catalan()
    if kind == "rsrb":
        return _rsrb(params["d1"], params["d2"])
    if kind == "rsrb_looped":
        return _rsrb_looped(params["d1"], params["d2"])
    if kind == "rsr":
        return _rsr(params["p"], params["d1"], params["d2"])
    if kind == "small_world":
        return _small_world()
    raise ParameterError(f"unknown system kind {kind!r}; expected one of {BUILTIN_KINDS}")
