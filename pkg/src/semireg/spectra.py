"""Dense eigenvalue computations and simple spectral statistics."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ParameterError
from .graph_core import Multigraph, laplacian

__all__ = [
    "Spectrum",
    "eigenvalues_sym",
    "laplacian_spectrum",
    "algebraic_connectivity",
    "zero_eigenvalue_fraction",
    "kernel_dimension",
    "ks_distance",
    "write_spectrum_csv",
]


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues plus an absolute accuracy estimate."""

    values: np.ndarray
    tol: float

    def __len__(self):
        return self.values.shape[0]

    def __getitem__(self, i):
        return self.values[i]


def eigenvalues_sym(M, symmetry_tol: float = 1e-12) -> Spectrum:
    """All eigenvalues of a real symmetric matrix (LAPACK divide and conquer)."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ParameterError("expected a square matrix")
    if M.size and np.max(np.abs(M - M.T)) > symmetry_tol * max(1.0, np.max(np.abs(M))):
        raise ParameterError("matrix is not symmetric")
    values = np.linalg.eigvalsh(M)
    values.setflags(write=False)
    radius = float(np.max(np.abs(values))) if values.size else 0.0
    # backward-stable solver: error ~ n * eps * ||M||
    tol = 10.0 * max(M.shape[0], 1) * np.finfo(float).eps * max(1.0, radius)
    return Spectrum(values, tol)


def laplacian_spectrum(g: Multigraph) -> Spectrum:
    return eigenvalues_sym(laplacian(g))


def algebraic_connectivity(g: Multigraph) -> float:
    """Second-smallest Laplacian eigenvalue.

    Not clamped: a disconnected graph returns its (tiny, possibly negative)
    computed value.  Check :func:`semireg.graph_core.is_connected` if the
    distinction matters.
    """
    if g.n < 2:
        raise ParameterError("algebraic connectivity needs at least two vertices")
    return float(laplacian_spectrum(g).values[1])


def kernel_dimension(s: Spectrum, zero_tol: float = 1e-8) -> int:
    return int(np.count_nonzero(np.abs(s.values) <= zero_tol))


def zero_eigenvalue_fraction(s: Spectrum, zero_tol: float = 1e-8) -> float:
    if zero_tol <= 0:
        raise ParameterError("zero_tol must be positive")
    return kernel_dimension(s, zero_tol) / len(s)


def ks_distance(
    sample,
    cdf: Callable[[float], float],
    cdf_left: Callable[[float], float] | None = None,
) -> float:
    """Kolmogorov-Smirnov distance between a sorted sample and a target CDF.

    At every distinct sample point ``x`` the empirical CDF is compared with
    the target on both sides: ``F_n(x)`` against ``cdf(x)`` and ``F_n(x-)``
    against ``cdf_left(x)``.  ``cdf`` must be right-continuous.  When
    ``cdf_left`` is omitted the target is taken to be continuous, so an atom
    in the target at a sample point is charged in full on the left side.
    """
    x = np.asarray(sample, dtype=float)
    if x.size == 0:
        raise ParameterError("empty sample")
    if np.any(np.diff(x) < 0):
        raise ParameterError("sample must be sorted")
    if cdf_left is None:
        cdf_left = cdf
    pts = np.unique(x)
    size = x.size
    right = np.searchsorted(x, pts, side="right") / size
    left = np.searchsorted(x, pts, side="left") / size
    f_right = np.array([cdf(t) for t in pts])
    f_left = np.array([cdf_left(t) for t in pts])
    return float(max(np.max(np.abs(right - f_right)), np.max(np.abs(left - f_left))))


def write_spectrum_csv(s: Spectrum, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for v in s.values:
            fh.write(f"{v:.17g}\n")
