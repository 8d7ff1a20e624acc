"""Seeded random constructors for the graph families studied here.

Every random generator is a configuration model: vertices contribute one
stub per unit of target degree, the stubs are shuffled, and consecutive
pairings become edges.  Outputs are multigraphs; pass them through
:func:`semireg.graph_core.rewire_to_simple` for simple graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import ParameterError
from .graph_core import Multigraph

__all__ = [
    "RsrbParams",
    "RsrParams",
    "SmallWorldParams",
    "RegularParams",
    "CompleteBipartiteParams",
    "ModelParams",
    "trial_seed",
    "trial_rng",
    "generate_rsrb",
    "generate_rsr",
    "generate_regular",
    "generate_small_world",
    "complete_bipartite",
    "integer_pairs",
    "generate",
    "params_dict",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def trial_seed(base: int, index: int) -> int:
    """64-bit seed for trial ``index`` of a run seeded with ``base``.

    This is element ``index + 1`` of the SplitMix64 sequence started at
    ``base``: add ``(index + 1) * golden`` modulo 2**64, then apply the
    SplitMix64 finalizer (two xor-shift-multiply rounds and a final
    xor-shift).
    """
    z = (base + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def trial_rng(base: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(trial_seed(base, index)))


@dataclass(frozen=True)
class RsrbParams:
    """Bipartite model: ``n1`` vertices of degree ``d1`` facing ``n2`` of degree ``d2``."""

    d1: int
    d2: int
    n1: int

    kind = "rsrb"

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1 or self.n1 < 1:
            raise ParameterError("RSRB needs d1, d2, n1 >= 1")
        if (self.n1 * self.d1) % self.d2:
            raise ParameterError(
                f"n1*d1 = {self.n1 * self.d1} is not divisible by d2 = {self.d2}"
            )

    @property
    def n2(self) -> int:
        return self.n1 * self.d1 // self.d2

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def average_degree(self) -> float:
        return 2 * self.d1 * self.d2 / (self.d1 + self.d2)

    @classmethod
    def from_n(cls, d1: int, d2: int, n: int) -> "RsrbParams":
        """Exact split ``n1 = d2 n / (d1 + d2)``; raises if it is not integral."""
        if (d2 * n) % (d1 + d2):
            raise ParameterError(
                f"n = {n} cannot be split into parts with n1*d1 = n2*d2 for ({d1}, {d2})"
            )
        return cls(d1, d2, d2 * n // (d1 + d2))

    @classmethod
    def near_n(cls, d1: int, d2: int, n: int) -> "RsrbParams":
        """Feasible parameters whose total vertex count is closest to ``n``.

        ``n1`` must be a multiple of ``d2 / gcd(d1, d2)``; ties go to the
        smaller graph.
        """
        step = d2 // math.gcd(d1, d2)
        target = d2 * n / (d1 + d2)
        lo = max(step, int(target // step) * step)
        best = min((lo, lo + step), key=lambda n1: (abs(n1 + n1 * d1 // d2 - n), n1))
        return cls(d1, d2, best)

    def with_n(self, n: int) -> "RsrbParams":
        return RsrbParams.near_n(self.d1, self.d2, n)

    def generate(self, rng: np.random.Generator) -> Multigraph:
        return generate_rsrb(self, rng)

    def to_dict(self) -> dict:
        return {"d1": self.d1, "d2": self.d2, "n1": self.n1, "n2": self.n2}


@dataclass(frozen=True)
class RsrParams:
    """Mixed model: a fraction ``p`` of the ``n`` vertices has degree ``d2``."""

    p: float | Fraction
    d1: int
    d2: int
    n: int

    kind = "rsr"

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ParameterError("p must lie in [0, 1]")
        if self.n < 2 or self.d1 < 1 or self.d2 < 1:
            raise ParameterError("RSR needs n >= 2 and degrees >= 1")

    @property
    def n1(self) -> int:
        # small slack so that e.g. (1 - 0.7) * 10 still floors to 3
        return int(math.floor((1 - self.p) * self.n + 1e-9))

    @property
    def n2(self) -> int:
        return self.n - self.n1

    @property
    def average_degree(self) -> float:
        return (self.n1 * self.d1 + self.n2 * self.d2) / self.n

    def with_n(self, n: int) -> "RsrParams":
        return RsrParams(self.p, self.d1, self.d2, n)

    def generate(self, rng: np.random.Generator) -> Multigraph:
        return generate_rsr(self, rng)

    def to_dict(self) -> dict:
        return {"p": float(self.p), "d1": self.d1, "d2": self.d2, "n1": self.n1, "n2": self.n2}


@dataclass(frozen=True)
class SmallWorldParams:
    """Ring of ``n`` vertices plus a random matching of the even-indexed ones."""

    n: int

    kind = "small-world"

    def __post_init__(self):
        if self.n < 4 or self.n % 4:
            raise ParameterError("small-world ring size must be a positive multiple of 4")

    def with_n(self, n: int) -> "SmallWorldParams":
        return SmallWorldParams(4 * max(1, round(n / 4)))

    def generate(self, rng: np.random.Generator) -> Multigraph:
        return generate_small_world(self, rng)

    def to_dict(self) -> dict:
        return {}


@dataclass(frozen=True)
class RegularParams:
    d: int
    n: int

    kind = "regular"

    def __post_init__(self):
        if self.d < 1 or self.n < 1:
            raise ParameterError("regular model needs d, n >= 1")
        if (self.n * self.d) % 2:
            raise ParameterError(f"n*d = {self.n * self.d} is odd; no {self.d}-regular multigraph exists")

    def with_n(self, n: int) -> "RegularParams":
        return RegularParams(self.d, n + (n * self.d) % 2)

    def generate(self, rng: np.random.Generator) -> Multigraph:
        return generate_regular(self.d, self.n, rng)

    def to_dict(self) -> dict:
        return {"d": self.d}


@dataclass(frozen=True)
class CompleteBipartiteParams:
    b: int
    n: int

    kind = "complete-bipartite"

    def __post_init__(self):
        if not 1 <= self.b < self.n:
            raise ParameterError("complete bipartite needs 1 <= b < n")

    def with_n(self, n: int) -> "CompleteBipartiteParams":
        return CompleteBipartiteParams(self.b, n)

    def generate(self, rng: np.random.Generator | None = None) -> Multigraph:
        return complete_bipartite(self.b, self.n)

    def to_dict(self) -> dict:
        return {"b": self.b}


ModelParams = Union[RsrbParams, RsrParams, SmallWorldParams, RegularParams, CompleteBipartiteParams]


def generate(model: ModelParams, rng: np.random.Generator) -> Multigraph:
    return model.generate(rng)


def generate_rsrb(params: RsrbParams, rng: np.random.Generator) -> Multigraph:
    n1, n2 = params.n1, params.n2
    left = np.tile(np.arange(n1, dtype=np.int64), params.d1)
    right = np.tile(np.arange(n1, n1 + n2, dtype=np.int64), params.d2)
    right = right[rng.permutation(right.shape[0])]
    return Multigraph(n1 + n2, np.column_stack([left, right]))


def _match_bag(n: int, bag: np.ndarray, rng: np.random.Generator) -> Multigraph:
    bag = bag[rng.permutation(bag.shape[0])]
    short = None
    if bag.shape[0] % 2:
        short = int(bag[-1])
        bag = bag[:-1]
    half = bag.shape[0] // 2
    return Multigraph(n, np.column_stack([bag[:half], bag[half:]]), short_vertex=short)


def generate_rsr(params: RsrParams, rng: np.random.Generator) -> Multigraph:
    """Single-bag stub matching; an odd leftover stub is discarded."""
    n1, n = params.n1, params.n
    bag = np.concatenate([
        np.tile(np.arange(n1, dtype=np.int64), params.d1),
        np.tile(np.arange(n1, n, dtype=np.int64), params.d2),
    ])
    return _match_bag(n, bag, rng)


def generate_regular(d: int, n: int, rng: np.random.Generator) -> Multigraph:
    if (n * d) % 2:
        raise ParameterError(f"n*d = {n * d} is odd; no {d}-regular multigraph exists")
    return _match_bag(n, np.tile(np.arange(n, dtype=np.int64), d), rng)


def generate_small_world(params: SmallWorldParams, rng: np.random.Generator) -> Multigraph:
    n = params.n
    ring = np.arange(n, dtype=np.int64)
    chords = np.arange(0, n, 2, dtype=np.int64)
    chords = chords[rng.permutation(chords.shape[0])]
    half = chords.shape[0] // 2
    edges = np.vstack([
        np.column_stack([ring, (ring + 1) % n]),
        np.column_stack([chords[:half], chords[half:]]),
    ])
    return Multigraph(n, edges)


def complete_bipartite(b: int, n: int) -> Multigraph:
    if not 1 <= b < n:
        raise ParameterError("complete bipartite needs 1 <= b < n")
    left, right = np.meshgrid(np.arange(b), np.arange(b, n), indexing="ij")
    return Multigraph(n, np.column_stack([left.ravel(), right.ravel()]))


def integer_pairs(d: int) -> list[tuple[int, int]]:
    """All ``2 <= d1 <= d2`` with ``2 d1 d2 / (d1 + d2) == d``, largest d1 first."""
    if d < 3:
        raise ParameterError("integer pairs are enumerated for d >= 3")
    out = []
    for d1 in range(d, 1, -1):
        den = 2 * d1 - d
        if den <= 0:
            continue
        if (d * d1) % den == 0 and d * d1 // den >= d1:
            out.append((d1, d * d1 // den))
    return out


def params_dict(model: ModelParams) -> dict:
    """Plain-dict view with the model kind, for reports."""
    out = {"kind": model.kind, "n": model.n}
    out.update(model.to_dict())
    return out

