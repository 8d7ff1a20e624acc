"""Random semi-regular graphs: generators, spectra and large-n predictions
for the algebraic connectivity."""

from .errors import InadmissibleSystemError, NoRootError, ParameterError, RewireError
from .generators import (
    CompleteBipartiteParams,
    RegularParams,
    RsrbParams,
    RsrParams,
    SmallWorldParams,
    integer_pairs,
    trial_rng,
    trial_seed,
)
from .graph_core import Multigraph, is_connected, rewire_to_simple
from .spectra import algebraic_connectivity, laplacian_spectrum
from .asymptotics import mu_regular, mu_rsr, mu_rsrb, mu_small_world
from .series import builtin_system, growth_rate, solve_gf_system

__version__ = "0.1.0"

__all__ = [
    "CompleteBipartiteParams",
    "InadmissibleSystemError",
    "Multigraph",
    "NoRootError",
    "ParameterError",
    "RegularParams",
    "RewireError",
    "RsrParams",
    "RsrbParams",
    "SmallWorldParams",
    "algebraic_connectivity",
    "builtin_system",
    "growth_rate",
    "integer_pairs",
    "is_connected",
    "laplacian_spectrum",
    "mu_regular",
    "mu_rsr",
    "mu_rsrb",
    "mu_small_world",
    "rewire_to_simple",
    "solve_gf_system",
    "trial_rng",
    "trial_seed",
]
