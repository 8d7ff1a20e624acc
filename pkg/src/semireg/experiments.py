"""Monte Carlo harness: ensembles of random graphs, table reproduction and
the smaller experiments (Ramanujan fraction, edge-deletion reliability,
spectral density, walk counts).

Trial ``i`` of a run with seed ``s`` draws its graph from
``trial_rng(s, i)`` and, when rewiring, its swaps from
``trial_rng(trial_seed(s, i), 0)``.  Results are stored by trial index, so
reports do not depend on how trials are spread over worker processes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy import integrate

from . import asymptotics as asy
from .errors import ParameterError, RewireError
from .generators import (
    CompleteBipartiteParams,
    ModelParams,
    RegularParams,
    RsrbParams,
    RsrParams,
    SmallWorldParams,
    integer_pairs,
    params_dict,
    trial_rng,
    trial_seed,
)
from .graph_core import (
    Multigraph,
    UnionFind,
    closed_walk_counts,
    degree_sequence,
    is_connected,
    rewire_to_simple,
)
from .series import builtin_system, solve_gf_system
from .spectra import algebraic_connectivity, eigenvalues_sym, ks_distance, laplacian_spectrum
from .graph_core import adjacency

__all__ = [
    "EnsembleReport",
    "TableReport",
    "ReliabilityReport",
    "DensityReport",
    "predict",
    "sample_graph",
    "run_ensemble",
    "reproduce_rsrb_table",
    "reproduce_rsr_table",
    "ramanujan_fraction",
    "reliability_deletions",
    "deletions_to_disconnect",
    "density_check",
    "walk_validation",
    "RSRB_TABLE_REFERENCE",
    "RSR_TABLE_REFERENCE",
    "to_json",
]

# Published Monte Carlo rows, n = 1000 and 200 trials per entry.
# (d1, d2): (mu_asympt as printed, mu_numerics, std)
RSRB_TABLE_REFERENCE = {
    (3, 3): (0.1715, 0.178, 0.006),
    (2, 6): (0.1957, 0.205, 0.006),
    (4, 4): (0.5358, 0.553, 0.011),
    (3, 6): (0.5535, 0.572, 0.010),
    (5, 5): (1.0, 1.027, 0.015),
    (3, 15): (1.0890, 1.122, 0.017),
    (6, 6): (1.5278, 1.565, 0.018),
    (4, 12): (1.5587, 1.596, 0.018),
    (7, 7): (2.1010, 2.150, 0.021),
    (4, 28): (2.1435, 2.205, 0.020),
    (8, 8): (2.7084, 2.766, 0.026),
    (6, 12): (2.6887, 2.745, 0.022),
    (5, 20): (2.6671, 2.729, 0.022),
}

# (p, d1, d2): (mu_asympt as printed, mu_numerics, std)
RSR_TABLE_REFERENCE = {
    (Fraction(0), 4, 4): (0.5359, 0.551, 0.010),
    (Fraction(1, 2), 3, 5): (0.44261, 0.488, 0.020),
    (Fraction(1, 3), 3, 6): (0.39162, 0.451, 0.022),
    (Fraction(2, 3), 2, 5): (0.3333, 0.286, 0.062),
    (Fraction(1, 2), 2, 6): (0.25352, 0.217, 0.051),
    (Fraction(2, 5), 2, 7): (0.20748, 0.174, 0.045),
}


def to_json(obj) -> str:
    """Stable JSON text (sorted keys, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=1, allow_nan=True) + "\n"


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def predict(model: ModelParams) -> float:
    """Large-n algebraic connectivity for ``model``."""
    if isinstance(model, RsrbParams):
        if model.d1 == model.d2:
            return asy.mu_regular(model.d1)
        return asy.mu_rsrb(model.d1, model.d2)
    if isinstance(model, RsrParams):
        d1, d2 = sorted((model.d1, model.d2))
        p = model.p if model.d1 <= model.d2 else 1 - Fraction(model.p)
        return asy.mu_rsr(p, d1, d2)
    if isinstance(model, RegularParams):
        return asy.mu_regular(model.d)
    if isinstance(model, SmallWorldParams):
        return asy.mu_small_world()
    if isinstance(model, CompleteBipartiteParams):
        return float(model.b)
    raise ParameterError(f"no prediction for {model!r}")


def sample_graph(model: ModelParams, seed: int, index: int, simple: bool = True) -> Multigraph:
    """Graph of trial ``index``; bipartite models are rewired side by side."""
    g = model.generate(trial_rng(seed, index))
    if simple:
        bipartite = isinstance(model, RsrbParams)
        g = rewire_to_simple(g, trial_rng(trial_seed(seed, index), 0), bipartite=bipartite)
    return g


def _ac_trial(args):
    model, seed, index, simple = args
    try:
        g = sample_graph(model, seed, index, simple)
    except RewireError as exc:
        return index, None, None, str(exc)
    return index, algebraic_connectivity(g), is_connected(g), None


def _map_trials(fn, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def _histogram(values, bins: int) -> dict:
    vals = np.asarray([v for v in values if v is not None], dtype=float)
    if vals.size == 0:
        return {"edges": [], "counts": []}
    counts, edges = np.histogram(vals, bins=bins, range=(vals.min(), vals.max()))
    return {"edges": [float(e) for e in edges], "counts": [int(c) for c in counts]}


@dataclass
class EnsembleReport:
    model: str
    params: dict
    n: int
    trials: int
    seed: int
    simple: bool
    values: list
    mean: float
    std: float
    min: float
    max: float
    histogram: dict
    mu_asymptotic: float
    diff_percent: float
    failures: int
    disconnected: int
    mean_connected: float
    errors: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return to_json(self.to_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial", "ac"])
        for i, v in enumerate(self.values):
            w.writerow([i, "" if v is None else _fmt(v)])
        return buf.getvalue()


def run_ensemble(
    model: ModelParams,
    trials: int,
    seed: int = 0,
    simple: bool = True,
    jobs: int = 1,
    bins: int = 80,
) -> EnsembleReport:
    """Algebraic connectivity over ``trials`` independent samples of ``model``.

    Rewiring failures are recorded per trial (value ``None``) and excluded
    from the statistics.  Disconnected samples stay in ``mean``;
    ``mean_connected`` excludes them.
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    results = _map_trials(_ac_trial, [(model, seed, i, simple) for i in range(trials)], jobs)
    results.sort(key=lambda r: r[0])
    values = [r[1] for r in results]
    errors = [{"trial": r[0], "error": r[3]} for r in results if r[3] is not None]
    ok = np.array([v for v in values if v is not None], dtype=float)
    conn = np.array([r[1] for r in results if r[1] is not None and r[2]], dtype=float)
    mu = predict(model)
    mean = float(ok.mean()) if ok.size else math.nan
    return EnsembleReport(
        model=model.kind,
        params=params_dict(model),
        n=model.n,
        trials=trials,
        seed=seed,
        simple=simple,
        values=values,
        mean=mean,
        std=float(ok.std(ddof=1)) if ok.size > 1 else 0.0,
        min=float(ok.min()) if ok.size else math.nan,
        max=float(ok.max()) if ok.size else math.nan,
        histogram=_histogram(values, bins),
        mu_asymptotic=mu,
        diff_percent=(mean - mu) / mu * 100 if mu else math.nan,
        failures=len(errors),
        disconnected=sum(1 for r in results if r[2] is False),
        mean_connected=float(conn.mean()) if conn.size else math.nan,
        errors=errors,
    )


@dataclass
class TableReport:
    name: str
    n: int
    trials: int
    seed: int
    simple: bool
    rows: list

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return to_json(self.to_dict())

    def to_csv(self) -> str:
        cols = list(self.rows[0].keys()) if self.rows else []
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in self.rows:
            w.writerow([_fmt(r[c]) for c in cols])
        return buf.getvalue()


def _table_row(report: EnsembleReport, ref) -> dict:
    printed, published_mean, published_std = ref
    return {
        "n": report.n,
        "mu_asympt": report.mu_asymptotic,
        "mu_numerics": report.mean,
        "std": report.std,
        "diff_percent": report.diff_percent,
        "mean_connected": report.mean_connected,
        "disconnected": report.disconnected,
        "failures": report.failures,
        "published_mu_asympt": printed,
        "published_mu_numerics": published_mean,
        "published_std": published_std,
    }


def reproduce_rsrb_table(n: int = 1000, trials: int = 200, seed: int = 0, simple: bool = True, jobs: int = 1) -> TableReport:
    """Every integer-average-degree pair for d = 3..8.

    Part sizes come from :meth:`RsrbParams.near_n`, so the vertex count can
    differ slightly from ``n`` when ``d2 n / (d1 + d2)`` is not integral.
    """
    rows = []
    for row_index, (d, (d1, d2)) in enumerate((d, pr) for d in range(3, 9) for pr in integer_pairs(d)):
        model = RsrbParams.near_n(d1, d2, n)
        rep = run_ensemble(model, trials, trial_seed(seed, row_index), simple, jobs)
        ref = RSRB_TABLE_REFERENCE.get((d1, d2), (math.nan, math.nan, math.nan))
        rows.append({"d": d, "d1": d1, "d2": d2, **_table_row(rep, ref)})
    return TableReport("rsrb", n, trials, seed, simple, rows)


def reproduce_rsr_table(n: int = 1000, trials: int = 200, seed: int = 0, simple: bool = True, jobs: int = 1) -> TableReport:
    """The average-degree-4 comparison of mixed models."""
    rows = []
    for row_index, ((p, d1, d2), ref) in enumerate(RSR_TABLE_REFERENCE.items()):
        model = RsrParams(p, d1, d2, n)
        rep = run_ensemble(model, trials, trial_seed(seed, row_index), simple, jobs)
        rows.append({"p": float(p), "d1": d1, "d2": d2, **_table_row(rep, ref)})
    return TableReport("rsr", n, trials, seed, simple, rows)


def _ramanujan_trial(args):
    model, seed, index, simple, threshold, upper, skip_top = args
    vals = laplacian_spectrum(sample_graph(model, seed, index, simple)).values
    ok = vals[1] >= threshold
    if upper is not None:
        ok = ok and vals[-1 - skip_top] <= upper
    return index, bool(ok)


def ramanujan_fraction(
    d1: int,
    d2: int,
    n: int,
    trials: int,
    seed: int = 0,
    threshold: float | None = None,
    simple: bool = True,
    jobs: int = 1,
    two_sided: bool = False,
) -> float:
    """Share of RSRB(d1, d2) samples whose AC reaches ``d - 2 sqrt(d - 1)``.

    ``d`` is the average degree ``2 d1 d2 / (d1 + d2)``; pass ``threshold``
    to use a different cut.  With ``two_sided=True`` (regular case only) a
    sample must also keep its most negative nontrivial adjacency eigenvalue
    above ``-2 sqrt(d - 1)``, the usual expander definition.
    """
    model = RsrbParams.near_n(d1, d2, n)
    d = 2 * d1 * d2 / (d1 + d2)
    if threshold is None:
        threshold = asy.mu_regular(d)
    upper = None
    if two_sided:
        if d1 != d2:
            raise ParameterError("two_sided needs d1 == d2")
        upper = d + 2 * math.sqrt(d - 1)
    # the bipartite eigenvalue 2d is trivial and skipped
    tasks = [(model, seed, i, simple, threshold, upper, 1) for i in range(trials)]
    res = _map_trials(_ramanujan_trial, tasks, jobs)
    return sum(ok for _, ok in res) / trials


# -- edge-deletion reliability ----------------------------------------------


def deletions_to_disconnect(g: Multigraph, order: np.ndarray, method: str = "union-find") -> tuple[int, bool]:
    """Number of deletions, in ``order``, until ``g`` first disconnects.

    Returns the count and whether the first disconnected graph has an
    isolated vertex.  ``method="union-find"`` adds edges back in reverse
    order until the graph is whole again; ``method="bfs"`` deletes edges one
    at a time and rechecks connectivity after each deletion.
    """
    edges = g.edges
    m = g.m
    if method == "union-find":
        uf = UnionFind(g.n)
        j = m
        # remaining after k deletions = order[k:]; find smallest k' with
        # order[k':] connected, then the answer is k' + 1
        for k in range(m - 1, -1, -1):
            a, b = edges[order[k]]
            uf.union(int(a), int(b))
            if uf.components == 1:
                j = k
                break
        else:
            return 0, False
        count = j + 1
    elif method == "bfs":
        count = 0
        for k in range(1, m + 1):
            if not is_connected(Multigraph(g.n, edges[order[k:]])):
                count = k
                break
    else:
        raise ParameterError(f"unknown method {method!r}")
    remaining = Multigraph(g.n, edges[order[count:]])
    return count, bool((degree_sequence(remaining) == 0).any())


@dataclass
class ReliabilityReport:
    model: str
    params: dict
    n: int
    trials: int
    seed: int
    simple: bool
    method: str
    values: list
    mean: float
    std: float
    isolated_fraction: float
    resamples: int

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return to_json(self.to_dict())


def _reliability_trial(args):
    model, seed, index, simple, method = args
    resamples = 0
    for attempt in range(101):
        sub = trial_seed(seed, index) if attempt == 0 else trial_seed(trial_seed(seed, index), attempt)
        try:
            g = sample_graph(model, sub, 0, simple)
        except RewireError:
            g = None
        if g is not None and is_connected(g):
            break
        resamples += 1
    else:
        raise RuntimeError(f"trial {index}: no connected sample after 100 resamples")
    order = trial_rng(trial_seed(seed, index), 1).permutation(g.m)
    count, isolated = deletions_to_disconnect(g, order, method)
    return index, count, isolated, resamples


def reliability_deletions(
    model: ModelParams,
    trials: int,
    seed: int = 0,
    simple: bool = True,
    method: str = "union-find",
    jobs: int = 1,
) -> ReliabilityReport:
    """Mean number of uniform random edge deletions until disconnection."""
    tasks = [(model, seed, i, simple, method) for i in range(trials)]
    res = sorted(_map_trials(_reliability_trial, tasks, jobs))
    vals = np.array([r[1] for r in res], dtype=float)
    return ReliabilityReport(
        model=model.kind,
        params=params_dict(model),
        n=model.n,
        trials=trials,
        seed=seed,
        simple=simple,
        method=method,
        values=[int(r[1]) for r in res],
        mean=float(vals.mean()),
        std=float(vals.std(ddof=1)) if trials > 1 else 0.0,
        isolated_fraction=sum(r[2] for r in res) / trials,
        resamples=sum(r[3] for r in res),
    )


# -- spectral density ---------------------------------------------------------


def _cdf_many(xs: np.ndarray, model: asy.DensityModel) -> np.ndarray:
    """Right-continuous CDF at ascending ``xs`` by incremental quadrature."""
    half = asy.continuous_mass(model)
    rm, rp = model.radii.r_minus, model.radii.r_plus
    rm2 = rm * rm
    span = rp * rp - rm2

    def theta(a):
        if a <= rm:
            return 0.0
        if a >= rp:
            return math.pi / 2
        return math.asin(math.sqrt(min(max((a * a - rm2) / span, 0.0), 1.0)))

    # mass on (r_-, |x|) for each |x|, accumulated over sorted |x|
    ax = np.abs(xs)
    order = np.argsort(ax)
    mass = np.empty(xs.shape[0])
    acc, prev = 0.0, 0.0
    for k in order:
        t = theta(ax[k])
        if t > prev:
            with warnings.catch_warnings():
                # sub-intervals can be narrower than the quadrature resolution
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                acc += integrate.quad(asy._angle_integrand, prev, t, args=(model,), epsabs=1e-13, epsrel=1e-12)[0]
            prev = t
        mass[k] = acc
    return np.where(xs < 0, half - mass, half + model.delta_weight + mass)


@dataclass
class DensityReport:
    d1: int
    d2: int
    n: int
    trials: int
    seed: int
    simple: bool
    ks: float
    zero_fraction: float
    zero_fraction_1e6: float
    delta_weight: float
    histogram: dict
    density_at_centers: list

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return to_json(self.to_dict())


def _spectrum_trial(args):
    model, seed, index, simple = args
    g = sample_graph(model, seed, index, simple)
    return index, eigenvalues_sym(adjacency(g)).values.copy()


def density_check(
    d1: int,
    d2: int,
    n: int,
    trials: int,
    seed: int = 0,
    simple: bool = True,
    bins: int = 80,
    jobs: int = 1,
) -> DensityReport:
    """Pool adjacency spectra of RSRB samples and compare with the limit law.

    The KS distance is computed on eigenvalues with ``|x| > 1e-6`` against
    the continuous part of the limiting measure renormalized to mass 1; the
    atom is compared separately through ``zero_fraction``.
    """
    model = RsrbParams.near_n(d1, d2, n)
    res = sorted(_map_trials(_spectrum_trial, [(model, seed, i, simple) for i in range(trials)], jobs), key=lambda r: r[0])
    pooled = np.sort(np.concatenate([r[1] for r in res]))
    dm = asy.density_model(d1, d2)
    zero8 = float(np.mean(np.abs(pooled) <= 1e-8))
    zero6 = float(np.mean(np.abs(pooled) <= 1e-6))
    cont = pooled[np.abs(pooled) > 1e-6]
    w = dm.delta_weight
    cdf_vals = _cdf_many(cont, dm)
    table = dict(zip(cont.tolist(), ((cdf_vals - w * (cont >= 0)) / (1 - w)).tolist()))
    ks = ks_distance(cont, lambda t: table[t])
    counts, edges = np.histogram(pooled, bins=bins, range=(pooled.min(), pooled.max()))
    centers = 0.5 * (edges[1:] + edges[:-1])
    return DensityReport(
        d1=d1,
        d2=d2,
        n=model.n,
        trials=trials,
        seed=seed,
        simple=simple,
        ks=ks,
        zero_fraction=zero8,
        zero_fraction_1e6=zero6,
        delta_weight=w,
        histogram={"edges": [float(e) for e in edges], "counts": [int(c) for c in counts]},
        density_at_centers=[asy.rsrb_density(c, dm) for c in centers],
    )


def walk_validation(
    d1: int,
    d2: int,
    n: int,
    trials: int,
    s_max: int = 12,
    seed: int = 0,
    simple: bool = True,
) -> dict:
    """Trial-averaged closed-walk counts against the tree-walk series.

    Returns per-even-``s`` empirical mean, series value and relative error.
    """
    if s_max > 12:
        raise ParameterError("s_max <= 12")
    model = RsrbParams.near_n(d1, d2, n)
    emp = np.zeros(s_max + 1)
    for i in range(trials):
        emp += closed_walk_counts(sample_graph(model, seed, i, simple), s_max)
    emp /= trials
    phi = solve_gf_system(builtin_system("rsrb", d1=d1, d2=d2), s_max, exact=True)["phi"]
    out = {}
    for s in range(0, s_max + 1, 2):
        exact = float(phi.coefficient(s))
        out[s] = {"empirical": float(emp[s]), "series": exact, "rel_error": float(abs(emp[s] - exact) / exact)}
    return out


def default_jobs() -> int:
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1))
