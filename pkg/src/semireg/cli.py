"""Command-line interface: ``semireg <subcommand> [options]``.

Exit status is 0 on success, 1 when a run fails (message on standard
error) and 2 for usage errors, including parameter combinations that no
graph can satisfy.  Reports echo the resolved options under ``config``;
``jobs`` and output paths are left out so that reports are byte-identical
across worker counts.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction


from . import asymptotics as asy
from . import experiments as ex
from .errors import InadmissibleSystemError, NoRootError, ParameterError, RewireError
from .generators import (
    CompleteBipartiteParams,
    RegularParams,
    RsrbParams,
    RsrParams,
    SmallWorldParams,
    integer_pairs,
    params_dict,
)
from .graph_core import adjacency, laplacian, read_edge_csv, write_edge_csv
from .series import BUILTIN_KINDS, builtin_system, growth_rate, solve_gf_system
from .spectra import algebraic_connectivity, eigenvalues_sym

MODEL_KINDS = ("rsrb", "rsr", "regular", "small-world", "complete-bipartite")
_NOT_ECHOED = {"func", "jobs", "out", "csv", "json", "input"}


class UsageError(Exception):
    """Raised for option combinations argparse cannot check by itself."""


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2**64)")
    return v


def _default_jobs() -> int:
    return ex.default_jobs()


def _add_model(p: argparse.ArgumentParser, default_n: int = 1000) -> None:
    g = p.add_argument_group("model")
    g.add_argument("--model", choices=MODEL_KINDS, required=True)
    g.add_argument("--n", type=_positive, default=default_n, help="number of vertices (default %(default)s)")
    g.add_argument("--d1", type=_positive)
    g.add_argument("--d2", type=_positive)
    g.add_argument("--n1", type=_positive, help="rsrb: size of the degree-d1 part (overrides --n)")
    g.add_argument("--p", type=_fraction, help="rsr: share of degree-d2 vertices, e.g. 1/3")
    g.add_argument("--d", type=_positive, help="regular: degree")
    g.add_argument("--b", type=_positive, help="complete-bipartite: size of the first part")


def _add_run(p: argparse.ArgumentParser, trials: int = 200) -> None:
    p.add_argument("--trials", type=_positive, default=trials)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: available cores)")
    p.add_argument("--keep-multi", action="store_true", help="skip rewiring to a simple graph")


def _need(args, *names):
    missing = [f"--{k}" for k in names if getattr(args, k) is None]
    if missing:
        raise UsageError(f"--model {args.model} needs {' '.join(missing)}")


def build_model(args):
    """Model parameters from parsed options."""
    kind = args.model
    if kind == "rsrb":
        _need(args, "d1", "d2")
        if args.n1 is not None:
            return RsrbParams(args.d1, args.d2, args.n1)
        return RsrbParams.from_n(args.d1, args.d2, args.n)
    if kind == "rsr":
        _need(args, "p", "d1", "d2")
        return RsrParams(args.p, args.d1, args.d2, args.n)
    if kind == "regular":
        _need(args, "d")
        return RegularParams(args.d, args.n)
    if kind == "small-world":
        return SmallWorldParams(args.n)
    _need(args, "b")
    return CompleteBipartiteParams(args.b, args.n)


def _config(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in _NOT_ECHOED:
            continue
        if isinstance(v, Fraction):
            v = str(v)
        out[k] = v
    return out


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _report(args, body: dict) -> None:
    _emit(ex.to_json({"config": _config(args), **body}), args.out)


def _jobs(args) -> int:
    return args.jobs if args.jobs is not None else _default_jobs()


# -- subcommands ----------------------------------------------------------------


def cmd_gen(args) -> None:
    g = ex.sample_graph(build_model(args), args.seed, 0, not args.keep_multi)
    buf = io.StringIO()
    write_edge_csv(g, buf)
    _emit(buf.getvalue(), args.out)


def cmd_ac(args) -> None:
    g = read_edge_csv(args.input, n=args.vertices)
    _emit(f"{algebraic_connectivity(g):.17g}\n", args.out)


def cmd_spectrum(args) -> None:
    g = read_edge_csv(args.input, n=args.vertices)
    mat = laplacian(g) if args.matrix == "laplacian" else adjacency(g)
    vals = eigenvalues_sym(mat).values
    _emit("".join(f"{v:.17g}\n" for v in vals), args.out)


def cmd_predict(args) -> None:
    model = build_model(args)
    _report(args, {"params": params_dict(model), "mu": ex.predict(model)})


def cmd_mc(args) -> None:
    model = build_model(args)
    rep = ex.run_ensemble(model, args.trials, args.seed, not args.keep_multi, _jobs(args), args.bins)
    _report(args, rep.to_dict())
    if args.csv:
        _emit(rep.to_csv(), args.csv)


def cmd_table(args) -> None:
    fn = ex.reproduce_rsrb_table if args.name == "rsrb" else ex.reproduce_rsr_table
    rep = fn(args.n, args.trials, args.seed, not args.keep_multi, _jobs(args))
    _emit(rep.to_csv(), args.out)
    if args.json:
        _emit(ex.to_json({"config": _config(args), **rep.to_dict()}), args.json)


def cmd_density(args) -> None:
    rep = ex.density_check(args.d1, args.d2, args.n, args.trials, args.seed, not args.keep_multi, args.bins, _jobs(args))
    _report(args, rep.to_dict())


def cmd_ramanujan(args) -> None:
    frac = ex.ramanujan_fraction(
        args.d1, args.d2, args.n, args.trials, args.seed, args.threshold,
        not args.keep_multi, _jobs(args), args.two_sided,
    )
    _report(args, {"fraction": frac})


def cmd_reliability(args) -> None:
    model = build_model(args)
    rep = ex.reliability_deletions(model, args.trials, args.seed, not args.keep_multi, args.method, _jobs(args))
    _report(args, rep.to_dict())


def cmd_series(args) -> None:
    params = {}
    if args.system in ("rsrb", "rsrb_looped", "rsr"):
        if args.d1 is None or args.d2 is None:
            raise UsageError(f"--system {args.system} needs --d1 and --d2")
        params = {"d1": args.d1, "d2": args.d2}
    if args.system == "rsr":
        if args.p is None:
            raise UsageError("--system rsr needs --p")
        params["p"] = args.p
    system = builtin_system(args.system, **params)
    sol = solve_gf_system(system, args.order, exact=args.exact)
    out = sol[system.output or system.names[0]]
    body = {"system": system.name, "order": args.order}
    shown = min(args.order, args.show)
    if args.exact:
        body["coefficients"] = [str(c) for c in out.coefficients(shown)]
    else:
        body["log_scale"] = out.log_scale
        body["coefficients"] = [float(c) for c in out.coefficients(shown)]
    if args.order >= 4:
        try:
            body["growth_rate"] = growth_rate(out, system.step)
        except ParameterError:
            body["growth_rate"] = None
    _report(args, body)


def cmd_pairs(args) -> None:
    rows = []
    for d in range(args.d, (args.d_max or args.d) + 1):
        for d1, d2 in integer_pairs(d):
            mu = asy.mu_regular(d) if d1 == d2 else asy.mu_rsrb(d1, d2)
            rows.append((d, d1, d2, mu))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "d1", "d2", "mu_asympt"])
    for d, d1, d2, mu in rows:
        w.writerow([d, d1, d2, f"{mu:.17g}"])
    _emit(buf.getvalue(), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semireg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", help="output file (default: standard output)")
        return p

    p = add("gen", cmd_gen, "generate one graph and write its edge list as CSV")
    _add_model(p)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--keep-multi", action="store_true", help="skip rewiring to a simple graph")

    for name, func, text in (
        ("ac", cmd_ac, "algebraic connectivity of an edge-list CSV"),
        ("spectrum", cmd_spectrum, "all eigenvalues of an edge-list CSV, one per line"),
    ):
        p = add(name, func, text)
        p.add_argument("--in", dest="input", required=True, help="edge-list CSV with header u,v")
        p.add_argument("--vertices", type=_positive, help="vertex count (default: largest label + 1)")
        if name == "spectrum":
            p.add_argument("--matrix", choices=("laplacian", "adjacency"), default="laplacian")

    p = add("predict", cmd_predict, "large-n algebraic connectivity of a model (JSON)")
    _add_model(p)

    p = add("mc", cmd_mc, "Monte Carlo ensemble of algebraic connectivities (JSON)")
    _add_model(p)
    _add_run(p)
    p.add_argument("--bins", type=_positive, default=80)
    p.add_argument("--csv", help="also write per-trial values to this CSV file")

    p = add("table", cmd_table, "reproduce a published table (CSV)")
    p.add_argument("--name", choices=("rsrb", "rsr"), required=True)
    p.add_argument("--n", type=_positive, default=1000)
    p.add_argument("--json", help="also write the JSON report to this file")
    _add_run(p)

    p = add("density", cmd_density, "pooled adjacency spectra against the limiting density (JSON)")
    p.add_argument("--d1", type=_positive, required=True)
    p.add_argument("--d2", type=_positive, required=True)
    p.add_argument("--n", type=_positive, default=1000)
    p.add_argument("--bins", type=_positive, default=80)
    _add_run(p, trials=10)

    p = add("ramanujan", cmd_ramanujan, "share of samples with AC >= d - 2 sqrt(d - 1) (JSON)")
    p.add_argument("--d1", type=_positive, required=True)
    p.add_argument("--d2", type=_positive, required=True)
    p.add_argument("--n", type=_positive, default=1000)
    p.add_argument("--threshold", type=float)
    p.add_argument("--two-sided", action="store_true", help="also bound the most negative eigenvalue")
    _add_run(p)

    p = add("reliability", cmd_reliability, "random edge deletions until disconnection (JSON)")
    _add_model(p, default_n=500)
    _add_run(p, trials=100)
    p.add_argument("--method", choices=("union-find", "bfs"), default="union-find")

    p = add("series", cmd_series, "walk-count generating function coefficients (JSON)")
    p.add_argument("--system", choices=BUILTIN_KINDS, required=True)
    p.add_argument("--order", type=_positive, default=4000)
    p.add_argument("--exact", action="store_true", help="rational arithmetic (small orders)")
    p.add_argument("--show", type=int, default=20, help="coefficients to print (default %(default)s)")
    p.add_argument("--d1", type=_positive)
    p.add_argument("--d2", type=_positive)
    p.add_argument("--p", type=_fraction)

    p = add("pairs", cmd_pairs, "integer-average-degree (d1, d2) pairs with predictions (CSV)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--d-max", type=int)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (UsageError, ParameterError, InadmissibleSystemError) as exc:
        parser.print_usage(sys.stderr)
        print(f"semireg {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (RewireError, NoRootError, OSError, RuntimeError, ValueError) as exc:
        print(f"semireg {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
