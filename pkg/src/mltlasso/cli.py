"""Command line entry point: ``mltlasso {mlt,gcr,bounds,glasso,experiment,plot}``.

Exit codes: 0 success, 1 usage error, 2 input parse error, 3 numerical
non-convergence.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from . import experiments, glasso, graphs, plotting, rigidity
from .numerics import make_rng, sample_standard_normal

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NONCONVERGED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_graph(text: str) -> graphs.Graph:
    if text == "-":
        text = sys.stdin.read()
    try:
        return graphs.parse_graph(text)
    except graphs.GraphFormatError as exc:
        raise InputError(f"cannot parse graph {text.strip()!r}: {exc}") from None


def _read_matrix(path: str) -> np.ndarray:
    try:
        return np.loadtxt(path, delimiter=",", ndmin=2)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read matrix from {path}: {exc}") from None


def _cov_config(args) -> glasso.CovarianceConfig:
    default = glasso.CovarianceConfig()
    return glasso.CovarianceConfig(
        glasso.Normalization(args.normalize) if args.normalize else default.normalization,
        glasso.Centering(args.centering) if args.centering else default.centering,
    )


def cmd_mlt(args) -> int:
    g = _read_graph(args.graph)
    if g.p > rigidity.MAX_MLT_VERTICES:
        raise UsageError(
            f"mlt is only available for graphs on at most {rigidity.MAX_MLT_VERTICES} vertices "
            f"(got {g.p}); beyond that the GCR is only an upper bound, see `gcr`"
        )
    value = rigidity.mlt(g, make_rng(args.seed))
    print(f"mlt={value} clique={graphs.clique_number(g)} kcore={graphs.k_core_bound(g)}")
    return EXIT_OK


def cmd_gcr(args) -> int:
    g = _read_graph(args.graph)
    print(f"gcr={rigidity.gcr(g, make_rng(args.seed))}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    g = _read_graph(args.graph)
    print(f"clique={graphs.clique_number(g)} kcore={graphs.k_core_bound(g)}")
    return EXIT_OK


def cmd_glasso(args) -> int:
    sources = [args.data is not None, args.cov is not None, args.random is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --data, --cov or --random P N")
    if args.cov is not None:
        S = _read_matrix(args.cov)
    else:
        if args.data is not None:
            X = _read_matrix(args.data)
        else:
            p, n = args.random
            if not (p >= 1 and n >= 1):
                raise UsageError("--random needs P >= 1 and N >= 1")
            X = sample_standard_normal(make_rng(args.seed), p, n)
        S = glasso.empirical_covariance(X, _cov_config(args))
    if not args.alpha > 0:
        raise UsageError("--alpha must be positive")
    try:
        sol = glasso.glasso_fit(S, args.alpha, tol=args.tol, max_iter=args.max_iter)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sel = glasso.select_graph(sol, args.zero_tol)
    out = {
        "alpha": args.alpha,
        "K": sol.K.tolist(),
        "edges": [list(e) for e in sel.graph.edges()],
        "duality_gap": sol.duality_gap,
        "iterations": sol.iterations,
        "converged": sol.converged,
    }
    print(json.dumps(out))
    return EXIT_OK if sol.converged else EXIT_NONCONVERGED


def _grid_config(args) -> experiments.GridConfig:
    cfg = experiments.GridConfig()
    if args.config:
        try:
            cfg = experiments.load_config(args.config)
        except (OSError, ValueError, TypeError, KeyError) as exc:
            raise InputError(f"bad config {args.config}: {exc}") from None
    overrides = {
        "p_values": args.p_values,
        "alpha_start": args.alpha_start,
        "alpha_stop": args.alpha_stop,
        "alpha_step": args.alpha_step,
        "trials": args.trials,
        "master_seed": args.seed,
        "predicate": experiments.Predicate(args.predicate) if args.predicate else None,
        "tol": args.tol,
        "max_iter": args.max_iter,
    }
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if args.normalize or args.centering:
        cov = cfg.covariance
        overrides["covariance"] = glasso.CovarianceConfig(
            glasso.Normalization(args.normalize) if args.normalize else cov.normalization,
            glasso.Centering(args.centering) if args.centering else cov.centering,
        )
    try:
        return replace(cfg, **overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_experiment(args) -> int:
    cfg = _grid_config(args)
    results = experiments.run_grid(cfg, args.jobs, progress=experiments.stderr_progress)
    text = experiments.results_to_csv(results, cfg.alpha_decimals)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_plot(args) -> int:
    try:
        paths = plotting.plot_csv(args.csv, args.out_dir)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None
    for path in paths:
        print(path)
    return EXIT_OK


def _add_cov_flags(sp):
    sp.add_argument("--normalize", choices=[m.value for m in glasso.Normalization])
    sp.add_argument("--centering", choices=[c.value for c in glasso.Centering])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mltlasso", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, func, help_ in [
        ("mlt", cmd_mlt, "MLT of a graph on <= 9 vertices, with clique and k-core bounds"),
        ("gcr", cmd_gcr, "generic completion rank of a graph"),
        ("bounds", cmd_bounds, "clique lower bound and k-core upper bound"),
    ]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="graph6 string or edge list 'p; i j; i j' ('-' reads stdin)")
        if name != "bounds":
            sp.add_argument("--seed", type=int, default=0)
        sp.set_defaults(func=func)

    sp = sub.add_parser("glasso", help="fit graphical lasso and print K, edges and duality gap as JSON")
    sp.add_argument("--data", help="CSV with p rows and n columns")
    sp.add_argument("--cov", help="CSV holding the p x p matrix S directly")
    sp.add_argument("--random", type=int, nargs=2, metavar=("P", "N"), help="standard normal data")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--max-iter", type=int, default=200)
    sp.add_argument("--zero-tol", type=float, default=0.0)
    _add_cov_flags(sp)
    sp.set_defaults(func=cmd_glasso)

    sp = sub.add_parser("experiment", help="Monte Carlo grid over (p, n, alpha); writes CSV")
    sp.add_argument("--config", help="JSON file with GridConfig fields; flags win on conflict")
    sp.add_argument("--out", help="output CSV (default: stdout)")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--p-values", type=int, nargs="+")
    sp.add_argument("--alpha-start", type=float)
    sp.add_argument("--alpha-stop", type=float)
    sp.add_argument("--alpha-step", type=float)
    sp.add_argument("--predicate", choices=[p.value for p in experiments.Predicate])
    sp.add_argument("--tol", type=float)
    sp.add_argument("--max-iter", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    _add_cov_flags(sp)
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("plot", help="one SVG of q_hat against alpha per p")
    sp.add_argument("csv")
    sp.add_argument("out_dir")
    sp.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mltlasso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"mltlasso: error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
