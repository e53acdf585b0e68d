"""Batch command-line front end.

Parses an experiment configuration, dispatches to the library, and emits CSV
or JSON artifacts; ``--plot`` additionally renders a matplotlib figure next
to the delimited output.  Exit codes: 0 on success, 2 on configuration
errors, 3 on numeric failures.  Diagnostics go to stderr; stdout carries only
data, and only when the output target is ``-``.
"""

from __future__ import annotations

import argparse
import io
import math
import os
import sys
from typing import Sequence

import numpy as np

from . import bayes, bounds, montecarlo, serialize
from .models import (BellProbeModel, DomainError, SingleQubitModel,
                     optimal_single_qubit_model)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

OUTPUT_DIR_ENV = "GATEBAYES_OUTPUT_DIR"


def _parse_floats(text: str, expected: int | None = None) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise DomainError(f"could not parse float list {text!r}: {exc}") from None
    if expected is not None and len(values) != expected:
        raise DomainError(f"expected {expected} comma-separated values, got {len(values)}")
    return values


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise DomainError(f"could not parse integer list {text!r}: {exc}") from None


def _to_radians(value: float, args: argparse.Namespace) -> float:
    return math.radians(value) if getattr(args, "degrees", False) else value


def _resolve_model(args: argparse.Namespace):
    """Build the probe model from the CLI flags; optimal single-qubit by default."""
    if getattr(args, "c", None) is not None and not getattr(args, "bell", False):
        raise DomainError("--c requires --bell")
    if getattr(args, "bell", False):
        if getattr(args, "c", None) is None:
            raise DomainError("--bell requires --c c0,c1,c2,c3")
        return BellProbeModel(tuple(_parse_floats(args.c, expected=4)))
    if any(getattr(args, name, None) is not None
           for name in ("alpha", "beta", "phi", "omega")):
        alpha = _to_radians(args.alpha if args.alpha is not None else math.pi / 2, args)
        beta = _to_radians(args.beta if args.beta is not None else math.pi / 2, args)
        phi = _to_radians(args.phi if args.phi is not None else 0.0, args)
        omega = _to_radians(args.omega if args.omega is not None else 0.0, args)
        return SingleQubitModel(alpha=alpha, phi=phi, beta=beta, omega=omega)
    return optimal_single_qubit_model()


def _resolve_path(path: str) -> str:
    """Apply the default output directory to relative file paths."""
    if path == "-" or os.path.isabs(path):
        return path
    base = os.environ.get(OUTPUT_DIR_ENV)
    return os.path.join(base, path) if base else path


def _figure_path(args: argparse.Namespace) -> str | None:
    plot = getattr(args, "plot", None)
    if plot is None:
        return None
    if plot != "auto":
        return _resolve_path(plot)
    output = _resolve_path(args.output)
    if output == "-":
        raise DomainError("--plot needs an explicit path when output goes to stdout")
    root, _ = os.path.splitext(output)
    return root + ".png"


def _cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    return serialize.format_float(value)


def _json_cell(value):
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    return serialize.json_number(value)


def _emit_table(args: argparse.Namespace, header: Sequence[str],
                rows: Sequence[Sequence[object]]) -> None:
    buffer = io.StringIO()
    if args.format == "csv":
        serialize.write_rows(buffer, header, [[_cell(v) for v in row] for row in rows])
    else:
        serialize.rows_to_json(buffer, header,
                               [[_json_cell(v) for v in row] for row in rows])
    _write_text(args, buffer.getvalue())


def _emit_json(args: argparse.Namespace, payload: dict) -> None:
    buffer = io.StringIO()
    serialize.dump_json(buffer, payload)
    _write_text(args, buffer.getvalue())


def _write_text(args: argparse.Namespace, text: str) -> None:
    path = _resolve_path(args.output)
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    print(f"wrote {path}", file=sys.stderr)


def _theta_grid(points: int) -> np.ndarray:
    if points < 2:
        raise DomainError("--grid must be at least 2 points")
    return np.linspace(0.0, math.pi, points)


def cmd_probs(args: argparse.Namespace) -> int:
    model = _resolve_model(args)
    thetas = _theta_grid(args.grid)
    table = model.prob_table(thetas)
    header = ["theta"] + [f"p{j}" for j in range(model.n_outcomes)]
    rows = [[float(t)] + [float(p) for p in col]
            for t, col in zip(thetas, table.T)]
    _emit_table(args, header, rows)
    figure = _figure_path(args)
    if figure:
        from . import plotting
        plotting.save_probability_curves(thetas, table, figure)
        print(f"wrote {figure}", file=sys.stderr)
    return EXIT_OK


def cmd_fisher(args: argparse.Namespace) -> int:
    model = _resolve_model(args)
    if args.theta is not None:
        thetas = np.asarray(_parse_floats(args.theta), dtype=float)
        if getattr(args, "degrees", False):
            thetas = np.radians(thetas)
    else:
        thetas = _theta_grid(args.grid)
    if args.numeric:
        values = np.array([bounds.fisher_numeric(model, float(t)) for t in thetas])
    elif isinstance(model, SingleQubitModel):
        values = np.asarray(bounds.fisher_single_analytic(model, thetas), dtype=float)
    else:
        values = np.asarray(bounds.fisher_bell_analytic(model, thetas), dtype=float)
    rows = [[float(t), float(g)] for t, g in zip(thetas, values)]
    _emit_table(args, ["theta", "fisher"], rows)
    figure = _figure_path(args)
    if figure:
        from . import plotting
        plotting.save_fisher_curve(thetas, values, figure)
        print(f"wrote {figure}", file=sys.stderr)
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    if getattr(args, "bell", False):
        raise DomainError("the stability scan applies to the single-qubit scheme")
    theta_stars = _parse_floats(args.theta_star)
    if getattr(args, "degrees", False):
        theta_stars = [math.radians(t) for t in theta_stars]
    phi = _to_radians(args.phi if args.phi is not None else 0.0, args)
    omega = _to_radians(args.omega if args.omega is not None else 0.0, args)
    alphas = np.linspace(0.0, math.pi, args.alpha_points)
    betas = np.linspace(0.0, math.pi, args.beta_points)
    matrices = [bounds.stability_scan(ts, alphas, betas, phi=phi, omega=omega)
                for ts in theta_stars]
    rows = []
    for ts, mat in zip(theta_stars, matrices):
        for i, a in enumerate(alphas):
            for j, b in enumerate(betas):
                rows.append([float(ts), float(a), float(b), float(mat[i, j])])
    _emit_table(args, ["theta_star", "alpha", "beta", "fisher"], rows)
    figure = _figure_path(args)
    if figure:
        from . import plotting
        plotting.save_scan_panels(theta_stars, alphas, betas, matrices, figure)
        print(f"wrote {figure}", file=sys.stderr)
    return EXIT_OK


def _emit_posterior(args: argparse.Namespace, post: bayes.PosteriorGrid,
                    report: bounds.BoundReport | None) -> None:
    if args.format == "json":
        _emit_json(args, serialize.posterior_payload(post, report))
    else:
        rows = [[float(t), float(d)] for t, d in zip(post.grid, post.density)]
        _emit_table(args, ["theta", "density"], rows)
    figure = _figure_path(args)
    if figure:
        from . import plotting
        plotting.save_posterior_curve(post, figure)
        print(f"wrote {figure}", file=sys.stderr)


def cmd_posterior(args: argparse.Namespace) -> int:
    model = _resolve_model(args)
    counts = bayes.OutcomeCounts(tuple(_parse_ints(args.counts)))
    post = bayes.posterior_from_counts(model, counts, grid_size=args.grid_size)
    report = (bounds.bound_report(model, post.mean, counts.total)
              if counts.total >= 1 else None)
    _emit_posterior(args, post, report)
    return EXIT_OK


def cmd_asymptotic(args: argparse.Namespace) -> int:
    model = _resolve_model(args)
    theta_star = _to_radians(args.theta_star, args)
    post = bayes.asymptotic_posterior(model, theta_star, args.measurements,
                                      grid_size=args.grid_size)
    report = bounds.bound_report(model, theta_star, args.measurements)
    _emit_posterior(args, post, report)
    return EXIT_OK


_MC_COLUMNS = ["replicate", "posterior_mean", "posterior_variance",
               "rescaled_variance", "mean_ratio", "empirical_bias",
               "boundary_degenerate"]


def cmd_mc(args: argparse.Namespace) -> int:
    model = _resolve_model(args)
    theta_star = _to_radians(args.theta_star, args)
    spec = montecarlo.ExperimentSpec(model=model, theta_star=theta_star,
                                     n_measurements=args.measurements,
                                     replicates=args.replicates, seed=args.seed,
                                     grid_size=args.grid_size)
    results = montecarlo.run_experiment(spec)
    n_out = model.n_outcomes
    header = ["replicate"] + [f"m{j}" for j in range(n_out)] + _MC_COLUMNS[1:]
    rows = []
    for r in results:
        rows.append([r.replicate, *r.counts.counts, r.posterior_mean,
                     r.posterior_variance, r.rescaled_variance, r.mean_ratio,
                     r.empirical_bias, r.boundary_degenerate])
    _emit_table(args, header, rows)
    figure = _figure_path(args)
    if figure:
        from . import plotting
        plotting.save_replicate_diagnostics(results, theta_star, figure)
        print(f"wrote {figure}", file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    model = _resolve_model(args)
    theta_star = _to_radians(args.theta_star, args)
    budgets = _parse_ints(args.m_list)
    if not budgets:
        raise DomainError("--M-list must not be empty")
    spec = montecarlo.ExperimentSpec(model=model, theta_star=theta_star,
                                     n_measurements=budgets[0],
                                     replicates=args.replicates, seed=args.seed,
                                     grid_size=args.grid_size)
    rows_data = montecarlo.convergence_sweep(spec, budgets)
    rows = [[row.n_measurements, row.mean_ratio, row.rescaled_variance]
            for row in rows_data]
    _emit_table(args, ["M", "mean_ratio", "rescaled_variance"], rows)
    figure = _figure_path(args)
    if figure:
        from . import plotting
        plotting.save_sweep_curves(rows_data, figure)
        print(f"wrote {figure}", file=sys.stderr)
    return EXIT_OK


def _add_model_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("probe model")
    group.add_argument("--single", action="store_true",
                       help="single-qubit scheme (default)")
    group.add_argument("--alpha", type=float, help="probe polar angle (default pi/2)")
    group.add_argument("--phi", type=float, help="probe phase (default 0)")
    group.add_argument("--beta", type=float, help="measurement polar angle (default pi/2)")
    group.add_argument("--omega", type=float, help="measurement phase (default 0)")
    group.add_argument("--bell", action="store_true",
                       help="entangled two-qubit scheme")
    group.add_argument("--c", help="Bell probe coefficients c0,c1,c2,c3 (unit norm)")


def _add_output_args(parser: argparse.ArgumentParser,
                     default_format: str = "csv") -> None:
    group = parser.add_argument_group("output")
    group.add_argument("--output", default="-",
                       help="output file, or - for stdout (default); relative "
                            f"paths honor ${OUTPUT_DIR_ENV}")
    group.add_argument("--format", choices=("csv", "json"), default=default_format,
                       help=f"output format (default {default_format})")
    group.add_argument("--plot", nargs="?", const="auto", default=None,
                       metavar="PATH",
                       help="also render a figure (default: output path with .png)")
    group.add_argument("--degrees", action="store_true",
                       help="interpret angle arguments as degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gatebayes",
        description="Bayesian estimation of one-parameter qubit gates")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("probs", help="outcome probabilities over the angle grid")
    _add_model_args(p)
    p.add_argument("--grid", type=int, default=181, help="grid points (default 181)")
    _add_output_args(p)
    p.set_defaults(func=cmd_probs)

    p = sub.add_parser("fisher", help="per-measurement information")
    _add_model_args(p)
    p.add_argument("--grid", type=int, default=181, help="grid points (default 181)")
    p.add_argument("--theta", help="comma-separated angles instead of a grid")
    p.add_argument("--numeric", action="store_true",
                   help="finite-difference evaluation (interior angles only)")
    _add_output_args(p)
    p.set_defaults(func=cmd_fisher)

    p = sub.add_parser("scan", help="information landscape over (alpha, beta)")
    _add_model_args(p)
    p.add_argument("--theta-star", default="0.05,0.1,1",
                   help="comma-separated gate angles (default 0.05,0.1,1)")
    p.add_argument("--alpha-points", type=int, default=101)
    p.add_argument("--beta-points", type=int, default=101)
    _add_output_args(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("posterior", help="exact posterior from outcome counts")
    _add_model_args(p)
    p.add_argument("--counts", required=True, help="comma-separated outcome tallies")
    p.add_argument("--grid-size", type=int, default=bayes.DEFAULT_GRID_SIZE)
    _add_output_args(p, default_format="json")
    p.set_defaults(func=cmd_posterior)

    p = sub.add_parser("asymptotic", help="large-sample posterior at a true angle")
    _add_model_args(p)
    p.add_argument("--theta-star", type=float, required=True)
    p.add_argument("--M", dest="measurements", type=int, required=True,
                   help="number of measurements")
    p.add_argument("--grid-size", type=int, default=bayes.DEFAULT_GRID_SIZE)
    _add_output_args(p, default_format="json")
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("mc", help="simulated experiment replicates")
    _add_model_args(p)
    p.add_argument("--theta-star", type=float, required=True)
    p.add_argument("--M", dest="measurements", type=int, required=True)
    p.add_argument("--replicates", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-size", type=int, default=bayes.DEFAULT_GRID_SIZE)
    _add_output_args(p)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("sweep", help="convergence sweep over measurement budgets")
    _add_model_args(p)
    p.add_argument("--theta-star", type=float, required=True)
    p.add_argument("--M-list", dest="m_list", required=True,
                   help="comma-separated increasing budgets")
    p.add_argument("--replicates", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-size", type=int, default=bayes.DEFAULT_GRID_SIZE)
    _add_output_args(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_CONFIG
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ArithmeticError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
