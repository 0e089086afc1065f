"""Command-line front end.

Subcommands:

* ``sweep``     evaluate a photon-number grid and write a CSV/JSON dataset
* ``optimize``  optimize the displacement receiver at one photon number;
                prints a single dataset row as JSON
* ``figure``    regenerate one of the preset comparison datasets
* ``validate``  Monte Carlo vs analytic channel report as JSON

Exit codes: 0 success, 2 invalid configuration, 3 I/O failure, 4 at least
one sweep cell failed to converge (the dataset is still written).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import __version__
from ._backend import backend_name
from .optimize import capacity_fixed_prior, capacity_gk, min_error_beta
from .receivers import gk_transition, simulate_clicks
from .sweep import (
    ALL_RECEIVERS,
    FIGURES,
    FORMATS,
    SPACINGS,
    SweepConfigError,
    SweepRow,
    SweepSpec,
    emit,
    run_sweep,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NONCONVERGED = 4

_CONFIG_KEYS = ("n_min", "n_max", "points", "spacing", "receivers",
                "objectives", "format", "out", "jobs")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkreceiver",
        description="Displacement photon-counting receiver for coherent-state "
                    "BPSK: capacity and one-shot error optimization.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} ({backend_name()} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="evaluate a photon-number grid")
    sweep.add_argument("--n-min", type=float, default=None)
    sweep.add_argument("--n-max", type=float, default=None)
    sweep.add_argument("--points", type=int, default=None)
    sweep.add_argument("--spacing", choices=SPACINGS, default=None)
    sweep.add_argument("--receivers", default=None,
                       help=f"comma-separated subset of {','.join(ALL_RECEIVERS)}")
    sweep.add_argument("--objectives", default=None,
                       help="comma-separated subset of capacity,perror")
    sweep.add_argument("--format", choices=FORMATS, default=None)
    sweep.add_argument("--out", default=None)
    sweep.add_argument("--config", default=None,
                       help="JSON file with the same keys; flags override it")
    sweep.add_argument("--jobs", type=int, default=None)

    opt = sub.add_parser("optimize", help="optimize one photon-number point")
    opt.add_argument("--n", type=float, required=True)
    opt.add_argument("--objective", choices=("capacity", "perror"), required=True)
    opt.add_argument("--p", type=float, default=None,
                     help="fix the prior (default: optimized for capacity, "
                          "0.5 for perror)")

    fig = sub.add_parser("figure", help="regenerate a preset dataset")
    fig.add_argument("name", choices=tuple(FIGURES))
    fig.add_argument("--out", required=True)
    fig.add_argument("--format", choices=FORMATS, default="csv")
    fig.add_argument("--jobs", type=int, default=1)

    val = sub.add_parser("validate", help="Monte Carlo vs analytic channel")
    val.add_argument("--n", type=float, required=True)
    val.add_argument("--beta", type=float, required=True)
    val.add_argument("--p", type=float, required=True)
    val.add_argument("--trials", type=int, required=True)
    val.add_argument("--seed", type=int, required=True)
    return parser


def _sweep_spec_from_args(args) -> SweepSpec:
    merged = dict.fromkeys(_CONFIG_KEYS)
    merged.update({"spacing": "log", "receivers": "gk-opt,kennedy-exact,homodyne,dolinar",
                   "objectives": "capacity", "format": "csv", "jobs": 1})
    if args.config is not None:
        try:
            with open(args.config) as handle:
                loaded = json.load(handle)
        except OSError as exc:
            raise SweepConfigError(f"cannot read config {args.config!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SweepConfigError(f"malformed config {args.config!r}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise SweepConfigError("config must be a JSON object")
        for key in loaded:
            if key not in _CONFIG_KEYS:
                raise SweepConfigError(f"unknown config key {key!r}")
        merged.update(loaded)
    for key in ("n_min", "n_max", "points", "spacing", "receivers",
                "objectives", "format", "out", "jobs"):
        flag = getattr(args, key if key not in ("format", "out") else key)
        if flag is not None:
            merged[key] = flag
    for key in ("n_min", "n_max", "points", "out"):
        if merged[key] is None:
            raise SweepConfigError(f"missing required setting {key!r}")

    def _as_list(v):
        if isinstance(v, str):
            return tuple(s for s in v.split(",") if s)
        return tuple(v)

    return SweepSpec(
        n_min=merged["n_min"], n_max=merged["n_max"], points=merged["points"],
        spacing=merged["spacing"], receivers=_as_list(merged["receivers"]),
        objectives=_as_list(merged["objectives"]), output_format=merged["format"],
        output_path=merged["out"], jobs=merged["jobs"])


def _cmd_sweep(args) -> int:
    spec = _sweep_spec_from_args(args)
    rows = run_sweep(spec)
    emit(rows, spec.output_format, spec.output_path)
    print(f"wrote {len(rows)} rows to {spec.output_path}", file=sys.stderr)
    if any(not r.converged for r in rows):
        return EXIT_NONCONVERGED
    return EXIT_OK


def _cmd_optimize(args) -> int:
    if args.p is not None and not 0.0 <= args.p <= 1.0:
        raise SweepConfigError(f"prior must lie in [0, 1], got {args.p}")
    if args.objective == "capacity":
        if args.p is None:
            r = capacity_gk(args.n)
            p_opt = r.arg_p
        else:
            r = capacity_fixed_prior(args.n, args.p)
            p_opt = args.p
    else:
        r = min_error_beta(args.n, 0.5 if args.p is None else args.p)
        p_opt = r.arg_p
    row = SweepRow(n_bar=float(args.n), receiver="gk-opt", objective=args.objective,
                   beta_opt=r.arg_beta, p_opt=p_opt, value=r.value,
                   converged=r.converged)
    print(json.dumps(asdict(row)))
    return EXIT_OK if row.converged else EXIT_NONCONVERGED


def _cmd_figure(args) -> int:
    from .sweep import figure_command

    rows = figure_command(args.name, args.out, args.format, args.jobs)
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    if any(not r.converged for r in rows):
        return EXIT_NONCONVERGED
    return EXIT_OK


def _cmd_validate(args) -> int:
    counts = simulate_clicks(args.n, args.beta, args.p, args.trials, args.seed)
    analytic = gk_transition(args.n, args.beta).w
    report = {
        "n_bar": args.n, "beta": args.beta, "p_plus": args.p,
        "trials": args.trials, "seed": args.seed,
        "counts": counts.tolist(),
        "analytic": analytic.tolist(),
        "empirical": [], "max_sigma_deviation": 0.0,
    }
    max_dev = 0.0
    for x in range(2):
        row_total = int(counts[x].sum())
        if row_total == 0:
            report["empirical"].append([None, None])
            continue
        emp = [counts[x, y] / row_total for y in range(2)]
        report["empirical"].append(emp)
        q = analytic[x, 0]
        sigma = (q * (1.0 - q) / row_total) ** 0.5
        dev = abs(emp[0] - q)
        if sigma > 0.0:
            max_dev = max(max_dev, dev / sigma)
        elif dev > 0.0:
            max_dev = float("inf")
    report["max_sigma_deviation"] = max_dev
    report["within_5_sigma"] = max_dev <= 5.0
    print(json.dumps(report))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {"sweep": _cmd_sweep, "optimize": _cmd_optimize,
               "figure": _cmd_figure, "validate": _cmd_validate}[args.command]
    try:
        return handler(args)
    except (SweepConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
