"""Command-line sweep driver.

Subcommands:

* ``sweep``        -- run a sweep from a JSON config file plus flag overrides
* ``recipe``       -- run a named built-in sweep (``--list`` to enumerate)
* ``mc-validate``  -- closed-form vs Monte Carlo cross-check table
* ``bounds``       -- benchmark-limit table (no receivers)

The worker count for Monte Carlo chunks is taken from the PSKRX_THREADS
environment variable (default 1); results do not depend on it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .detection import DetectorModel
from .recipes import RECIPES, get_recipe
from .sweeps import (
    ConfigError,
    SweepConfig,
    config_from_dict,
    rows_to_csv,
    rows_to_json,
    run_sweep,
)
from .validation import (
    DEFAULT_ALPHA_SQ_GRID,
    DEFAULT_ETAS,
    DEFAULT_NUS,
    DEFAULT_SEED,
    run_validation,
    validation_to_csv,
)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("PSKRX_THREADS", "1")))
    except ValueError:
        return 1


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip() != ""]


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_rows(rows, fmt: str, output: str | None) -> None:
    _emit(rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows), output)


def _apply_overrides(cfg: SweepConfig, args) -> SweepConfig:
    if args.metric:
        cfg.metric = args.metric
    if args.M:
        cfg.M = args.M
    if args.alpha_sq:
        cfg.alpha_sq_grid = _floats(args.alpha_sq)
    if args.bounds is not None:
        cfg.bounds = [b for b in args.bounds.split(",") if b]
    if args.eta is not None or args.nu is not None:
        eta = args.eta if args.eta is not None else cfg.detector.eta
        nu = args.nu if args.nu is not None else cfg.detector.nu
        cfg.detector = DetectorModel(eta, nu)
    if args.trials is not None:
        cfg.mc = {"trials": args.trials, "seed": args.seed if args.seed is not None else DEFAULT_SEED}
    if args.format:
        cfg.output_format = args.format
    cfg.validate()
    return cfg


def _add_sweep_overrides(p: argparse.ArgumentParser) -> None:
    p.add_argument("--metric", choices=("error_rate", "mutual_info"))
    p.add_argument("--M", type=int, choices=(3, 4))
    p.add_argument("--alpha-sq", dest="alpha_sq",
                   help="comma-separated alpha^2 grid, e.g. 0.5,1,2,5")
    p.add_argument("--bounds", help="comma-separated bound list")
    p.add_argument("--eta", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--trials", type=int, help="add Monte Carlo rows with this many trajectories")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--output", "-o", help="output path ('-' for stdout)")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pskrx",
        description="Error-rate and mutual-information sweeps for PSK displacement receivers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("sweep", help="run a sweep from a JSON config")
    ps.add_argument("--config", help="JSON config file")
    _add_sweep_overrides(ps)

    pr = sub.add_parser("recipe", help="run a named built-in sweep")
    pr.add_argument("name", nargs="?")
    pr.add_argument("--list", action="store_true", help="list available recipes")
    _add_sweep_overrides(pr)

    pv = sub.add_parser("mc-validate", help="closed-form vs Monte Carlo cross-check")
    pv.add_argument("--trials", type=int, default=1_000_000)
    pv.add_argument("--seed", type=int, default=DEFAULT_SEED)
    pv.add_argument("--alpha-sq", dest="alpha_sq")
    pv.add_argument("--eta", help="comma-separated efficiencies")
    pv.add_argument("--nu", help="comma-separated dark-count exponents")
    pv.add_argument("--steps", type=int, default=10, help="feedforward N")
    pv.add_argument("--quick", action="store_true",
                    help="small grid and 2e5 trials for a fast smoke run")
    pv.add_argument("--output", "-o")

    pb = sub.add_parser("bounds", help="benchmark limits only")
    pb.add_argument("--M", type=int, choices=(3, 4), default=3)
    pb.add_argument("--metric", choices=("error_rate", "mutual_info"), default="error_rate")
    pb.add_argument("--alpha-sq", dest="alpha_sq", default="0.25,0.5,1,2,5,10")
    pb.add_argument("--format", choices=("csv", "json"), default="csv")
    pb.add_argument("--output", "-o")

    args = parser.parse_args(argv)
    workers = _workers()

    try:
        if args.command == "sweep":
            if args.config:
                data = json.loads(Path(args.config).read_text())
            else:
                data = {"metric": "error_rate", "M": 3, "alpha_sq_grid": [0.5, 1.0, 2.0]}
            cfg = config_from_dict(data)
            cfg = _apply_overrides(cfg, args)
            rows = run_sweep(cfg, workers=workers)
            _emit_rows(rows, cfg.output_format, args.output)
            return 0

        if args.command == "recipe":
            if args.list or not args.name:
                _emit("\n".join(sorted(RECIPES)) + "\n", getattr(args, "output", None))
                return 0
            try:
                cfg = get_recipe(args.name)
            except KeyError as exc:
                print(exc.args[0], file=sys.stderr)
                return 2
            cfg = _apply_overrides(cfg, args)
            rows = run_sweep(cfg, workers=workers)
            _emit_rows(rows, cfg.output_format, args.output)
            return 0

        if args.command == "mc-validate":
            if args.quick:
                grid = _floats(args.alpha_sq) if args.alpha_sq else [0.5, 2.0]
                etas = _floats(args.eta) if args.eta else [1.0, 0.9]
                nus = _floats(args.nu) if args.nu else [0.0]
                trials = min(args.trials, 200_000)
            else:
                grid = _floats(args.alpha_sq) if args.alpha_sq else list(DEFAULT_ALPHA_SQ_GRID)
                etas = _floats(args.eta) if args.eta else list(DEFAULT_ETAS)
                nus = _floats(args.nu) if args.nu else list(DEFAULT_NUS)
                trials = args.trials
            cells = run_validation(
                trials=trials, seed=args.seed, alpha_sq_grid=grid,
                etas=etas, nus=nus, N=args.steps, workers=workers,
            )
            _emit(validation_to_csv(cells), args.output)
            return 0 if all(c.passed for c in cells) else 1

        if args.command == "bounds":
            cfg = SweepConfig(
                metric=args.metric,
                M=args.M,
                alpha_sq_grid=_floats(args.alpha_sq),
                receivers=[],
                bounds=(
                    ["helstrom", "heterodyne", "bondurant_asymptote"]
                    if (args.metric == "error_rate" and args.M == 4)
                    else ["helstrom", "heterodyne"]
                    if args.metric == "error_rate"
                    else ["helstrom", "heterodyne", "usd"]
                ),
                output_format=args.format,
            )
            rows = run_sweep(cfg, workers=workers)
            _emit_rows(rows, cfg.output_format, args.output)
            return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    parser.error("no command given")
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
