"""
Command line entry point: `risfading simulate | validate | oracle`.
"""

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import codecs, plot
from .config.runconfig import RunConfig
from .core import optimize
from .core.exceptions import CapacityError, CellIndexError, ConfigError, DomainError
from .core.experiment import PRESETS, preset, run_sweep
from .types import OutputFormat, StrategyId
from .utils.units import reported_dbm

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

PRECEDENCE = (
    "Settings are resolved as: command line flag, then configuration file, then the "
    "preset or built-in default."
)

LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def _csv_list(value: str) -> List[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _strategies(value: Optional[str]) -> Optional[List[StrategyId]]:
    if value is None:
        return None
    try:
        return [StrategyId.parse(v) for v in _csv_list(value)]
    except ValueError as e:
        raise ConfigError(str(e), path="--strategy") from None


def _formats(value: Optional[str]) -> Optional[List[OutputFormat]]:
    if value is None:
        return None
    try:
        return [OutputFormat(v.lower()) for v in _csv_list(value)]
    except ValueError:
        names = ", ".join(f.value for f in OutputFormat)
        raise ConfigError(f"invalid format '{value}', expected: {names}", path="--format") from None


def _grid(value: str):
    try:
        rows, cols = (int(v) for v in value.lower().split("x"))
    except ValueError:
        raise ConfigError(f"expected ROWSxCOLS, got '{value}'", path="--grid") from None
    return rows, cols


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="risfading",
        description="Received power of the direct + RIS two-path model and RIS phase "
        "configuration strategies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser(
        "simulate",
        help="run a distance sweep and write CSV/SVG results",
        description=f"Run a distance sweep. {PRECEDENCE}",
    )
    source = sim.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=sorted(PRESETS), help="built-in scenario")
    source.add_argument("--config", type=Path, help="YAML run configuration")
    sim.add_argument("--seed", type=int, help="root seed (built-in: 42)")
    sim.add_argument("--out", help="output directory (built-in: results)")
    sim.add_argument("--format", help="comma separated list of csv, svg (built-in: csv)")
    sim.add_argument(
        "--strategy",
        help="comma separated strategies, one of: "
        + ", ".join(s.value for s in StrategyId)
        + " (built-in: the preset list)",
    )
    sim.add_argument(
        "--iterations",
        type=int,
        help=f"random search draws (built-in: {optimize.DEFAULT_ITERATIONS})",
    )
    sim.add_argument("--grid-step", type=float, help="phase traversal step in degrees (built-in: 1)")
    sim.add_argument(
        "--max-sweeps",
        type=int,
        help=f"coordinate ascent sweep limit (built-in: {optimize.DEFAULT_MAX_SWEEPS})",
    )
    sim.add_argument(
        "--vote",
        action="store_const",
        const=True,
        help="add the majority vote candidate to the random search (built-in: off)",
    )
    sim.add_argument(
        "--calibration-offset", type=float, help="dB added to reported powers (built-in: 0)"
    )
    sim.add_argument("--workers", type=int, help="concurrent distance points (built-in: 1)")
    sim.add_argument("-v", "--verbose", action="count", default=None, help="-v info, -vv debug")

    val = sub.add_parser(
        "validate",
        help="parse a configuration file and print it normalized",
    )
    val.add_argument("--config", type=Path, required=True, help="YAML run configuration")

    orc = sub.add_parser(
        "oracle",
        help="compare the binary strategies with the exhaustive optimum on a small RIS",
        description="Runs the fig3a scenario on a small grid and compares RIS1 and the "
        "per-cell binary strategies with the exhaustive binary optimum.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    orc.add_argument("--grid", default="2x2", help="RIS size as ROWSxCOLS, at most 20 cells")
    orc.add_argument("--seed", type=int, default=0, help="random search seed")
    orc.add_argument("--d2", type=float, default=1.0, help="receiver distance in meters")
    orc.add_argument(
        "--iterations", type=int, default=500, help="random search draws"
    )
    orc.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    return parser


def _setup_logging(verbosity: int):
    level = LOG_LEVELS[min(verbosity, len(LOG_LEVELS) - 1)]
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )
    logging.getLogger("risfading").setLevel(level)


def _load(args) -> RunConfig:
    if args.config is not None:
        config = RunConfig.from_file(args.config)
    else:
        config = RunConfig(preset=args.preset)
    return config.with_overrides(
        seed=args.seed,
        workers=args.workers,
        verbosity=args.verbose,
        names=_strategies(args.strategy),
        iterations=args.iterations,
        grid_step_deg=args.grid_step,
        max_sweeps=args.max_sweeps,
        vote=args.vote,
        calibration_offset_db=args.calibration_offset,
        path=args.out,
        formats=_formats(args.format),
    )


EMITTERS = {
    OutputFormat.CSV: codecs.emit_csv,
    OutputFormat.SVG: plot.emit_plot,
}


def simulate(args) -> int:
    config = _load(args)
    _setup_logging(config.verbosity)
    spec = config.to_sweep_spec()
    result = run_sweep(spec, workers=config.workers)

    out = Path(config.output.path)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    try:
        for fmt in config.formats:
            target = out / f"{config.run_name}.{fmt.value}"
            EMITTERS[fmt](result, target)
            written.append(target)
    except BaseException:
        for target in written:
            target.unlink()
        raise
    for target in written:
        print(target)
    return EXIT_OK


def validate(args) -> int:
    config = RunConfig.from_file(args.config)
    spec = config.to_sweep_spec()
    codecs.dump_config(config, sys.stdout)
    logger.info("%s: %d distances", spec.name, len(spec.distances.distances()))
    return EXIT_OK


def oracle(args) -> int:
    _setup_logging(args.verbose)
    rows, cols = _grid(args.grid)
    if args.seed < 0:
        raise ConfigError(f"must be >= 0, got {args.seed}", path="--seed")
    base = preset("fig3a").scenario
    geometry = dataclasses.replace(base.geometry, rows=rows, cols=cols)
    scenario = dataclasses.replace(base, geometry=geometry).with_distance(args.d2)

    best = optimize.exhaustive_binary_oracle(scenario)
    results = [
        ("ris1", optimize.optimize_ris1(scenario)),
        ("ris3-random", optimize.optimize_ris3_random(scenario, args.iterations, seed=args.seed)),
        ("ris3-greedy", optimize.optimize_ris3_greedy(scenario)),
        ("exhaustive-binary", best),
    ]
    print(f"{'strategy':<18} {'dbm':>12} {'gap_db':>10} evaluations")
    for name, res in results:
        dbm = reported_dbm(res.power)
        gap = reported_dbm(best.power) - dbm
        print(f"{name:<18} {dbm:>12.5f} {gap:>10.5f} {res.evaluations}")
    return EXIT_OK


COMMANDS = {"simulate": simulate, "validate": validate, "oracle": oracle}


def main(argv: Optional[List[str]] = None) -> int:
    """Runs one command and returns the process exit status: 0 on success, 2 for an
    invalid configuration, 1 for any other error.
    """
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (CapacityError, CellIndexError, DomainError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
