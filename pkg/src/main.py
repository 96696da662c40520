import argparse
import json
import sys
from typing import List, Optional

from pydantic import ValidationError

from config import (
    CLUSTER_RADIUS,
    DEFAULT_GRID_DENSITY,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    DEGENERACY_TOL,
    DISTANCE_TIE_TOL,
    OUTPUT_FORMATS,
    REJECT_CEILING,
    ZERO_THRESHOLD,
    logger,
)
from models.partitions import MultiplicityVector
from models.reports import RunConfig
from services.commands import execute, get_all_commands
from utils.errors import DegenerateInput, NoConvergence, UnresolvedZero
from utils.report_format import render

EXIT_OK = 0
EXIT_DEGENERATE = 1
EXIT_BAD_INPUT = 2

TOLERANCE_FLAGS = {
    "degeneracy_tol": DEGENERACY_TOL,
    "tie_tol": DISTANCE_TIE_TOL,
    "zero_threshold": ZERO_THRESHOLD,
    "reject_ceiling": REJECT_CEILING,
    "cluster_radius": CLUSTER_RADIUS,
}

# Subcommand -> extra options it accepts
COMMAND_OPTIONS = {
    "nearest": ["matrix"],
    "critical": ["matrix", "w"],
    "spherical": ["matrix"],
    "strata": ["n"],
    "moment": ["k", "u", "samples"],
    "verify-charpol": ["max_k"],
    "volume-check": ["max_n"],
    "gap-prob": ["n", "eps", "eps_sweep", "samples"],
    "two-plane": ["n", "trials", "grid_density"],
    "restricted-volume": ["n", "config", "samples", "quadrature"],
    "goe-sample": ["n", "count"],
    "descent-oracle": ["matrix", "starts"],
}


def parse_w(text: str) -> MultiplicityVector:
    """'1,1,0' or '[1,1,0]' -> MultiplicityVector."""
    text = text.strip()
    try:
        values = json.loads(text) if text.startswith("[") else [int(x) for x in text.split(",") if x.strip()]
        return MultiplicityVector(w=tuple(int(x) for x in values))
    except (ValueError, TypeError) as e:
        raise argparse.ArgumentTypeError(f"invalid multiplicity vector {text!r}: {e}")


def parse_eps_list(text: str) -> List[float]:
    """'0.05,0.1,0.2' -> [0.05, 0.1, 0.2]."""
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid eps list {text!r}: {e}")
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"eps list must hold non-negative values, got {text!r}")
    return values


def _add_option(parser: argparse.ArgumentParser, name: str) -> None:
    if name == "matrix":
        group = parser.add_mutually_exclusive_group()
        group.add_argument("--matrix", help="inline matrix, JSON rows e.g. '[[1,0],[0,3]]'")
        group.add_argument("--input", help="matrix file (JSON {n, rows}, bare rows, or plain text)")
    elif name == "w":
        parser.add_argument("--w", type=parse_w, required=True, help="multiplicity vector, e.g. 1,1,0")
    elif name in ("n", "k", "max_k", "max_n", "samples", "trials", "config", "quadrature", "grid_density", "count", "starts"):
        flag = "--" + name.replace("_", "-")
        defaults = {"grid_density": DEFAULT_GRID_DENSITY}
        parser.add_argument(flag, dest=name, type=int, help=f"{name} (default: {defaults.get(name, 'command default')})")
    elif name in ("eps", "u"):
        parser.add_argument(f"--{name}", type=float)
    elif name == "eps_sweep":
        parser.add_argument(
            "--eps-sweep",
            dest="eps_sweep",
            type=parse_eps_list,
            help="comma-separated eps values on one shared sample; reports estimate / eps^2 for each",
        )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"master seed (default: {DEFAULT_SEED})")
    common.add_argument("--threads", type=int, default=DEFAULT_THREADS, help="replica threads; results do not depend on it")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default="json")
    common.add_argument("--output", help="write the report to this file instead of standard output")
    for name, default in TOLERANCE_FLAGS.items():
        common.add_argument("--" + name.replace("_", "-"), dest=name, type=float, default=None, help=f"(default: {default})")

    parser = argparse.ArgumentParser(prog="symdisc", description="Distances to and volumes of the discriminant of real symmetric matrices")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in get_all_commands():
        sub = subparsers.add_parser(command["id"], parents=[common], help=command["description"], description=command["description"])
        for option in COMMAND_OPTIONS[command["id"]]:
            _add_option(sub, option)
    return parser


def to_run_config(args: argparse.Namespace) -> RunConfig:
    values = vars(args)
    tolerances = {k: values.pop(k) for k in TOLERANCE_FLAGS if values.get(k) is not None}
    for k in TOLERANCE_FLAGS:
        values.pop(k, None)
    return RunConfig(**{k: v for k, v in values.items() if v is not None}, tolerances=tolerances)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, execute one command, emit its report. Returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_BAD_INPUT

    try:
        config = to_run_config(args)
        result = execute(config)
    except (DegenerateInput, UnresolvedZero, NoConvergence) as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValidationError, ValueError) as e:
        logger.error(f"{args.command}: invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT

    text = render(result["report"], config.format, result.get("rows"), title=config.command)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"Report written to {config.output}")
    else:
        print(text)
    return result["exit_code"]


if __name__ == "__main__":
    sys.exit(run())
