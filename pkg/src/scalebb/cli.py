"""Command-line interface for scalebb.

Every subcommand prints one JSON document on standard output. Logs and error
messages go to standard error. Exit codes: 0 success, 1 input error,
2 numerical failure, 3 structural error, 4 iteration anomaly or conjecture
counterexample.
"""

import argparse
import json
import sys
from collections.abc import Sequence
from typing import Any, NoReturn

import numpy as np
import pydantic
import structlog

from scalebb import __version__
from scalebb.config import settings
from scalebb.core.errors import (
    InputError,
    IterationAnomaly,
    NumericalFailure,
    ReducibleInput,
    ScaleBBError,
    StructuralError,
)
from scalebb.core.expr import hessian, interval_hessian
from scalebb.core.gersch import (
    alpha,
    alpha_objective,
    decompose_blocks,
    interval_matrix,
    point_matrix,
    psd_certificate,
    separation_objective,
)
from scalebb.core.interval import box_radius
from scalebb.core.scaling import improve_blocks
from scalebb.core.schemas import Family, FloatArray, IntervalMatrix, Method, PointMatrix
from scalebb.experiment import render_table, run_experiment
from scalebb.io import (
    dump_json,
    load_box,
    load_expression_file,
    load_matrix,
    load_point_matrix,
    load_scaling,
)
from scalebb.logging_config import setup_logging
from scalebb.verify import check_optimality, conjecture_test, oracle_min, underestimation_check

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2
EXIT_STRUCTURAL = 3
EXIT_ANOMALY = 4

D_STRATEGIES = "radius|li1|li2|@<d.json>"


class UsageError(InputError):
    """Malformed command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the stable exit code of its family."""
    if isinstance(exc, IterationAnomaly):
        return EXIT_ANOMALY
    if isinstance(exc, NumericalFailure):
        return EXIT_NUMERICAL
    if isinstance(exc, StructuralError):
        return EXIT_STRUCTURAL
    return EXIT_INPUT


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _radius(h: PointMatrix, box_path: str | None) -> FloatArray:
    if box_path is None:
        return np.ones(h.n)
    box = load_box(box_path)
    if box.dims != h.n:
        raise InputError(f"box has {box.dims} components but the matrix has n={h.n}")
    return box_radius(box)


def _scaling(h: PointMatrix, strategy: str, rad: FloatArray) -> FloatArray:
    """Resolve a --d strategy to a scaling vector."""
    if strategy.startswith("@"):
        d = load_scaling(strategy[1:])
        if len(d) != h.n:
            raise InputError(f"scaling vector has {len(d)} components but the matrix has n={h.n}")
        return d
    if strategy == "radius":
        return rad.copy()
    if strategy in (Method.LI1.value, Method.LI2.value):
        d, _ = improve_blocks(h, rad, Method(strategy), config=settings.scaling_config())
        return d
    raise UsageError(f"--d must be one of {D_STRATEGIES}, got {strategy!r}")


def _check_irreducible(h: PointMatrix, strict: bool) -> list[tuple[int, ...]]:
    blocks = decompose_blocks(h)
    if strict and len(blocks) > 1:
        raise ReducibleInput(f"matrix decomposes into {len(blocks)} blocks: {blocks}")
    return blocks


def _alpha_summary(h: PointMatrix, d: FloatArray, rad: FloatArray) -> dict[str, Any]:
    a = alpha(h, d)
    return {
        "alpha": a.to_list(),
        "separation": separation_objective(a, rad),
        "alpha_objective": alpha_objective(h, d, rad),
        "psd_certificate": psd_certificate(h, a, d),
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_pointmat(args: argparse.Namespace) -> dict[str, Any]:
    """Reduce an interval matrix to its point matrix."""
    matrix = load_matrix(args.matrix)
    if not isinstance(matrix, IntervalMatrix):
        raise InputError("pointmat expects an interval matrix with 'lower' and 'upper'")
    h = point_matrix(matrix)
    return {**h.to_dict(), "blocks": [list(b) for b in decompose_blocks(h)]}


def cmd_hessian(args: argparse.Namespace) -> dict[str, Any]:
    """Symbolic Hessian and its interval enclosure over a box."""
    n, f = load_expression_file(args.expr)
    box = load_box(args.box)
    if box.dims != n:
        raise InputError(f"box has {box.dims} components but the expression has n={n}")
    enclosure = interval_matrix(interval_hessian(f, box))
    return {
        "n": n,
        "expression": str(f),
        "hessian": [[str(entry) for entry in row] for row in hessian(f, n)],
        "interval_hessian": enclosure.to_dict(),
        "point_matrix": point_matrix(enclosure).to_dict(),
    }


def cmd_alpha(args: argparse.Namespace) -> dict[str, Any]:
    """Alpha for a scaling strategy."""
    h = load_point_matrix(args.matrix)
    rad = _radius(h, args.box)
    d = _scaling(h, args.d, rad)
    return {"d": [float(v) for v in d], **_alpha_summary(h, d, rad)}


def cmd_improve(args: argparse.Namespace) -> dict[str, Any]:
    """Run a scaling heuristic on every irreducible block from d = rad."""
    h = load_point_matrix(args.matrix)
    rad = _radius(h, args.box)
    _check_irreducible(h, args.strict_irreducible)
    method = Method(args.method)
    d, results = improve_blocks(
        h, rad, method, tol=args.tol, max_steps=args.max, config=settings.scaling_config()
    )
    blocks = [
        {"indices": list(block), **state.to_dict(include_trace=args.trace)}
        for block, state in results
    ]
    payload: dict[str, Any] = {
        "method": method.value,
        "d": [float(v) for v in d],
        "iterations": sum(state.iterations for _, state in results),
        **_alpha_summary(h, d, rad),
    }
    if len(results) == 1:
        state = results[0][1]
        payload["status"] = state.status.value
        if args.trace:
            payload["trace"] = [step.to_dict() for step in state.trace]
    payload["blocks"] = blocks
    return payload


def cmd_check(args: argparse.Namespace) -> dict[str, Any]:
    """Optimality conditions at a scaling vector, block by block."""
    h = load_point_matrix(args.matrix)
    rad = _radius(h, args.box)
    d = _scaling(h, args.d, rad)
    blocks = _check_irreducible(h, args.strict_irreducible)
    config = settings.scaling_config()
    if len(blocks) == 1:
        return check_optimality(h, d, rad, tol=args.tol, config=config).to_dict()
    reports = []
    for block in blocks:
        idx = list(block)
        report = check_optimality(h.submatrix(block), d[idx], rad[idx], args.tol, config)
        reports.append({"indices": idx, **report.to_dict()})
    return {"passed": all(r["passed"] for r in reports), "blocks": reports}


def cmd_oracle(args: argparse.Namespace) -> dict[str, Any]:
    """Brute-force minimum of the scaling objective."""
    h = load_point_matrix(args.matrix)
    rad = _radius(h, args.box)
    return oracle_min(h, rad, grid_step=args.grid, jobs=args.jobs).to_dict()


def cmd_conjecture(args: argparse.Namespace) -> dict[str, Any]:
    """Compare Local Improvement II with the oracle on random instances."""
    report = conjecture_test(
        args.n,
        args.trials,
        args.seed,
        grid_step=args.grid,
        jobs=args.jobs,
        config=settings.scaling_config(),
    )
    return report.to_dict()


def cmd_underest(args: argparse.Namespace) -> dict[str, Any]:
    """Sample the underestimator built from a scaling strategy."""
    n, f = load_expression_file(args.expr)
    box = load_box(args.box)
    if box.dims != n:
        raise InputError(f"box has {box.dims} components but the expression has n={n}")
    h = point_matrix(interval_matrix(interval_hessian(f, box)))
    rad = box_radius(box)
    d = _scaling(h, args.d, rad)
    a = alpha(h, d)
    report = underestimation_check(f, box, a, samples=args.samples, seed=args.seed)
    return {"d": [float(v) for v in d], "alpha": a.to_list(), **report.to_dict()}


def cmd_experiment(args: argparse.Namespace) -> dict[str, Any]:
    """Iteration statistics on random matrices."""
    config = settings.scaling_config()
    stats = [
        run_experiment(n, Family(family), args.trials, args.seed, jobs=args.jobs, config=config)
        for n in args.n
        for family in args.family
    ]
    payload: dict[str, Any] = {"experiments": [item.to_dict() for item in stats]}
    if args.table:
        table = render_table(stats)
        print(table, file=sys.stderr)
        payload["table"] = table
    return payload


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="scalebb",
        description="scalebb - scaled Gerschgorin alpha for alphaBB underestimators",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"scalebb {__version__}")
    parser.add_argument(
        "--log-level", default=None, help="Logging level (default from SCALEBB_LOG_LEVEL)"
    )

    subparsers = parser.add_subparsers(
        dest="command", parser_class=_Parser, help="Available commands"
    )

    # pointmat command
    pointmat_parser = subparsers.add_parser(
        "pointmat", help="Reduce an interval matrix to its point matrix"
    )
    pointmat_parser.add_argument("matrix", help="Interval matrix JSON file")
    pointmat_parser.set_defaults(func=cmd_pointmat)

    # hessian command
    hessian_parser = subparsers.add_parser(
        "hessian", help="Symbolic Hessian and interval enclosure of an expression"
    )
    hessian_parser.add_argument("expr", help="Expression file (n=<dim> line, then expression)")
    hessian_parser.add_argument("--box", required=True, help="Box JSON file")
    hessian_parser.set_defaults(func=cmd_hessian)

    # alpha command
    alpha_parser = subparsers.add_parser("alpha", help="Alpha for a scaling vector")
    alpha_parser.add_argument("matrix", help="Interval or point matrix JSON file")
    alpha_parser.add_argument("--d", required=True, help=f"Scaling strategy: {D_STRATEGIES}")
    alpha_parser.add_argument("--box", help="Box JSON file supplying the radii (default: ones)")
    alpha_parser.set_defaults(func=cmd_alpha)

    # improve command
    improve_parser = subparsers.add_parser("improve", help="Run a scaling heuristic")
    improve_parser.add_argument("matrix", help="Interval or point matrix JSON file")
    improve_parser.add_argument(
        "--method", required=True, choices=[m.value for m in Method], help="Heuristic"
    )
    improve_parser.add_argument("--tol", type=float, help="Saturation tolerance")
    improve_parser.add_argument("--max", type=int, help="Sweep or iteration cap")
    improve_parser.add_argument("--trace", action="store_true", help="Include the step trace")
    improve_parser.add_argument("--box", help="Box JSON file supplying the radii")
    improve_parser.add_argument(
        "--strict-irreducible", action="store_true", help="Fail on a reducible matrix"
    )
    improve_parser.set_defaults(func=cmd_improve)

    # check command
    check_parser = subparsers.add_parser("check", help="Check optimality conditions")
    check_parser.add_argument("matrix", help="Interval or point matrix JSON file")
    check_parser.add_argument("--d", required=True, help=f"Scaling strategy: {D_STRATEGIES}")
    check_parser.add_argument("--box", help="Box JSON file supplying the radii")
    check_parser.add_argument("--tol", type=float, help="Saturation tolerance")
    check_parser.add_argument(
        "--strict-irreducible", action="store_true", help="Fail on a reducible matrix"
    )
    check_parser.set_defaults(func=cmd_check)

    # oracle command
    oracle_parser = subparsers.add_parser("oracle", help="Brute-force optimal scaling (n <= 4)")
    oracle_parser.add_argument("matrix", help="Interval or point matrix JSON file")
    oracle_parser.add_argument("--grid", type=float, help="Grid step (default from settings)")
    oracle_parser.add_argument("--box", help="Box JSON file supplying the radii")
    oracle_parser.add_argument("--jobs", type=int, default=settings.jobs, help="Worker threads")
    oracle_parser.set_defaults(func=cmd_oracle)

    # conjecture command
    conjecture_parser = subparsers.add_parser(
        "conjecture", help="Compare Local Improvement II with the oracle"
    )
    conjecture_parser.add_argument("--n", type=int, required=True, help="Dimension (2..4)")
    conjecture_parser.add_argument("--trials", type=int, required=True, help="Number of trials")
    conjecture_parser.add_argument("--seed", type=int, required=True, help="Base seed")
    conjecture_parser.add_argument("--grid", type=float, help="Oracle grid step")
    conjecture_parser.add_argument(
        "--jobs", type=int, default=settings.jobs, help="Oracle worker threads"
    )
    conjecture_parser.set_defaults(func=cmd_conjecture)

    # underest command
    underest_parser = subparsers.add_parser(
        "underest", help="Sample the alphaBB underestimator of an expression"
    )
    underest_parser.add_argument("expr", help="Expression file")
    underest_parser.add_argument("--box", required=True, help="Box JSON file")
    underest_parser.add_argument("--d", default="radius", help=f"Scaling: {D_STRATEGIES}")
    underest_parser.add_argument("--samples", type=int, default=10000, help="Sample count")
    underest_parser.add_argument("--seed", type=int, default=0, help="Sampling seed")
    underest_parser.set_defaults(func=cmd_underest)

    # experiment command
    experiment_parser = subparsers.add_parser(
        "experiment", help="Iteration counts of Local Improvement II on random matrices"
    )
    experiment_parser.add_argument(
        "--n", type=int, nargs="+", required=True, help="One or more dimensions"
    )
    experiment_parser.add_argument(
        "--family",
        nargs="+",
        default=[Family.GENERAL.value],
        choices=[f.value for f in Family],
        help="Matrix families",
    )
    experiment_parser.add_argument("--trials", type=int, default=10000, help="Trials per row")
    experiment_parser.add_argument(
        "--seed", type=int, default=settings.experiment_seed, help="Base seed"
    )
    experiment_parser.add_argument(
        "--jobs", type=int, default=settings.jobs, help="Worker processes"
    )
    experiment_parser.add_argument(
        "--table", action="store_true", help="Also render the aligned text table"
    )
    experiment_parser.set_defaults(func=cmd_experiment)

    return parser


def dispatch(argv: Sequence[str]) -> int:
    """Parse ``argv``, run the subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)

    setup_logging(args.log_level or settings.log_level, settings.log_to_file)

    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_INPUT

    try:
        payload = args.func(args)
        document = dump_json(payload)
    except (
        ScaleBBError,
        SyntaxError,
        IndexError,
        ValueError,
        OSError,
        pydantic.ValidationError,
        json.JSONDecodeError,
    ) as exc:
        logger.debug("Command failed", command=args.command, error_type=type(exc).__name__)
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)

    print(document)
    if args.command == "conjecture" and payload["failures"]:
        logger.warning("Conjecture counterexamples found", failures=payload["failures"])
        return EXIT_ANOMALY
    return EXIT_OK


def main() -> None:
    """Main entry point."""
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
