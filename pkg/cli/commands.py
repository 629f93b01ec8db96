"""Command-line front end.

Exit status is 0/1/2 for SATISFIED/VIOLATED/UNKNOWN and 10 or more for errors,
so scripts can branch on the three-valued outcome.
"""

import argparse
import asyncio
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import BinaryIO

from cli.render import render_svg
from monitor.engine import report, verdict
from monitor.errors import (
    DegenerateIntervalError, FormulaSyntaxError, HorizonError, IntervalSyntaxError,
    RenderError, TraceFormatError, UndeclaredAtomError,
)
from monitor.formula import atoms, format_formula, parse
from monitor.literals import format_queue, format_rational, parse_rational
from monitor.oracle import oracle_holds, oracle_truth_set
from monitor.state import Verdict
from monitor.trace import Trace, apply_horizon, as_exact, read_trace

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("check", "truthset", "gap", "render", "oracle")
FORMATS = ("text", "json", "svg")

EXIT_FORMULA_ERROR = 10
EXIT_TRACE_ERROR = 11
EXIT_EVALUATION_ERROR = 12
EXIT_USAGE_ERROR = 13


class UsageError(ValueError):
    """Invalid combination of command-line options."""


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    formula: str
    trace: str
    at: Fraction | None = None
    format: str = "text"
    window: Fraction | None = None
    horizon: Fraction | None = None
    strict: bool = False

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand: {self.subcommand}")
        if self.format not in FORMATS:
            raise UsageError(f"unknown output format: {self.format}")
        if self.subcommand == "check" and self.at is None:
            raise UsageError("check needs --at")
        if self.subcommand in ("truthset", "gap", "render") and self.at is not None:
            raise UsageError(f"{self.subcommand} does not take --at")
        if self.format == "svg" and self.subcommand in ("check", "oracle"):
            raise UsageError(f"{self.subcommand} has no svg output")
        if self.at is not None and self.at < 0:
            raise UsageError("--at must be >= 0")
        if self.horizon is not None and self.horizon < 0:
            raise UsageError("--horizon must be >= 0")

    @property
    def output_format(self) -> str:
        return "svg" if self.subcommand == "render" else self.format


# =============================================================================
# SUBCOMMANDS
# =============================================================================

def _load(config: RunConfig) -> Trace:
    trace = asyncio.run(read_trace(config.trace, strict=config.strict))
    # the oracle takes --horizon as its certification bound instead
    if config.horizon is not None and config.subcommand != "oracle":
        trace = apply_horizon(trace, config.horizon)
    return trace


def _check(config: RunConfig, trace: Trace) -> tuple[str, int]:
    result = verdict(parse(config.formula), trace, config.at)
    if config.output_format == "json":
        text = json.dumps({
            "formula": config.formula,
            "at": format_rational(config.at),
            "verdict": result.value,
        }, indent=2, ensure_ascii=False)
    else:
        text = result.value
    return text, result.exit_code


def _report(config: RunConfig, trace: Trace) -> tuple[str, int]:
    r = report(parse(config.formula), trace)
    match config.output_format:
        case "json":
            text = json.dumps(r.to_list(), indent=2, ensure_ascii=False)
        case "svg":
            text = render_svg(r, config.window)
        case _ if config.subcommand == "gap":
            text = r.to_text(queues=False)
        case _:
            text = r.to_text(deltas=False)
    return text, 0


def _oracle(config: RunConfig, trace: Trace) -> tuple[str, int]:
    exact = as_exact(trace)
    if exact is None:
        raise TraceFormatError("the oracle needs a trace whose propositions are all exact")
    formula = parse(config.formula)
    horizon = config.horizon
    if horizon is None:
        points = set().union(*(exact[name].endpoints() for name in atoms(formula)))
        horizon = max(points, default=Fraction(0))

    if config.at is not None:
        holds = oracle_holds(exact, formula, config.at, horizon)
        result = Verdict.SATISFIED if holds else Verdict.VIOLATED
        if config.output_format == "json":
            return json.dumps({
                "formula": format_formula(formula),
                "at": format_rational(config.at),
                "holds": holds,
            }, indent=2, ensure_ascii=False), result.exit_code
        return result.value, result.exit_code

    truth = oracle_truth_set(exact, formula, horizon)
    if config.output_format == "json":
        return json.dumps({
            "formula": format_formula(formula),
            "truth_set": format_queue(truth),
        }, indent=2, ensure_ascii=False), 0
    return format_queue(truth), 0


HANDLERS = {
    "check": _check,
    "truthset": _report,
    "gap": _report,
    "render": _report,
    "oracle": _oracle,
}


# =============================================================================
# ENTRY POINTS
# =============================================================================

def _exit_code(error: Exception) -> int:
    match error:
        case FormulaSyntaxError() | DegenerateIntervalError():
            return EXIT_FORMULA_ERROR
        case TraceFormatError() | IntervalSyntaxError() | OSError():
            return EXIT_TRACE_ERROR
        case UndeclaredAtomError() | HorizonError():
            return EXIT_EVALUATION_ERROR
        case _:
            return EXIT_USAGE_ERROR


def run(config: RunConfig, out: BinaryIO) -> int:
    """Execute one command, writing its result to `out`; returns the exit status."""
    logger.info(f"Running {config.subcommand} on {config.trace}")
    try:
        trace = _load(config)
        text, status = HANDLERS[config.subcommand](config, trace)
    except (FormulaSyntaxError, DegenerateIntervalError, TraceFormatError, IntervalSyntaxError,
            UndeclaredAtomError, HorizonError, RenderError, OSError) as e:
        logger.debug(f"{config.subcommand} failed", exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return _exit_code(e)

    if not text.endswith("\n"):
        text += "\n"
    out.write(text.encode("utf-8"))
    return status


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad arguments, which is the UNKNOWN verdict."""

    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except IntervalSyntaxError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="mitl-monitor",
        description="Offline MITL verification over partially known traces.",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True, metavar="{check,truthset,gap,render}")

    def add(name: str, help: str | None, at: str | None):
        kwargs = {"help": help} if help else {}
        sub = subparsers.add_parser(name, **kwargs)
        sub.add_argument("--formula", required=True, help="MITL formula, e.g. 'F[0,1] g'")
        sub.add_argument("--trace", required=True, help="trace document (JSON)")
        if at == "required":
            sub.add_argument("--at", required=True, type=_rational, help="query time, e.g. 3/2")
        elif at == "optional":
            sub.add_argument("--at", type=_rational, help="query time; omit for the whole truth set")
        if name != "render":
            choices = ("text", "json") if name in ("check", "oracle") else FORMATS
            sub.add_argument("--format", choices=choices, default="text")
        if name in ("truthset", "gap", "render"):
            sub.add_argument("--window", type=_rational, help="right edge of the svg time axis")
        sub.add_argument("--horizon", type=_rational,
                         help="treat every proposition as unknown after this time")
        sub.add_argument("--strict", action="store_true", help="reject non-canonical queues in the trace")

    add("check", "three-valued verdict at one time point", "required")
    add("truthset", "under/over approximation of every subformula", None)
    add("gap", "measure of the unknown region of every subformula", None)
    add("render", "svg timeline of every subformula", None)
    # debugging aid, left out of the help listing
    add("oracle", None, "optional")
    return parser


def parse_args(argv: list[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        subcommand=args.subcommand,
        formula=args.formula,
        trace=args.trace,
        at=getattr(args, "at", None),
        format=getattr(args, "format", "text"),
        window=getattr(args, "window", None),
        horizon=args.horizon,
        strict=args.strict,
    )


def main(argv: list[str] | None = None, out: BinaryIO | None = None) -> int:
    """Parse arguments and run; usage problems exit with status 13."""
    try:
        config = parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE_ERROR
    return run(config, out or sys.stdout.buffer)
