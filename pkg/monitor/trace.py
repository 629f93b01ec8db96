"""Trace documents: per-proposition under/over interval queues.

    {
      "horizon": "10",                                  (optional)
      "propositions": {
        "g1": {"under": "{(1,2)}", "over": "{[1,2]}"},
        "g2": {"exact": "{[4,6]}"}
      }
    }

A document without a "propositions" key is read as a bare proposition map.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO

from monitor.errors import IntervalSyntaxError, TraceFormatError, UndeclaredAtomError
from monitor.formula import KEYWORDS
from monitor.interval import INF, Interval, closure, interior
from monitor.literals import format_queue, format_rational, parse_queue, parse_rational
from monitor.queue import IntervalQueue, construct, difference, union_queue
from monitor.state import Approximation
from monitor.storage import get_storage

logger = logging.getLogger(__name__)

PROPOSITION_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Trace:
    """Under/over approximations of each proposition's truth set, plus optional horizon."""
    propositions: dict[str, Approximation] = field(default_factory=dict)
    horizon: Fraction | None = None

    def __contains__(self, name: str) -> bool:
        return name in self.propositions

    def __getitem__(self, name: str) -> Approximation:
        try:
            return self.propositions[name]
        except KeyError:
            raise UndeclaredAtomError(name)


@dataclass(frozen=True)
class ExactTrace:
    """Exact truth set of each proposition."""
    propositions: dict[str, IntervalQueue] = field(default_factory=dict)

    def __getitem__(self, name: str) -> IntervalQueue:
        try:
            return self.propositions[name]
        except KeyError:
            raise UndeclaredAtomError(name)

    def endpoints(self) -> set[Fraction]:
        return set().union(*(q.endpoints() for q in self.propositions.values()))


# =============================================================================
# LOADING AND SAVING
# =============================================================================

def _read_source(source: bytes | str | IO) -> str:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as e:
            raise TraceFormatError(f"trace is not valid UTF-8: {e}")
    return source


def _queue(name: str, key: str, text, strict: bool) -> IntervalQueue:
    if not isinstance(text, str):
        raise TraceFormatError(f"'{key}' must be a queue literal string", name)
    try:
        return parse_queue(text, strict=True)
    except IntervalSyntaxError as e:
        if strict:
            raise TraceFormatError(str(e), name)
    try:
        queue = parse_queue(text)
    except IntervalSyntaxError as e:
        raise TraceFormatError(str(e), name)
    logger.warning(f"Normalised '{key}' queue of {name}: {text} -> {format_queue(queue)}")
    return queue


def _approximation(name: str, entry, strict: bool) -> Approximation:
    if not isinstance(entry, dict):
        raise TraceFormatError("entry must be an object", name)
    if "exact" in entry:
        if set(entry) != {"exact"}:
            raise TraceFormatError("'exact' cannot be combined with 'under'/'over'", name)
        return Approximation.exact(_queue(name, "exact", entry["exact"], strict))
    if set(entry) != {"under", "over"}:
        raise TraceFormatError("entry needs either 'exact' or both 'under' and 'over'", name)
    approx = Approximation(
        _queue(name, "under", entry["under"], strict),
        _queue(name, "over", entry["over"], strict),
    )
    if not approx.is_consistent:
        raise TraceFormatError(
            f"under-approximation is not contained in over-approximation "
            f"(outside: {format_queue(difference(approx.under, approx.over))})",
            name,
        )
    return approx


def _horizon(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise TraceFormatError(f"horizon must be a rational string, got {value!r}")
    try:
        horizon = parse_rational(str(value))
    except IntervalSyntaxError as e:
        raise TraceFormatError(f"bad horizon: {e}")
    return horizon


def load_trace(source: bytes | str | IO, strict: bool = False) -> Trace:
    """Parse, canonicalise and validate a trace document.

    Unmerged queues are normalised through `construct` unless `strict`; an
    under-approximation that escapes its over-approximation is always an error.
    A declared horizon is applied so its tail is unknown for every proposition.
    """
    try:
        document = json.loads(_read_source(source))
    except json.JSONDecodeError as e:
        raise TraceFormatError(f"malformed trace document: {e}")
    if not isinstance(document, dict):
        raise TraceFormatError("trace document must be a JSON object")

    horizon = _horizon(document["horizon"]) if "horizon" in document else None
    if "propositions" in document:
        entries = document["propositions"]
        if not isinstance(entries, dict):
            raise TraceFormatError("'propositions' must be an object")
    else:
        entries = {k: v for k, v in document.items() if k != "horizon"}

    propositions = {}
    for name, entry in entries.items():
        if not PROPOSITION_NAME.fullmatch(name):
            raise TraceFormatError("not a valid proposition name", name)
        if name in KEYWORDS:
            raise TraceFormatError("reserved word cannot name a proposition", name)
        propositions[name] = _approximation(name, entry, strict)

    trace = Trace(propositions)
    if horizon is not None:
        trace = apply_horizon(trace, horizon)
    logger.info(f"Loaded trace: {len(propositions)} propositions, horizon={horizon}")
    return trace


def dump_trace(trace: Trace | ExactTrace) -> str:
    if isinstance(trace, ExactTrace):
        trace = Trace({n: Approximation.exact(q) for n, q in trace.propositions.items()})
    entries = {}
    for name, approx in trace.propositions.items():
        entries[name] = {"exact": format_queue(approx.under)} if approx.is_exact else approx.to_dict()
    document = {"propositions": entries}
    if trace.horizon is not None:
        document = {"horizon": format_rational(trace.horizon), **document}
    return json.dumps(document, indent=2, ensure_ascii=False)


async def read_trace(path: str, strict: bool = False) -> Trace:
    """Load a trace document through the configured storage backend."""
    content = await get_storage().read(path)
    return load_trace(content, strict=strict)


async def write_trace(path: str, trace: Trace | ExactTrace) -> None:
    await get_storage().write(path, dump_trace(trace))
    logger.info(f"Saved trace to {path}")


# =============================================================================
# PREPROCESSING
# =============================================================================

def _as_trace(trace: Trace | ExactTrace) -> Trace:
    if isinstance(trace, ExactTrace):
        return Trace({n: Approximation.exact(q) for n, q in trace.propositions.items()})
    return trace


def _unknown_tail(approx: Approximation, b: Fraction) -> Approximation:
    tail = IntervalQueue((Interval(b, False, INF, False),))
    return Approximation(difference(approx.under, tail), union_queue(approx.over, tail))


def apply_horizon(trace: Trace | ExactTrace, b) -> Trace:
    """Make every proposition unknown on (b, inf)."""
    b = Fraction(b)
    if b < 0:
        raise ValueError(f"horizon must be >= 0, got {b}")
    trace = _as_trace(trace)
    horizon = b if trace.horizon is None else min(trace.horizon, b)
    propositions = {n: _unknown_tail(a, b) for n, a in trace.propositions.items()}
    logger.info(f"Applied horizon {format_rational(b)} to {len(propositions)} propositions")
    return Trace(propositions, horizon)


def truncate(trace: Trace | ExactTrace, name: str, b) -> Trace:
    """Make one proposition unknown on (b, inf), leaving the others and the horizon alone."""
    b = Fraction(b)
    if b < 0:
        raise ValueError(f"truncation point must be >= 0, got {b}")
    trace = _as_trace(trace)
    propositions = dict(trace.propositions)
    propositions[name] = _unknown_tail(trace[name], b)
    return Trace(propositions, trace.horizon)


def approximate_from_exact(trace: ExactTrace) -> Trace:
    """Interiors as under-approximations, closures as over-approximations."""
    propositions = {
        name: Approximation(
            construct(interior(i) for i in queue),
            construct(closure(i) for i in queue),
        )
        for name, queue in trace.propositions.items()
    }
    return Trace(propositions)


def as_exact(trace: Trace) -> ExactTrace | None:
    if not all(a.is_exact for a in trace.propositions.values()):
        return None
    return ExactTrace({n: a.under for n, a in trace.propositions.items()})
