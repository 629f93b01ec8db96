"""Inductive construction of under/over approximations for MITL formulas.

For every subformula, bottom up:

    Q(true)     = {[0,inf)} for both sides
    Q(g)        = the trace's under/over queues for g
    Q-(!φ)      = ~Q+(φ)          Q+(!φ) = ~Q-(φ)
    Q±(φ & ψ)   = Q±(φ) ⊓ Q±(ψ)
    Q±(φ U_I ψ) = Q±(φ) ⊡_I Q±(ψ)

The rules are applied uniformly; no formula is recognised as a tautology or
contradiction, so uncertainty in the atoms propagates to the root.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from monitor.errors import UndeclaredAtomError
from monitor.formula import And, Atom, Formula, Not, Top, Until, atoms, desugar, format_formula, subformulas
from monitor.interval import INF, Endpoint, Interval
from monitor.literals import format_queue, format_rational, parse_queue, parse_rational
from monitor.queue import FULL, IntervalQueue, complement, conjoin, contains, measure, restrict, until_op
from monitor.state import Approximation, Verdict
from monitor.trace import Trace

logger = logging.getLogger(__name__)

TOP = Approximation.exact(FULL)


def _step(node: Formula, done: dict[Formula, Approximation], trace: Trace) -> Approximation:
    match node:
        case Top():
            return TOP
        case Atom(name):
            return trace[name]
        case Not(child):
            inner = done[child]
            return Approximation(complement(inner.over), complement(inner.under))
        case And(left, right):
            a, b = done[left], done[right]
            return Approximation(conjoin(a.under, b.under), conjoin(a.over, b.over))
        case Until(left, right, timing):
            a, b = done[left], done[right]
            return Approximation(until_op(a.under, b.under, timing), until_op(a.over, b.over, timing))
    raise TypeError(f"not a primitive formula: {node!r}")


def evaluate(formula: Formula, trace: Trace) -> dict[Formula, Approximation]:
    """Approximations for every distinct subformula of the desugared formula.

    Keys are the desugared subformulas in postorder; the root is the last key.
    """
    formula = desugar(formula)
    missing = sorted(atoms(formula) - trace.propositions.keys())
    if missing:
        raise UndeclaredAtomError(missing[0])

    done: dict[Formula, Approximation] = {}
    for node in subformulas(formula):
        done[node] = _step(node, done, trace)
        logger.debug(f"{format_formula(node)}: under={done[node].under} over={done[node].over}")
    logger.info(f"Evaluated {len(done)} subformulas of {format_formula(formula)}")
    return done


def approximate(formula: Formula, trace: Trace) -> Approximation:
    """Approximation of the formula itself."""
    return evaluate(formula, trace)[desugar(formula)]


def verdict(formula: Formula, trace: Trace, time) -> Verdict:
    time = Fraction(time)
    if time < 0:
        raise ValueError(f"time must be >= 0, got {time}")
    approx = approximate(formula, trace)
    if contains(approx.under, time):
        return Verdict.SATISFIED
    if not contains(approx.over, time):
        return Verdict.VIOLATED
    return Verdict.UNKNOWN


def unknown_region(formula: Formula, trace: Trace) -> IntervalQueue:
    """Times at which `verdict` is UNKNOWN."""
    return approximate(formula, trace).unknown


# =============================================================================
# GAP AND REPORT
# =============================================================================

@dataclass(frozen=True)
class Gap:
    delta: Endpoint
    # Measure of the unknown region inside [0, horizon]; only set when delta is infinite.
    bounded: Endpoint | None = None


def _gap(approx: Approximation, horizon: Fraction | None) -> Gap:
    delta = approx.gap
    if delta == INF and horizon is not None:
        return Gap(delta, measure(restrict(approx.unknown, Interval.closed(0, horizon))))
    return Gap(delta)


def gap(formula: Formula, trace: Trace) -> dict[Formula, Gap]:
    return {node: _gap(approx, trace.horizon) for node, approx in evaluate(formula, trace).items()}


def _format_delta(value: Endpoint | None) -> str | None:
    return None if value is None else format_rational(value)


def _parse_delta(text: str | None) -> Endpoint | None:
    if text is None:
        return None
    return INF if text == "inf" else parse_rational(text)


@dataclass(frozen=True)
class ReportRow:
    formula: str
    approximation: Approximation
    delta: Endpoint
    delta_bounded: Endpoint | None = None

    def to_dict(self) -> dict:
        return {
            "formula": self.formula,
            "under": format_queue(self.approximation.under),
            "over": format_queue(self.approximation.over),
            "delta": _format_delta(self.delta),
            "delta_bounded": _format_delta(self.delta_bounded),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReportRow":
        return cls(
            data["formula"],
            Approximation(parse_queue(data["under"]), parse_queue(data["over"])),
            _parse_delta(data["delta"]),
            _parse_delta(data.get("delta_bounded")),
        )


@dataclass(frozen=True)
class Report:
    """One row per distinct subformula, in postorder; the formula itself is last."""
    rows: tuple[ReportRow, ...]

    @property
    def root(self) -> ReportRow:
        return self.rows[-1]

    def to_list(self) -> list[dict]:
        return [row.to_dict() for row in self.rows]

    @classmethod
    def from_list(cls, data: list[dict]) -> "Report":
        return cls(tuple(ReportRow.from_dict(row) for row in data))

    def to_text(self, queues: bool = True, deltas: bool = True) -> str:
        """One header line per row, optionally followed by its Q- and Q+ lines."""
        lines = []
        for row in self.rows:
            header = row.formula
            if deltas:
                header += f"    Δ = {_format_delta(row.delta)}"
                if row.delta_bounded is not None:
                    header += f" (within horizon: {_format_delta(row.delta_bounded)})"
            lines.append(header)
            if queues:
                lines.append(f"    Q-: {format_queue(row.approximation.under)}")
                lines.append(f"    Q+: {format_queue(row.approximation.over)}")
        return "\n".join(lines)


def report(formula: Formula, trace: Trace) -> Report:
    rows = []
    for node, approx in evaluate(formula, trace).items():
        g = _gap(approx, trace.horizon)
        rows.append(ReportRow(format_formula(node), approx, g.delta, g.bounded))
    return Report(tuple(rows))
