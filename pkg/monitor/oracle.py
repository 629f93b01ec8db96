"""Brute-force MITL semantics over exact piecewise-constant traces.

The time axis is cut at a finite set of breakpoints p0 = 0 < p1 < ... < pm into
regions: each point {pi}, each open gap (pi, pi+1), and the tail (pm, inf).
Every subformula's truth value is constant on every region, because the
breakpoints of a temporal subformula are differences of its children's
breakpoints and its timing endpoints. Each subformula therefore gets one truth
value per region, computed from a single representative time by scanning the
regions ahead of it.

This module deliberately avoids the queue operators of `monitor.queue` so that
agreement with the engine is a meaningful check.
"""

import logging
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from config.settings import ORACLE_SAMPLE_LIMIT
from monitor.errors import HorizonError, OracleLimitError
from monitor.formula import (
    Always, And, Atom, Bottom, Eventually, Formula, Implies, Not, Or, Top, Until,
    atoms, children, format_formula, timing_depth,
)
from monitor.interval import INF, Interval
from monitor.literals import format_rational
from monitor.queue import IntervalQueue, contains
from monitor.trace import ExactTrace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CriticalPartition:
    """Sorted breakpoints, always starting at 0."""
    points: tuple[Fraction, ...]

    def __post_init__(self):
        points = tuple(sorted({Fraction(0), *self.points}))
        if points[0] < 0:
            raise ValueError("breakpoints must be >= 0")
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        """Number of regions."""
        return 2 * len(self.points)

    def locate(self, t) -> int:
        i = bisect_right(self.points, t) - 1
        return 2 * i if self.points[i] == t else 2 * i + 1

    def region(self, k: int) -> Interval:
        i, is_gap = divmod(k, 2)
        if not is_gap:
            return Interval.point(self.points[i])
        upper = self.points[i + 1] if i + 1 < len(self.points) else INF
        return Interval.open(self.points[i], upper)

    def representative(self, k: int) -> Fraction:
        i, is_gap = divmod(k, 2)
        if not is_gap:
            return self.points[i]
        if i + 1 < len(self.points):
            return (self.points[i] + self.points[i + 1]) / 2
        return self.points[i] + 1

    def refine(self, extra) -> "CriticalPartition":
        return CriticalPartition(self.points + tuple(Fraction(p) for p in extra))


def _breakpoints(f: Formula, trace: ExactTrace) -> set[Fraction]:
    if isinstance(f, Atom):
        return trace[f.name].endpoints()
    points = set().union(*(_breakpoints(c, trace) for c in children(f)))
    if isinstance(f, (Until, Eventually, Always)):
        offsets = [e for e in (f.timing.lo, f.timing.hi) if e != INF and e != 0]
        points |= {p - e for p in points for e in offsets if p >= e}
        if len(points) > ORACLE_SAMPLE_LIMIT:
            raise OracleLimitError(
                f"critical partition of {format_formula(f)} exceeds {ORACLE_SAMPLE_LIMIT} breakpoints"
            )
    return points


def critical_partition(trace: ExactTrace, formula: Formula, horizon, extra=()) -> CriticalPartition:
    """Breakpoints sufficient for every subformula of `formula`, plus `horizon` and `extra`."""
    horizon = Fraction(horizon)
    relevant = set().union(*(trace[name].endpoints() for name in atoms(formula)))
    if relevant and max(relevant) > horizon:
        raise HorizonError(
            f"horizon {horizon} is before the last atom endpoint {max(relevant)}; "
            f"truth beyond the horizon cannot be certified"
        )
    points = _breakpoints(formula, trace) | {horizon} | {Fraction(p) for p in extra}
    logger.debug(
        f"Critical partition for {format_formula(formula)}: {len(points)} breakpoints, "
        f"timing depth {format_rational(timing_depth(formula))}"
    )
    return CriticalPartition(tuple(points))


class _RegionEvaluator:
    """Truth value of each subformula on each region of a partition."""

    def __init__(self, trace: ExactTrace, partition: CriticalPartition):
        self.trace = trace
        self.partition = partition
        self.regions = [partition.region(k) for k in range(len(partition))]
        self.samples = [partition.representative(k) for k in range(len(partition))]
        self.tables: dict[Formula, list[bool]] = {}

    def table(self, f: Formula) -> list[bool]:
        if f not in self.tables:
            self.tables[f] = self._compute(f)
        return self.tables[f]

    def holds(self, f: Formula, t) -> bool:
        return self.table(f)[self.partition.locate(t)]

    def _compute(self, f: Formula) -> list[bool]:
        regions = range(len(self.partition))
        match f:
            case Top():
                return [True for _ in regions]
            case Bottom():
                return [False for _ in regions]
            case Atom(name):
                queue = self.trace[name]
                return [contains(queue, self.samples[k]) for k in regions]
            case Not(child):
                return [not v for v in self.table(child)]
            case And(left, right):
                return [a and b for a, b in zip(self.table(left), self.table(right))]
            case Or(left, right):
                return [a or b for a, b in zip(self.table(left), self.table(right))]
            case Implies(left, right):
                return [not a or b for a, b in zip(self.table(left), self.table(right))]
            case Until(left, right, timing):
                hold, goal = self.table(left), self.table(right)
                return [self._until(k, hold, goal, timing) for k in regions]
            case Eventually(timing, child):
                goal = self.table(child)
                return [self._until(k, None, goal, timing) for k in regions]
            case Always(timing, child):
                body = self.table(child)
                return [self._always(k, body, timing) for k in regions]
        raise TypeError(f"not a formula: {f!r}")

    def _until(self, k: int, hold: list[bool] | None, goal: list[bool], timing: Interval) -> bool:
        """∃ t2 ∈ I: goal at t+t2 and hold throughout (t, t+t2), for t in region k.

        `hold` of None means the hold condition is trivially true.
        """
        t = self.samples[k]
        window = timing.shift(t)
        lower, upper = window.lower_key, window.upper_key
        # hold covers (t, start of region j)
        clear = True
        for j in range(k, len(self.regions)):
            region = self.regions[j]
            if region.lower_key > upper:
                break
            hold_j = hold is None or hold[j]
            meets = max(region.lower_key, lower) <= min(region.upper_key, upper)
            if meets and goal[j]:
                if j % 2 == 0:
                    # the witness is the point itself
                    if clear:
                        return True
                elif j == k and lower == (t, 0):
                    # t2 = 0 is allowed and (t, t) is empty
                    return True
                elif clear and hold_j:
                    return True
            if j > k or j % 2 == 1:
                clear = clear and hold_j
            if not clear:
                break
        return False

    def _always(self, k: int, body: list[bool], timing: Interval) -> bool:
        """body holds at every t + t2 with t2 ∈ I, for t in region k."""
        window = timing.shift(self.samples[k])
        lower, upper = window.lower_key, window.upper_key
        for j in range(k, len(self.regions)):
            region = self.regions[j]
            if region.lower_key > upper:
                break
            if max(region.lower_key, lower) <= min(region.upper_key, upper) and not body[j]:
                return False
        return True

    def truth_set(self, f: Formula) -> IntervalQueue:
        """Maximal runs of true regions, as queue items."""
        table = self.table(f)
        items = []
        start = None
        for k, value in enumerate(table):
            if value and start is None:
                start = self.regions[k]
            if start is not None and (not value or k == len(table) - 1):
                end = self.regions[k if value else k - 1]
                items.append(Interval(start.lo, start.lo_closed, end.hi, end.hi_closed))
                start = None
        return IntervalQueue(tuple(items))


def oracle_holds(trace: ExactTrace, formula: Formula, time, horizon,
                 partition: CriticalPartition | None = None) -> bool:
    """Whether the formula holds at `time`, by direct semantic evaluation."""
    time = Fraction(time)
    if time < 0:
        raise ValueError(f"time must be >= 0, got {time}")
    partition = partition or critical_partition(trace, formula, horizon)
    return _RegionEvaluator(trace, partition).holds(formula, time)


def oracle_truth_set(trace: ExactTrace, formula: Formula, horizon,
                     partition: CriticalPartition | None = None) -> IntervalQueue:
    """Truth set of the formula, assembled from per-region truth values.

    The horizon must cover every endpoint of the atoms the formula uses; the
    region past the last breakpoint is then constant, so the result is the whole
    truth set and not just its restriction to [0, horizon].
    """
    partition = partition or critical_partition(trace, formula, horizon)
    result = _RegionEvaluator(trace, partition).truth_set(formula)
    logger.info(f"Oracle truth set of {format_formula(formula)}: {result} ({len(partition)} regions)")
    return result
