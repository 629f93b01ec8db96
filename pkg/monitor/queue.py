"""Interval queues: finite sets of non-empty, pairwise separated intervals.

Queues are kept canonically sorted by the earlier-than relation, so two queues
with the same union compare equal as tuples.
"""

from bisect import bisect_right
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from monitor.errors import DegenerateIntervalError
from monitor.interval import (
    INF, Endpoint, Interval, closure, intersect, left_of, minkowski_diff,
    precedes, right_of, separated, union_if_connected,
)


@dataclass(frozen=True)
class IntervalQueue:
    items: tuple[Interval, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        for a, b in zip(self.items, self.items[1:]):
            if not (precedes(a, b) and separated(a, b)):
                raise ValueError(f"queue items {a} and {b} are not sorted and separated")

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, t) -> bool:
        return contains(self, t)

    @property
    def is_bounded(self) -> bool:
        return not self.items or self.items[-1].is_bounded

    def endpoints(self) -> set[Fraction]:
        """Every finite endpoint of every item."""
        points = set()
        for item in self.items:
            points.add(item.lo)
            if item.is_bounded:
                points.add(item.hi)
        return points

    def __str__(self) -> str:
        from monitor.literals import format_queue
        return format_queue(self)


EMPTY = IntervalQueue()
FULL = IntervalQueue((Interval.everything(),))


def _sorted(intervals: Iterable[Interval]) -> list[Interval]:
    return sorted(intervals, key=lambda i: (i.lower_key, i.upper_key))


def construct(intervals: Iterable[Interval | None]) -> IntervalQueue:
    """Merge a finite collection of intervals into an interval queue with the same union.

    Sweeps the inputs in lower-endpoint order; an interval that cannot be joined
    to the running merge is separated from everything before it.
    """
    merged: list[Interval] = []
    for item in _sorted(i for i in intervals if i is not None):
        if merged:
            joined = union_if_connected(merged[-1], item)
            if joined is not None:
                merged[-1] = joined
                continue
        merged.append(item)
    return IntervalQueue(tuple(merged))


def complement(q: IntervalQueue) -> IntervalQueue:
    """The queue whose union is [0, inf) minus the union of `q`."""
    if not q.items:
        return FULL
    items = q.items
    pieces = [left_of(items[0])]
    for before, after in zip(items, items[1:]):
        gap, limit = right_of(before), left_of(after)
        if gap is not None and limit is not None:
            pieces.append(intersect(gap, limit))
    pieces.append(right_of(items[-1]))
    return IntervalQueue(tuple(p for p in pieces if p is not None))


def conjoin(a: IntervalQueue, b: IntervalQueue) -> IntervalQueue:
    """Pairwise intersections; the result is separated without merging."""
    pieces = (intersect(i, j) for i in a.items for j in b.items)
    return IntervalQueue(tuple(_sorted(p for p in pieces if p is not None)))


def until_op(h: IntervalQueue, j: IntervalQueue, timing: Interval) -> IntervalQueue:
    """H ⊡_I J: construct(((Cl(H) ∩ J) ⊖ I) ∩ Cl(H)) over every pair (H, J).

    When 0 ∈ I every J is added as well: a witness at offset 0 needs the left
    operand on the empty interval (t, t) only, so t need not lie in any Cl(H).
    """
    if timing.is_singleton:
        raise DegenerateIntervalError(f"until timing interval must be non-degenerate, got {timing}")
    pieces = list(j.items) if timing.contains(0) else []
    for hi in h.items:
        hull = closure(hi)
        for ji in j.items:
            target = intersect(hull, ji)
            if target is not None:
                pieces.append(minkowski_diff(target, timing).clip(hull))
    return construct(pieces)


def contains(q: IntervalQueue, t) -> bool:
    index = bisect_right(q.items, (t, 0), key=lambda i: i.lower_key)
    return index > 0 and q.items[index - 1].contains(t)


def difference(a: IntervalQueue, b: IntervalQueue) -> IntervalQueue:
    return conjoin(a, complement(b))


def measure(q: IntervalQueue) -> Endpoint:
    """Lebesgue measure of the union; INF when any item is unbounded."""
    if not q.is_bounded:
        return INF
    return sum((i.length for i in q.items), Fraction(0))


def union_queue(a: IntervalQueue, b: IntervalQueue) -> IntervalQueue:
    return construct(a.items + b.items)


def restrict(q: IntervalQueue, window: Interval) -> IntervalQueue:
    return conjoin(q, IntervalQueue((window,)))


def is_subset(a: IntervalQueue, b: IntervalQueue) -> bool:
    return not difference(a, b).items
