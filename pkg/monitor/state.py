"""Value types shared by the trace loader and the engine."""

from dataclasses import dataclass
from enum import Enum

from monitor.literals import format_queue
from monitor.queue import IntervalQueue, difference, is_subset, measure


class Verdict(Enum):
    SATISFIED = "SATISFIED"
    VIOLATED = "VIOLATED"
    UNKNOWN = "UNKNOWN"

    @property
    def exit_code(self) -> int:
        return {"SATISFIED": 0, "VIOLATED": 1, "UNKNOWN": 2}[self.value]


@dataclass(frozen=True)
class Approximation:
    """Under- and over-approximating queues of one truth set."""
    under: IntervalQueue
    over: IntervalQueue

    @classmethod
    def exact(cls, queue: IntervalQueue) -> "Approximation":
        return cls(queue, queue)

    @property
    def is_exact(self) -> bool:
        return self.under == self.over

    @property
    def is_consistent(self) -> bool:
        """∪under ⊆ ∪over."""
        return is_subset(self.under, self.over)

    @property
    def unknown(self) -> IntervalQueue:
        return difference(self.over, self.under)

    @property
    def gap(self):
        """Lebesgue measure of the unknown region."""
        return measure(self.unknown)

    def to_dict(self) -> dict:
        return {"under": format_queue(self.under), "over": format_queue(self.over)}
