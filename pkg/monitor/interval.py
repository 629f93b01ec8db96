"""Exact interval arithmetic over the non-negative extended rationals.

Finite endpoints are always `Fraction`; the only non-rational endpoint values are
`INF` (and `-INF` inside `ExtInterval`). Empty results are `None`, never an
`Interval`.

Endpoint order uses (value, tag) keys so open/closed flags compare without case
analysis: a lower bound is keyed (lo, 0) when closed and (lo, 1) when open, an
upper bound (hi, 0) when closed and (hi, -1) when open. An interval is non-empty
iff its lower key does not exceed its upper key.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

INF = math.inf

Endpoint = Fraction | float
Key = tuple[Endpoint, int]


def _to_endpoint(value, allow: tuple[float, ...] = ()) -> Endpoint:
    if isinstance(value, float) and value in allow:
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"endpoint must be an exact rational, got {value!r}")


def _lower_key(value: Endpoint, closed: bool) -> Key:
    return value, 0 if closed else 1


def _upper_key(value: Endpoint, closed: bool) -> Key:
    return value, 0 if closed else -1


@dataclass(frozen=True)
class Interval:
    """Non-empty connected subset of [0, inf) with rational or infinite endpoints."""
    lo: Fraction
    lo_closed: bool
    hi: Endpoint
    hi_closed: bool

    def __post_init__(self):
        object.__setattr__(self, "lo", _to_endpoint(self.lo))
        object.__setattr__(self, "hi", _to_endpoint(self.hi, allow=(INF,)))
        if self.lo < 0:
            raise ValueError(f"lower endpoint must be >= 0, got {self.lo}")
        if self.hi == INF and self.hi_closed:
            raise ValueError("an interval cannot be closed at infinity")
        if self.lower_key > self.upper_key:
            raise ValueError(f"empty interval: {self}")

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, True, hi, hi != INF)

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, False, hi, False)

    @classmethod
    def point(cls, value) -> "Interval":
        return cls(value, True, value, True)

    @classmethod
    def everything(cls) -> "Interval":
        """[0, inf)"""
        return cls(0, True, INF, False)

    @property
    def lower_key(self) -> Key:
        return _lower_key(self.lo, self.lo_closed)

    @property
    def upper_key(self) -> Key:
        return _upper_key(self.hi, self.hi_closed)

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return self.hi != INF

    @property
    def length(self) -> Endpoint:
        return self.hi - self.lo

    def contains(self, t) -> bool:
        return self.lower_key <= (t, 0) <= self.upper_key

    def __contains__(self, t) -> bool:
        return self.contains(t)

    def shift(self, d) -> "Interval":
        """Translate by a non-negative rational."""
        return Interval(self.lo + d, self.lo_closed, self.hi + d, self.hi_closed)

    def __str__(self) -> str:
        from monitor.literals import format_interval
        return format_interval(self)


@dataclass(frozen=True)
class ExtInterval:
    """Minkowski-difference intermediate; the lower endpoint may be -inf."""
    lo: Endpoint
    lo_closed: bool
    hi: Endpoint
    hi_closed: bool

    @property
    def lower_key(self) -> Key:
        return _lower_key(self.lo, self.lo_closed)

    @property
    def upper_key(self) -> Key:
        return _upper_key(self.hi, self.hi_closed)

    def clip(self, a: Interval) -> Interval | None:
        """Intersection with a subset of [0, inf): the only way back into `Interval`."""
        return _build(max(self.lower_key, a.lower_key), min(self.upper_key, a.upper_key))


def _build(lower: Key, upper: Key) -> Interval | None:
    if lower > upper:
        return None
    return Interval(lower[0], lower[1] == 0, upper[0], upper[1] == 0)


# =============================================================================
# SET OPERATIONS
# =============================================================================

def intersect(a: Interval, b: Interval) -> Interval | None:
    return _build(max(a.lower_key, b.lower_key), min(a.upper_key, b.upper_key))


def closure(a: Interval) -> Interval:
    return Interval(a.lo, True, a.hi, a.hi != INF)


def interior(a: Interval) -> Interval | None:
    """Interior relative to the real line, so 0 is never kept."""
    if a.is_singleton:
        return None
    return Interval(a.lo, False, a.hi, False)


def separated(a: Interval, b: Interval) -> bool:
    """A ∩ Cl(B) = ∅ and Cl(A) ∩ B = ∅."""
    return intersect(a, closure(b)) is None and intersect(closure(a), b) is None


def union_if_connected(a: Interval, b: Interval) -> Interval | None:
    if separated(a, b):
        return None
    return _build(min(a.lower_key, b.lower_key), max(a.upper_key, b.upper_key))


# =============================================================================
# ORDER AND ARROWS
# =============================================================================

def right_of(a: Interval | None) -> Interval | None:
    """Everything in [0, inf) strictly to the right of `a`."""
    if a is None:
        return Interval.everything()
    if not a.is_bounded:
        return None
    return Interval(a.hi, not a.hi_closed, INF, False)


def left_of(a: Interval | None) -> Interval | None:
    """Everything in [0, inf) strictly to the left of `a`."""
    if a is None:
        return Interval.everything()
    return _build(_lower_key(Fraction(0), True), _upper_key(a.lo, not a.lo_closed))


def precedes(a: Interval, b: Interval) -> bool:
    """Every point of `a` is strictly less than every point of `b`."""
    if a.hi != b.lo:
        return a.hi < b.lo
    return not (a.hi_closed and b.lo_closed)


def minkowski_diff(b: Interval, i: Interval) -> ExtInterval:
    """B ⊖ I = {β − ι | β ∈ B, ι ∈ I}."""
    if i.is_bounded:
        lo, lo_closed = b.lo - i.hi, b.lo_closed and i.hi_closed
    else:
        lo, lo_closed = -INF, False
    if b.is_bounded:
        hi, hi_closed = b.hi - i.lo, b.hi_closed and i.lo_closed
    else:
        hi, hi_closed = INF, False
    return ExtInterval(lo, lo_closed, hi, hi_closed)
