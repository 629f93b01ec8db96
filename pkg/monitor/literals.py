"""Text syntax for rationals, intervals and interval queues.

    rational   3   7/2   1.25          (decimals are converted exactly)
    interval   [a,b]  (a,b)  [a,b)  (a,b]   with b possibly `inf`
    queue      {[0,1), (1,2]}          (empty queue: {})
"""

from fractions import Fraction

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from monitor.errors import IntervalSyntaxError
from monitor.interval import INF, Interval
from monitor.queue import IntervalQueue, construct

LITERAL_GRAMMAR = r"""
    queue: "{" [interval ("," interval)*] "}"
    interval: LEFT RATIONAL "," upper RIGHT
    ?upper: RATIONAL | INF
    rational: RATIONAL

    LEFT: "[" | "("
    RIGHT: "]" | ")"
    INF: "inf"
    RATIONAL: /\d+\/\d+|\d+(\.\d+)?/

    %import common.WS
    %ignore WS
"""

_parser = Lark(LITERAL_GRAMMAR, parser="lalr", start=["queue", "interval", "rational"])


def rational_from_token(text: str) -> Fraction:
    """Exact value of a RATIONAL token (shared with the formula grammar)."""
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise IntervalSyntaxError(f"zero denominator in {text!r}")


def interval_from_tokens(left: str, lo: str, hi: str, right: str) -> Interval:
    """Build an Interval from bracket and endpoint tokens (shared with the formula grammar)."""
    upper = INF if hi == "inf" else rational_from_token(hi)
    try:
        return Interval(rational_from_token(lo), left == "[", upper, right == "]")
    except ValueError as e:
        raise IntervalSyntaxError(f"invalid interval {left}{lo},{hi}{right}: {e}")


@v_args(inline=True)
class _LiteralTransformer(Transformer):
    def rational(self, token):
        return rational_from_token(token)

    def interval(self, left, lo, hi, right):
        return interval_from_tokens(left, lo, hi, right)

    def queue(self, *items):
        return [item for item in items if item is not None]


def _parse(text: str, start: str):
    try:
        tree = _parser.parse(text, start=start)
        return _LiteralTransformer().transform(tree)
    except UnexpectedInput as e:
        raise IntervalSyntaxError(f"malformed {start} literal {text!r}", getattr(e, "pos_in_stream", None))
    except VisitError as e:
        if isinstance(e.orig_exc, IntervalSyntaxError):
            raise e.orig_exc
        raise


def parse_rational(text: str) -> Fraction:
    return _parse(text, "rational")


def parse_interval(text: str) -> Interval:
    return _parse(text, "interval")


def parse_queue(text: str, strict: bool = False) -> IntervalQueue:
    """Parse a queue literal, normalising through `construct`.

    With `strict`, input that is not already canonical raises instead.
    """
    items = _parse(text, "queue")
    queue = construct(items)
    if strict and list(queue.items) != items:
        raise IntervalSyntaxError(f"queue literal {text!r} is not canonical (expected {format_queue(queue)})")
    return queue


# =============================================================================
# FORMATTING
# =============================================================================

def format_rational(value) -> str:
    if value == INF:
        return "inf"
    return str(Fraction(value))


def format_interval(i: Interval) -> str:
    left = "[" if i.lo_closed else "("
    right = "]" if i.hi_closed else ")"
    return f"{left}{format_rational(i.lo)},{format_rational(i.hi)}{right}"


def format_queue(q: IntervalQueue) -> str:
    return "{" + ", ".join(format_interval(i) for i in q.items) + "}"
