"""MITL formulas: syntax tree, parser, printer and desugaring.

Concrete syntax, tightest binding first:

    true  false  name  ( ... )
    !φ    F<I> φ    G<I> φ          unary
    φ U<I> ψ                        non-associative
    φ & ψ                           left-associative
    φ | ψ                           left-associative
    φ -> ψ                          right-associative

`<I>` is an interval literal such as `[1,2]` or `(0,inf)`; when omitted it is
`(0,inf)`. Timing intervals must be non-degenerate.
"""

from dataclasses import dataclass

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from monitor.errors import DegenerateIntervalError, FormulaSyntaxError, MonitorError
from monitor.interval import INF, Interval
from monitor.literals import format_interval, interval_from_tokens, rational_from_token

DEFAULT_TIMING = Interval.open(0, INF)


class Formula:
    """Base of every syntax tree node."""

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula
    timing: Interval = DEFAULT_TIMING

    def __post_init__(self):
        _check_timing(self.timing)


@dataclass(frozen=True)
class Eventually(Formula):
    timing: Interval
    child: Formula

    def __post_init__(self):
        _check_timing(self.timing)


@dataclass(frozen=True)
class Always(Formula):
    timing: Interval
    child: Formula

    def __post_init__(self):
        _check_timing(self.timing)


PRIMITIVE_NODES = (Top, Atom, Not, And, Until)

# Postorder list of distinct subformulas, children before parents.
SubformulaIndex = list[Formula]


def _check_timing(timing: Interval) -> None:
    if timing.is_singleton:
        raise DegenerateIntervalError(f"timing interval must be non-degenerate, got {format_interval(timing)}")


# =============================================================================
# PARSER
# =============================================================================

FORMULA_GRAMMAR = r"""
    ?start: implication

    ?implication: disjunction
        | disjunction "->" implication      -> implies

    ?disjunction: conjunction
        | disjunction "|" conjunction       -> or_

    ?conjunction: until
        | conjunction "&" until             -> and_

    ?until: unary
        | unary "U" [timing] unary          -> until

    ?unary: primary
        | "!" unary                         -> not_
        | "F" [timing] unary                -> eventually
        | "G" [timing] unary                -> always

    ?primary: "true"                        -> top
        | "false"                           -> bottom
        | NAME                              -> atom
        | "(" implication ")"

    timing: "[" RATIONAL "," upper "]"      -> timing_cc
        | "[" RATIONAL "," upper ")"        -> timing_co
        | "(" RATIONAL "," upper "]"        -> timing_oc
        | "(" RATIONAL "," upper ")"        -> timing_oo

    ?upper: RATIONAL | INF

    INF: "inf"
    NAME: /[A-Za-z_][A-Za-z0-9_]*/
    RATIONAL: /\d+\/\d+|\d+(\.\d+)?/

    %import common.WS
    %ignore WS
"""

# Lexed as keywords, so no proposition can use these names
KEYWORDS = frozenset({"true", "false", "F", "G", "U", "inf"})

_parser = Lark(FORMULA_GRAMMAR, parser="lalr", lexer="basic")


def _timing(interval: Interval | None) -> Interval:
    return DEFAULT_TIMING if interval is None else interval


def _timing_literal(left: str, lo: str, hi: str, right: str) -> Interval:
    if hi != "inf" and rational_from_token(lo) >= rational_from_token(hi):
        raise DegenerateIntervalError(f"timing interval {left}{lo},{hi}{right} is degenerate")
    return interval_from_tokens(left, lo, hi, right)


@v_args(inline=True)
class _FormulaBuilder(Transformer):
    def top(self):
        return Top()

    def bottom(self):
        return Bottom()

    def atom(self, name):
        return Atom(str(name))

    def not_(self, child):
        return Not(child)

    def and_(self, left, right):
        return And(left, right)

    def or_(self, left, right):
        return Or(left, right)

    def implies(self, left, right):
        return Implies(left, right)

    def until(self, left, timing, right):
        return Until(left, right, _timing(timing))

    def eventually(self, timing, child):
        return Eventually(_timing(timing), child)

    def always(self, timing, child):
        return Always(_timing(timing), child)

    def timing_cc(self, lo, hi):
        return _timing_literal("[", lo, hi, "]")

    def timing_co(self, lo, hi):
        return _timing_literal("[", lo, hi, ")")

    def timing_oc(self, lo, hi):
        return _timing_literal("(", lo, hi, "]")

    def timing_oo(self, lo, hi):
        return _timing_literal("(", lo, hi, ")")


def parse(text: str) -> Formula:
    """Parse formula text into its (sugared) syntax tree."""
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as e:
        position = getattr(e, "pos_in_stream", None)
        raise FormulaSyntaxError(f"cannot parse formula {text!r}", position)
    try:
        return _FormulaBuilder().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, DegenerateIntervalError):
            raise e.orig_exc
        if isinstance(e.orig_exc, MonitorError):
            raise FormulaSyntaxError(str(e.orig_exc))
        raise


# =============================================================================
# PRINTER
# =============================================================================

# Binding strength, loosest first.
_IMPLIES, _OR, _AND, _UNTIL, _UNARY, _PRIMARY = range(1, 7)


def _level(f: Formula) -> int:
    match f:
        case Implies():
            return _IMPLIES
        case Or():
            return _OR
        case And():
            return _AND
        case Until():
            return _UNTIL
        case Not() | Eventually() | Always():
            return _UNARY
        case _:
            return _PRIMARY


def _wrap(f: Formula, minimum: int) -> str:
    text = format_formula(f)
    return text if _level(f) >= minimum else f"({text})"


def _timing_text(timing: Interval) -> str:
    return "" if timing == DEFAULT_TIMING else format_interval(timing)


def format_formula(f: Formula) -> str:
    """Canonical text with the fewest parentheses that parse back to `f`."""
    match f:
        case Top():
            return "true"
        case Bottom():
            return "false"
        case Atom(name):
            return name
        case Not(child):
            return "!" + _wrap(child, _UNARY)
        case Eventually(timing, child):
            return f"F{_timing_text(timing)} {_wrap(child, _UNARY)}"
        case Always(timing, child):
            return f"G{_timing_text(timing)} {_wrap(child, _UNARY)}"
        case Until(left, right, timing):
            return f"{_wrap(left, _UNARY)} U{_timing_text(timing)} {_wrap(right, _UNARY)}"
        case And(left, right):
            return f"{_wrap(left, _AND)} & {_wrap(right, _UNTIL)}"
        case Or(left, right):
            return f"{_wrap(left, _OR)} | {_wrap(right, _AND)}"
        case Implies(left, right):
            return f"{_wrap(left, _OR)} -> {_wrap(right, _IMPLIES)}"
    raise TypeError(f"not a formula: {f!r}")


# =============================================================================
# TREE OPERATIONS
# =============================================================================

def children(f: Formula) -> tuple[Formula, ...]:
    match f:
        case Not(child) | Eventually(_, child) | Always(_, child):
            return (child,)
        case And(left, right) | Or(left, right) | Implies(left, right) | Until(left, right, _):
            return (left, right)
    return ()


def desugar(f: Formula) -> Formula:
    """Rewrite into the primitive grammar: true, atoms, !, & and U."""
    match f:
        case Top() | Atom():
            return f
        case Bottom():
            return Not(Top())
        case Not(child):
            return Not(desugar(child))
        case And(left, right):
            return And(desugar(left), desugar(right))
        case Or(left, right):
            return Not(And(Not(desugar(left)), Not(desugar(right))))
        case Implies(left, right):
            return desugar(Or(Not(left), right))
        case Until(left, right, timing):
            return Until(desugar(left), desugar(right), timing)
        case Eventually(timing, child):
            return Until(Top(), desugar(child), timing)
        case Always(timing, child):
            return Not(Until(Top(), Not(desugar(child)), timing))
    raise TypeError(f"not a formula: {f!r}")


def is_primitive(f: Formula) -> bool:
    return isinstance(f, PRIMITIVE_NODES) and all(is_primitive(c) for c in children(f))


def atoms(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    return set().union(*(atoms(c) for c in children(f)))


def subformulas(f: Formula) -> SubformulaIndex:
    """Distinct subformulas in postorder; structurally equal subtrees appear once."""
    seen: dict[Formula, None] = {}

    def visit(node: Formula) -> None:
        if node in seen:
            return
        for child in children(node):
            visit(child)
        seen[node] = None

    visit(f)
    return list(seen)


def timing_depth(f: Formula):
    """Largest sum of timing upper bounds along any chain of temporal operators."""
    below = max((timing_depth(c) for c in children(f)), default=0)
    if isinstance(f, (Until, Eventually, Always)):
        return f.timing.hi + below
    return below
