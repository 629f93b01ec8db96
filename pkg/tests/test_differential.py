"""Engine against the brute-force oracle on random traces and formulas."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monitor.engine import approximate, evaluate
from monitor.formula import format_formula
from monitor.oracle import critical_partition, oracle_truth_set
from monitor.queue import contains
from monitor.state import Approximation
from monitor.trace import ExactTrace, Trace
from tests.strategies import exact_cases, perturbed_traces, query_times

pytestmark = pytest.mark.slow


def _exact(trace: ExactTrace) -> Trace:
    return Trace({name: Approximation.exact(q) for name, q in trace.propositions.items()})


def _horizon(trace: ExactTrace):
    return max(trace.endpoints(), default=Fraction(0))


@settings(max_examples=500)
@given(exact_cases())
def test_exact_traces_give_exact_truth_sets(case):
    trace, f = case
    horizon = _horizon(trace)
    for node, approx in evaluate(f, _exact(trace)).items():
        assert approx.under == approx.over, format_formula(node)
        assert approx.under == oracle_truth_set(trace, node, horizon), format_formula(node)


@settings(max_examples=300)
@given(st.data())
def test_verdicts_are_sound(data):
    exact, f = data.draw(exact_cases())
    trace = data.draw(perturbed_traces(exact))
    times = data.draw(st.lists(query_times(48), min_size=20, max_size=20))

    approx = approximate(f, trace)
    truth = oracle_truth_set(exact, f, _horizon(exact))
    assert approx.is_consistent
    for t in times:
        if contains(approx.under, t):
            assert contains(truth, t), t
        if not contains(approx.over, t):
            assert not contains(truth, t), t


@given(exact_cases(depth=3))
def test_query_grid_reaches_inside_every_open_region(case):
    trace, f = case
    points = critical_partition(trace, f, _horizon(trace)).points
    for a, b in zip(points, points[1:]):
        # midpoints of adjacent grid breakpoints are on the query grid
        assert ((a + b) / 2 * 16).denominator == 1
