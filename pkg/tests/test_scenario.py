"""Two exact signals, approximated by interiors and closures, against a set of golden rows."""

import json
from pathlib import Path

import pytest

from monitor.engine import ReportRow, evaluate, report, unknown_region
from monitor.formula import parse
from monitor.literals import parse_queue as Q
from monitor.oracle import oracle_truth_set
from monitor.queue import is_subset
from monitor.trace import ExactTrace, approximate_from_exact, load_trace

GOLDEN = Path(__file__).parent / "golden"
EXPECTED = json.loads((GOLDEN / "scenario_report.json").read_text(encoding="utf-8"))

VALIDITY = "F[0,2] F[0,1] g2 | !F[0,2] F[0,1] g2"
CONTRADICTION = "F[0,2] F[0,1] g2 & !F[0,2] F[0,1] g2"


@pytest.fixture(scope="module")
def trace():
    return load_trace((GOLDEN / "scenario_trace.json").read_text(encoding="utf-8"), strict=True)


@pytest.fixture(scope="module")
def exact():
    return ExactTrace({"g1": Q("{[2,5], [8,9]}"), "g2": Q("{[4,6]}")})


class TestScenario:
    def test_golden_trace_is_the_interior_closure_pair(self, trace, exact):
        assert trace == approximate_from_exact(exact)

    @pytest.mark.parametrize("formula", list(EXPECTED))
    def test_root_rows(self, trace, formula):
        assert report(parse(formula), trace).root.to_dict() == EXPECTED[formula]

    @pytest.mark.parametrize("formula", list(EXPECTED))
    def test_rows_parse_back(self, trace, formula):
        assert ReportRow.from_dict(EXPECTED[formula]) == report(parse(formula), trace).root

    def test_every_gap_is_zero(self, trace):
        for formula in EXPECTED:
            rows = report(parse(formula), trace).rows
            assert all(row.delta == 0 for row in rows), formula

    def test_unknown_points_of_the_validity(self, trace):
        # the rules do not see that φ | !φ always holds
        assert unknown_region(parse(VALIDITY), trace) == Q("{[1,1], [6,6]}")

    def test_validity_and_contradiction_share_their_unknown_points(self, trace):
        contradiction = list(evaluate(parse(CONTRADICTION), trace).values())[-1]
        assert contradiction.under == Q("{}")
        assert unknown_region(parse(VALIDITY), trace) == contradiction.over

    @pytest.mark.parametrize("formula, truth", [
        ("F[0,1] g2", "{[3,6]}"),
        ("F[0,2] F[0,1] g2", "{[1,6]}"),
        (VALIDITY, "{[0,inf)}"),
        (CONTRADICTION, "{}"),
    ])
    def test_approximations_bracket_the_oracle(self, trace, exact, formula, truth):
        root = report(parse(formula), trace).root.approximation
        assert oracle_truth_set(exact, parse(formula), 9) == Q(truth)
        assert is_subset(root.under, Q(truth))
        assert is_subset(Q(truth), root.over)


# g1 is false at the isolated points 3 and 4; nested untils over it widen the unknown region
AMPLIFICATION = json.loads((GOLDEN / "amplification_report.json").read_text(encoding="utf-8"))
NESTED = "g1 U[0,3] (g1 U[0,1] (g1 U[0,2] g2))"


@pytest.fixture(scope="module")
def holed_trace():
    return load_trace((GOLDEN / "amplification_trace.json").read_text(encoding="utf-8"), strict=True)


@pytest.fixture(scope="module")
def holed_exact():
    return ExactTrace({"g1": Q("{[0,3), (3,4), (4,7]}"), "g2": Q("{[6,8]}")})


class TestGapAmplification:
    def test_golden_trace_is_the_interior_closure_pair(self, holed_trace, holed_exact):
        assert holed_trace == approximate_from_exact(holed_exact)

    def test_rows(self, holed_trace):
        assert report(parse(NESTED), holed_trace).to_list() == AMPLIFICATION["rows"]

    def test_gap_grows_with_each_until(self, holed_trace):
        deltas = [row.delta for row in report(parse(NESTED), holed_trace).rows]
        assert deltas == [0, 0, 0, 1, 3]

    @pytest.mark.parametrize("key, formula", [
        ("validity", f"{NESTED} | !({NESTED})"),
        ("contradiction", f"{NESTED} & !({NESTED})"),
    ])
    def test_boolean_closure_keeps_the_gap(self, holed_trace, key, formula):
        root = report(parse(formula), holed_trace).root
        assert root.to_dict() == AMPLIFICATION[key]
        assert root.delta == report(parse(NESTED), holed_trace).root.delta

    @pytest.mark.parametrize("formula, truth", [
        ("g1 U[0,2] g2", "{[4,8]}"),
        ("g1 U[0,1] (g1 U[0,2] g2)", "{[3,8]}"),
        (NESTED, "{[0,8]}"),
    ])
    def test_approximations_bracket_the_oracle(self, holed_trace, holed_exact, formula, truth):
        root = report(parse(formula), holed_trace).root.approximation
        assert oracle_truth_set(holed_exact, parse(formula), 8) == Q(truth)
        assert is_subset(root.under, Q(truth))
        assert is_subset(Q(truth), root.over)
