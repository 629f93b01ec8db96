import asyncio
import io
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monitor.errors import TraceFormatError, UndeclaredAtomError
from monitor.formula import KEYWORDS
from monitor.interval import Interval
from monitor.literals import parse_queue as Q
from monitor.queue import EMPTY, conjoin, contains, difference, is_subset
from monitor.state import Approximation
from monitor.trace import (
    ExactTrace, Trace, apply_horizon, approximate_from_exact, as_exact, dump_trace, load_trace,
    read_trace, truncate, write_trace,
)
from tests.strategies import exact_traces, queues, rationals


def _doc(**propositions) -> str:
    return json.dumps(propositions)


class TestLoadTrace:
    def test_bare_map(self):
        trace = load_trace(_doc(g={"under": "{[0,1)}", "over": "{[0,1]}"}))
        assert trace["g"] == Approximation(Q("{[0,1)}"), Q("{[0,1]}"))
        assert trace.horizon is None
        assert "g" in trace

    def test_wrapped_document_with_exact_entry(self):
        text = json.dumps({"propositions": {"g": {"exact": "{[4,6]}"}}})
        assert load_trace(text)["g"] == Approximation.exact(Q("{[4,6]}"))

    def test_accepts_bytes_and_streams(self):
        text = _doc(g={"exact": "{[1,2]}"})
        assert load_trace(text.encode()) == load_trace(io.StringIO(text)) == load_trace(text)

    def test_normalises_unmerged_queues(self, caplog):
        trace = load_trace(_doc(g={"under": "{[0,1),[1,2]}", "over": "{[0,3]}"}))
        assert trace["g"].under == Q("{[0,2]}")
        assert "Normalised" in caplog.text

    def test_strict_rejects_unmerged_queues(self):
        with pytest.raises(TraceFormatError) as e:
            load_trace(_doc(g={"under": "{[0,1),[1,2]}", "over": "{[0,3]}"}), strict=True)
        assert e.value.proposition == "g"

    def test_under_must_be_inside_over(self):
        with pytest.raises(TraceFormatError, match="proposition 'g'"):
            load_trace(_doc(g={"under": "{[0,2]}", "over": "{[0,1]}"}))

    def test_decimals_are_exact(self):
        trace = load_trace(_doc(g={"exact": "{[0.5,1.25]}"}))
        assert trace["g"].under == Q("{[1/2,5/4]}")

    @pytest.mark.parametrize("text", [
        "not json",
        "[]",
        _doc(g={"under": "{[0,1]}"}),
        _doc(g={"exact": "{[0,1]}", "over": "{[0,1]}"}),
        _doc(g={"exact": "{[0,x]}"}),
        _doc(g={"exact": 3}),
        _doc(g="{[0,1]}"),
        json.dumps({"1g": {"exact": "{}"}}),
        json.dumps({"propositions": []}),
        json.dumps({"horizon": 1.5, "g": {"exact": "{}"}}),
        json.dumps({"horizon": "-1", "g": {"exact": "{}"}}),
    ])
    def test_rejects(self, text):
        with pytest.raises(TraceFormatError):
            load_trace(text)

    @pytest.mark.parametrize("name", sorted(KEYWORDS))
    def test_rejects_keyword_names(self, name):
        with pytest.raises(TraceFormatError) as e:
            load_trace(json.dumps({name: {"exact": "{[0,1]}"}}))
        assert e.value.proposition == name

    def test_invalid_utf8(self):
        with pytest.raises(TraceFormatError):
            load_trace(b"\xff\xfe")

    def test_declared_horizon_is_applied(self):
        trace = load_trace(json.dumps({"horizon": "10", "g": {"exact": "{}"}}))
        assert trace.horizon == 10
        assert trace["g"] == Approximation(EMPTY, Q("{(10,inf)}"))

    def test_undeclared_proposition(self):
        with pytest.raises(UndeclaredAtomError, match="undeclared proposition: h"):
            load_trace(_doc(g={"exact": "{}"}))["h"]

    @given(exact_traces(), st.none() | rationals())
    def test_dump_round_trip(self, exact, horizon):
        trace = approximate_from_exact(exact)
        if horizon is not None:
            trace = apply_horizon(trace, horizon)
        assert load_trace(dump_trace(trace), strict=True) == trace

    def test_dump_exact_entries(self):
        document = json.loads(dump_trace(ExactTrace({"g": Q("{[1,2]}")})))
        assert document == {"propositions": {"g": {"exact": "{[1,2]}"}}}


class TestStorage:
    def test_write_then_read(self, trace_dir):
        trace = apply_horizon(ExactTrace({"g": Q("{[0,1], [5,6]}")}), 4)
        asyncio.run(write_trace("traces/g.json", trace))
        assert (trace_dir / "traces" / "g.json").exists()
        assert asyncio.run(read_trace("traces/g.json")) == trace

    def test_missing_file(self, trace_dir):
        with pytest.raises(FileNotFoundError):
            asyncio.run(read_trace("missing.json"))


class TestHorizon:
    def test_examples(self):
        trace = apply_horizon(ExactTrace({"g": Q("{[0,1], [5,6]}")}), 4)
        assert trace["g"] == Approximation(Q("{[0,1]}"), Q("{[0,1], (4,inf)}"))
        assert trace.horizon == 4

        trace = apply_horizon(ExactTrace({"g": EMPTY}), 10)
        assert trace["g"] == Approximation(EMPTY, Q("{(10,inf)}"))

    def test_zero_horizon_keeps_only_time_zero(self):
        trace = apply_horizon(ExactTrace({"g": Q("{[0,1]}"), "h": Q("{(2,3)}")}), 0)
        assert trace["g"] == Approximation(Q("{[0,0]}"), Q("{[0,inf)}"))
        assert trace["h"] == Approximation(EMPTY, Q("{(0,inf)}"))

    def test_keeps_the_earlier_horizon(self):
        trace = apply_horizon(apply_horizon(ExactTrace({"g": EMPTY}), 3), 5)
        assert trace.horizon == 3
        assert trace["g"].over == Q("{(3,inf)}")

    def test_negative_horizon(self):
        with pytest.raises(ValueError):
            apply_horizon(ExactTrace({}), -1)

    @given(exact_traces(), rationals())
    def test_tail_is_unknown(self, exact, b):
        tail = Q("{(%s,inf)}" % b)
        for approx in apply_horizon(approximate_from_exact(exact), b).propositions.values():
            assert conjoin(approx.unknown, tail) == tail
            assert approx.is_consistent

    def test_truncate_one_proposition(self):
        trace = truncate(ExactTrace({"g": Q("{[0,1], [5,6]}"), "h": Q("{[2,3]}")}), "g", 4)
        assert trace["g"] == Approximation(Q("{[0,1]}"), Q("{[0,1], (4,inf)}"))
        assert trace["h"] == Approximation.exact(Q("{[2,3]}"))
        assert trace.horizon is None


class TestExactTraces:
    @pytest.mark.parametrize("exact, under, over", [
        ("{[1,2]}", "{(1,2)}", "{[1,2]}"),
        ("{[3,3]}", "{}", "{[3,3]}"),
        ("{[0,1), (1,2]}", "{(0,1), (1,2)}", "{[0,2]}"),
    ])
    def test_approximate_from_exact(self, exact, under, over):
        trace = approximate_from_exact(ExactTrace({"g": Q(exact)}))
        assert trace["g"] == Approximation(Q(under), Q(over))

    @given(queues(), st.lists(rationals(), min_size=20, max_size=20))
    def test_approximations_bracket_the_exact_set(self, q, points):
        approx = approximate_from_exact(ExactTrace({"g": q}))["g"]
        for t in points:
            assert contains(approx.under, t) <= contains(q, t) <= contains(approx.over, t)

    def test_as_exact(self):
        assert as_exact(Trace({"g": Approximation.exact(Q("{[0,1]}"))})) == ExactTrace({"g": Q("{[0,1]}")})
        assert as_exact(Trace({"g": Approximation(Q("{(0,1)}"), Q("{[0,1]}"))})) is None
        assert as_exact(Trace({})) == ExactTrace({})

    def test_endpoints(self):
        exact = ExactTrace({"g": Q("{[0,1], (5,inf)}"), "h": Q("{[1/2,1]}")})
        assert exact.endpoints() == {0, Fraction(1, 2), 1, 5}
