from fractions import Fraction

import pytest

from cli.render import display_window, render_svg
from monitor.engine import Report, ReportRow, report
from monitor.errors import RenderError
from monitor.formula import parse
from monitor.interval import INF
from monitor.literals import parse_queue as Q
from monitor.state import Approximation
from monitor.trace import Trace

GAPPED = Trace({"g": Approximation(Q("{(1,2)}"), Q("{[0,3]}"))})


def row(formula, under, over, delta=0, bounded=None):
    return ReportRow(formula, Approximation(Q(under), Q(over)), delta, bounded)


class TestDisplayWindow:
    def test_largest_endpoint(self):
        assert display_window(report(parse("g"), GAPPED)) == 3

    def test_explicit_window(self):
        assert display_window(report(parse("!g"), GAPPED), "5/2") == Fraction(5, 2)

    def test_empty_queues(self):
        assert display_window(Report((row("g", "{}", "{}"),))) == 1

    def test_unbounded_needs_a_window(self):
        with pytest.raises(RenderError, match="!g"):
            display_window(report(parse("!g"), GAPPED))

    @pytest.mark.parametrize("window", [0, -1])
    def test_window_must_be_positive(self, window):
        with pytest.raises(RenderError):
            display_window(Report((row("g", "{}", "{}"),)), window)


class TestRenderSvg:
    def test_one_lane_per_row(self):
        svg = render_svg(report(parse("g & !g"), GAPPED), 4)
        assert svg.startswith("<svg")
        assert svg.endswith("</svg>\n")
        assert svg.count('class="lane"') == 3
        assert '<pattern id="unknown"' in svg

    def test_under_and_unknown_bars(self):
        svg = render_svg(report(parse("g"), GAPPED))
        assert svg.count('class="under"') == 1
        # [0,1] and [2,3] around the known part
        assert svg.count('class="unknown"') == 2
        assert 'fill="url(#unknown)"' in svg

    def test_arrow_past_the_window(self):
        r = Report((row("g", "{(1,inf)}", "{[1,inf)}"),))
        svg = render_svg(r, 2)
        assert svg.count('class="arrow"') == 1

    def test_items_outside_the_window_are_skipped(self):
        r = Report((row("g", "{(5,6)}", "{[5,6]}"),))
        svg = render_svg(r, 2)
        assert 'class="under"' not in svg
        assert 'class="arrow"' not in svg

    def test_labels_are_escaped(self):
        svg = render_svg(Report((row("g & h", "{}", "{[0,1]}", 1),)))
        assert "g &amp; h" in svg
        assert "g & h" not in svg

    def test_delta_labels(self):
        svg = render_svg(Report((row("g", "{}", "{(4,inf)}", INF, Fraction(6)),)), 10)
        assert "Δ = inf (6 within horizon)" in svg

    def test_ticks(self):
        svg = render_svg(Report((row("g", "{}", "{[0,1]}", 1),)), 8)
        for label in ("0", "2", "4", "6", "8"):
            assert f">{label}</text>" in svg
