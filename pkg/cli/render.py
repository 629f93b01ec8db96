"""SVG timelines of a report: one lane per subformula.

Each lane draws the under-approximation as solid bars and the unknown region
(over minus under) as hatched bars over the display window [0, w]. Items that
continue past the window end in an arrow.
"""

import html
import logging
from fractions import Fraction

from config.settings import SVG_LABEL_WIDTH, SVG_LANE_HEIGHT, SVG_WIDTH
from monitor.engine import Report, ReportRow
from monitor.errors import RenderError
from monitor.interval import Interval, intersect
from monitor.literals import format_rational
from monitor.queue import IntervalQueue

logger = logging.getLogger(__name__)

MARGIN = 16
AXIS_HEIGHT = 28
BAR_HEIGHT = 14
MIN_BAR_WIDTH = 2.0
TICKS = 4

UNDER_FILL = "#2b6cb0"
UNKNOWN_FILL = "url(#unknown)"

# =============================================================================
# TEMPLATES
# =============================================================================

SVG_PREFIX = """<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="12">
  <defs>
    <pattern id="unknown" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">
      <rect width="6" height="6" fill="#fff"/>
      <line x1="0" y1="0" x2="0" y2="6" stroke="#c05621" stroke-width="3"/>
    </pattern>
  </defs>
"""

SVG_SUFFIX = "</svg>\n"

LANE = """  <g class="lane" transform="translate(0,{y})">
    <title>{title}</title>
    <text x="4" y="{label_y}">{label}</text>
    <text class="delta" x="4" y="{delta_y}" fill="#555">{delta}</text>
    <line x1="{x0}" y1="{base}" x2="{x1}" y2="{base}" stroke="#ccc"/>
{bars}  </g>
"""

BAR = '    <rect class="{kind}" x="{x:.2f}" y="{top}" width="{width:.2f}" height="{height}" fill="{fill}"/>\n'

ARROW = '    <polygon class="arrow" points="{x:.2f},{top} {tip:.2f},{mid} {x:.2f},{bottom}" fill="#333"/>\n'

TICK = """  <line x1="{x:.2f}" y1="{top}" x2="{x:.2f}" y2="{bottom}" stroke="#999"/>
  <text x="{x:.2f}" y="{label_y}" text-anchor="middle" fill="#555">{label}</text>
"""


# =============================================================================
# GEOMETRY
# =============================================================================

def _queues(row: ReportRow) -> tuple[IntervalQueue, IntervalQueue]:
    return row.approximation.under, row.approximation.unknown


def display_window(report: Report, window=None) -> Fraction:
    """The right edge of the time axis.

    An explicit window is used as is. Without one every queue must be bounded,
    and the axis ends at the largest endpoint drawn (1 if there is none).
    """
    if window is not None:
        window = Fraction(window)
        if window <= 0:
            raise RenderError(f"display window must be positive, got {format_rational(window)}")
        return window
    unbounded = [row.formula for row in report.rows if not all(q.is_bounded for q in _queues(row))]
    if unbounded:
        raise RenderError(f"'{unbounded[0]}' has unbounded intervals; pass a display window")
    points = set().union(*(q.endpoints() for row in report.rows for q in _queues(row)))
    return max(points, default=Fraction(0)) or Fraction(1)


class _Scale:
    def __init__(self, window: Fraction):
        self.window = window
        self.x0 = SVG_LABEL_WIDTH
        self.x1 = SVG_WIDTH - MARGIN

    def __call__(self, t) -> float:
        return self.x0 + float(Fraction(t) / self.window) * (self.x1 - self.x0)


def _bars(queue: IntervalQueue, scale: _Scale, kind: str, fill: str, top: int) -> str:
    view = Interval.closed(0, scale.window)
    parts = []
    for item in queue:
        shown = intersect(item, view)
        if shown is None:
            continue
        x, end = scale(shown.lo), scale(shown.hi)
        parts.append(BAR.format(
            kind=kind, x=x, top=top, width=max(end - x, MIN_BAR_WIDTH), height=BAR_HEIGHT, fill=fill,
        ))
        if item.hi > scale.window:
            parts.append(ARROW.format(
                x=end, tip=end + MARGIN / 2, top=top, mid=top + BAR_HEIGHT / 2, bottom=top + BAR_HEIGHT,
            ))
    return "".join(parts)


def _lane(row: ReportRow, index: int, scale: _Scale) -> str:
    under, unknown = _queues(row)
    top = (SVG_LANE_HEIGHT - BAR_HEIGHT) // 2
    delta = f"Δ = {format_rational(row.delta)}"
    if row.delta_bounded is not None:
        delta += f" ({format_rational(row.delta_bounded)} within horizon)"
    return LANE.format(
        y=AXIS_HEIGHT + index * SVG_LANE_HEIGHT,
        title=html.escape(f"Q-: {under}  unknown: {unknown}"),
        label_y=SVG_LANE_HEIGHT // 2 - 2,
        label=html.escape(row.formula),
        delta_y=SVG_LANE_HEIGHT // 2 + 13,
        delta=html.escape(delta),
        x0=scale.x0,
        x1=scale.x1,
        base=top + BAR_HEIGHT // 2,
        bars=_bars(under, scale, "under", UNDER_FILL, top) + _bars(unknown, scale, "unknown", UNKNOWN_FILL, top),
    )


def _axis(scale: _Scale, height: int) -> str:
    ticks = []
    for k in range(TICKS + 1):
        t = scale.window * k / TICKS
        ticks.append(TICK.format(
            x=scale(t), top=AXIS_HEIGHT - 6, bottom=height, label_y=AXIS_HEIGHT - 10, label=format_rational(t),
        ))
    return "".join(ticks)


def render_svg(report: Report, window=None) -> str:
    """SVG document for the report, drawn over [0, window]."""
    scale = _Scale(display_window(report, window))
    height = AXIS_HEIGHT + len(report.rows) * SVG_LANE_HEIGHT
    lanes = "".join(_lane(row, i, scale) for i, row in enumerate(report.rows))
    logger.debug(f"Rendering {len(report.rows)} lanes over [0, {format_rational(scale.window)}]")
    return SVG_PREFIX.format(width=SVG_WIDTH, height=height) + _axis(scale, height) + lanes + SVG_SUFFIX
