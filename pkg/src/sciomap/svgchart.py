"""Deterministic SVG bar-and-line chart for the annual citation series.

One bar per year (citation count, left axis) plus a polyline of the mean
citations per article (right axis). Fixed 960x540 canvas, no styling
dependencies, coordinates rounded to 2 decimals so output bytes are
stable. Bars carry data-year/data-value attributes so tests can audit the
coordinate arithmetic directly.
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

from .export import fmt_number
from .stats import AnnualPoint

__all__ = ["render_annual_svg"]

WIDTH = 960
HEIGHT = 540
MARGIN_LEFT = 70.0
MARGIN_RIGHT = 70.0
MARGIN_TOP = 40.0
MARGIN_BOTTOM = 50.0


def render_annual_svg(series: list[AnnualPoint], path: str | Path) -> None:
    if not series:
        raise ValueError("cannot render an empty annual series")
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    base_y = MARGIN_TOP + plot_h
    max_citations = max(p.citations for p in series)
    max_mean = max(p.mean_citations_per_article for p in series)
    slot = plot_w / len(series)
    bar_w = slot * 0.7

    def n2(x: float) -> str:
        return fmt_number(round(x, 2) + 0.0, 2)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}"'
        f' viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'  <text x="{WIDTH // 2}" y="24" text-anchor="middle" font-size="16"'
        ' font-family="sans-serif">Citations per year</text>',
    ]
    # Axis frame and captions.
    out.append(
        f'  <line x1="{n2(MARGIN_LEFT)}" y1="{n2(base_y)}" x2="{n2(WIDTH - MARGIN_RIGHT)}"'
        f' y2="{n2(base_y)}" stroke="black"/>'
    )
    out.append(
        f'  <line x1="{n2(MARGIN_LEFT)}" y1="{n2(MARGIN_TOP)}" x2="{n2(MARGIN_LEFT)}"'
        f' y2="{n2(base_y)}" stroke="black"/>'
    )
    out.append(
        f'  <line x1="{n2(WIDTH - MARGIN_RIGHT)}" y1="{n2(MARGIN_TOP)}"'
        f' x2="{n2(WIDTH - MARGIN_RIGHT)}" y2="{n2(base_y)}" stroke="black"/>'
    )
    out.append(
        f'  <text x="16" y="{n2(MARGIN_TOP + plot_h / 2)}" font-size="12"'
        f' font-family="sans-serif" transform="rotate(-90 16 {n2(MARGIN_TOP + plot_h / 2)})"'
        ' text-anchor="middle">citations</text>'
    )
    out.append(
        f'  <text x="{WIDTH - 16}" y="{n2(MARGIN_TOP + plot_h / 2)}" font-size="12"'
        f' font-family="sans-serif" transform="rotate(90 {WIDTH - 16} {n2(MARGIN_TOP + plot_h / 2)})"'
        ' text-anchor="middle">mean citations per article</text>'
    )
    out.append(
        f'  <text x="{n2(MARGIN_LEFT - 8)}" y="{n2(MARGIN_TOP + 4)}" text-anchor="end"'
        f' font-size="11" font-family="sans-serif">{max_citations}</text>'
    )
    out.append(
        f'  <text x="{n2(WIDTH - MARGIN_RIGHT + 8)}" y="{n2(MARGIN_TOP + 4)}" text-anchor="start"'
        f' font-size="11" font-family="sans-serif">{escape(fmt_number(max_mean, 2))}</text>'
    )

    points = []
    for i, point in enumerate(series):
        x0 = MARGIN_LEFT + i * slot
        center = x0 + slot / 2
        height = plot_h * point.citations / max_citations
        out.append(
            f'  <rect class="bar" x="{n2(center - bar_w / 2)}" y="{n2(base_y - height)}"'
            f' width="{n2(bar_w)}" height="{n2(height)}" fill="#4a7db5"'
            f' data-year="{point.year}" data-value="{point.citations}"/>'
        )
        out.append(
            f'  <text x="{n2(center)}" y="{n2(base_y + 18)}" text-anchor="middle"'
            f' font-size="11" font-family="sans-serif">{point.year}</text>'
        )
        line_y = base_y - plot_h * point.mean_citations_per_article / max_mean
        points.append(f"{n2(center)},{n2(line_y)}")
    out.append(
        f'  <polyline class="mean" points="{" ".join(points)}" fill="none"'
        ' stroke="#b5504a" stroke-width="2"/>'
    )
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")
