"""Plot-data emission: histogram and density-curve files plus an SVG overlay.

Everything here is plain text: a histogram CSV in the bin-report format, one
curve CSV per fitted density, and a self-contained SVG that overlays the
density-scaled histogram with the curves.  Each fitted density contributes
exactly one polyline to the SVG; axes and ticks are drawn with line
elements, so polyline count equals curve count.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .contamination import bin_count
from .distributions import DistributionSpec
from .sample import Sample, Support

CURVE_POINTS = 512
RANGE_PAD = 0.1

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_SVG_W, _SVG_H = 720, 480
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 60, 20, 20, 40


def _slug(label: str) -> str:
    text = re.sub(r"[^a-z0-9]+", "-", label.lower()).strip("-")
    return text or "curve"


def curve_range(sample: Sample) -> tuple[float, float]:
    """Plot abscissa range: data range padded 10% each side, clamped at 0
    for half-line samples."""
    lo = float(np.min(sample.values))
    hi = float(np.max(sample.values))
    pad = RANGE_PAD * (hi - lo)
    if pad == 0.0:
        pad = max(abs(lo), 1.0) * RANGE_PAD
    lo, hi = lo - pad, hi + pad
    if sample.support is Support.HALF_LINE:
        lo = max(lo, 0.0)
    return lo, hi


def curve_points(spec: DistributionSpec, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    """Density curve on an inclusive equispaced grid of CURVE_POINTS."""
    xs = np.linspace(lo, hi, CURVE_POINTS)
    ys = spec.pdf(xs)
    return xs, ys


def emit_plot_data(
    sample: Sample,
    fitted: list[tuple[str, DistributionSpec]],
    edges,
    out_dir,
) -> list[Path]:
    """Write histogram.csv, one curve CSV per fit, and overlay.svg.

    ``fitted`` pairs a display label with a fully bound density.  Returns
    the written paths in a deterministic order.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    report = bin_count(sample, edges)
    hist_path = out / "histogram.csv"
    hist_path.write_text(report.to_csv())
    written.append(hist_path)

    lo, hi = curve_range(sample)
    curves = []
    for index, (label, spec) in enumerate(fitted):
        xs, ys = curve_points(spec, lo, hi)
        curves.append((label, xs, ys))
        lines = ["x,pdf"]
        for x, y in zip(xs, ys):
            lines.append(f"{float(x)!r},{float(y)!r}")
        path = out / f"curve_{index:02d}_{_slug(label)}.csv"
        path.write_text("\n".join(lines) + "\n")
        written.append(path)

    svg_path = out / "overlay.svg"
    svg_path.write_text(_render_svg(sample, report, curves))
    written.append(svg_path)
    return written


def _render_svg(sample: Sample, report, curves) -> str:
    """Density-scaled histogram bars plus one polyline per curve."""
    n = sample.n
    edges = report.edges
    # Density height per interval; the exact-top-edge slot has no width and
    # is folded into the last interval for display purposes only.
    interval_counts = report.counts[:-1].astype(float).copy()
    interval_counts[-1] += float(report.counts[-1])
    widths = np.diff(edges)
    heights = interval_counts / (n * widths)

    finite_max = []
    if heights.size:
        finite_max.append(float(np.max(heights)))
    for _, _, ys in curves:
        finite = ys[np.isfinite(ys)]
        if finite.size:
            finite_max.append(float(np.max(finite)))
    y_max = max(finite_max) if finite_max else 1.0
    if y_max <= 0.0:
        y_max = 1.0
    y_max *= 1.05

    xs_all = [float(edges[0]), float(edges[-1])]
    for _, xs, _ in curves:
        xs_all.extend([float(xs[0]), float(xs[-1])])
    x_min, x_max = min(xs_all), max(xs_all)
    if x_max == x_min:
        x_max = x_min + 1.0

    plot_w = _SVG_W - _MARGIN_L - _MARGIN_R
    plot_h = _SVG_H - _MARGIN_T - _MARGIN_B

    def sx(x: float) -> float:
        return _MARGIN_L + (x - x_min) / (x_max - x_min) * plot_w

    def sy(y: float) -> float:
        y = min(y, y_max)
        return _MARGIN_T + plot_h - y / y_max * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_SVG_W} {_SVG_H}" '
        f'font-family="sans-serif" font-size="11">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
    ]
    for left, width, height in zip(edges[:-1], widths, heights):
        if height <= 0.0:
            continue
        x0, x1 = sx(float(left)), sx(float(left + width))
        y0 = sy(float(height))
        parts.append(
            f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{x1 - x0:.2f}" '
            f'height="{sy(0.0) - y0:.2f}" fill="#c8d7e8" stroke="#7f9db9" stroke-width="0.5"/>'
        )
    for index, (label, xs, ys) in enumerate(curves):
        color = _PALETTE[index % len(_PALETTE)]
        points = []
        for x, y in zip(xs, ys):
            if not np.isfinite(y):
                continue
            points.append(f"{sx(float(x)):.2f},{sy(float(y)):.2f}")
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{" ".join(points)}"/>'
        )
        legend_y = _MARGIN_T + 14 * (index + 1)
        parts.append(
            f'<line x1="{_SVG_W - 190}" y1="{legend_y - 4}" x2="{_SVG_W - 170}" '
            f'y2="{legend_y - 4}" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(f'<text x="{_SVG_W - 165}" y="{legend_y}">{_escape(label)}</text>')

    axis_y = sy(0.0)
    parts.append(
        f'<line x1="{_MARGIN_L}" y1="{axis_y:.2f}" x2="{_SVG_W - _MARGIN_R}" '
        f'y2="{axis_y:.2f}" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" x2="{_MARGIN_L}" '
        f'y2="{axis_y:.2f}" stroke="black" stroke-width="1"/>'
    )
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        x_val = x_min + frac * (x_max - x_min)
        x_pix = sx(x_val)
        parts.append(
            f'<line x1="{x_pix:.2f}" y1="{axis_y:.2f}" x2="{x_pix:.2f}" '
            f'y2="{axis_y + 4:.2f}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x_pix:.2f}" y="{axis_y + 16:.2f}" text-anchor="middle">{x_val:.3g}</text>'
        )
        y_val = frac * y_max
        y_pix = sy(y_val)
        parts.append(
            f'<line x1="{_MARGIN_L - 4}" y1="{y_pix:.2f}" x2="{_MARGIN_L}" '
            f'y2="{y_pix:.2f}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 8}" y="{y_pix + 4:.2f}" text-anchor="end">{y_val:.3g}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
