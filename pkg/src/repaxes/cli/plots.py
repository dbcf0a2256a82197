"""Render report files as standalone SVG figures.

Scalar axes get per-report bars, invariance gets one curve per report
over the parameter grid, and disentanglement gets a colored bucket
grid.  Everything is assembled from fixed-format strings, so identical
reports produce identical bytes.
"""

from pathlib import Path

from .tables import load_reports

PLOTS_DIR = "plots"

WIDTH = 640
HEIGHT = 400
MARGIN = 56

PALETTE = ("#4878d0", "#ee854a", "#6acc64", "#d65f5f", "#956cb4", "#8c613c")

_BAR_METRIC = {
    "informativeness": "rmse",
    "p_equivariance": "rmse",
    "r_equivariance": "cosine_mean",
}


def _fmt(value: float) -> str:
    return format(value, ".6g")


def _svg(parts: list[str]) -> str:
    body = "\n".join(parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>\n'
        f"{body}\n</svg>\n"
    )


def _text(x: float, y: float, content: str, size: int = 12, anchor: str = "middle") -> str:
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
        f'font-size="{size}" text-anchor="{anchor}">{content}</text>'
    )


def _bar_chart(title: str, labels: list[str], values: list[float], metric: str) -> str:
    top = max(max(values), 1e-9)
    plot_w = WIDTH - 2 * MARGIN
    plot_h = HEIGHT - 2 * MARGIN
    slot = plot_w / len(values)
    bar_w = slot * 0.6
    parts = [_text(WIDTH / 2, MARGIN / 2, title, size=14)]
    parts.append(
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>'
    )
    parts.append(_text(MARGIN / 2, MARGIN - 8, metric, size=11, anchor="start"))
    for i, (label, value) in enumerate(zip(labels, values)):
        height = plot_h * (value / top)
        x = MARGIN + slot * i + (slot - bar_w) / 2
        y = HEIGHT - MARGIN - height
        color = PALETTE[i % len(PALETTE)]
        parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(bar_w)}" '
            f'height="{_fmt(height)}" fill="{color}"/>'
        )
        parts.append(_text(x + bar_w / 2, y - 6, _fmt(value), size=10))
        parts.append(_text(x + bar_w / 2, HEIGHT - MARGIN + 16, label, size=10))
    return _svg(parts)


def _curve_chart(title: str, series: list[tuple[str, list[tuple[float, float]]]]) -> str:
    xs = [p for _, curve in series for p, _ in curve]
    ys = [v for _, curve in series for _, v in curve]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(min(ys), 0.0), max(max(ys), 1.0)
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0
    plot_w = WIDTH - 2 * MARGIN
    plot_h = HEIGHT - 2 * MARGIN

    def sx(p):
        return MARGIN + plot_w * (p - x_lo) / x_span

    def sy(v):
        return HEIGHT - MARGIN - plot_h * (v - y_lo) / y_span

    parts = [_text(WIDTH / 2, MARGIN / 2, title, size=14)]
    parts.append(
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>'
    )
    parts.append(_text(MARGIN, HEIGHT - MARGIN + 16, _fmt(x_lo), size=10))
    parts.append(_text(WIDTH - MARGIN, HEIGHT - MARGIN + 16, _fmt(x_hi), size=10))
    parts.append(_text(MARGIN - 6, HEIGHT - MARGIN, _fmt(y_lo), size=10, anchor="end"))
    parts.append(_text(MARGIN - 6, MARGIN + 4, _fmt(y_hi), size=10, anchor="end"))
    for i, (label, curve) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(f"{_fmt(sx(p))},{_fmt(sy(v))}" for p, v in curve)
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(_text(WIDTH - MARGIN, MARGIN + 16 * (i + 1), label, size=10, anchor="end"))
    return _svg(parts)


def _delta_color(delta: float) -> str:
    # red for degradation, green for (rare) improvement; saturates at 0.2
    intensity = min(abs(delta) / 0.2, 1.0)
    level = int(round(255 - 155 * intensity))
    if delta > 0:
        return f"rgb(255,{level},{level})"
    return f"rgb({level},255,{level})"


def _bucket_grid(title: str, rows: list[tuple[str, list[tuple[str, float]]]]) -> str:
    n_rows = len(rows)
    n_cols = 4
    plot_w = WIDTH - 2 * MARGIN
    cell_w = plot_w / n_cols
    cell_h = min(60.0, (HEIGHT - 2 * MARGIN) / n_rows)
    parts = [_text(WIDTH / 2, MARGIN / 2, title, size=14)]
    for col, (label, _) in enumerate(rows[0][1]):
        parts.append(_text(MARGIN + cell_w * (col + 0.5), MARGIN - 8, label, size=12))
    for r, (name, buckets) in enumerate(rows):
        y = MARGIN + cell_h * r
        parts.append(_text(MARGIN - 6, y + cell_h / 2 + 4, name, size=10, anchor="end"))
        for c, (_, delta) in enumerate(buckets):
            x = MARGIN + cell_w * c
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(cell_w)}" '
                f'height="{_fmt(cell_h)}" fill="{_delta_color(delta)}" stroke="black"/>'
            )
            parts.append(_text(x + cell_w / 2, y + cell_h / 2 + 4, _fmt(delta), size=11))
    return _svg(parts)


def cmd_plot(results_dir) -> list[Path]:
    """Write one SVG per axis family present; returns the paths written."""
    reports = load_reports(results_dir)
    plots_dir = Path(results_dir) / PLOTS_DIR
    plots_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    for axis, metric in _BAR_METRIC.items():
        selected = [(name, r) for name, r in sorted(reports.items()) if r.axis == axis]
        if not selected:
            continue
        labels = [f"{r.extractor_id} / {r.target}" for _, r in selected]
        values = [r.metrics[metric] for _, r in selected]
        path = plots_dir / f"{axis}_bars.svg"
        path.write_text(
            _bar_chart(axis.replace("_", "-"), labels, values, metric),
            encoding="utf-8", newline="\n",
        )
        written.append(path)

    curves = [
        (f"{r.extractor_id} / {r.target}", r.curve)
        for _, r in sorted(reports.items())
        if r.axis == "invariance" and r.curve
    ]
    if curves:
        path = plots_dir / "invariance_curves.svg"
        path.write_text(
            _curve_chart("invariance: mean cosine over the parameter grid", curves),
            encoding="utf-8", newline="\n",
        )
        written.append(path)

    grids = [
        (name, [(b.label, b.delta_rmse) for b in r.grid.buckets])
        for name, r in sorted(reports.items())
        if r.axis == "disentanglement" and r.grid is not None
    ]
    if grids:
        path = plots_dir / "disentanglement_grid.svg"
        path.write_text(
            _bucket_grid("disentanglement: probe RMSE shift by perturbation bucket", grids),
            encoding="utf-8", newline="\n",
        )
        written.append(path)
    return written
