"""Minimal hand-written SVG line charts (no plotting dependency)."""

from __future__ import annotations

PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
    "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
]

WIDTH, HEIGHT = 880, 520
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 170, 50, 60


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


def line_chart_svg(title: str, x_label: str, y_label: str,
                   x_values: list[float], series: list[tuple[str, list[float]]],
                   y_range: tuple[float, float] | None = None) -> str:
    """Render one line chart; every series shares the x grid."""
    if not x_values or not series:
        raise ValueError("need x values and at least one series")
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    x_lo, x_hi = min(x_values), max(x_values)
    if y_range is None:
        flat = [v for _, ys in series for v in ys]
        y_lo, y_hi = min(flat), max(flat)
        pad = 0.05 * (y_hi - y_lo or 1.0)
        y_lo, y_hi = y_lo - pad, y_hi + pad
    else:
        y_lo, y_hi = y_range

    def px(x):
        if x_hi == x_lo:
            return MARGIN_LEFT + plot_w / 2
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.1f}" y="28" text-anchor="middle" font-size="18" '
        f'font-family="sans-serif">{_escape(title)}</text>',
    ]

    # Horizontal grid with y tick labels.
    for i in range(6):
        y_val = y_lo + (y_hi - y_lo) * i / 5
        y = py(y_val)
        parts.append(f'<line x1="{MARGIN_LEFT}" y1="{y:.2f}" x2="{MARGIN_LEFT + plot_w}" '
                     f'y2="{y:.2f}" stroke="#dddddd"/>')
        parts.append(f'<text x="{MARGIN_LEFT - 8}" y="{y + 4:.2f}" text-anchor="end" '
                     f'font-size="12" font-family="sans-serif">{y_val:.2f}</text>')

    # X ticks at every x value (drift levels are few and irregular).
    for x in x_values:
        xp = px(x)
        parts.append(f'<line x1="{xp:.2f}" y1="{MARGIN_TOP + plot_h}" x2="{xp:.2f}" '
                     f'y2="{MARGIN_TOP + plot_h + 5}" stroke="#333333"/>')
        parts.append(f'<text x="{xp:.2f}" y="{MARGIN_TOP + plot_h + 20}" text-anchor="middle" '
                     f'font-size="12" font-family="sans-serif">{x:g}</text>')

    parts.append(f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
                 f'fill="none" stroke="#333333"/>')
    parts.append(f'<text x="{MARGIN_LEFT + plot_w / 2:.1f}" y="{HEIGHT - 14}" text-anchor="middle" '
                 f'font-size="14" font-family="sans-serif">{_escape(x_label)}</text>')
    parts.append(f'<text x="20" y="{MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
                 f'font-size="14" font-family="sans-serif" '
                 f'transform="rotate(-90 20 {MARGIN_TOP + plot_h / 2:.1f})">{_escape(y_label)}</text>')

    for si, (name, ys) in enumerate(series):
        color = PALETTE[si % len(PALETTE)]
        points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(x_values, ys))
        parts.append(f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="2"/>')
        for x, y in zip(x_values, ys):
            parts.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" fill="{color}"/>')
        ly = MARGIN_TOP + 16 + 18 * si
        lx = MARGIN_LEFT + plot_w + 12
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                     f'stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{lx + 28}" y="{ly}" font-size="12" '
                     f'font-family="sans-serif">{_escape(name)}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
