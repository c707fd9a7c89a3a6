"""Minimal deterministic SVG rendering: contour maps and line charts.

Output is plain markup with fixed formatting so reruns are byte-identical.
"""

from . import contours


def _palette(k, n):
    # blue through gray to red across the level index
    t = 0.5 if n <= 1 else k / (n - 1)
    r = int(40 + 180 * t)
    g = 60
    b = int(220 - 180 * t)
    return f"#{r:02x}{g:02x}{b:02x}"


def _fmt(v):
    return f"{v:.4f}"


def contour_svg(field, levels, width=440, title=None):
    """Render the level sets of a field as one SVG path per contour piece."""
    ex, ey = field.grid.extent
    margin = 24.0
    scale = (width - 2 * margin) / ex
    height = 2 * margin + ey * scale

    def sx(x):
        return margin + x * scale

    def sy(y):
        return margin + (ey - y) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect x="{_fmt(sx(0))}" y="{_fmt(sy(ey))}" width="{_fmt(ex * scale)}" '
        f'height="{_fmt(ey * scale)}" fill="white" stroke="black" stroke-width="1"/>',
    ]
    if title:
        parts.append(f'<text x="{_fmt(margin)}" y="{_fmt(margin - 8)}" font-size="12" '
                     f'font-family="sans-serif">{title}</text>')
    levels = list(levels)
    for k, level in enumerate(levels):
        color = _palette(k, len(levels))
        for poly in contours.contour_polylines(field, level):
            coords = " L ".join(f"{_fmt(sx(x))} {_fmt(sy(y))}" for x, y in poly.points)
            tail = " Z" if poly.closed else ""
            parts.append(f'<path d="M {coords}{tail}" fill="none" stroke="{color}" '
                         f'stroke-width="1.2" data-level="{level:.6g}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def line_chart_svg(series, title=None, xlabel=None, ylabel=None, width=480, height=320):
    """Plot (name, xs, ys) series as polylines with a small legend."""
    margin = 44.0
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    if not xs_all:
        raise ValueError("line chart needs at least one sample")
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def sx(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<line x1="{_fmt(margin)}" y1="{_fmt(height - margin)}" x2="{_fmt(width - margin)}" '
        f'y2="{_fmt(height - margin)}" stroke="black"/>',
        f'<line x1="{_fmt(margin)}" y1="{_fmt(margin)}" x2="{_fmt(margin)}" '
        f'y2="{_fmt(height - margin)}" stroke="black"/>',
        f'<text x="{_fmt(margin)}" y="{_fmt(height - margin + 16)}" font-size="10" '
        f'font-family="sans-serif">{x0:.4g}</text>',
        f'<text x="{_fmt(width - margin)}" y="{_fmt(height - margin + 16)}" font-size="10" '
        f'font-family="sans-serif" text-anchor="end">{x1:.4g}</text>',
        f'<text x="{_fmt(margin - 4)}" y="{_fmt(height - margin)}" font-size="10" '
        f'font-family="sans-serif" text-anchor="end">{y0:.4g}</text>',
        f'<text x="{_fmt(margin - 4)}" y="{_fmt(margin + 4)}" font-size="10" '
        f'font-family="sans-serif" text-anchor="end">{y1:.4g}</text>',
    ]
    if title:
        parts.append(f'<text x="{_fmt(width / 2)}" y="18" font-size="12" text-anchor="middle" '
                     f'font-family="sans-serif">{title}</text>')
    if xlabel:
        parts.append(f'<text x="{_fmt(width / 2)}" y="{_fmt(height - 8)}" font-size="11" '
                     f'text-anchor="middle" font-family="sans-serif">{xlabel}</text>')
    if ylabel:
        parts.append(f'<text x="14" y="{_fmt(height / 2)}" font-size="11" text-anchor="middle" '
                     f'font-family="sans-serif" transform="rotate(-90 14 {_fmt(height / 2)})">{ylabel}</text>')
    for k, (name, xs, ys) in enumerate(series):
        color = _palette(k, max(len(series), 2))
        coords = " L ".join(f"{_fmt(sx(x))} {_fmt(sy(y))}" for x, y in zip(xs, ys))
        parts.append(f'<path d="M {coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{_fmt(width - margin - 4)}" y="{_fmt(margin + 14 * (k + 1))}" '
                     f'font-size="10" font-family="sans-serif" text-anchor="end" '
                     f'fill="{color}">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
