"""Static SVG rendering of a drawing.  Output depends only on the input."""

from __future__ import annotations

from fractions import Fraction

from .drawing import Drawing, compute_crossings_geometric

SIZE = 800
MARGIN = 40
PRECISION = 3


def _fmt(x: Fraction) -> str:
    return f"{float(x):.{PRECISION}f}"


def to_svg(d: Drawing, mark_crossings: bool = True) -> str:
    pts = [p for poly in d.edges.values() for p in poly] + list(d.vertices.values())
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, Fraction(1))
    scale = Fraction(SIZE - 2 * MARGIN) / span

    def tx(p):
        # flip y so the picture is not upside down
        return _fmt(MARGIN + (p[0] - lo_x) * scale), _fmt(MARGIN + (hi_y - p[1]) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
        '<g fill="none" stroke="#335" stroke-width="1">',
    ]
    for (u, v), poly in d.edges.items():
        coords = [tx(p) for p in poly]
        path = "M" + " L".join(f"{x} {y}" for x, y in coords)
        out.append(f'<path id="e{u}-{v}" d="{path}"/>')
    out.append("</g>")
    if mark_crossings:
        out.append('<g fill="#c22" stroke="none">')
        for rec in compute_crossings_geometric(d)[0]:
            x, y = tx(rec.point)
            out.append(f'<circle class="crossing" cx="{x}" cy="{y}" r="2.5"/>')
        out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="11" text-anchor="middle">')
    for v, p in d.vertices.items():
        x, y = tx(p)
        out.append(f'<circle class="vertex" cx="{x}" cy="{y}" r="7" fill="#fff" stroke="#000"/>')
        out.append(f'<text x="{x}" y="{float(y) + 4:.{PRECISION}f}">{v}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
