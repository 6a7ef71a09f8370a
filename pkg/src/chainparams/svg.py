"""SVG drawings of parameter regions and wall arrangements.

All geometry stays exact until the final coordinate is written; the only
float conversion happens in ``_num``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape, quoteattr

from .errors import ValidationError
from .exact_geometry import AffineFunctional, Box, Halfspace, Point, polygon_from_halfspaces
from .exact_geometry import _line_box_segment

WIDTH, HEIGHT = 800, 600
NAMES = ("a1", "a2")


def _num(x: Fraction) -> str:
    text = f"{float(x):.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


class _Viewport:
    def __init__(self, box: Box) -> None:
        self.box = box
        self.sx = Fraction(WIDTH) / (box.upper[0] - box.lower[0])
        self.sy = Fraction(HEIGHT) / (box.upper[1] - box.lower[1])

    def map(self, p: Point) -> tuple[str, str]:
        x = (p[0] - self.box.lower[0]) * self.sx
        y = (self.box.upper[1] - p[1]) * self.sy
        return _num(x), _num(y)


def _line_element(view: _Viewport, f: AffineFunctional, css: str, label: str, text: str) -> list[str]:
    segment = _line_box_segment(f, view.box)
    if segment is None:
        return []
    (x1, y1), (x2, y2) = view.map(segment[0]), view.map(segment[1])
    out = [
        f'<line class="{css}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
        f"data-equation={quoteattr(text)} data-source={quoteattr(label)}/>"
    ]
    if css == "region-boundary":
        mx, my = view.map(((segment[0][0] + segment[1][0]) / 2, (segment[0][1] + segment[1][1]) / 2))
        out.append(f'<text class="label" x="{mx}" y="{my}">{escape(text)} [{escape(label)}]</text>')
    return out


def render_region(
    box: Box,
    halfspaces: Sequence[Halfspace],
    walls: Sequence[AffineFunctional] = (),
    title: str = "",
) -> str:
    """SVG 1.1 document: the box, the region cut out by ``halfspaces``, optional wall lines."""
    if box.dimension != 2:
        raise ValidationError("rendering needs two free parameters")
    view = _Viewport(box)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        "<style>.wall{stroke:#999;stroke-width:0.5}.region-boundary{stroke:#c00;stroke-width:2}"
        ".label{font:11px sans-serif;fill:#c00}</style>",
    ]
    if title:
        lines.append(f"<title>{escape(title)}</title>")
    lines.append(f'<rect class="box" x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#eef4fb"/>')
    cell = polygon_from_halfspaces(halfspaces, box)
    if cell is not None:
        points = " ".join(",".join(view.map(v)) for v in cell.vertices)
        lines.append(f'<polygon class="region" points="{points}" fill="#fbd9a8"/>')
    for f in walls:
        lines += _line_element(view, f, "wall", "wall", f.format(NAMES))
    for h in halfspaces:
        shown = h.as_lower_bound()
        lines += _line_element(view, h.functional, "region-boundary", h.label, shown.format(NAMES))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
