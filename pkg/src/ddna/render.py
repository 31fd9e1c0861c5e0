"""Deterministic arc-view rendering of structures and diagrams.

SVG output puts bases on horizontal rows and draws each base pair as an
elliptical arc whose height is its nesting depth times a fixed
increment, so deep stems stay readable.  A-T pairs and C-G pairs get the
two configured colors; nothing else is ever stroked in color.  Identical
inputs always produce byte-identical documents.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import SecondaryStructure, brackets_of, pair_class
from .diagram import Diagram

_FONT = 14.0
_GAP = 5.0  # distance from a glyph anchor to the arc/wire endpoint


@dataclass(frozen=True)
class RenderStyle:
    """Colors and geometry knobs.

    ``show_direction_arrows`` adds 5'-to-3' arrowheads on through wires
    (A and C run downward, T and G upward); it is off by default since
    the orientation is a drawing convention, not data.
    """

    at_color: str = "#d03030"
    cg_color: str = "#3060c0"
    spacing: float = 26.0
    arc_height: float = 16.0
    show_direction_arrows: bool = False

    def __post_init__(self) -> None:
        if self.spacing <= 0 or self.arc_height <= 0:
            raise ValueError("spacing and arc_height must be positive")

    def color_for_pair(self, a: str, b: str) -> str:
        return self.at_color if pair_class(a, b) == "AT" else self.cg_color

    def color_for_base(self, base: str) -> str:
        return self.at_color if base in "AT" else self.cg_color


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _arc_depths(arcs: frozenset[tuple[int, int]]) -> dict[tuple[int, int], int]:
    """Nesting depth of each arc: 1 for innermost, growing outward."""
    depths: dict[tuple[int, int], int] = {}
    for i, j in sorted(arcs, key=lambda arc: arc[1] - arc[0]):
        inner = [depths[a] for a in depths if i < a[0] and a[1] < j]
        depths[i, j] = 1 + max(inner, default=0)
    return depths


def _text(x: float, y: float, glyph: str) -> str:
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="monospace" '
        f'font-size="{_fmt(_FONT)}" text-anchor="middle">{glyph}</text>'
    )


def _arc_path(x1: float, x2: float, y: float, height: float, upward: bool, color: str) -> str:
    sweep = 1 if upward else 0
    rx = (x2 - x1) / 2
    return (
        f'<path d="M {_fmt(x1)} {_fmt(y)} A {_fmt(rx)} {_fmt(height)} 0 0 {sweep} '
        f'{_fmt(x2)} {_fmt(y)}" fill="none" stroke="{color}" stroke-width="1.5"/>'
    )


def _document(width: float, height: float, body: list[str]) -> str:
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        *body,
        "</svg>",
    ]
    return "\n".join(lines) + "\n"


def render_structure_svg(structure: SecondaryStructure, style: RenderStyle = RenderStyle()) -> str:
    """Bases on one line, pairs as colored arcs in the upper half-plane."""
    n = len(structure.word)
    depths = _arc_depths(structure.arcs)
    max_depth = max(depths.values(), default=0)
    margin = style.spacing
    top = margin + max_depth * style.arc_height
    baseline = top + _GAP + _FONT
    width = 2 * margin + max(n - 1, 0) * style.spacing
    height = baseline + margin

    def x_of(pos: int) -> float:
        return margin + (pos - 1) * style.spacing

    body = []
    for i, j in sorted(structure.arcs):
        body.append(
            _arc_path(
                x_of(i),
                x_of(j),
                baseline - _FONT - _GAP,
                depths[i, j] * style.arc_height,
                upward=True,
                color=style.color_for_pair(structure.word[i - 1], structure.word[j - 1]),
            )
        )
    for pos, base in enumerate(structure.word, start=1):
        body.append(_text(x_of(pos), baseline, base))
    return _document(width, height, body)


def _wire_arrow(x1: float, y1: float, x2: float, y2: float, base: str, color: str) -> str:
    mx, my = (x1 + x2) / 2, (y1 + y2) / 2
    head = 4.0 if base in "AC" else -4.0  # A, C point down; T, G point up
    points = (
        f"{_fmt(mx)},{_fmt(my + head)} "
        f"{_fmt(mx - 3)},{_fmt(my - head)} "
        f"{_fmt(mx + 3)},{_fmt(my - head)}"
    )
    return f'<polygon points="{points}" fill="{color}"/>'


def render_diagram_svg(d: Diagram, style: RenderStyle = RenderStyle()) -> str:
    """Source row on top, target row below, wires and arcs between them."""
    src_depths = _arc_depths(d.source_arcs)
    tgt_depths = _arc_depths(d.target_arcs)
    levels = max(src_depths.values(), default=0) + max(tgt_depths.values(), default=0)
    margin = style.spacing
    n = max(len(d.source), len(d.target))
    width = 2 * margin + max(n - 1, 0) * style.spacing
    y_src = margin + _FONT
    y_tgt = y_src + (levels + 2) * style.arc_height + 2 * style.spacing
    height = y_tgt + margin

    def x_of(pos: int) -> float:
        return margin + (pos - 1) * style.spacing

    body = []
    for i, j in sorted(d.source_arcs):
        body.append(
            _arc_path(
                x_of(i),
                x_of(j),
                y_src + _GAP,
                src_depths[i, j] * style.arc_height,
                upward=False,
                color=style.color_for_pair(d.source[i - 1], d.source[j - 1]),
            )
        )
    for i, j in sorted(d.target_arcs):
        body.append(
            _arc_path(
                x_of(i),
                x_of(j),
                y_tgt - _FONT - _GAP,
                tgt_depths[i, j] * style.arc_height,
                upward=True,
                color=style.color_for_pair(d.target[i - 1], d.target[j - 1]),
            )
        )
    for i, j in sorted(d.through):
        x1, y1 = x_of(i), y_src + _GAP
        x2, y2 = x_of(j), y_tgt - _FONT - _GAP
        color = style.color_for_base(d.source[i - 1])
        mid = (y1 + y2) / 2
        body.append(
            f'<path d="M {_fmt(x1)} {_fmt(y1)} C {_fmt(x1)} {_fmt(mid)} '
            f'{_fmt(x2)} {_fmt(mid)} {_fmt(x2)} {_fmt(y2)}" '
            f'fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        if style.show_direction_arrows:
            body.append(_wire_arrow(x1, y1, x2, y2, d.source[i - 1], color))
    for pos, base in enumerate(d.source, start=1):
        body.append(_text(x_of(pos), y_src, base))
    for pos, base in enumerate(d.target, start=1):
        body.append(_text(x_of(pos), y_tgt, base))
    return _document(width, height, body)


def render_structure_text(structure: SecondaryStructure) -> str:
    """Sequence line, bracket line, and a nesting-depth sketch.

    The sketch marks each paired position with its arc's nesting depth
    (mod 10) and unpaired positions with dots; the bracket line parses
    back to the input structure.
    """
    depths = _arc_depths(structure.arcs)
    sketch = ["."] * len(structure.word)
    for (i, j), depth in depths.items():
        sketch[i - 1] = sketch[j - 1] = str(depth % 10)
    lines = [structure.word, brackets_of(structure), "".join(sketch)]
    return "\n".join(lines) + "\n"
