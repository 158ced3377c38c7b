"""SVG 1.1 drawings of tilings, optionally highlighting a trapped block."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from typing import Optional

from .blocks import BOUNDARY, TrappedBlock
from .geometry import as_rational
from .tiling import Tiling

_CTX = Context(prec=20)
MARGIN = 10

STYLE = {
    "frame": "fill:none;stroke:#000000;stroke-width:2",
    "tile": "fill:#f4f1e8;stroke:#333333;stroke-width:1",
    "roof": "fill:#e8a33d;stroke:#333333;stroke-width:1.5",
    "floor": "fill:#6fa8dc;stroke:#333333;stroke-width:1.5",
}


@dataclass(frozen=True)
class RenderOptions:
    scale: Fraction = Fraction(40)
    label_tiles: bool = True
    highlight: Optional[TrappedBlock] = None

    def __post_init__(self):
        object.__setattr__(self, "scale", as_rational(self.scale))
        if self.scale <= 0:
            raise ValueError("scale must be positive")


def num(value: Fraction) -> str:
    """Display-only decimal with 20 significant digits, trailing zeros trimmed."""
    d = _CTX.divide(Decimal(value.numerator), Decimal(value.denominator))
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


def render_svg(t: Tiling, opts: RenderOptions = RenderOptions()) -> str:
    s = opts.scale
    w, h = t.width * s, t.height * s
    roof, floors = None, frozenset()
    if opts.highlight is not None:
        roof = opts.highlight.roof
        floors = frozenset(opts.highlight.floors)

    def box(r, style, extra=""):
        # SVG y grows downward; flip so the frame's origin is bottom-left.
        return (f'<rect x="{num(MARGIN + r.x0 * s)}" y="{num(MARGIN + h - r.y1 * s)}" '
                f'width="{num(r.width * s)}" height="{num(r.height * s)}" style="{style}"{extra}/>')

    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{num(w + 2 * MARGIN)}" height="{num(h + 2 * MARGIN)}" '
        f'viewBox="0 0 {num(w + 2 * MARGIN)} {num(h + 2 * MARGIN)}">',
    ]
    for i, r in enumerate(t.tiles):
        role = "roof" if i == roof and roof is not BOUNDARY else "floor" if i in floors else "tile"
        lines.append(box(r, STYLE[role], f' class="{role}" id="tile-{i}"'))
    lines.append(box(t.big, STYLE["frame"], ' class="frame"'))
    if opts.label_tiles:
        for i, r in enumerate(t.tiles):
            cx = MARGIN + (r.x0 + r.x1) / 2 * s
            cy = MARGIN + h - (r.y0 + r.y1) / 2 * s
            lines.append(f'<text x="{num(cx)}" y="{num(cy)}" font-size="12" '
                         f'text-anchor="middle" dominant-baseline="middle">{i}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
