"""Half-unit checkerboard witness for the integer-side conclusion.

Colour the plane with squares of side 1/2, dark where ``floor(2x) + floor(2y)``
is even. The signed dark-minus-light area of a rectangle factors into
``(F(x1) - F(x0)) * (F(y1) - F(y0))`` with ``F`` the unit-period triangle wave,
and vanishes on every rectangle with an integer side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import OracleInapplicable
from .geometry import INTEGER, LengthPredicate, Rect, is_integer, semi_integer
from .tiling import Tiling

HALF = Fraction(1, 2)


def triangle_wave(x: Fraction) -> Fraction:
    f = x - math.floor(x)
    return f if f <= HALF else 1 - f


def imbalance(r: Rect) -> Fraction:
    return (triangle_wave(r.x1) - triangle_wave(r.x0)) * (triangle_wave(r.y1) - triangle_wave(r.y0))


@dataclass(frozen=True)
class OracleResult:
    width_integer: bool
    height_integer: bool
    tile_imbalance_sum: Fraction
    frame_imbalance: Fraction


def theorem_oracle(t: Tiling, p: LengthPredicate = INTEGER) -> OracleResult:
    """Decide which sides of the frame are good without reducing anything.

    A multiple-of-``g`` predicate is handled by rescaling the tiling by ``1/g``.
    """
    if p.unit != 1:
        return theorem_oracle(t.scaled(1 / p.unit))
    # F(W) * F(H) = 0 only says W or H is an integer because the frame starts at 0.
    assert t.big.x0 == 0 and t.big.y0 == 0
    for i, r in enumerate(t.tiles):
        if not semi_integer(r, INTEGER):
            raise OracleInapplicable(f"tile {i} {r} has no integer side")
    total = sum((imbalance(r) for r in t.tiles), Fraction(0))
    return OracleResult(
        width_integer=is_integer(t.width),
        height_integer=is_integer(t.height),
        tile_imbalance_sum=total,
        frame_imbalance=imbalance(t.big),
    )
