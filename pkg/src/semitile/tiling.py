"""The Tiling value and the perfect-tiling validator."""
from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geometry import INTEGER, LengthPredicate, Rect, format_rational, semi_integer


@dataclass(frozen=True)
class Tiling:
    """A big rectangle anchored at the origin plus an ordered list of tiles.

    Construction only checks the anchor; use :func:`validate_tiling` to check
    that the tiles actually form a perfect tiling.
    """

    big: Rect
    tiles: tuple[Rect, ...] = field(default=())

    def __post_init__(self):
        if self.big.x0 != 0 or self.big.y0 != 0:
            raise ValueError("big rectangle must be anchored at the origin")
        if not isinstance(self.tiles, tuple):
            object.__setattr__(self, "tiles", tuple(self.tiles))

    @classmethod
    def normalized(cls, big: Rect, tiles: Sequence[Rect]) -> Tiling:
        """Translate ``big`` and ``tiles`` together so that ``big`` starts at the origin."""
        dx, dy = -big.x0, -big.y0
        return cls(big.translate(dx, dy), tuple(t.translate(dx, dy) for t in tiles))

    @classmethod
    def single(cls, width, height) -> Tiling:
        big = Rect(0, 0, width, height)
        return cls(big, (big,))

    @property
    def width(self) -> Fraction:
        return self.big.x1

    @property
    def height(self) -> Fraction:
        return self.big.y1

    def __len__(self):
        return len(self.tiles)

    def replace_tiles(self, tiles) -> Tiling:
        return Tiling(self.big, tuple(tiles))

    def mirrored(self) -> Tiling:
        """Left-right reflection; tile indices are preserved."""
        w = self.big.x1
        return Tiling(self.big, tuple(t.mirror_x(w) for t in self.tiles))

    def scaled(self, factor) -> Tiling:
        return Tiling(self.big.scale(factor), tuple(t.scale(factor) for t in self.tiles))


# -- violations ---------------------------------------------------------------

@dataclass(frozen=True)
class Overlap:
    i: int
    j: int

    def __str__(self):
        return f"Overlap({self.i},{self.j})"


@dataclass(frozen=True)
class Gap:
    cell: Rect

    def __str__(self):
        return f"Gap{self.cell}"


@dataclass(frozen=True)
class OutOfBounds:
    i: int

    def __str__(self):
        return f"OutOfBounds({self.i})"


@dataclass(frozen=True)
class AreaMismatch:
    expected: Fraction
    actual: Fraction

    def __str__(self):
        return f"AreaMismatch({format_rational(self.expected)},{format_rational(self.actual)})"


@dataclass(frozen=True)
class NonSemiInteger:
    i: int

    def __str__(self):
        return f"NonSemiInteger({self.i})"


Violation = Overlap | Gap | OutOfBounds | AreaMismatch | NonSemiInteger


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {type(v).__name__ for v in self.violations}

    def __str__(self):
        if self.valid:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def _merge_gaps(empty: np.ndarray, xs, ys) -> list[Rect]:
    # Row runs first, then stack runs with identical x-extent.
    runs = []
    for j in range(empty.shape[1]):
        col = empty[:, j]
        i = 0
        while i < len(col):
            if col[i]:
                start = i
                while i < len(col) and col[i]:
                    i += 1
                runs.append((start, i, j))
            else:
                i += 1
    open_runs: dict[tuple[int, int], list[int]] = {}
    merged = []
    for a, b, j in runs:
        key = (a, b)
        if key in open_runs and open_runs[key][1] == j:
            open_runs[key][1] = j + 1
        else:
            if key in open_runs:
                merged.append((a, b) + tuple(open_runs[key]))
            open_runs[key] = [j, j + 1]
    merged.extend((a, b, j0, j1) for (a, b), (j0, j1) in open_runs.items())
    merged.sort(key=lambda m: (m[2], m[0]))
    return [Rect(xs[a], ys[j0], xs[b], ys[j1]) for a, b, j0, j1 in merged]


def _integer_grid(t: Tiling) -> tuple[int, list[tuple[int, int, int, int]]]:
    """Common denominator and every rectangle (frame first) rescaled to integers."""
    rects = (t.big, *t.tiles)
    den = math.lcm(*(v.denominator for r in rects for v in r.astuple()))
    return den, [tuple(v.numerator * (den // v.denominator) for v in r.astuple()) for r in rects]


def validate_tiling(t: Tiling, p: LengthPredicate | None = None) -> ValidationReport:
    """Check that ``t.tiles`` perfectly tile ``t.big`` by coordinate compression.

    Every elementary cell of the grid spanned by all tile and frame coordinates
    must be covered exactly once inside the frame. With ``p`` given, tiles that
    are not semi-integer under ``p`` are reported as well.
    """
    big, tiles = t.big, t.tiles
    violations: list = []

    for i, r in enumerate(tiles):
        if not big.contains(r):
            violations.append(OutOfBounds(i))

    den, grid = _integer_grid(t)
    xs = sorted({c for g in grid for c in (g[0], g[2])})
    ys = sorted({c for g in grid for c in (g[1], g[3])})
    xi = {x: k for k, x in enumerate(xs)}
    yi = {y: k for k, y in enumerate(ys)}
    counts = np.zeros((len(xs) - 1, len(ys) - 1), dtype=np.int32)
    for x0, y0, x1, y1 in grid[1:]:
        counts[xi[x0]:xi[x1], yi[y0]:yi[y1]] += 1

    if (counts > 1).any():
        for i in range(len(tiles)):
            a = tiles[i]
            for j in range(i + 1, len(tiles)):
                if a.interiors_meet(tiles[j]):
                    violations.append(Overlap(i, j))

    fx0, fy0, fx1, fy1 = grid[0]
    bx0, bx1, by0, by1 = xi[fx0], xi[fx1], yi[fy0], yi[fy1]
    inside = counts[bx0:bx1, by0:by1]
    if (inside == 0).any():
        gx = [Fraction(x, den) for x in xs[bx0:bx1 + 1]]
        gy = [Fraction(y, den) for y in ys[by0:by1 + 1]]
        for cell in _merge_gaps(inside == 0, gx, gy):
            violations.append(Gap(cell))

    total = sum((x1 - x0) * (y1 - y0) for x0, y0, x1, y1 in grid[1:])
    if total != (fx1 - fx0) * (fy1 - fy0):
        violations.append(AreaMismatch(big.area, Fraction(total, den * den)))

    if p is not None:
        violations.extend(NonSemiInteger(i) for i in check_semi_integer_all(t, p))
    return ValidationReport(tuple(violations))


def check_semi_integer_all(t: Tiling, p: LengthPredicate = INTEGER) -> list[int]:
    """Indices of tiles with no side length accepted by ``p``."""
    return [i for i, r in enumerate(t.tiles) if not semi_integer(r, p)]


def elementary_cells(t: Tiling) -> list[Rect]:
    """All cells of the compressed coordinate grid inside the frame."""
    big = t.big
    xs = sorted({big.x0, big.x1, *(r.x0 for r in t.tiles), *(r.x1 for r in t.tiles)})
    ys = sorted({big.y0, big.y1, *(r.y0 for r in t.tiles), *(r.y1 for r in t.tiles)})
    xs = xs[bisect_left(xs, big.x0):bisect_left(xs, big.x1) + 1]
    ys = ys[bisect_left(ys, big.y0):bisect_left(ys, big.y1) + 1]
    return [Rect(xs[a], ys[b], xs[a + 1], ys[b + 1])
            for b in range(len(ys) - 1) for a in range(len(xs) - 1)]
