"""Seeded generation of admissible tilings and named fixtures.

The random source is a plain 64-bit linear congruential generator (Knuth's
MMIX constants) so that a seed yields the same tiling in any language.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import LeafNotEmbeddable
from .geometry import Rect, as_rational, is_integer
from .tiling import Tiling

MASK64 = (1 << 64) - 1


class Lcg64:
    """``state = state * 6364136223846793005 + 1442695040888963407 (mod 2**64)``.

    Draws use the high 32 bits of the new state.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u32(self) -> int:
        self.state = (self.state * self.MULTIPLIER + self.INCREMENT) & MASK64
        return self.state >> 32

    def below(self, n: int) -> int:
        """Uniform-ish integer in ``[0, n)``; modulo bias is accepted."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u32() % n

    def chance(self, p: Fraction) -> bool:
        if p <= 0:
            return False
        if p >= 1:
            return True
        return self.below(p.denominator) < p.numerator

    def rational_in(self, lo: Fraction, hi: Fraction, max_den: int):
        """A rational strictly inside ``(lo, hi)`` with denominator <= ``max_den``, or None."""
        for d in (1 + self.below(max_den), 1 + self.below(max_den), max_den):
            first, last = math.floor(lo * d) + 1, math.ceil(hi * d) - 1
            if first <= last:
                return Fraction(first + self.below(last - first + 1), d)
        return None


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    max_tiles: int = 20
    max_denominator: int = 64
    big_width: Fraction = Fraction(12)
    big_height: Fraction = Fraction(15, 2)
    pinwheel_probability: Fraction = Fraction(1, 4)

    def __post_init__(self):
        for name in ("big_width", "big_height", "pinwheel_probability"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.max_tiles < 1 or self.max_denominator < 1:
            raise ValueError("max_tiles and max_denominator must be positive")
        if not (is_integer(self.big_width) or is_integer(self.big_height)):
            raise ValueError("the frame needs at least one integer side")
        if not 0 <= self.pinwheel_probability <= 1:
            raise ValueError("pinwheel_probability must lie in [0, 1]")


def _cuts(r: Rect, rng: Lcg64, max_den: int) -> list[tuple[str, Fraction]]:
    """Cuts that keep both halves semi-integer, one candidate per rule."""
    w, h = r.width, r.height
    out = []
    if is_integer(w):
        if w >= 2:
            out.append(("x", r.x0 + 1 + rng.below(int(w) - 1)))
        y = rng.rational_in(r.y0, r.y1, max_den)
        if y is not None:
            out.append(("y", y))
    if is_integer(h):
        if h >= 2:
            out.append(("y", r.y0 + 1 + rng.below(int(h) - 1)))
        x = rng.rational_in(r.x0, r.x1, max_den)
        if x is not None:
            out.append(("x", x))
    return out


def _pinwheel_rects(leaf: Rect, q: Fraction) -> list[Rect]:
    a, b = leaf.y0 + q, leaf.y1 - q
    u = leaf.width / 3
    x = [leaf.x0 + k * u for k in range(4)]
    return [
        Rect(x[0], leaf.y0, x[2], a),
        Rect(x[2], leaf.y0, x[3], b),
        Rect(x[1], b, x[3], leaf.y1),
        Rect(x[0], a, x[1], leaf.y1),
        Rect(x[1], a, x[2], b),
    ]


def _embeddable(leaf: Rect) -> bool:
    return is_integer(leaf.width) and leaf.width.numerator % 3 == 0


def gen_guillotine(params: GenParams) -> Tiling:
    """Random semi-integer tiling by recursive cuts, sometimes seeding pinwheels.

    A target count in ``[1, max_tiles]`` is drawn first; leaves are then cut
    (or replaced by a pinwheel) until the target is met or nothing can be cut.
    """
    rng = Lcg64(params.seed)
    big = Rect(0, 0, params.big_width, params.big_height)
    leaves = [big]
    target = 1 + rng.below(params.max_tiles)
    stuck = 0
    while len(leaves) < target and stuck < 8 * params.max_tiles:
        k = rng.below(len(leaves))
        leaf = leaves[k]
        if (len(leaves) + 4 <= target and _embeddable(leaf)
                and rng.chance(params.pinwheel_probability)):
            q = rng.rational_in(Fraction(0), leaf.height / 2, params.max_denominator)
            if q is not None:
                leaves[k:k + 1] = _pinwheel_rects(leaf, q)
                continue
        options = _cuts(leaf, rng, params.max_denominator)
        if not options:
            stuck += 1
            continue
        axis, at = options[rng.below(len(options))]
        if axis == "x":
            halves = [Rect(leaf.x0, leaf.y0, at, leaf.y1), Rect(at, leaf.y0, leaf.x1, leaf.y1)]
        else:
            halves = [Rect(leaf.x0, leaf.y0, leaf.x1, at), Rect(leaf.x0, at, leaf.x1, leaf.y1)]
        leaves[k:k + 1] = halves
    return Tiling(big, tuple(leaves))


def fixture_pinwheel(q=1) -> Tiling:
    """The five-tile pinwheel in a ``3 x 3q`` frame; no two tiles can be coalesced."""
    q = as_rational(q)
    if q <= 0:
        raise ValueError("q must be positive")
    return Tiling(Rect(0, 0, 3, 3 * q), (
        Rect(0, 0, 2, q),
        Rect(2, 0, 3, 2 * q),
        Rect(1, 2 * q, 3, 3 * q),
        Rect(0, q, 1, 3 * q),
        Rect(1, q, 2, 2 * q),
    ))


def embed_pinwheel(t: Tiling, leaf: int, q=None) -> Tiling:
    """Replace tile ``leaf`` by a pinwheel whose outer bands have height ``q``.

    The pinwheel's columns sit at thirds of the leaf width, so the leaf width
    must be an integer multiple of 3. ``q`` defaults to a third of the leaf
    height and must lie strictly between 0 and half the leaf height.
    """
    r = t.tiles[leaf]
    if not _embeddable(r):
        raise LeafNotEmbeddable(f"tile {leaf} width {r.width} is not a multiple of 3")
    q = r.height / 3 if q is None else as_rational(q)
    if not 0 < q < r.height / 2:
        raise ValueError(f"band height {q} must lie in (0, {r.height / 2})")
    tiles = list(t.tiles)
    tiles[leaf:leaf + 1] = _pinwheel_rects(r, q)
    return t.replace_tiles(tiles)


def fixture_branch_b() -> Tiling:
    """2 x 3 frame whose top block forces the width-peel branch of block surgery."""
    h = Fraction(3, 2)
    return Tiling(Rect(0, 0, 2, 3), (
        Rect(0, 2, 2, 3),
        Rect(0, h, 1, 2),
        Rect(1, 1, 2, 2),
        Rect(0, 0, 1, h),
        Rect(1, 0, 2, 1),
    ))
