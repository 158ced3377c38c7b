"""Exact rational numbers, rectangles and side-length predicates.

All coordinates are :class:`fractions.Fraction` values; floats are rejected so
that cut coordinates never lose precision.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import ParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings; refuse floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not lengths")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_key(value: Fraction) -> tuple[int, int]:
    return value.numerator, value.denominator


def is_integer(value: Fraction) -> bool:
    return value.denominator == 1


@dataclass(frozen=True)
class LengthPredicate:
    """Accepts lengths that are integer multiples of ``unit``.

    ``unit == 1`` is the plain integer test. Any unit works for the reduction
    because good lengths stay good under addition and subtraction.
    """

    unit: Fraction = Fraction(1)

    def __post_init__(self):
        unit = as_rational(self.unit)
        if unit <= 0:
            raise ValueError("predicate unit must be positive")
        object.__setattr__(self, "unit", unit)

    def __call__(self, length: Fraction) -> bool:
        if self.unit == 1:
            return length.denominator == 1
        return (length / self.unit).denominator == 1

    def __str__(self):
        if self.unit == 1:
            return "integer"
        return f"multiple:{format_rational(self.unit)}"

    @classmethod
    def parse(cls, text: str) -> LengthPredicate:
        if text == "integer":
            return cls()
        if text.startswith("multiple:"):
            try:
                return cls(parse_rational(text[len("multiple:"):]))
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f"unknown predicate {text!r}; use 'integer' or 'multiple:<g>'")


INTEGER = LengthPredicate()


@dataclass(frozen=True, slots=True)
class Rect:
    """Closed axis-aligned rectangle given by its lower-left and upper-right corners."""

    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction

    def __post_init__(self):
        for name in ("x0", "y0", "x1", "y1"):
            v = getattr(self, name)
            if type(v) is not Fraction:
                object.__setattr__(self, name, as_rational(v))
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError(f"degenerate rectangle {self}")

    def __hash__(self):
        # Fraction.__hash__ needs a modular inverse; canonical pairs hash the same values cheaply.
        return hash(tuple((v.numerator, v.denominator) for v in (self.x0, self.y0, self.x1, self.y1)))

    @property
    def width(self) -> Fraction:
        return self.x1 - self.x0

    @property
    def height(self) -> Fraction:
        return self.y1 - self.y0

    @property
    def area(self) -> Fraction:
        return self.width * self.height

    def translate(self, dx, dy) -> Rect:
        return Rect(self.x0 + dx, self.y0 + dy, self.x1 + dx, self.y1 + dy)

    def scale(self, sx, sy=None) -> Rect:
        sy = sx if sy is None else sy
        return Rect(self.x0 * sx, self.y0 * sy, self.x1 * sx, self.y1 * sy)

    def mirror_x(self, width) -> Rect:
        """Reflect across the vertical line ``x = width / 2``."""
        return Rect(width - self.x1, self.y0, width - self.x0, self.y1)

    def contains(self, other: Rect) -> bool:
        return (self.x0 <= other.x0 and other.x1 <= self.x1
                and self.y0 <= other.y0 and other.y1 <= self.y1)

    def interiors_meet(self, other: Rect) -> bool:
        return (self.x0 < other.x1 and other.x0 < self.x1
                and self.y0 < other.y1 and other.y0 < self.y1)

    def astuple(self):
        return (self.x0, self.y0, self.x1, self.y1)

    def __str__(self):
        return "(" + ",".join(format_rational(v) for v in self.astuple()) + ")"


def width(r: Rect) -> Fraction:
    return r.width


def height(r: Rect) -> Fraction:
    return r.height


def area(r: Rect) -> Fraction:
    return r.area


def semi_integer(r: Rect, p: LengthPredicate = INTEGER) -> bool:
    return p(r.width) or p(r.height)
