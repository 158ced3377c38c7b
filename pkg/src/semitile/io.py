"""JSON documents for tilings and reduction traces."""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .errors import InvalidDocument, ParseError
from .geometry import Rect, format_rational, parse_rational
from .tiling import Tiling

_TILING_KEYS = {"width", "height", "tiles"}
_RECT_KEYS = ("x0", "y0", "x1", "y1")


def rect_to_doc(r: Rect) -> dict:
    return {k: format_rational(v) for k, v in zip(_RECT_KEYS, r.astuple())}


def rect_from_doc(doc, where: str = "rect") -> Rect:
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    extra = set(doc) - set(_RECT_KEYS)
    if extra:
        raise ParseError(f"{where}: unknown keys {sorted(extra)}")
    values = []
    for k in _RECT_KEYS:
        if k not in doc:
            raise ParseError(f"{where}.{k}: missing")
        values.append(_rational_field(doc[k], f"{where}.{k}"))
    try:
        return Rect(*values)
    except ValueError as exc:
        raise InvalidDocument(f"{where}: {exc}") from None


def _rational_field(value, where):
    if not isinstance(value, str):
        raise ParseError(f"{where}: rationals must be strings, got {value!r}")
    try:
        return parse_rational(value)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def tiling_to_doc(t: Tiling) -> dict:
    return {
        "width": format_rational(t.width),
        "height": format_rational(t.height),
        "tiles": [rect_to_doc(r) for r in t.tiles],
    }


def tiling_from_doc(doc) -> Tiling:
    if not isinstance(doc, dict):
        raise ParseError("tiling document must be a JSON object")
    extra = set(doc) - _TILING_KEYS
    if extra:
        raise ParseError(f"unknown keys {sorted(extra)}")
    for k in _TILING_KEYS:
        if k not in doc:
            raise ParseError(f"{k}: missing")
    w = _rational_field(doc["width"], "width")
    h = _rational_field(doc["height"], "height")
    if not isinstance(doc["tiles"], list):
        raise ParseError("tiles: expected a list")
    tiles = tuple(rect_from_doc(d, f"tiles[{i}]") for i, d in enumerate(doc["tiles"]))
    try:
        big = Rect(0, 0, w, h)
    except ValueError:
        raise InvalidDocument(f"frame {w}x{h} has no area") from None
    return Tiling(big, tiles)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def loads_tiling(text: str) -> Tiling:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return tiling_from_doc(doc)


def save_tiling(t: Tiling, path) -> None:
    Path(path).write_text(dumps(tiling_to_doc(t)), encoding="utf-8")


def load_tiling(path) -> Tiling:
    return loads_tiling(Path(path).read_text(encoding="utf-8"))


def tiling_hash(t: Tiling) -> str:
    canon = json.dumps(tiling_to_doc(t), separators=(",", ":"), sort_keys=True)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()
