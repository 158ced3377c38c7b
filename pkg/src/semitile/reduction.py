"""Coalescing, block surgery and the tile-count reduction loop.

Index conventions shared by every surgery primitive, so traces replay:

* a split keeps the lower (or left) half at the tile's index and inserts the
  upper (or right) half right after it;
* a coalesce stores the union at the smaller index and drops the larger one.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from . import io
from .blocks import (
    BOUNDARY, Edge, Side, TrappedBlock, floors_under_edge, min_end,
    search_minimal_trapped_block, valley_position,
)
from .errors import (
    AlreadySingle, CutOutsideTile, InternalPartitionBroken, InvalidTiling,
    NotCoalescible, NotMinimal, NotSemiInteger, TilingError,
)
from .geometry import INTEGER, LengthPredicate, Rect, format_rational, parse_rational, rational_key, semi_integer
from .tiling import Tiling, check_semi_integer_all, validate_tiling

log = logging.getLogger(__name__)

INTEGER_HEIGHT = "IntegerHeight"
INTEGER_WIDTH_PEEL = "IntegerWidthPeel"
TERMINAL_COALESCE = "TerminalCoalesce"


class PreservationFailure(TilingError):
    """An intermediate tiling lost validity or semi-integrality."""


# -- Operation C --------------------------------------------------------------

def _shares_full_edge(a: Rect, b: Rect) -> bool:
    if a.x0 == b.x0 and a.x1 == b.x1:
        return a.y1 == b.y0 or b.y1 == a.y0
    if a.y0 == b.y0 and a.y1 == b.y1:
        return a.x1 == b.x0 or b.x1 == a.x0
    return False


def coalescible_pairs(t: Tiling) -> list[tuple[int, int]]:
    """Every pair of tiles whose union is a rectangle, sorted."""
    k = rational_key
    tops = {(k(r.x0), k(r.x1), k(r.y1)): i for i, r in enumerate(t.tiles)}
    rights = {(k(r.y0), k(r.y1), k(r.x1)): i for i, r in enumerate(t.tiles)}
    pairs = []
    for j, r in enumerate(t.tiles):
        i = tops.get((k(r.x0), k(r.x1), k(r.y0)))
        if i is not None:
            pairs.append((min(i, j), max(i, j)))
        i = rights.get((k(r.y0), k(r.y1), k(r.x0)))
        if i is not None:
            pairs.append((min(i, j), max(i, j)))
    return sorted(pairs)


def find_coalescible(t: Tiling) -> Optional[tuple[int, int]]:
    pairs = coalescible_pairs(t)
    return pairs[0] if pairs else None


def merge_rects(a: Rect, b: Rect) -> Rect:
    if not _shares_full_edge(a, b):
        raise NotCoalescible(f"{a} and {b} do not share a complete edge")
    return Rect(min(a.x0, b.x0), min(a.y0, b.y0), max(a.x1, b.x1), max(a.y1, b.y1))


def coalesce(t: Tiling, i: int, j: int) -> Tiling:
    if i == j:
        raise NotCoalescible("a tile cannot coalesce with itself")
    merged = merge_rects(t.tiles[i], t.tiles[j])
    lo, hi = min(i, j), max(i, j)
    tiles = list(t.tiles)
    tiles[lo] = merged
    del tiles[hi]
    return t.replace_tiles(tiles)


def split_horizontal(t: Tiling, i: int, y) -> Tiling:
    r = t.tiles[i]
    y = Fraction(y)
    if not r.y0 < y < r.y1:
        raise CutOutsideTile(f"y={y} is not strictly inside tile {i} {r}")
    tiles = list(t.tiles)
    tiles[i:i + 1] = [Rect(r.x0, r.y0, r.x1, y), Rect(r.x0, y, r.x1, r.y1)]
    return t.replace_tiles(tiles)


def split_vertical(t: Tiling, i: int, x) -> Tiling:
    r = t.tiles[i]
    x = Fraction(x)
    if not r.x0 < x < r.x1:
        raise CutOutsideTile(f"x={x} is not strictly inside tile {i} {r}")
    tiles = list(t.tiles)
    tiles[i:i + 1] = [Rect(r.x0, r.y0, x, r.y1), Rect(x, r.y0, r.x1, r.y1)]
    return t.replace_tiles(tiles)


# -- trace records ------------------------------------------------------------

@dataclass(frozen=True)
class Cut:
    tile: int
    axis: str  # "y" for a horizontal cut line, "x" for a vertical one
    at: Fraction


@dataclass(frozen=True)
class Merge:
    i: int
    j: int
    merged: Rect


SurgeryOp = Union[Cut, Merge]


def apply_op(t: Tiling, op: SurgeryOp) -> Tiling:
    if isinstance(op, Cut):
        split = split_horizontal if op.axis == "y" else split_vertical
        return split(t, op.tile, op.at)
    out = coalesce(t, op.i, op.j)
    if out.tiles[min(op.i, op.j)] != op.merged:
        raise InternalPartitionBroken(f"replayed merge of {op.i},{op.j} disagrees with the record")
    return out


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "Coalesce" or "BlockSurgery"
    ops: tuple[SurgeryOp, ...]
    tiles_before: int
    tiles_after: int
    tiling_hash: str
    block: Optional[TrappedBlock] = None
    branch: Optional[str] = None
    phases: tuple[str, ...] = ()
    descent: tuple[Fraction, ...] = ()
    index_map: tuple[Optional[int], ...] = ()

    @property
    def cuts(self) -> list[Cut]:
        return [op for op in self.ops if isinstance(op, Cut)]

    @property
    def coalesces(self) -> list[tuple[int, int]]:
        return [(op.i, op.j) for op in self.ops if isinstance(op, Merge)]


@dataclass
class ReductionTrace:
    initial: Tiling
    steps: list[ReductionStep] = field(default_factory=list)
    final: Optional[Rect] = None
    predicate: LengthPredicate = INTEGER


# -- block surgery ------------------------------------------------------------

class _Workspace:
    """Mutable tile list that records every primitive applied to it.

    Tiles are addressed by value: in a valid tiling no two tiles are equal.
    """

    def __init__(self, t: Tiling):
        self.tiling = t
        self.ops: list[SurgeryOp] = []

    def _index(self, r: Rect) -> int:
        return self.tiling.tiles.index(r)

    def split_h(self, r: Rect, y) -> tuple[Rect, Rect]:
        i = self._index(r)
        self.tiling = split_horizontal(self.tiling, i, y)
        self.ops.append(Cut(i, "y", Fraction(y)))
        return self.tiling.tiles[i], self.tiling.tiles[i + 1]

    def split_v(self, r: Rect, x) -> tuple[Rect, Rect]:
        i = self._index(r)
        self.tiling = split_vertical(self.tiling, i, x)
        self.ops.append(Cut(i, "x", Fraction(x)))
        return self.tiling.tiles[i], self.tiling.tiles[i + 1]

    def merge(self, a: Rect, b: Rect) -> Rect:
        i, j = self._index(a), self._index(b)
        try:
            self.tiling = coalesce(self.tiling, i, j)
        except NotCoalescible as exc:
            raise InternalPartitionBroken(str(exc)) from None
        merged = self.tiling.tiles[min(i, j)]
        self.ops.append(Merge(i, j, merged))
        return merged


class _Frame:
    """Left-right reflection used to run the right-end case as the left-end case."""

    def __init__(self, width: Fraction, mirrored: bool):
        self.width = width
        self.mirrored = mirrored

    def rect(self, r: Rect) -> Rect:
        return r.mirror_x(self.width) if self.mirrored else r

    def x(self, local_x: Fraction) -> Fraction:
        return self.width - local_x if self.mirrored else local_x

    def order(self, floors: list) -> list:
        return floors[::-1] if self.mirrored else list(floors)


def _check_partition(roof: Rect, floors: list[Rect]) -> None:
    x = roof.x0
    for f in floors:
        if f.y1 != roof.y0 or f.x0 != x:
            raise InternalPartitionBroken(f"floors no longer partition the bottom of {roof}")
        x = f.x1
    if x != roof.x1:
        raise InternalPartitionBroken(f"floors no longer partition the bottom of {roof}")


def reduce_block(t: Tiling, b: TrappedBlock, p: LengthPredicate = INTEGER,
                 descent=()) -> tuple[Tiling, ReductionStep]:
    """Remove at least one tile from a minimal trapped block, keeping every tile good.

    The end floor of minimum height is merged into the roof either through a
    full-width strip (its height is good) or by peeling a roof column above
    it (its width is good) and repeating on the shrunken block.
    """
    if b.roof is BOUNDARY:
        raise NotMinimal("the frame boundary cannot act as a roof for surgery")
    if floors_under_edge(t, Edge(t.tiles[b.roof].y0, t.tiles[b.roof].x0, t.tiles[b.roof].x1)) != b.floors:
        raise NotMinimal("floors do not partition the roof's bottom side")
    for i in (b.roof, *b.floors):
        if not semi_integer(t.tiles[i], p):
            raise NotSemiInteger(i)
    if valley_position([t.tiles[i].height for i in b.floors]) is not None:
        raise NotMinimal("block has an interior valley")

    ws = _Workspace(t)
    roof = t.tiles[b.roof]
    floors = [t.tiles[i] for i in b.floors]
    phases: list[str] = []
    while True:
        if len(floors) == 1:
            phases.append(TERMINAL_COALESCE)
            ws.merge(floors[0], roof)
            break
        side = min_end([f.height for f in floors])
        frame = _Frame(t.width, side is Side.RIGHT)
        local = frame.order(floors)  # end-min floor first
        end = local[0]
        if p(end.height):
            phases.append(INTEGER_HEIGHT)
            pieces = []
            for f in local[1:]:
                if f.height > end.height:
                    _, upper = ws.split_h(f, end.y0)
                    pieces.append(upper)
                else:
                    pieces.append(f)
            strip = end
            for piece in pieces:
                strip = ws.merge(strip, piece)
            ws.merge(strip, roof)
            break
        phases.append(INTEGER_WIDTH_PEEL)
        cut = frame.x(frame.rect(end).x1)
        a, c = ws.split_v(roof, cut)
        above, roof = (a, c) if a.x0 == end.x0 else (c, a)
        ws.merge(end, above)
        floors = [f for f in floors if f is not end]
        _check_partition(roof, floors)

    out = ws.tiling
    after = {r: k for k, r in enumerate(out.tiles)}
    step = ReductionStep(
        kind="BlockSurgery",
        ops=tuple(ws.ops),
        tiles_before=len(t.tiles),
        tiles_after=len(out.tiles),
        tiling_hash=io.tiling_hash(out),
        block=b,
        branch=phases[0],
        phases=tuple(phases),
        descent=tuple(descent),
        index_map=tuple(after.get(r) for r in t.tiles),
    )
    if step.tiles_after >= step.tiles_before:
        raise InternalPartitionBroken("block surgery did not reduce the tile count")
    return out, step


# -- the reduction loop -------------------------------------------------------

def _require_admissible(t: Tiling, p: LengthPredicate) -> None:
    report = validate_tiling(t)
    if not report.valid:
        raise InvalidTiling(report)
    bad = check_semi_integer_all(t, p)
    if bad:
        raise NotSemiInteger(bad[0])


def reduce_step(t: Tiling, p: LengthPredicate = INTEGER, validate: bool = True) -> tuple[Tiling, ReductionStep]:
    """One tile-count-reducing move: Operation C if available, else block surgery."""
    if len(t.tiles) <= 1:
        raise AlreadySingle("tiling already has a single tile")
    if validate:
        _require_admissible(t, p)
    pair = find_coalescible(t)
    if pair is not None:
        i, j = pair
        out = coalesce(t, i, j)
        merged = out.tiles[i]
        after = {r: k for k, r in enumerate(out.tiles)}
        step = ReductionStep(
            kind="Coalesce",
            ops=(Merge(i, j, merged),),
            tiles_before=len(t.tiles),
            tiles_after=len(out.tiles),
            tiling_hash=io.tiling_hash(out),
            index_map=tuple(after.get(r, i if k in pair else None) for k, r in enumerate(t.tiles)),
        )
        return out, step
    block, levels = search_minimal_trapped_block(t)
    return reduce_block(t, block, p, descent=levels)


def reduce_to_one(t: Tiling, p: LengthPredicate = INTEGER, check_each: bool = True,
                  on_step: Callable[[Tiling, ReductionStep], None] | None = None) -> ReductionTrace:
    """Reduce an admissible tiling to a single tile, recording every step.

    With ``check_each`` every intermediate tiling is validated and checked for
    semi-integrality; a breach raises :class:`PreservationFailure`.
    """
    _require_admissible(t, p)
    trace = ReductionTrace(initial=t, predicate=p)
    cur = t
    while len(cur.tiles) > 1:
        cur, step = reduce_step(cur, p, validate=False)
        log.info("step %d: %s %d -> %d", len(trace.steps) + 1, step.kind, step.tiles_before, step.tiles_after)
        if check_each:
            report = validate_tiling(cur, p)
            if not report.valid:
                raise PreservationFailure(f"after step {len(trace.steps) + 1}: {report}")
        trace.steps.append(step)
        if on_step is not None:
            on_step(cur, step)
    trace.final = cur.tiles[0]
    if trace.final != t.big:
        raise PreservationFailure(f"final tile {trace.final} differs from the frame {t.big}")
    if check_each and not semi_integer(trace.final, p):
        raise PreservationFailure("final rectangle is not semi-integer")
    return trace


def replay(trace: ReductionTrace, on_tiling: Callable[[Tiling], None] | None = None) -> Tiling:
    """Re-apply every recorded primitive; ``on_tiling`` sees every intermediate."""
    cur = trace.initial
    for n, step in enumerate(trace.steps, 1):
        if len(cur.tiles) != step.tiles_before:
            raise InternalPartitionBroken(f"step {n}: expected {step.tiles_before} tiles, found {len(cur.tiles)}")
        for op in step.ops:
            cur = apply_op(cur, op)
            if on_tiling is not None:
                on_tiling(cur)
        if len(cur.tiles) != step.tiles_after or io.tiling_hash(cur) != step.tiling_hash:
            raise InternalPartitionBroken(f"step {n}: replay diverged from the record")
    if trace.final is not None and cur.tiles != (trace.final,):
        raise InternalPartitionBroken("replay does not end at the recorded final rectangle")
    return cur


# -- trace documents ----------------------------------------------------------

def _op_to_doc(op: SurgeryOp) -> dict:
    if isinstance(op, Cut):
        return {"op": "cut", "tile": op.tile, "axis": op.axis, "at": format_rational(op.at)}
    return {"op": "coalesce", "i": op.i, "j": op.j, "merged": io.rect_to_doc(op.merged)}


def _op_from_doc(d: dict) -> SurgeryOp:
    if d["op"] == "cut":
        return Cut(d["tile"], d["axis"], parse_rational(d["at"]))
    return Merge(d["i"], d["j"], io.rect_from_doc(d["merged"]))


def step_to_doc(s: ReductionStep) -> dict:
    doc = {
        "kind": s.kind,
        "tiles_before": s.tiles_before,
        "tiles_after": s.tiles_after,
        "ops": [_op_to_doc(op) for op in s.ops],
        "cuts": [{"tile": c.tile, "axis": c.axis, "at": format_rational(c.at)} for c in s.cuts],
        "coalesces": [list(pair) for pair in s.coalesces],
        "index_map": list(s.index_map),
        "tiling_hash": s.tiling_hash,
    }
    if s.kind == "Coalesce":
        merge = s.ops[0]
        doc.update(i=merge.i, j=merge.j, merged=io.rect_to_doc(merge.merged))
    else:
        e = s.block.edge
        doc.update(
            block={"roof": s.block.roof, "floors": list(s.block.floors),
                   "shared_edge": {"y": format_rational(e.y), "x0": format_rational(e.x0),
                                   "x1": format_rational(e.x1)}},
            branch=s.branch,
            phases=list(s.phases),
            descent=[format_rational(y) for y in s.descent],
        )
    return doc


def step_from_doc(d: dict) -> ReductionStep:
    block = None
    if d["kind"] == "BlockSurgery":
        b, e = d["block"], d["block"]["shared_edge"]
        block = TrappedBlock(b["roof"], tuple(b["floors"]),
                             Edge(parse_rational(e["y"]), parse_rational(e["x0"]), parse_rational(e["x1"])))
    return ReductionStep(
        kind=d["kind"],
        ops=tuple(_op_from_doc(o) for o in d["ops"]),
        tiles_before=d["tiles_before"],
        tiles_after=d["tiles_after"],
        tiling_hash=d["tiling_hash"],
        block=block,
        branch=d.get("branch"),
        phases=tuple(d.get("phases", ())),
        descent=tuple(parse_rational(y) for y in d.get("descent", ())),
        index_map=tuple(d["index_map"]),
    )


def trace_to_doc(trace: ReductionTrace) -> dict:
    return {
        "predicate": str(trace.predicate),
        "initial": io.tiling_to_doc(trace.initial),
        "steps": [step_to_doc(s) for s in trace.steps],
        "final": io.rect_to_doc(trace.final) if trace.final is not None else None,
    }


def trace_from_doc(doc: dict) -> ReductionTrace:
    return ReductionTrace(
        initial=io.tiling_from_doc(doc["initial"]),
        steps=[step_from_doc(s) for s in doc["steps"]],
        final=io.rect_from_doc(doc["final"]) if doc["final"] is not None else None,
        predicate=LengthPredicate.parse(doc["predicate"]),
    )
