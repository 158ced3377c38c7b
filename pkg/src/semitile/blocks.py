"""Trapped blocks: adjacency, floor partitions, valleys and the minimal-block descent.

Orientation is fixed: a roof tile sits above its floors and the floors' top
sides partition the roof's bottom side.
"""
from __future__ import annotations

import enum
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CoalescibleFound, InternalPartitionBroken, MinNotAtEnd, NoBlock
from .geometry import Rect
from .tiling import Tiling

log = logging.getLogger(__name__)

BOUNDARY = None  # roof sentinel: the top side of the big rectangle


class Side(enum.Enum):
    LEFT = "Left"
    RIGHT = "Right"


@dataclass(frozen=True)
class Edge:
    """Horizontal segment ``[x0, x1]`` at height ``y``."""

    y: Fraction
    x0: Fraction
    x1: Fraction

    @property
    def length(self) -> Fraction:
        return self.x1 - self.x0


@dataclass(frozen=True)
class TrappedBlock:
    roof: Optional[int]
    floors: tuple[int, ...]
    edge: Edge

    @property
    def k(self) -> int:
        return len(self.floors)


@dataclass(frozen=True)
class AdjacencyIndex:
    """Per-tile neighbour lists, one per side, sorted along that side."""

    below: tuple[tuple[int, ...], ...]
    above: tuple[tuple[int, ...], ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def _overlap(a0, a1, b0, b1) -> bool:
    return a0 < b1 and b0 < a1


def build_adjacency(t: Tiling) -> AdjacencyIndex:
    tiles = t.tiles
    by_top, by_bottom = defaultdict(list), defaultdict(list)
    by_right, by_left = defaultdict(list), defaultdict(list)
    for i, r in enumerate(tiles):
        by_top[r.y1].append(i)
        by_bottom[r.y0].append(i)
        by_right[r.x1].append(i)
        by_left[r.x0].append(i)

    below, above, left, right = [], [], [], []
    for r in tiles:
        below.append(tuple(sorted(
            (j for j in by_top.get(r.y0, ()) if _overlap(r.x0, r.x1, tiles[j].x0, tiles[j].x1)),
            key=lambda j: tiles[j].x0)))
        above.append(tuple(sorted(
            (j for j in by_bottom.get(r.y1, ()) if _overlap(r.x0, r.x1, tiles[j].x0, tiles[j].x1)),
            key=lambda j: tiles[j].x0)))
        left.append(tuple(sorted(
            (j for j in by_right.get(r.x0, ()) if _overlap(r.y0, r.y1, tiles[j].y0, tiles[j].y1)),
            key=lambda j: tiles[j].y0)))
        right.append(tuple(sorted(
            (j for j in by_left.get(r.x1, ()) if _overlap(r.y0, r.y1, tiles[j].y0, tiles[j].y1)),
            key=lambda j: tiles[j].y0)))
    return AdjacencyIndex(tuple(below), tuple(above), tuple(left), tuple(right))


def bottom_edge(r: Rect) -> Edge:
    return Edge(r.y0, r.x0, r.x1)


def top_edge(t: Tiling) -> Edge:
    return Edge(t.big.y1, t.big.x0, t.big.x1)


def floors_under_edge(t: Tiling, edge: Edge) -> Optional[tuple[int, ...]]:
    """Tiles whose top sides exactly partition ``edge``, left to right, or ``None``."""
    touching = [i for i, r in enumerate(t.tiles)
                if r.y1 == edge.y and _overlap(r.x0, r.x1, edge.x0, edge.x1)]
    if not touching:
        return None
    touching.sort(key=lambda i: t.tiles[i].x0)
    x = edge.x0
    for i in touching:
        r = t.tiles[i]
        if r.x0 != x:
            return None  # overhang on the left, or a hole
        x = r.x1
    if x != edge.x1:
        return None
    return tuple(touching)


def make_block(t: Tiling, roof: Optional[int]) -> Optional[TrappedBlock]:
    edge = top_edge(t) if roof is BOUNDARY else bottom_edge(t.tiles[roof])
    floors = floors_under_edge(t, edge)
    if floors is None:
        return None
    return TrappedBlock(roof, floors, edge)


def _heights(t: Tiling, floors: Sequence[int]) -> list[Fraction]:
    return [t.tiles[i].height for i in floors]


def valley_position(heights: Sequence[Fraction]) -> Optional[int]:
    for i in range(1, len(heights) - 1):
        if heights[i] < heights[i - 1] and heights[i] < heights[i + 1]:
            return i
    return None


def find_valley(b: TrappedBlock, t: Tiling) -> Optional[int]:
    """Position (into ``b.floors``) of the leftmost strict interior valley."""
    return valley_position(_heights(t, b.floors))


def min_end(heights: Sequence[Fraction]) -> Side:
    low = min(heights)
    if heights[0] == low:
        return Side.LEFT
    if heights[-1] == low:
        return Side.RIGHT
    raise MinNotAtEnd(f"minimum floor height {low} is not at an end")


def end_min_side(b: TrappedBlock, t: Tiling) -> Side:
    return min_end(_heights(t, b.floors))


def is_minimal(b: TrappedBlock, t: Tiling) -> bool:
    return b.roof is not BOUNDARY and b.k >= 2 and find_valley(b, t) is None


def _equal_neighbours(t: Tiling, floors: Sequence[int]):
    for a, b in zip(floors, floors[1:]):
        if t.tiles[a].height == t.tiles[b].height:
            return tuple(sorted((a, b)))
    return None


def search_minimal_trapped_block(t: Tiling) -> tuple[TrappedBlock, list[Fraction]]:
    """Descend from the top side of the frame to a minimal trapped block.

    Returns the block and the bottom levels of every roof visited (the frame's
    top first); the levels are strictly decreasing.
    """
    if len(t.tiles) < 2:
        raise NoBlock("a trapped block needs at least two tiles")
    start = make_block(t, BOUNDARY)
    if start is None:
        raise InternalPartitionBroken("top side of the frame is not covered")
    levels = [start.edge.y]

    # Leftmost strictly-lower-than-both-neighbours tile; the frame sides are walls.
    hs = _heights(t, start.floors)
    roof = None
    for pos, h in enumerate(hs):
        if (pos == 0 or h < hs[pos - 1]) and (pos == len(hs) - 1 or h < hs[pos + 1]):
            roof = start.floors[pos]
            break
    if roof is None:
        pair = _equal_neighbours(t, start.floors)
        raise CoalescibleFound(*pair)

    while True:
        block = make_block(t, roof)
        if block is None:
            raise InternalPartitionBroken(f"floors under tile {roof} do not partition its bottom side")
        levels.append(block.edge.y)
        log.debug("descent roof=%s level=%s floors=%s", roof, block.edge.y, block.floors)
        if levels[-1] >= levels[-2]:
            raise InternalPartitionBroken("descent levels are not strictly decreasing")
        if block.k == 1:
            raise CoalescibleFound(*sorted((roof, block.floors[0])))
        pair = _equal_neighbours(t, block.floors)
        if pair is not None:
            raise CoalescibleFound(*pair)
        pos = find_valley(block, t)
        if pos is None:
            return block, levels
        roof = block.floors[pos]


def find_minimal_trapped_block(t: Tiling) -> TrappedBlock:
    return search_minimal_trapped_block(t)[0]
