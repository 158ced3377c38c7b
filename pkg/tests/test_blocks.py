from fractions import Fraction

import pytest

from semitile import GenParams, Tiling, build_adjacency, fixture_pinwheel, gen_guillotine, reduce_to_one
from semitile.blocks import (
    BOUNDARY, Edge, Side, TrappedBlock, bottom_edge, end_min_side, find_minimal_trapped_block,
    find_valley, floors_under_edge, is_minimal, min_end, search_minimal_trapped_block, valley_position,
)
from semitile.errors import CoalescibleFound, MinNotAtEnd, NoBlock
from semitile.reduction import find_coalescible

from conftest import R
from oracles import all_trapped_blocks, brute_neighbours, is_minimal_block

A, B, C, D, E = range(5)  # pinwheel tile indices


def test_adjacency_pinwheel(pinwheel):
    adj = build_adjacency(pinwheel)
    assert adj.below[C] == (E, B)
    assert pinwheel.tiles[E] == R(1, 1, 2, 2) and pinwheel.tiles[B] == R(2, 0, 3, 2)
    for i in range(5):
        brute = brute_neighbours(pinwheel.tiles, i)
        assert list(adj.below[i]) == brute["below"]
        assert list(adj.above[i]) == brute["above"]
        assert list(adj.left[i]) == brute["left"]
        assert list(adj.right[i]) == brute["right"]


def test_adjacency_trivial(stacked):
    single = Tiling.single(2, 3)
    adj = build_adjacency(single)
    assert adj.below == adj.above == adj.left == adj.right == ((),)
    adj = build_adjacency(stacked)
    assert adj.above[0] == (1,) and adj.below[1] == (0,)
    assert adj.below[0] == () and adj.above[1] == ()


@pytest.mark.parametrize("seed", range(25))
def test_adjacency_matches_brute_force(seed):
    t = gen_guillotine(GenParams(seed=seed, max_tiles=20, pinwheel_probability=Fraction(1, 2)))
    adj = build_adjacency(t)
    for i in range(len(t.tiles)):
        brute = brute_neighbours(t.tiles, i)
        assert (list(adj.below[i]), list(adj.above[i]), list(adj.left[i]), list(adj.right[i])) == \
            (brute["below"], brute["above"], brute["left"], brute["right"])


def test_floors_under_edge(pinwheel):
    assert floors_under_edge(pinwheel, bottom_edge(pinwheel.tiles[C])) == (E, B)
    # A spans x in [0, 2] and overhangs the bottom of E on the left.
    assert floors_under_edge(pinwheel, bottom_edge(pinwheel.tiles[E])) is None
    assert floors_under_edge(pinwheel, Edge(Fraction(0), Fraction(0), Fraction(3))) is None


def _floors_with_heights(heights):
    # Only floor heights matter for the valley and end tests.
    tiles = [R(0, 10, len(heights), 11)]
    tiles += [R(k, 10 - h, k + 1, 10) for k, h in enumerate(heights)]
    t = Tiling(R(0, 0, len(heights), 11), tuple(tiles))
    return t, TrappedBlock(0, tuple(range(1, len(heights) + 1)), Edge(Fraction(10), Fraction(0), Fraction(len(heights))))


@pytest.mark.parametrize("heights, expected", [([2, 1], None), ([3, 1, 2], 1), ([1, 2, 3], None)])
def test_find_valley(heights, expected):
    t, b = _floors_with_heights(heights)
    assert find_valley(b, t) == expected


@pytest.mark.parametrize("heights, expected", [([1, 2], Side.LEFT), ([3, 2, 1], Side.RIGHT), ([1, 2, 1], Side.LEFT)])
def test_end_min_side(heights, expected):
    t, b = _floors_with_heights(heights)
    assert end_min_side(b, t) is expected


def test_end_min_side_rejects_non_minimal():
    with pytest.raises(MinNotAtEnd):
        min_end([2, 1, 1, 2])
    assert valley_position([2, 1, 1, 2]) is None


def test_minimal_block_pinwheel(pinwheel):
    block, levels = search_minimal_trapped_block(pinwheel)
    assert block.roof == C and block.floors == (E, B)
    assert levels == [3, 2]
    assert is_minimal(block, pinwheel)


def test_minimal_block_errors():
    with pytest.raises(CoalescibleFound) as info:
        find_minimal_trapped_block(Tiling(R(0, 0, 2, 1), (R(0, 0, 1, 1), R(1, 0, 2, 1))))
    assert info.value.pair == (0, 1)
    with pytest.raises(NoBlock):
        find_minimal_trapped_block(Tiling.single(1, 1))


def _case2_inputs(max_n, seeds):
    """Tilings with no coalescible pair, taken from inputs of block-surgery steps."""
    found = []
    for seed in seeds:
        t = gen_guillotine(GenParams(seed=seed, max_tiles=30, pinwheel_probability=Fraction(1, 2)))
        seen = []

        def grab(cur, step, _prev=[t]):
            if step.kind == "BlockSurgery" and step.tiles_before <= max_n:
                seen.append(_prev[0])
            _prev[0] = cur
        reduce_to_one(t, on_step=grab)
        found.extend(seen)
    return found


def test_descent_matches_exhaustive_enumeration():
    inputs = _case2_inputs(8, range(120)) + [fixture_pinwheel(1), fixture_pinwheel(Fraction(1, 2))]
    assert len(inputs) >= 20
    for t in inputs:
        assert find_coalescible(t) is None
        candidates = all_trapped_blocks(t.tiles)
        minimal = [(r, f) for r, f in candidates if len(f) >= 2 and is_minimal_block(t.tiles, f)]
        assert minimal, "at least one minimal trapped block must exist"
        block, levels = search_minimal_trapped_block(t)
        assert (block.roof, block.floors) in minimal
        assert all(a > b for a, b in zip(levels, levels[1:]))
        hs = [t.tiles[j].height for j in block.floors]
        assert min(hs) in (hs[0], hs[-1])
        assert all(a != b for a, b in zip(hs, hs[1:]))
        assert sum(t.tiles[j].width for j in block.floors) == t.tiles[block.roof].width
        assert block.roof is not BOUNDARY
