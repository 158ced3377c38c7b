from fractions import Fraction

import pytest

from semitile import (
    GenParams, Tiling, check_semi_integer_all, embed_pinwheel, find_coalescible,
    fixture_pinwheel, gen_guillotine, reduce_to_one, validate_tiling,
)
from semitile.errors import LeafNotEmbeddable
from semitile.generator import Lcg64
from semitile.io import dumps, tiling_to_doc

from conftest import R


def test_lcg_reference_values():
    # state_1 = 0 * a + c; the draw is its high 32 bits.
    rng = Lcg64(0)
    assert rng.next_u32() == 1442695040888963407 >> 32
    a, c = 6364136223846793005, 1442695040888963407
    state = 1442695040888963407
    state = (state * a + c) % 2**64
    assert rng.next_u32() == state >> 32


def test_single_tile():
    t = gen_guillotine(GenParams(seed=1, max_tiles=1))
    assert t.tiles == (t.big,)


def test_soundness_and_determinism():
    for seed in range(200):
        params = GenParams(seed=seed, max_tiles=30, max_denominator=16)
        t = gen_guillotine(params)
        assert validate_tiling(t).valid
        assert check_semi_integer_all(t) == []
        assert len(t.tiles) <= 30
        assert dumps(tiling_to_doc(t)) == dumps(tiling_to_doc(gen_guillotine(params)))


def test_params_invariants():
    with pytest.raises(ValueError):
        GenParams(big_width=Fraction(1, 2), big_height=Fraction(3, 2))
    with pytest.raises(ValueError):
        GenParams(max_tiles=0)


@pytest.mark.parametrize("q", [Fraction(1), Fraction(1, 2), Fraction(5, 7)])
def test_fixture_pinwheel(q):
    t = fixture_pinwheel(q)
    assert t.big == R(0, 0, 3, 3 * q)
    assert validate_tiling(t).valid
    assert check_semi_integer_all(t) == []
    assert find_coalescible(t) is None


def test_pinwheel_areas():
    assert [r.area for r in fixture_pinwheel(1).tiles] == [2, 2, 2, 2, 1]


def test_embed_pinwheel():
    t = Tiling(R(0, 0, 4, 2), (R(0, 0, 3, 2), R(3, 0, 4, 2)))
    out = embed_pinwheel(t, 0)
    assert len(out.tiles) == len(t.tiles) + 4
    assert validate_tiling(out).valid and check_semi_integer_all(out) == []
    out = embed_pinwheel(t, 0, Fraction(1, 5))
    assert validate_tiling(out).valid and check_semi_integer_all(out) == []
    with pytest.raises(LeafNotEmbeddable):
        embed_pinwheel(Tiling.single(1, 1), 0)
    with pytest.raises(ValueError):
        embed_pinwheel(t, 0, Fraction(1))


def test_embed_then_reduce():
    t = Tiling(R(0, 0, 6, Fraction(5, 2)), (R(0, 0, 6, 1), R(0, 1, 6, Fraction(5, 2))))
    t = embed_pinwheel(t, 1, Fraction(1, 3))
    t = embed_pinwheel(t, 0)
    trace = reduce_to_one(t)
    assert trace.final == t.big
