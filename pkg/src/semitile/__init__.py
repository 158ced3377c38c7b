"""Exact semi-integer rectangle tilings and their reduction to a single tile."""
from .blocks import (
    AdjacencyIndex, Edge, Side, TrappedBlock, build_adjacency, end_min_side,
    find_minimal_trapped_block, find_valley, floors_under_edge, is_minimal,
    search_minimal_trapped_block,
)
from .generator import GenParams, embed_pinwheel, fixture_branch_b, fixture_pinwheel, gen_guillotine
from .geometry import INTEGER, LengthPredicate, Rect, area, height, is_integer, semi_integer, width
from .io import load_tiling, save_tiling
from .oracle import imbalance, theorem_oracle, triangle_wave
from .reduction import (
    ReductionStep, ReductionTrace, coalesce, find_coalescible, reduce_block,
    reduce_step, reduce_to_one, replay, split_horizontal, split_vertical,
)
from .svg import RenderOptions, render_svg
from .tiling import Tiling, ValidationReport, check_semi_integer_all, validate_tiling

__version__ = "0.1.0"
