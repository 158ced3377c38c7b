from fractions import Fraction

import pytest

from semitile import Rect, Tiling, fixture_branch_b, fixture_pinwheel


def R(x0, y0, x1, y1):
    return Rect(*(Fraction(v) for v in (x0, y0, x1, y1)))


def brute_cover_counts(t):
    """Cover count of every elementary cell, found by testing cell centres."""
    xs = sorted({t.big.x0, t.big.x1, *(r.x0 for r in t.tiles), *(r.x1 for r in t.tiles)})
    ys = sorted({t.big.y0, t.big.y1, *(r.y0 for r in t.tiles), *(r.y1 for r in t.tiles)})
    out = {}
    for a, b in zip(xs, xs[1:]):
        for c, d in zip(ys, ys[1:]):
            cx, cy = (a + b) / 2, (c + d) / 2
            if not (t.big.x0 < cx < t.big.x1 and t.big.y0 < cy < t.big.y1):
                continue
            out[(a, c, b, d)] = sum(1 for r in t.tiles if r.x0 < cx < r.x1 and r.y0 < cy < r.y1)
    return out


@pytest.fixture
def pinwheel():
    return fixture_pinwheel(1)


@pytest.fixture
def branch_b():
    return fixture_branch_b()


@pytest.fixture
def stacked():
    return Tiling(R(0, 0, 1, 2), (R(0, 0, 1, 1), R(0, 1, 1, 2)))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
