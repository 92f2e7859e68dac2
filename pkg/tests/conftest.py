from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ssgsolve import PositionKind, make_game, parse_game

GAME_B = "ssg 2 1\n1 AVE 0 2\n2 MIN 2 2\n"

FIG4 = """\
# n=5, r=3 example with every value equal to one
ssg 5 3
1 MIN 4 2
2 AVE 5 4
3 AVE 0 3
4 AVE 4 5
5 MIN 0 3
"""


@pytest.fixture
def game_b():
    return parse_game(GAME_B)


@pytest.fixture
def fig4():
    return parse_game(FIG4)


@st.composite
def games(draw, max_n=7, max_r=3, min_r=0):
    """Small valid games with arbitrary arcs."""
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(min(min_r, n), min(max_r, n)))
    kinds = [PositionKind.AVE] * r + [
        draw(st.sampled_from([PositionKind.MAX, PositionKind.MIN])) for _ in range(n - r)]
    kinds = draw(st.permutations(kinds))
    arc = st.integers(0, n)
    succ = [(draw(arc), draw(arc)) for _ in range(n)]
    return make_game(kinds, succ)


def frac(text):
    return Fraction(text)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
