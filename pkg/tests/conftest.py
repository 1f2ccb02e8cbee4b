import random

import pytest
from hypothesis import strategies as st

from qhcount.quiver import Quiver, random_tree_quiver


@st.composite
def tree_quivers(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tree_quiver(n, random.Random(seed))


@st.composite
def quivers_with_permutation(draw, min_n=1, max_n=7):
    q = draw(tree_quivers(min_n, max_n))
    perm = draw(st.permutations(range(1, q.n + 1)))
    return q, tuple(perm)


@pytest.fixture
def rng():
    return random.Random(20240517)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
