import random

import pytest
from hypothesis import strategies as st

from bsmonomial.newton import MonomialIdeal
from bsmonomial.oracle import golden_corpus

CORPUS = {case.name: case for case in golden_corpus()}


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


def random_ideal(rng: random.Random, max_vars=3, max_gens=4, max_exp=6) -> MonomialIdeal:
    n = rng.randint(1, max_vars)
    r = rng.randint(1, max_gens)
    gens = set()
    while len(gens) < r:
        g = tuple(rng.randint(0, max_exp) for _ in range(n))
        if any(g):
            gens.add(g)
    return MonomialIdeal(n, tuple(gens))


@st.composite
def ideals(draw, max_vars=3, max_gens=4, max_exp=5):
    n = draw(st.integers(1, max_vars))
    vec = st.tuples(*[st.integers(0, max_exp)] * n).filter(any)
    gens = draw(st.lists(vec, min_size=1, max_size=max_gens, unique=True))
    return MonomialIdeal(n, tuple(gens))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(label: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
