import random

import pytest
from hypothesis import strategies as st

from abslogic import formula as fm
from abslogic.absprop import literal_prop

LITERALS = [fm.Literal(a, neg) for a in "pqrs" for neg in (False, True)]


def formulas(atoms="pqr", max_leaves=8, constants=True):
    leaves = [fm.Lit(l) for l in LITERALS if l.atom in atoms]
    leaf = st.sampled_from(leaves + ([fm.TRUE, fm.FALSE] if constants else []))

    def grow(children):
        return st.builds(fm.And, children, children) | st.builds(fm.Or, children, children)

    return st.recursive(leaf, grow, max_leaves=max_leaves)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def p():
    return literal_prop("p")


@pytest.fixture
def q():
    return literal_prop("q")


@pytest.fixture
def r():
    return literal_prop("r")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
