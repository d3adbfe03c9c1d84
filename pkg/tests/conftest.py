import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from grassbanach import RATIONAL, REAL64, GrassmannAlgebra, PAdicField

F3 = PAdicField(3)
F5 = PAdicField(5)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def G():
    return GrassmannAlgebra(RATIONAL)


@pytest.fixture
def GR():
    return GrassmannAlgebra(REAL64)


small_fractions = st.builds(
    Fraction,
    st.integers(-50, 50),
    st.integers(1, 30),
)
nonzero_fractions = small_fractions.filter(bool)


def rationals():
    return small_fractions.map(RATIONAL.from_fraction)


def padics(field=F3):
    return st.builds(
        lambda q, k: field.from_fraction(q * Fraction(field.p) ** k),
        small_fractions,
        st.integers(-3, 3),
    )


def reals():
    return st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False, allow_subnormal=False)


# -- acceptance report -------------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
