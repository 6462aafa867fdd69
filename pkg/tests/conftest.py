from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lisbon.exactpoly import SigmaPoly
from lisbon.weyl import WeylOp

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_fraction = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def exponents(k, max_deg=3):
    return st.tuples(*[st.integers(0, max_deg) for _ in range(k)])


@st.composite
def sigma_polys(draw, k=None, max_terms=4, max_deg=3):
    k = draw(st.integers(1, 3)) if k is None else k
    terms = draw(st.dictionaries(exponents(k, max_deg), small_fraction, max_size=max_terms))
    return SigmaPoly(k, terms)


@st.composite
def weyl_ops(draw, k, max_terms=3, max_deg=2):
    keys = st.tuples(exponents(k, max_deg), exponents(k, max_deg))
    terms = draw(st.dictionaries(keys, st.integers(-4, 4).filter(bool), max_size=max_terms))
    return WeylOp(k, terms)


@pytest.fixture
def sigma32():
    from lisbon.polyroots import SigmaPoint

    return SigmaPoint([3, 2])


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
