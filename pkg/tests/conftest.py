from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dcdeform import RingCtx

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

R4 = RingCtx("xyzt")
R3 = RingCtx("xyz")


def exponents(n, max_deg):
    # a multiset of variable indices, so the total degree is bounded by construction
    return st.lists(st.integers(0, n - 1), max_size=max_deg).map(lambda idx: [idx.count(i) for i in range(n)])


coefficients = st.one_of(
    st.integers(-6, 6).map(Fraction),
    st.tuples(st.integers(-5, 5), st.integers(1, 4)).map(lambda p: Fraction(*p)),
)


def polynomials(ring, max_deg=3, max_terms=4):
    return st.dictionaries(
        exponents(ring.n, max_deg).map(tuple), coefficients, max_size=max_terms
    ).map(lambda d: _build(ring, d))


def _build(ring, terms):
    from dcdeform import Polynomial

    return Polynomial(ring, terms)


def forms(ring, degree, max_terms=4):
    """Homogeneous polynomials of a fixed degree (possibly zero)."""
    from dcdeform import monomials_of_degree

    mons = monomials_of_degree(ring, degree)
    return st.dictionaries(st.sampled_from(mons), coefficients, max_size=max_terms).map(
        lambda d: _build(ring, d)
    )


@pytest.fixture
def r4():
    return R4


@pytest.fixture
def r3():
    return R3


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
