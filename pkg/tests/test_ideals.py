import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import R3, R4, forms
from dcdeform import (
    DEGREVLEX,
    LEX,
    EliminatesAllVariables,
    Ideal,
    NegativeExponent,
    NegativeGenus,
    NotACurve,
    NotHomogeneous,
    RingCtx,
    RingMismatch,
    ZeroInput,
    curve_genus,
    eliminate,
    hilbert_function,
    hilbert_polynomial,
    ideal_intersection,
    ideal_power,
    ideal_sum,
    intersect_all,
    saturation,
    verify_certificate,
)
from dcdeform import oracles
from dcdeform.ideals import (
    count_standard_monomials,
    format_hilbert_polynomial,
    irrelevant_saturation,
    variable_saturation,
)

R2 = RingCtx("xy")
p2, p3, p4 = R2.parse, R3.parse, R4.parse


def I(ring, *srcs):
    return Ideal([ring.parse(s) for s in srcs], ring)


def random_monomial_ideal(rng, n):
    gens = []
    for _ in range(rng.randint(1, 5)):
        e = [0] * n
        for _ in range(rng.randint(1, 5)):
            e[rng.randrange(n)] += 1
        gens.append(tuple(e))
    return gens


def random_form(rng, ring, d, terms=3):
    from dcdeform import monomials_of_degree

    mons = monomials_of_degree(ring, d)
    f = ring.zero()
    for m in rng.sample(mons, min(terms, len(mons))):
        f = f + ring.monomial(m, rng.choice([-3, -2, -1, 1, 2, 3]))
    return f


# -- equality, sums, powers --------------------------------------------------------------


def test_equality_is_extensional():
    assert I(R3, "x", "y") == I(R3, "x + y", "x - y")
    assert I(R3, "x^2", "x*y") != I(R3, "x")
    assert hash(I(R3, "x", "y")) == hash(I(R3, "y", "x + 2*y"))


def test_sum_examples():
    assert ideal_sum(I(R3, "x"), I(R3, "y")) == I(R3, "x", "y")
    A = I(R3, "x^2 - y*z", "x*y")
    assert ideal_sum(A, Ideal.zero(R3)) == A
    with pytest.raises(RingMismatch):
        ideal_sum(I(R3, "x"), I(R2, "x"))


@given(st.lists(forms(R3, 2), min_size=1, max_size=2), st.lists(forms(R3, 2), min_size=1, max_size=2))
def test_sum_contains_both(a, b):
    A, B = Ideal(a, R3), Ideal(b, R3)
    S = ideal_sum(A, B)
    assert S.contains_ideal(A) and S.contains_ideal(B)


def test_power_examples():
    P = ideal_power(I(R4, "x", "y", "z"), 4)
    assert len(P.generators) == comb(6, 2) == 15
    assert all(g.degree() == 4 and len(g) == 1 for g in P.generators)
    A = I(R3, "x^2 + y", "z")
    assert ideal_power(A, 1) == A
    assert ideal_power(A, 0).is_unit()
    with pytest.raises(NegativeExponent):
        ideal_power(A, -1)


def test_square_of_curve_ideal():
    q = p4("y^2*z^2 + y^2*t^2 + z^2*t^2")
    x = R4.gen("x")
    sq = ideal_power(Ideal([x, q], R4), 2)
    assert set(sq.generators) == {x * x, x * q, q * q}


# -- intersection and elimination -----------------------------------------------------------


def test_intersection_examples():
    assert ideal_intersection(I(R3, "x"), I(R3, "y")) == I(R3, "x*y")
    A = I(R3, "x^2 - y*z", "y^3")
    assert ideal_intersection(A, Ideal.unit(R3)) == A
    assert ideal_intersection(Ideal.unit(R3), A) == A


def test_intersection_degree_pieces_by_brute_force():
    C = ideal_intersection(I(R3, "x"), I(R3, "y"))
    for d in range(5):
        assert comb(d + 2, 2) - hilbert_function(C, d) == oracles.intersection_dimension([[p3("x")], [p3("y")]], 3, d)


@pytest.mark.parametrize("seed", range(25))
def test_intersection_matches_graded_oracle(seed):
    rng = random.Random(1000 + seed)
    A = Ideal([random_form(rng, R3, rng.randint(1, 3)) for _ in range(rng.randint(1, 2))], R3)
    B = Ideal([random_form(rng, R3, rng.randint(1, 3)) for _ in range(rng.randint(1, 2))], R3)
    C = ideal_intersection(A, B)
    assert verify_certificate(C.basis())
    for d in range(7):
        want = oracles.intersection_dimension([A.generators, B.generators], 3, d)
        assert comb(d + 2, 2) - hilbert_function(C, d) == want
    assert A.contains_ideal(C) and B.contains_ideal(C)
    for a in A.generators:
        for b in B.generators:
            assert C.contains(a * b)


@given(st.lists(forms(R3, 2, 3), min_size=1, max_size=2), st.lists(forms(R3, 1, 3), min_size=1, max_size=2))
def test_truncated_intersection_agrees_below_bound(a, b):
    A, B = Ideal(a, R3), Ideal(b, R3)
    full = ideal_intersection(A, B)
    part = ideal_intersection(A, B, degree_bound=4)
    for d in range(5):
        assert hilbert_function(full, d) == hilbert_function(part, d)


def test_intersect_all_needs_input():
    with pytest.raises(ValueError):
        intersect_all([])


def test_eliminate_examples():
    R = RingCtx("hxy")
    helper = Ideal([R.parse("h*x"), R.parse("(1 - h)*y")], R)
    assert eliminate(helper, ["h"]) == Ideal([R.parse("x*y")], R)
    A = I(R3, "x^2 - y", "y*z")
    assert eliminate(A, []) == A
    assert eliminate(I(R2, "x - y"), ["y"]).is_zero()
    with pytest.raises(EliminatesAllVariables):
        eliminate(A, [0, 1, 2])


def test_eliminate_twisted_cubic_parametrisation():
    R = RingCtx(["s", "u", "x", "y", "z", "t"])
    par = Ideal([R.parse(s) for s in ("x - s^3", "y - s^2*u", "z - s*u^2", "t - u^3")], R)
    E = eliminate(par, ["s", "u"])
    cubic = Ideal([R.parse(s) for s in ("x*z - y^2", "y*t - z^2", "x*t - y*z")], R)
    assert E == cubic


# -- saturation ------------------------------------------------------------------------------


def test_saturation_examples():
    assert saturation(I(R2, "x^2*y"), p2("x")) == I(R2, "y")
    A = I(R3, "x^2 - y*z", "x*y")
    assert saturation(A, R3.one()) == A
    with pytest.raises(ZeroInput):
        saturation(A, R3.zero())


def test_saturating_square_by_linear_form_gives_unit():
    # (x+y)^2 already lies in (x,y)^2, so every element saturates to the unit ideal
    A = ideal_power(I(R3, "x", "y"), 2)
    assert (p3("x + y") ** 2) in A
    assert saturation(A, p3("x + y")).is_unit()


@given(st.lists(forms(R3, 2, 3), min_size=1, max_size=3), forms(R3, 1, 2))
def test_saturation_contains_and_is_idempotent(gens, f):
    if f.is_zero():
        return
    A = Ideal(gens, R3)
    S = saturation(A, f)
    assert S.contains_ideal(A)
    assert saturation(S, f) == S


@given(st.lists(forms(R3, 2, 3), min_size=1, max_size=3), st.integers(0, 2))
def test_variable_saturation_matches_helper_variable_route(gens, i):
    A = Ideal(gens, R3)
    assert variable_saturation(A, i) == saturation(A, R3.gen(i))


def test_irrelevant_saturation_drops_embedded_point():
    A = I(R2, "x^2", "x*y")
    assert irrelevant_saturation(A) == I(R2, "x")
    B = I(R3, "x", "y")
    assert irrelevant_saturation(B) == B
    assert irrelevant_saturation(I(R3, "x", "y", "z")).is_unit()


# -- Hilbert functions ---------------------------------------------------------------------------


def test_hilbert_function_examples():
    assert hilbert_function(I(R4, "x^7", "y^7", "z^7", "t^7"), 8) == 165 - 16 == 149
    assert hilbert_function(I(R3, "x^5", "y^5", "z^5"), 6) == 28 - 9 == 19
    for d in range(4):
        assert hilbert_function(Ideal.unit(R4), d) == 0
    with pytest.raises(NotHomogeneous):
        hilbert_function(I(R3, "x^2 + y"), 2)


@pytest.mark.parametrize("seed", range(50))
def test_hilbert_function_matches_enumeration(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    ring = RingCtx([f"x{i}" for i in range(n)])
    gens = random_monomial_ideal(rng, n)
    A = Ideal([ring.monomial(e) for e in gens], ring)
    for d in range(7):
        assert hilbert_function(A, d) == oracles.monomial_quotient_count(gens, n, d)


@given(st.lists(forms(R3, 2, 3), min_size=1, max_size=3), st.integers(0, 6))
def test_hilbert_function_is_order_independent(gens, d):
    A = Ideal(gens, R3)
    assert hilbert_function(A, d, DEGREVLEX) == hilbert_function(A, d, LEX)


@given(st.lists(forms(R3, 2, 3), min_size=1, max_size=3), st.integers(0, 5))
def test_graded_pieces_add_up(gens, d):
    A = Ideal(gens, R3)
    assert hilbert_function(A, d) + oracles.graded_dimension(gens, 3, d) == comb(d + 2, 2)


def test_standard_monomial_count_directly():
    assert count_standard_monomials([(1, 0), (0, 2)], R2, 1) == 1
    assert count_standard_monomials([(1, 0), (0, 2)], R2, 3) == 0


# -- Hilbert polynomials and genera ------------------------------------------------------------------


TWISTED_CUBIC = ("x*z - y^2", "y*t - z^2", "x*t - y*z")
TWO_QUADRICS = ("x^2 + y^2 + z^2 + t^2", "x^2 + 2*y^2 + 3*z^2 + 4*t^2")
PLANE_QUARTIC = ("x", "y^2*z^2 + y^2*t^2 + z^2*t^2")


@pytest.mark.parametrize(
    "gens,poly",
    [
        (TWISTED_CUBIC, [1, 3]),
        (TWO_QUADRICS, [0, 4]),
        (PLANE_QUARTIC, [-2, 4]),
        (("x", "y", "z"), [1]),
        (("x",), [1, Fraction(3, 2), Fraction(1, 2)]),
    ],
)
def test_hilbert_polynomial_examples(gens, poly):
    H = hilbert_polynomial(I(R4, *gens))
    assert H.polynomial == [Fraction(c) for c in poly]
    for d in range(H.regularity_bound, H.regularity_bound + 6):
        assert hilbert_function(I(R4, *gens), d) == H(d)
    # the stabilisation-window fit finds the same polynomial
    window, _ = oracles.windowed_hilbert_polynomial(lambda d: hilbert_function(I(R4, *gens), d), 4)
    assert window == H.polynomial


def test_hilbert_polynomial_of_unit_ideal_is_zero():
    H = hilbert_polynomial(Ideal.unit(R4))
    assert H.polynomial == [0] and H.degree == -1


def test_hilbert_polynomial_rendering():
    assert format_hilbert_polynomial([Fraction(-2), Fraction(4)]) == "4*t - 2"


@pytest.mark.parametrize(
    "gens,nodes,genus",
    [(TWISTED_CUBIC, 0, 0), (TWO_QUADRICS, 0, 1), (PLANE_QUARTIC, 0, 3), (PLANE_QUARTIC, 3, 0)],
)
def test_curve_genus(gens, nodes, genus):
    assert curve_genus(I(R4, *gens), nodes) == genus


def test_curve_genus_errors():
    with pytest.raises(NotACurve):
        curve_genus(I(R4, "x"), 0)
    with pytest.raises(NegativeGenus):
        curve_genus(I(R4, *TWISTED_CUBIC), 1)
