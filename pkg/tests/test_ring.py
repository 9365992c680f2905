from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import R3, R4, forms, polynomials
from dcdeform import (
    DEGREVLEX,
    LEX,
    DivideByZero,
    NegativeExponent,
    NotDivisible,
    PolynomialSyntaxError,
    RingCtx,
    RingMismatch,
    SingularMatrix,
    UnknownVariable,
    elimination,
    exact_divide,
    format_poly,
    monomials_of_degree,
    parse_poly,
    partial_derivative,
    substitute_linear,
)
from dcdeform.ring import arith, determinant

R2 = RingCtx("xy")
p4 = R4.parse


# -- contexts -------------------------------------------------------------------


def test_ring_rejects_bad_names():
    with pytest.raises(ValueError):
        RingCtx(["x", "x"])
    with pytest.raises(ValueError):
        RingCtx(["1x"])
    with pytest.raises(ValueError):
        RingCtx([])
    with pytest.raises(ValueError):
        RingCtx([f"v{i}" for i in range(17)])


def test_ring_equality_is_by_variables():
    assert RingCtx("xyz") == RingCtx(["x", "y", "z"])
    assert RingCtx("xyz") != RingCtx("xzy")


# -- parsing and printing ----------------------------------------------------------


def test_parse_two_octic_monomials():
    f = p4("x^4*y^4 + z^4*t^4")
    assert len(f) == 2
    assert f.degree() == 8


def test_parse_zero():
    f = p4("0")
    assert f.is_zero()
    assert f.term_map == {}


def test_parse_expands():
    assert R2.parse("(x+y)^2 - x^2 - 2*x*y") == R2.parse("y^2")


def test_parse_rationals_and_implicit_products():
    f = R3.parse("3/4*x*y - 2x^2 + y**2/2")
    assert f.coefficient((1, 1, 0)) == Fraction(3, 4)
    assert f.coefficient((2, 0, 0)) == -2
    assert f.coefficient((0, 2, 0)) == Fraction(1, 2)


def test_parse_errors():
    with pytest.raises(UnknownVariable):
        R3.parse("x + w")
    with pytest.raises(NegativeExponent):
        R3.parse("x^-1")
    with pytest.raises(PolynomialSyntaxError) as err:
        R3.parse("x + * y")
    assert err.value.position == 4
    with pytest.raises(PolynomialSyntaxError):
        R3.parse("(x + y")


def test_printing_format():
    assert format_poly(R2.parse("y^2 - x/2 + x*y + 3")) == "x*y + y^2 - 1/2*x + 3"
    assert str(R2.parse("-x^3")) == "-x^3"
    assert str(R2.zero()) == "0"


@given(polynomials(R3, max_deg=4, max_terms=6))
def test_parse_print_roundtrip(f):
    assert parse_poly(format_poly(f), R3) == f
    assert format_poly(parse_poly(format_poly(f), R3)) == format_poly(f)


# -- arithmetic ---------------------------------------------------------------------


def test_arith_examples():
    x, y = R2.gens()
    assert arith(x + y, x - y, "mul") == R2.parse("x^2 - y^2")
    assert arith(R2.parse("x^2 - y"), R2.parse("x^2 + y"), "mul") == R2.parse("x^4 - y^2")
    f = R2.parse("3*x - y^5")
    assert arith(f, R2.zero(), "add") == f


def test_arith_ring_mismatch():
    with pytest.raises(RingMismatch):
        arith(R2.gen(0), R3.gen(0), "add")
    with pytest.raises(RingMismatch):
        R2.gen(0) * R3.gen(0)


@given(polynomials(R3), polynomials(R3), polynomials(R3))
def test_ring_axioms(a, b, c):
    zero = R3.zero()
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == zero
    assert a - b == a + (-b)
    assert a * R3.one() == a
    assert (a * zero).is_zero()


@given(polynomials(R3), polynomials(R3))
def test_no_zero_coefficients_stored(a, b):
    for _, c in (a * b - b * a + a).items():
        assert c != 0


def test_exact_divide_examples():
    x, y = R4.gen("x"), R4.gen("y")
    dy = partial_derivative(p4("x^4*y^4"), "y")
    assert exact_divide(dy, y) == p4("4*x^4*y^3") / y == p4("4*x^4*y^2")
    assert exact_divide(x**2, x**2) == R4.one()
    with pytest.raises(NotDivisible):
        exact_divide(x**2 + 1, x)
    with pytest.raises(DivideByZero):
        exact_divide(x, R4.zero())


@given(polynomials(R3), polynomials(R3))
def test_exact_divide_inverts_multiplication(a, b):
    assume(not b.is_zero())
    assert exact_divide(a * b, b) == a


@given(polynomials(R3, max_deg=3), polynomials(R3, max_deg=3), st.integers(0, 2))
def test_leibniz(f, g, i):
    assert partial_derivative(f * g, i) == f * partial_derivative(g, i) + g * partial_derivative(f, i)


@given(st.integers(0, 5).flatmap(lambda d: st.tuples(st.just(d), forms(R4, d, max_terms=6))))
def test_euler_identity(args):
    d, f = args
    total = R4.zero()
    for i, x in enumerate(R4.gens()):
        total = total + x * partial_derivative(f, i)
    assert total == f.scale(d)


def test_partial_derivative_examples():
    assert partial_derivative(p4("x^8 + y^8 + z^8 + t^8"), "x") == p4("8*x^7")
    assert partial_derivative(R4.const(5), 0).is_zero()


def test_partials_of_even_octic_divisible_by_variable():
    octic = p4(
        "x^4*y^4 + x^4*z^4 - 2*x^2*y^2*z^4 + y^4*z^4 - 2*x^4*z^2*t^2 + x^2*y^2*z^2*t^2"
        " + 2*y^4*z^2*t^2 + 4*y^2*z^4*t^2 + x^4*t^4 + 2*x^2*y^2*t^4 + y^4*t^4"
        " - 4*x^2*z^2*t^4 + z^4*t^4"
    )
    for i, v in enumerate(R4.gens()):
        q = exact_divide(partial_derivative(octic, i), v)
        assert q * v == partial_derivative(octic, i)


# -- linear substitution -------------------------------------------------------------


def test_substitute_examples():
    f = R2.parse("x^2 - y^2")
    assert substitute_linear(f, [[1, 0], [0, 1]]) == f
    assert substitute_linear(f, [[0, 1], [1, 0]]) == R2.parse("y^2 - x^2")
    diag = [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert substitute_linear(p4("x + y"), diag) == p4("2*x + y")
    with pytest.raises(SingularMatrix):
        substitute_linear(f, [[1, 1], [1, 1]])


matrices3 = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3).filter(
    lambda M: determinant(M) != 0
)


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


@given(forms(R3, 3), matrices3, matrices3)
def test_substitution_composition(f, A, B):
    assert substitute_linear(substitute_linear(f, A), B) == substitute_linear(f, _matmul(B, A))


@given(forms(R3, 3), matrices3)
def test_substitution_preserves_degree(f, A):
    g = substitute_linear(f, A)
    assert g.is_zero() == f.is_zero()
    if not f.is_zero():
        assert g.is_homogeneous() and g.degree() == f.degree()


# -- monomials and orders --------------------------------------------------------------


def test_monomial_counts():
    assert len(monomials_of_degree(R4, 8)) == 165
    assert len(monomials_of_degree(R3, 6)) == 28
    assert monomials_of_degree(R4, 0) == [(0, 0, 0, 0)]
    mons = monomials_of_degree(R4, 5)
    assert len(set(mons)) == len(mons) == comb(8, 3)


def _all_monomials(n, max_deg):
    return [e for e in product(range(max_deg + 1), repeat=n) if sum(e) <= max_deg]


@pytest.mark.parametrize("order", [LEX, DEGREVLEX, elimination(1), elimination(2)], ids=str)
def test_orders_exhaustive(order):
    mons = _all_monomials(4, 5)
    keys = {m: order.key(m) for m in mons}
    assert len(set(keys.values())) == len(mons)  # total and antisymmetric
    units = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    for a in mons:
        for b in mons:
            cab = order.compare(a, b)
            assert cab == -order.compare(b, a)
            assert (cab == 0) == (a == b)
            if order == DEGREVLEX and sum(a) != sum(b):
                assert cab == (1 if sum(a) > sum(b) else -1)
            # multiplying by each variable preserves the comparison
            for u in units:
                au = tuple(x + y for x, y in zip(a, u))
                bu = tuple(x + y for x, y in zip(b, u))
                assert order.compare(au, bu) == cab


def test_degrevlex_tie_break():
    # same degree: the smaller power of the last variable wins
    assert DEGREVLEX.compare((1, 0, 1), (0, 2, 0)) == -1
    assert DEGREVLEX.compare((2, 0, 0), (1, 1, 0)) == 1
    assert LEX.compare((1, 0, 0), (0, 5, 5)) == 1


def test_elimination_order_eliminates_front_block():
    order = elimination(2)
    # anything involving the first two variables beats anything free of them
    assert order.compare((0, 1, 0, 0), (0, 0, 9, 9)) == 1
    assert order.compare((1, 0, 0, 0), (0, 1, 0, 0)) == 1
    assert order.compare((0, 0, 2, 0), (0, 0, 1, 1)) == 1
