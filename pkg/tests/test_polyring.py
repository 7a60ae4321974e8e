from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from groebopt.errors import ParseError, RingMismatchError
from groebopt.polyring import (
    Ordering,
    RingContext,
    compare,
    format_poly,
    grevlex,
    grlex,
    leading_term,
    lex,
    matrix_order,
    parse_order,
    parse_poly,
    read_poly_lines,
    variables_in,
)
from strategies import RING3, monomials, polys

R = RING3
x, y, z = R.gens()


def test_parse_examples():
    assert len(parse_poly("x^2+y^2+z^2-4", R)) == 4
    assert parse_poly("0", R).is_zero()
    assert parse_poly("2*x*y - x*y - x*y", R).is_zero()
    assert parse_poly("1/2*x^2 - 3", R) == x * x * Fraction(1, 2) - 3


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        parse_poly("x +* y", R)
    with pytest.raises(ParseError):
        parse_poly("w + 1", R)


def test_arithmetic_examples():
    assert (x**2 - 1) + 1 == x**2
    assert (x + y) * (x - y) == x**2 - y**2
    assert (x**2 + 2 * y**2).scale(Fraction(1, 2)) == x**2 * Fraction(1, 2) + y**2


def test_evaluation_and_derivatives():
    f = parse_poly("x^2+y^2+z^2-4", R)
    assert f(1, 1, 1) == -1
    assert f(0, 0, 0) == -4
    r = RingContext(["s", "lam"])
    g = parse_poly("lam^2 - 2*s^2 + 2*s - 1", r)
    assert g.derivative(0) == parse_poly("-4*s + 2", r)
    assert R.one().scale(7).derivative(0).is_zero()


def test_ring_mismatch():
    other = RingContext(["a"])
    with pytest.raises(RingMismatchError):
        x + other.gen(0)


def test_orders():
    assert compare(lex(), (1, 0, 0), (0, 2, 0)) is Ordering.GT
    rev = matrix_order([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    assert compare(rev, (0, 0, 0, 1), (0, 0, 3, 0)) is Ordering.GT
    assert compare(grlex(), (1, 2, 0), (1, 2, 0)) is Ordering.EQ
    assert leading_term(parse_poly("x + 2*z^3 - 3*z", R), lex()) == ((1, 0, 0), 1)
    assert leading_term(R.one().scale(5), lex()) == ((0, 0, 0), 5)
    assert leading_term(x**2 * y + x * y**2, grlex())[0] == (2, 1, 0)
    assert parse_order("lex:z,y,x", R).key((0, 0, 1)) > parse_order("lex:z,y,x", R).key((5, 5, 0))


def test_read_lines_and_variables():
    assert read_poly_lines("# c\n x + 1 \n\n y\n") == ["x + 1", "y"]
    assert variables_in("x1*y^2 + 3*x1 - alpha") == ["x1", "y", "alpha"]


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R.zero()


@given(polys())
def test_format_parse_round_trip(f):
    for order in (lex(), grlex(), grevlex()):
        assert parse_poly(format_poly(f, order), R) == f


@given(polys(), st.tuples(*[st.integers(-3, 3)] * 3))
def test_evaluation_is_a_homomorphism(f, pt):
    g = f * f + f
    assert g(*pt) == f(*pt) ** 2 + f(*pt)


@given(monomials(3), monomials(3), monomials(3))
def test_orders_are_multiplicative(a, b, c):
    for order in (lex(), grlex(), grevlex()):
        ab = compare(order, a, b)
        ac = tuple(i + k for i, k in zip(a, c))
        bc = tuple(j + k for j, k in zip(b, c))
        assert compare(order, ac, bc) is ab
