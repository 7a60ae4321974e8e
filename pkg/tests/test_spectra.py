import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from _gen import rand_symmetric
from groebopt.errors import PositiveDimensionalError
from groebopt.groebner import buchberger
from groebopt.polyring import parse_poly
from groebopt.spectra import (
    RING,
    HamiltonianPair,
    char_surface,
    critical_ideal,
    critical_order,
    find_critical_points,
    hessian_det,
    nondegeneracy_test,
    numeric_char,
    saturated_critical_ideal,
)
from groebopt.univariate import eval_poly_interval, Interval

PAIR = HamiltonianPair([[0, 1], [1, 0]], [[1, 0], [0, -1]])


def P(text):
    return parse_poly(text, RING)


def test_surface_examples():
    f = char_surface(PAIR).f
    s, lam = RING.gens()
    assert f == lam**2 - s**2 - (1 - s) ** 2
    flat = char_surface(HamiltonianPair([[0, 0], [0, 1]], [[0, 0], [0, 1]])).f
    assert flat == P("lam^2 - lam")


def test_critical_ideal_and_hessian():
    f = char_surface(PAIR)
    assert list(critical_ideal(f)) == [P("2 - 4*s"), P("2*lam")]
    assert hessian_det(f) == P("-8")
    assert hessian_det(P("s*lam")) == P("-1")
    assert hessian_det(P("s + lam")).is_zero()
    assert len(critical_ideal(P("lam^2 - lam"))) == 1
    assert len(critical_ideal(P("7"))) == 0


def test_single_anticrossing():
    (p,) = find_critical_points(char_surface(PAIR))
    assert p.s_box == (Fraction(1, 2), Fraction(1, 2)) and p.lambda_box == (0, 0)
    assert not p.degenerate and p.normal_form_value.lo == p.normal_form_value.hi == -8
    assert abs(p.gap - 2**0.5) < 1e-9


def test_toy_surfaces():
    (p,) = find_critical_points(P("lam^2 + s^2"), s_range=None)
    assert p.refined == (0, 0) and not p.degenerate
    (p,) = find_critical_points(P("s*lam"), s_range=None)
    assert not p.degenerate
    (p,) = find_critical_points(P("lam^4 + s^2"), s_range=None)
    assert p.degenerate


def test_positive_dimensional():
    with pytest.raises(PositiveDimensionalError):
        find_critical_points(char_surface(HamiltonianPair([[1, 2], [2, 0]], [[1, 2], [2, 0]])))
    with pytest.raises(PositiveDimensionalError):
        find_critical_points(P("3"))


def test_saturation():
    f = char_surface(PAIR)
    assert saturated_critical_ideal(f) == buchberger(critical_ideal(f), critical_order())


def test_irrational_points_are_certified():
    pair = HamiltonianPair([[0, 1, 0], [1, 0, 1], [0, 1, 0]], [[1, 0, 0], [0, -1, 0], [0, 0, 2]])
    surf = char_surface(pair)
    tol = Fraction(1, 10**9)
    pts = find_critical_points(surf, tol)
    assert pts
    for p in pts:
        box = [Interval(*p.s_box), Interval(*p.lambda_box)]
        assert all(eval_poly_interval(g, box).contains_zero() for g in critical_ideal(surf))
        assert p.s_box[1] - p.s_box[0] <= tol and p.lambda_box[1] - p.lambda_box[0] <= tol


def test_invalid_pairs():
    with pytest.raises(ValueError):
        HamiltonianPair([[0, 1], [2, 0]], [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        HamiltonianPair([[1]], [[2]])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_surface_matches_numeric_determinant(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    pair = HamiltonianPair(rand_symmetric(rng, n), rand_symmetric(rng, n))
    f = char_surface(pair).f
    assert f.degree_in(1) == n
    assert f.coefficient((0, n)) == (-1) ** n
    for _ in range(3):
        s = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        lam = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        assert f(s, lam) == numeric_char(pair, s, lam)
