import pytest
from hypothesis import given, settings, strategies as st

from groebopt.errors import InfiniteQuotientError, ResourceLimitError
from groebopt.groebner import (
    IdealGens,
    buchberger,
    division,
    eliminate,
    ideal_membership,
    is_groebner,
    is_reduced,
    multiplication_matrix,
    normal_form,
    s_polynomial,
    saturate,
    standard_monomials,
)
from groebopt.linalg import RatMatrix
from groebopt.polyring import RingContext, grevlex, grlex, lex, parse_poly
from strategies import RING3, nonzero_polys

R = RING3
x, y, z = R.gens()
QUADRIC = ["x^2+y^2+z^2-4", "x^2+2*y^2-5", "x*z-1"]


def gb_of(texts, order=None, ring=R):
    return buchberger(IdealGens([parse_poly(t, ring) for t in texts], ring), order or lex())


def test_quadric_basis():
    gb = gb_of(QUADRIC)
    assert set(gb.elements) == {parse_poly(t, R) for t in ["x+2*z^3-3*z", "y^2-z^2-1", "z^4-3/2*z^2+1/2"]}
    assert eliminate(gb, 1).elements == [parse_poly("z^4-3/2*z^2+1/2", R)]
    assert eliminate(gb, 3) == gb


def test_s_polynomial_examples():
    r = RingContext(["x", "y"])
    a, b = r.gens()
    assert s_polynomial(a**2 - b, a * b - 1, lex()) == a - b**2
    f = a**2 + b
    assert s_polynomial(f, f, lex()).is_zero()
    G = [a**2 - 1, b**2 - 1]
    assert normal_form(s_polynomial(G[0], G[1], lex()), G, lex()).is_zero()


def test_normal_form_examples():
    assert normal_form(x**2, [x**2 - x], lex()) == x
    gb = gb_of(QUADRIC)
    f = x**2 * y
    q, r = division(f, gb.elements, lex())
    assert sum((qi * g for qi, g in zip(q, gb.elements)), R.zero()) + r == f
    assert ideal_membership(f - r, gb)
    assert all(gb.reduce(g).is_zero() for g in gb)


def test_trivial_ideals():
    assert gb_of(["x^2-x"]).elements == [x**2 - x]
    assert gb_of(["x*y", "3"]).is_unit()
    assert not gb_of(QUADRIC).contains(R.one())


def test_saturation_examples():
    r = RingContext(["x", "y"])
    a, b = r.gens()
    assert saturate(IdealGens([a * b], r), a, lex()).elements == [b]
    assert saturate(IdealGens([a**2], r), a, lex()).is_unit()
    assert saturate(IdealGens([], r), a, lex()).is_zero_ideal()


def test_standard_monomials():
    r = RingContext(["y1", "y2", "y3", "y4"])
    gb = buchberger(IdealGens([g * g - g for g in r.gens()], r), lex())
    assert len(standard_monomials(gb)) == 16
    r1 = RingContext(["x"])
    assert len(standard_monomials(buchberger(IdealGens([r1.gen(0)], r1), lex()))) == 1
    r2 = RingContext(["x", "y"])
    with pytest.raises(InfiniteQuotientError):
        standard_monomials(buchberger(IdealGens([r2.gen(0) ** 2 - r2.gen(0)], r2), lex()))


def test_multiplication_matrix_identity_and_homomorphism():
    gb = gb_of(QUADRIC)
    qb = standard_monomials(gb)
    n = len(qb)
    assert multiplication_matrix(R.one(), qb) == RatMatrix.identity(n)
    mx, mz = multiplication_matrix(x, qb), multiplication_matrix(z, qb)
    assert multiplication_matrix(x * z, qb) == mx @ mz
    assert mx @ mz == mz @ mx


def test_pair_budget(monkeypatch):
    with pytest.raises(ResourceLimitError):
        buchberger(IdealGens([parse_poly(t, R) for t in QUADRIC], R), lex(), budget=1)
    monkeypatch.setenv("GA_PAIR_BUDGET", "1")
    with pytest.raises(ResourceLimitError):
        gb_of(QUADRIC)


@settings(max_examples=120, deadline=None)
@given(st.lists(nonzero_polys(), min_size=1, max_size=3), st.sampled_from([lex(), grlex(), grevlex()]))
def test_random_bases_are_reduced_groebner(gens, order):
    gb = buchberger(IdealGens(gens, R), order)
    assert is_groebner(gb.elements, order)
    assert is_reduced(gb.elements, order)
    assert all(gb.reduce(g).is_zero() for g in gens)


@settings(max_examples=40, deadline=None)
@given(st.lists(nonzero_polys(max_deg=2), min_size=1, max_size=3))
def test_basis_is_independent_of_generator_order(gens):
    a = buchberger(IdealGens(gens, R), grevlex())
    b = buchberger(IdealGens(list(reversed(gens)), R), grevlex())
    assert a == b
