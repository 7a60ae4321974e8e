"""Hypothesis strategies for polynomials over small rings."""

from fractions import Fraction

from hypothesis import strategies as st

from groebopt.polyring import Polynomial, RingContext
from groebopt.quboc import Qubo

RING3 = RingContext(["x", "y", "z"])

coeffs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def monomials(n: int, max_deg: int = 3):
    return st.lists(st.integers(0, max_deg), min_size=n, max_size=n).map(tuple)


def polys(ring: RingContext = RING3, max_terms: int = 4, max_deg: int = 3):
    return st.dictionaries(monomials(ring.arity, max_deg), coeffs, max_size=max_terms).map(
        lambda d: Polynomial(ring, d)
    )


def nonzero_polys(ring: RingContext = RING3, max_terms: int = 4, max_deg: int = 2):
    return polys(ring, max_terms, max_deg).filter(lambda p: not p.is_zero())


def binary_objectives(m: int, max_terms: int = 6):
    ring = RingContext([f"x{i + 1}" for i in range(m)])
    return st.dictionaries(monomials(m, 1), st.integers(-5, 5).map(Fraction), max_size=max_terms).map(
        lambda d: Polynomial(ring, d)
    )


def quadratic_qubos(n):
    ij = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda t: t[0] < t[1])
    rat = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))
    return st.builds(
        Qubo,
        st.just(n),
        st.lists(rat, min_size=n, max_size=n),
        st.dictionaries(ij, rat, max_size=4),
        rat,
    )
