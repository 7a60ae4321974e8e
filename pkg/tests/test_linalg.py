from fractions import Fraction

from hypothesis import given, settings, strategies as st

from groebopt.linalg import RatMatrix, det, det_over_ring, rank, rational_nullspace, read_matrix
from groebopt.polyring import RingContext, parse_poly

small = st.integers(-4, 4).map(Fraction)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_det_examples():
    r = RingContext(["s", "lam"])
    s, lam = r.gens()
    m = [[s - lam, 1 - s], [1 - s, -s - lam]]
    assert det_over_ring(m) == lam**2 - s**2 - (1 - s) ** 2
    assert det(RatMatrix.identity(3).rows) == 1
    assert det([[1, 2], [0, 0]]) == 0


def test_nullspace_examples():
    (v,) = rational_nullspace([[1, 1], [2, 2]])
    assert v[0] == -v[1] != 0
    assert rational_nullspace(RatMatrix.identity(3).rows) == []


def test_read_matrix():
    assert read_matrix("1 2\n# c\n3/2 -4\n") == [[1, 2], [Fraction(3, 2), -4]]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(square))
def test_nullspace_and_rank(m):
    ns = rational_nullspace(m)
    assert len(ns) + rank(m) == len(m[0])
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(square), small, small)
def test_symbolic_det_matches_numeric(m, a, b):
    r = RingContext(["t", "u"])
    t, u = r.gens()
    sym = [[t * v + u if i == j else r.one().scale(v) for j, v in enumerate(row)] for i, row in enumerate(m)]
    num = [[v * a + b if i == j else v for j, v in enumerate(row)] for i, row in enumerate(m)]
    assert det_over_ring(sym)(a, b) == det(num)
