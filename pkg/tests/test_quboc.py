from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from groebopt.errors import NoReductionError
from groebopt.polyring import RingContext, parse_poly
from groebopt.quboc import DynamicRange, Qubo, boolean_closure, poly_to_qubo, reduce_to_qubo, verify_reduction
from strategies import binary_objectives, quadratic_qubos

HIJ = RingContext(["P", "Q", "S1", "S2", "Z1", "Z2"])
H = parse_poly("Q*P + S1 + Z1 - S2 - 2*Z2", HIJ)


def test_poly_to_qubo_examples():
    r = RingContext(["x", "y"])
    q = poly_to_qubo(parse_poly("x*y", r))
    assert q.n == 2 and q.quadratic == {(0, 1): 1}
    q = poly_to_qubo(parse_poly("3 - x", r))
    assert q.linear[0] == -1 and q.offset == 3
    with pytest.raises(ValueError):
        poly_to_qubo(parse_poly("x^2*y", r))


def test_boolean_closure():
    assert len(boolean_closure([H], HIJ)) == 7
    r = RingContext(["x"])
    assert len(boolean_closure([r.gen(0)], r)) == 2


def test_unranged_reduction_is_certified():
    res = reduce_to_qubo(H)
    assert verify_reduction(H, res)
    q = res.qubo
    assert q.n == 6
    for p in product((0, 1), repeat=6):
        assert q.energy(p) == res.h_plus(p)
        assert (res.h_plus(p) == 0) == (H(p) == 0)


def test_tampered_reductions_fail_verification():
    res = reduce_to_qubo(H)
    res.h_plus = res.h_plus + 1
    assert not verify_reduction(H, res)
    res = reduce_to_qubo(H)
    # a negative value planted at a non-zero of H
    bad = next(p for p in product((0, 1), repeat=6) if H(p))
    lift = HIJ.one()
    for v, b in zip(HIJ.gens(), bad):
        lift = lift * (v if b else 1 - v)
    res.h_plus = res.h_plus - lift.scale(res.h_plus(bad) + 1)
    assert not verify_reduction(H, res)


def test_tight_dynamic_range_is_rejected():
    # no admissible combination exists for eps = 1/10; the search proves it
    with pytest.raises(NoReductionError):
        reduce_to_qubo(H, DynamicRange(Fraction(1, 10)))


def test_small_reductions():
    r = RingContext(["x"])
    assert reduce_to_qubo(r.gen(0)).h_plus == r.gen(0)
    r2 = RingContext(["x", "y"])
    with pytest.raises(NoReductionError):
        reduce_to_qubo(parse_poly("x + y - 3", r2))


def test_range_admits():
    rng = DynamicRange(Fraction(1, 10))
    assert rng.admits(0) and rng.admits(Fraction(-21, 20)) and not rng.admits(Fraction(1, 2))


@given(st.integers(1, 5).flatmap(quadratic_qubos))
def test_json_round_trip(q):
    assert Qubo.from_json(q.to_json()) == q


@settings(deadline=None)
@given(st.integers(1, 4).flatmap(quadratic_qubos))
def test_integer_form_matches_energy(q):
    den, h, J = q.integer_form()
    n = q.n
    for x in product((0, 1), repeat=n):
        e = sum(int(h[i]) * x[i] for i in range(n))
        e += sum(int(J[i * n + j]) * x[i] * x[j] for i in range(n) for j in range(i + 1, n))
        assert Fraction(e, den) + q.offset == q.energy(x)


@settings(deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: binary_objectives(m, 5)))
def test_polynomial_round_trip(f):
    if f.total_degree() > 2:
        return
    q = poly_to_qubo(f)
    for x in product((0, 1), repeat=q.n):
        assert q.energy(x) == f(*x)
