"""Quadratic binary objectives and Groebner-driven QUBO reduction.

``reduce_to_qubo`` looks for a non-negative quadratic ``H+`` inside the
ideal of ``{H} + booleans`` whose zero set on ``{0,1}^n`` is exactly that
of ``H``.  The search is a linear program over the coefficients of the
degree <= 2 basis elements; the optional coupling range constraint turns it
into a small branch-and-bound over the sign pattern of each coupling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Sequence

import numpy as np

from .errors import NoReductionError, ResourceLimitError
from .groebner import IdealGens, buchberger, GroebnerBasis
from .lp import linprog
from .polyring import Polynomial, RingContext, as_rational, grevlex


class Qubo:
    """``offset + sum linear_i x_i + sum_{i<j} quadratic_ij x_i x_j`` over ``{0,1}^n``."""

    def __init__(self, n: int, linear=None, quadratic=None, offset=0, names=None):
        if n < 0:
            raise ValueError("negative variable count")
        self.n = n
        lin = [Fraction(0)] * n
        for i, v in enumerate(linear or []):
            lin[i] = as_rational(v)
        if linear is not None and len(linear) != n:
            raise ValueError("linear vector length differs from n")
        self.linear = lin
        quad = {}
        for (i, j), v in dict(quadratic or {}).items():
            v = as_rational(v)
            if i == j:
                raise ValueError("diagonal couplings belong in the linear part")
            if i > j:
                i, j = j, i
            if not (0 <= i < j < n):
                raise ValueError(f"coupling index ({i}, {j}) out of range")
            s = quad.get((i, j), 0) + v
            if s:
                quad[(i, j)] = s
            else:
                quad.pop((i, j), None)
        self.quadratic = quad
        self.offset = as_rational(offset)
        self.names = list(names) if names is not None else [f"x{i}" for i in range(n)]

    def energy(self, x: Sequence[int]) -> Fraction:
        if len(x) != self.n:
            raise ValueError("assignment length differs from n")
        e = self.offset
        for i, v in enumerate(x):
            if v:
                e += self.linear[i]
        for (i, j), v in self.quadratic.items():
            if x[i] and x[j]:
                e += v
        return e

    def __eq__(self, other):
        return (
            isinstance(other, Qubo)
            and self.n == other.n
            and self.linear == other.linear
            and self.quadratic == other.quadratic
            and self.offset == other.offset
        )

    def __repr__(self):
        return f"Qubo(n={self.n}, linear={[str(v) for v in self.linear]}, quadratic={ {k: str(v) for k, v in self.quadratic.items()} }, offset={self.offset})"

    def copy(self) -> "Qubo":
        return Qubo(self.n, list(self.linear), dict(self.quadratic), self.offset, self.names)

    # -- serialisation ----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "linear": [str(v) for v in self.linear],
            "quadratic": [[i, j, str(v)] for (i, j), v in sorted(self.quadratic.items())],
            "offset": str(self.offset),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Qubo":
        n = int(data["n"])
        quad = {}
        for i, j, v in data.get("quadratic", []):
            quad[(int(i), int(j))] = quad.get((int(i), int(j)), 0) + Fraction(str(v))
        return cls(n, [Fraction(str(v)) for v in data.get("linear", [0] * n)], quad, Fraction(str(data.get("offset", 0))), data.get("names"))

    @classmethod
    def from_json(cls, text: str) -> "Qubo":
        return cls.from_dict(json.loads(text))

    # -- numeric views ----------------------------------------------------
    def integer_form(self):
        """``(den, h, J)`` with ``den * (energy - offset)`` as an integer quadratic form.

        ``h`` is an int64 vector, ``J`` the dense symmetric coupling matrix
        (flattened, zero diagonal).  Raises if int64 could overflow.
        """
        den = 1
        for v in self.linear:
            den = lcm(den, v.denominator)
        for v in self.quadratic.values():
            den = lcm(den, v.denominator)
        h = [int(v * den) for v in self.linear]
        bound = sum(abs(v) for v in h) + sum(abs(int(v * den)) for v in self.quadratic.values())
        if bound >= 2**62:
            raise ResourceLimitError("coefficients too large for 64-bit enumeration")
        J = np.zeros(self.n * self.n, dtype=np.int64)
        for (i, j), v in self.quadratic.items():
            c = int(v * den)
            J[i * self.n + j] = c
            J[j * self.n + i] = c
        return den, np.array(h, dtype=np.int64), J

    def csr(self):
        """Float64 ``h`` and the symmetric coupling matrix in CSR arrays."""
        n = self.n
        rows = [[] for _ in range(n)]
        for (i, j), v in sorted(self.quadratic.items()):
            rows[i].append((j, float(v)))
            rows[j].append((i, float(v)))
        indptr = [0]
        indices, data = [], []
        for r in rows:
            r.sort()
            for j, v in r:
                indices.append(j)
                data.append(v)
            indptr.append(len(indices))
        return (
            np.array([float(v) for v in self.linear], dtype=np.float64),
            np.array(indptr, dtype=np.int64),
            np.array(indices, dtype=np.int64),
            np.array(data, dtype=np.float64),
        )

    def to_polynomial(self, ring: RingContext | None = None) -> Polynomial:
        ring = ring or RingContext(self.names)
        p = Polynomial.constant(ring, self.offset)
        gens = ring.gens()
        for i, v in enumerate(self.linear):
            if v:
                p = p + gens[i].scale(v)
        for (i, j), v in self.quadratic.items():
            p = p + (gens[i] * gens[j]).scale(v)
        return p


def poly_to_qubo(q: Polynomial) -> Qubo:
    """Transcribe a degree <= 2 polynomial; ``x_i^2`` folds into ``x_i`` (binary points)."""
    if q.total_degree() > 2:
        raise ValueError("polynomial degree exceeds 2")
    ring = q.ring
    n = ring.arity
    linear = [Fraction(0)] * n
    quad = {}
    offset = Fraction(0)
    for mono, c in q.terms.items():
        idx = [i for i, e in enumerate(mono) if e]
        if not idx:
            offset += c
        elif len(idx) == 1:
            linear[idx[0]] += c
        else:
            key = (idx[0], idx[1])
            quad[key] = quad.get(key, 0) + c
    return Qubo(n, linear, quad, offset, ring.names)


# ---------------------------------------------------------------------------
# Reduction

_range = range  # reduce_to_qubo shadows the builtin with its keyword


@dataclass
class DynamicRange:
    epsilon: Fraction
    margin: Fraction = Fraction(1)

    def __post_init__(self):
        self.epsilon = as_rational(self.epsilon)
        self.margin = as_rational(self.margin)
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")
        if self.margin <= 0:
            raise ValueError("margin must be positive")

    def admits(self, c: Fraction) -> bool:
        return not c or 1 - self.epsilon <= abs(c) <= 1 + self.epsilon


@dataclass
class ReductionResult:
    h_plus: Polynomial
    combination: list  # [(basis element, coefficient a_t)]
    qubo: Qubo
    gb: GroebnerBasis | None = field(default=None, repr=False)
    range: DynamicRange | None = None
    margin: Fraction = Fraction(1)
    nodes: int = 0


def boolean_closure(polys: Sequence[Polynomial], ring: RingContext | None = None) -> IdealGens:
    """Input plus ``y^2 - y`` for every variable that occurs, in ring order."""
    polys = list(polys)
    if ring is None:
        if not polys:
            return IdealGens([], RingContext(["_"]))
        ring = polys[0].ring
    used = set()
    for p in polys:
        used |= p.support()
    extra = []
    for i in sorted(used):
        y = ring.gen(i)
        extra.append(y * y - y)
    return IdealGens(polys + extra, ring)


def _is_boolean_relation(t: Polynomial) -> bool:
    if len(t.terms) != 2:
        return False
    monos = list(t.terms)
    sq = [m for m in monos if sum(m) == 2 and max(m) == 2]
    lin = [m for m in monos if sum(m) == 1]
    if len(sq) != 1 or len(lin) != 1 or sq[0].index(2) != lin[0].index(1):
        return False
    return t.terms[sq[0]] == -t.terms[lin[0]]


def reduce_to_qubo(
    H: Polynomial,
    range: DynamicRange | None = None,
    margin=1,
    max_vars: int = 12,
    node_budget: int = 20000,
    budget: int | None = None,
) -> ReductionResult:
    """Find ``H+ = sum a_t t`` over degree <= 2 basis elements with the zero set of ``H``.

    Positivity is imposed pointwise: ``H+(p) >= margin`` off the zero set.
    With ``range`` every coupling coefficient must be 0 or have magnitude in
    ``[1 - eps, 1 + eps]``; among feasible choices the L1 norm of ``a`` is
    minimised.
    """
    ring = H.ring
    n = ring.arity
    if n > max_vars:
        raise ResourceLimitError(f"{n} variables exceed the certification bound {max_vars}")
    margin = range.margin if range is not None else as_rational(margin)
    points = list(product((0, 1), repeat=n))
    zeros = [p for p in points if not H(p)]
    if not zeros:
        raise NoReductionError("H has no zeros on the binary cube, so no H+ can share its zero set")
    gb = buchberger(boolean_closure([H], ring), grevlex(), budget)
    ts = [t for t in gb.elements if t.total_degree() <= 2 and not _is_boolean_relation(t)]
    if not ts:
        raise NoReductionError("the basis has no quadratic elements besides the boolean relations")
    k = len(ts)
    values = [[t(p) for t in ts] for p in points]
    zero_set = set(zeros)
    # linear coupling functionals c_ij(a) = sum_t a_t coef_t(x_i x_j)
    couplings = {}
    for ti, t in enumerate(ts):
        for mono, c in t.terms.items():
            idx = [i for i, e in enumerate(mono) if e]
            if len(idx) == 2:
                couplings.setdefault(tuple(idx), [Fraction(0)] * k)[ti] += c
    coupling_keys = sorted(key for key, row in couplings.items() if any(row))

    # variables: a_0..a_{k-1} (free), s_0..s_{k-1} >= 0 with |a| <= s
    nv = 2 * k
    cost = [0] * k + [1] * k
    base_ub, base_rhs, base_eq, base_eq_rhs = [], [], [], []
    for p, row in zip(points, values):
        if p in zero_set:
            base_eq.append(list(row) + [0] * k)
            base_eq_rhs.append(0)
        else:
            base_ub.append([-v for v in row] + [0] * k)
            base_rhs.append(-margin)
    for i in _range(k):
        r1 = [0] * nv
        r1[i], r1[k + i] = 1, -1
        r2 = [0] * nv
        r2[i], r2[k + i] = -1, -1
        base_ub += [r1, r2]
        base_rhs += [0, 0]
    free = [True] * k + [False] * k

    def solve(extra_ub, extra_rhs, extra_eq, extra_eq_rhs):
        return linprog(cost, base_ub + extra_ub, base_rhs + extra_rhs, base_eq + extra_eq, base_eq_rhs + extra_eq_rhs, free)

    nodes = 0
    if range is None:
        res = solve([], [], [], [])
        nodes = 1
        if not res.ok:
            raise NoReductionError("no non-negative quadratic combination separates the zero set")
        a = res.x[:k]
    else:
        lo, hi = 1 - range.epsilon, 1 + range.epsilon
        a = None

        def branch(depth, ub, rhs, eq, eq_rhs):
            nonlocal nodes, a
            nodes += 1
            if nodes > node_budget:
                raise ResourceLimitError(f"range search exceeded {node_budget} LP nodes")
            res = solve(ub, rhs, eq, eq_rhs)
            if not res.ok:
                return False
            x = res.x[:k]
            if _admissible(x, couplings, coupling_keys, range):
                a = x
                return True
            if depth == len(coupling_keys):
                return False
            row = list(couplings[coupling_keys[depth]]) + [0] * k
            neg = [-v for v in row]
            # zero, then positive band, then negative band
            if branch(depth + 1, ub, rhs, eq + [row], eq_rhs + [0]):
                return True
            if branch(depth + 1, ub + [neg, row], rhs + [-lo, hi], eq, eq_rhs):
                return True
            return branch(depth + 1, ub + [row, neg], rhs + [-lo, hi], eq, eq_rhs)

        if not branch(0, [], [], [], []):
            raise NoReductionError(
                f"no quadratic combination keeps every coupling in [{lo}, {hi}] (or zero) "
                f"with margin {margin}; explored {nodes} LP nodes"
            )
    h_plus = ring.zero()
    combination = []
    for t, v in zip(ts, a):
        if v:
            h_plus = h_plus + t.scale(v)
            combination.append((t, v))
    result = ReductionResult(h_plus, combination, poly_to_qubo(h_plus), gb, range, margin, nodes)
    if not verify_reduction(H, result):
        raise AssertionError("reduction failed exhaustive certification")
    return result



def _admissible(x, couplings, keys, rng):
    return all(rng.admits(sum(r * v for r, v in zip(couplings[key], x))) for key in keys)


def verify_reduction(H: Polynomial, r: ReductionResult, max_vars: int = 20) -> bool:
    """Exhaustively check every invariant of a reduction result."""
    ring = H.ring
    n = ring.arity
    if n > max_vars:
        raise ResourceLimitError(f"{n} variables exceed the verification bound {max_vars}")
    hp = r.h_plus
    if hp.ring != ring or hp.total_degree() > 2:
        return False
    combo = ring.zero()
    for t, a in r.combination:
        combo = combo + t.scale(a)
    if combo != hp:
        return False
    if r.range is not None:
        q = poly_to_qubo(hp)
        if not all(r.range.admits(v) for v in q.quadratic.values()):
            return False
    attained = False
    for p in product((0, 1), repeat=n):
        v = hp(p)
        if r.qubo.energy(p) != v:
            return False
        if v < 0:
            return False
        if (v == 0) != (H(p) == 0):
            return False
        attained = attained or v == 0
    return attained
