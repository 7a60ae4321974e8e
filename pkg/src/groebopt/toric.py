"""Toric ideals of integer configuration matrices.

``J_A`` is the kernel of ``x_i -> y^{a_i}``; it is generated by the
binomials ``x^{u+} - x^{u-}`` for ``u`` in the integer kernel of ``A``.
Two routes produce its reduced Groebner basis:

* classical: eliminate ``y`` from ``<x_i - y^{a_i}>``;
* annealed: minimise ``|M u|^2`` over digit-encoded kernel combinations,
  harvest the nonzero kernel vectors found, then saturate the binomial ideal
  by ``x_1 ... x_n``.  Lattice basis vectors are added when the harvest does
  not span the kernel, so the result never depends on sampler luck.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from .errors import InfeasibleError, ResourceLimitError
from .groebner import GroebnerBasis, IdealGens, buchberger, eliminate_vars, normal_form, restrict_to, saturate
from .polyring import MonomialOrder, Polynomial, RingContext, block_order, grevlex, matrix_order, weight_order
from .quboc import Qubo
from .solvers import AnnealSchedule, exclude_solutions, simulated_anneal, solve_below


def _as_int_matrix(A) -> list[list[int]]:
    rows = []
    for r in A:
        row = []
        for v in r:
            f = Fraction(v)
            if f.denominator != 1:
                raise ValueError("configuration matrix entries must be integers")
            row.append(int(f))
        rows.append(row)
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("configuration matrix must be a nonempty rectangle")
    return rows


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form (nonzero rows only) of an integer matrix."""
    m = [list(map(int, v)) for v in vectors]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if not m[r][c]:
            continue
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
    return [row for row in m[:r] if any(row)]


def lattice_kernel(A) -> list[list[int]]:
    """Basis of ``Ker_Z A`` in row Hermite normal form (empty when the kernel is trivial)."""
    A = _as_int_matrix(A)
    m, n = len(A), len(A[0])
    aug = [[A[i][j] for i in range(m)] + [int(k == j) for k in range(n)] for j in range(n)]
    h = hermite_rows(aug)
    # rows whose A^T part vanished carry kernel vectors
    kern = [row[m:] for row in h if not any(row[:m])]
    basis = hermite_rows(kern)
    for v in basis:
        if any(sum(a * x for a, x in zip(r, v)) for r in A):
            raise AssertionError("kernel vector fails A v = 0")
    return basis


def same_lattice(U: Sequence[Sequence[int]], V: Sequence[Sequence[int]]) -> bool:
    return hermite_rows(U) == hermite_rows(V)


@dataclass(frozen=True)
class Binomial:
    u_plus: tuple
    u_minus: tuple

    @classmethod
    def from_vector(cls, u: Sequence[int]) -> "Binomial":
        return cls(tuple(max(v, 0) for v in u), tuple(max(-v, 0) for v in u))

    @property
    def vector(self) -> tuple:
        return tuple(a - b for a, b in zip(self.u_plus, self.u_minus))

    def sign_key(self) -> tuple:
        u = self.vector
        return max(u, tuple(-v for v in u))

    def to_poly(self, ring: RingContext) -> Polynomial:
        return Polynomial(ring, {self.u_plus: 1}) - Polynomial(ring, {self.u_minus: 1})


def toric_ring(n: int, names: Sequence[str] | None = None) -> RingContext:
    names = list(names) if names is not None else [f"w{i + 1}" for i in range(n)]
    if len(names) != n:
        raise ValueError("need one variable name per column")
    return RingContext(names)


def reversal_order(n: int) -> MonomialOrder:
    """Matrix order with the last variable most significant (lex on the reversed variables)."""
    return matrix_order([[int(j == n - 1 - i) for j in range(n)] for i in range(n)])


def toric_gb_classical(A, order: MonomialOrder, names: Sequence[str] | None = None,
                       budget: int | None = None) -> GroebnerBasis:
    """Eliminate ``y`` from ``<x_i - y^{a_i}>``."""
    A = _as_int_matrix(A)
    if any(v < 0 for r in A for v in r):
        raise ValueError("the elimination route needs non-negative entries")
    m, n = len(A), len(A[0])
    xr = toric_ring(n, names)
    yn = [xr.fresh_name(f"y{i + 1}") for i in range(m)]
    big = RingContext(yn + list(xr.names))
    gens = []
    for j in range(n):
        xm = (0,) * m + tuple(int(k == j) for k in range(n))
        ym = tuple(A[i][j] for i in range(m)) + (0,) * n
        gens.append(Polynomial(big, {xm: 1}) - Polynomial(big, {ym: 1}))
    border = block_order(list(range(m)), list(range(m, m + n)), order)
    gb = buchberger(IdealGens(gens, big), border, budget)
    return restrict_to(eliminate_vars(gb, xr.names), xr.names)


# ---------------------------------------------------------------------------
# Annealer route


@dataclass
class DigitEncoding:
    """``c = sum_i (d_{i,+} - d_{i,-}) 2^i`` with ``bits`` digit pairs per coefficient."""

    bits: int = 3

    def __post_init__(self):
        if self.bits < 1:
            raise ValueError("need at least one bit per coefficient")

    @property
    def bound(self) -> int:
        return 2**self.bits - 1

    def width(self, k: int) -> int:
        return 2 * self.bits * k

    def names(self, k: int) -> list[str]:
        letters = "abcdefghijklmnopqrstuvxyz"
        out = []
        for c in range(k):
            base = letters[c] if k <= len(letters) else f"c{c}_"
            for i in range(self.bits):
                out += [f"{base}{i}p", f"{base}{i}m"]
        return out

    def weights(self, k: int) -> list[tuple[int, int]]:
        """``(coefficient index, signed weight)`` per binary variable."""
        return [(c, s * 2**i) for c in range(k) for i in range(self.bits) for s in (1, -1)]

    def decode(self, x: Sequence[int], k: int) -> list[int]:
        coeffs = [0] * k
        for bit, (c, w) in zip(x, self.weights(k)):
            if bit:
                coeffs[c] += w
        return coeffs

    def encode(self, coeffs: Sequence[int]) -> tuple:
        out = []
        for c in coeffs:
            if abs(c) > self.bound:
                raise ValueError(f"{c} outside the encodable range +-{self.bound}")
            for i in range(self.bits):
                bit = (abs(c) >> i) & 1
                out += [bit, 0] if c >= 0 else [0, bit]
        return tuple(out)


def _order_rows(order: MonomialOrder, n: int) -> list[list[int]]:
    if order.kind == "matrix":
        return [list(r) for r in order.rows]
    sig = order.significance(n)
    if sig is not None:
        return [[int(j == v) for j in range(n)] for v in sig]
    raise ValueError("the cost matrix must come from a matrix or lex order")


def kernel_qubo(basis: Sequence[Sequence[int]], M, enc: DigitEncoding | None = None) -> Qubo:
    """``|M u|^2`` with ``u = sum_k c_k v_k`` and digit-encoded ``c_k``."""
    enc = enc or DigitEncoding()
    if not basis:
        raise ValueError("empty lattice basis")
    if isinstance(M, MonomialOrder):
        M = _order_rows(M, len(basis[0]))
    k = len(basis)
    w = [[sum(int(r[j]) * v[j] for j in range(len(v))) for r in M] for v in basis]
    gram = [[sum(a * b for a, b in zip(w[s], w[t])) for t in range(k)] for s in range(k)]
    wts = enc.weights(k)
    nb = len(wts)
    linear = [Fraction(cs * cs * gram[c][c]) for c, cs in wts]
    quad = {}
    for s in range(nb):
        cs, ws = wts[s]
        for t in range(s + 1, nb):
            ct, wt = wts[t]
            v = 2 * ws * wt * gram[cs][ct]
            if v:
                quad[(s, t)] = Fraction(v)
    return Qubo(nb, linear, quad, 0, enc.names(k))


def harvest_binomials(samples, basis, enc: DigitEncoding, A=None) -> list[Binomial]:
    """Decode samples to kernel vectors; drop zero and non-kernel vectors; dedupe up to sign."""
    k = len(basis)
    n = len(basis[0]) if basis else 0
    A = _as_int_matrix(A) if A is not None else None
    seen = {}
    for x in samples:
        x = getattr(x, "x", x)
        coeffs = enc.decode(x, k)
        u = [sum(c * v[j] for c, v in zip(coeffs, basis)) for j in range(n)]
        if not any(u):
            continue
        if A is not None and any(sum(a * b for a, b in zip(r, u)) for r in A):
            continue
        b = Binomial.from_vector(u)
        seen.setdefault(b.sign_key(), Binomial.from_vector(b.sign_key()))
    return [seen[key] for key in sorted(seen)]


@dataclass
class ToricResult:
    gb: GroebnerBasis
    provenance: list  # [{"binomial": str, "source": "sampled" | "completed"}]
    harvested: list = field(default_factory=list)
    rounds: int = 0
    completed_lattice: bool = False

    @property
    def sampled_count(self) -> int:
        return sum(1 for p in self.provenance if p["source"] == "sampled")


def toric_gb_annealed(A, order: MonomialOrder, enc: DigitEncoding | None = None, backend: str = "exhaustive",
                      schedule: AnnealSchedule | None = None, rounds: int = 6, penalty=None,
                      names: Sequence[str] | None = None, budget: int | None = None, jobs: int = 1) -> ToricResult:
    """Reduced basis of ``J_A`` assembled from solver minima of the kernel QUBO.

    With the annealer each round decodes every returned sample and adds
    exclusion penalties for those digit patterns before the next round.  The
    exhaustive backend instead takes every assignment whose energy is at most
    that of the largest lattice basis vector.
    The harvested binomials (plus lattice basis vectors if needed) generate
    a lattice ideal whose saturation by the product of all variables is
    ``J_A``.
    """
    A = _as_int_matrix(A)
    n = len(A[0])
    ring = toric_ring(n, names)
    enc = enc or DigitEncoding()
    basis = lattice_kernel(A)
    if not basis:
        return ToricResult(GroebnerBasis([], order, ring), [], [], 0, False)
    q = kernel_qubo(basis, _order_rows(order, n), enc)
    if penalty is None:
        penalty = max([abs(v) for v in q.linear] + [abs(v) for v in q.quadratic.values()] + [1])
    harvested: dict = {}
    done = 0
    if backend == "exhaustive":
        # exact counterpart of the exclusion loop: every assignment up to the
        # largest basis-vector energy, so the harvest always spans the lattice
        ceiling = max(q.energy(enc.encode([int(i == c) for i in range(len(basis))])) for c in range(len(basis)))
        ss = solve_below(q, ceiling)
        for b in harvest_binomials(ss.samples, basis, enc, A):
            harvested.setdefault(b.sign_key(), b)
        done = 1
    elif backend == "anneal":
        sched = schedule or AnnealSchedule(sweeps=2000, restarts=100, base_seed=0)
        for r in range(rounds):
            step = AnnealSchedule(sched.sweeps, sched.beta_start, sched.beta_end, sched.restarts,
                                  sched.base_seed + r * sched.restarts)
            ss = simulated_anneal(q, step, jobs=jobs)
            done += 1
            for b in harvest_binomials(ss.samples, basis, enc, A):
                harvested.setdefault(b.sign_key(), b)
            q = exclude_solutions(q, [s.x for s in ss.samples], penalty)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    found = [harvested[k] for k in sorted(harvested)]
    gens = [b.vector for b in found]
    completed = not gens or not same_lattice(gens, basis)
    if completed:
        gens = gens + [list(v) for v in basis]
    polys = [Binomial.from_vector(u).to_poly(ring) for u in gens]
    xprod = prod(ring.gens(), start=ring.one())
    gb = saturate(IdealGens(polys, ring), xprod, order, budget)
    sampled = set(harvested)
    prov = []
    for g in gb.elements:
        u = _binomial_vector(g)
        key = max(u, tuple(-v for v in u)) if u is not None else None
        prov.append({"binomial": str(g), "source": "sampled" if key in sampled else "completed"})
    return ToricResult(gb, prov, found, done, completed)


def _binomial_vector(g: Polynomial):
    if len(g.terms) != 2:
        return None
    (m1, c1), (m2, c2) = g.terms.items()
    if c1 != -c2:
        return None
    return tuple(a - b for a, b in zip(m1, m2))


def is_binomial(g: Polynomial) -> bool:
    return _binomial_vector(g) is not None


# ---------------------------------------------------------------------------
# Integer programming


def conti_traverso_ip(A, b: Sequence[int], cost: Sequence[int] | MonomialOrder | None = None,
                      budget: int | None = None) -> list[int]:
    """Minimise ``cost . v`` over ``v >= 0`` with ``A v = b`` by reducing ``y^b``.

    ``cost`` may be a weight vector (ties broken by grevlex) or any monomial
    order on the ``x`` variables; the returned ``v`` is the smallest
    feasible exponent under that order.
    """
    A = _as_int_matrix(A)
    if any(v < 0 for r in A for v in r):
        raise ValueError("the elimination route needs non-negative entries")
    m, n = len(A), len(A[0])
    b = [int(v) for v in b]
    if len(b) != m or any(v < 0 for v in b):
        raise ValueError("right-hand side must be a non-negative vector with one entry per row")
    if cost is None:
        order = grevlex()
    elif isinstance(cost, MonomialOrder):
        order = cost
    else:
        order = weight_order([int(c) for c in cost])
    names = [f"y{i + 1}" for i in range(m)] + [f"x{j + 1}" for j in range(n)]
    big = RingContext(names)
    gens = []
    for j in range(n):
        xm = (0,) * m + tuple(int(k == j) for k in range(n))
        ym = tuple(A[i][j] for i in range(m)) + (0,) * n
        gens.append(Polynomial(big, {xm: 1}) - Polynomial(big, {ym: 1}))
    border = block_order(list(range(m)), list(range(m, m + n)), order)
    gb = buchberger(IdealGens(gens, big), border, budget)
    target = Polynomial(big, {tuple(b) + (0,) * n: 1})
    nf = normal_form(target, gb.elements, border)
    if len(nf.terms) != 1:
        raise InfeasibleError("normal form is not a single monomial")
    (mono, c), = nf.terms.items()
    if any(mono[:m]) or c != 1:
        raise InfeasibleError(f"no non-negative integer solution of A v = {b}")
    return list(mono[m:])


def brute_force_ip(A, b, cost, box: int = 12):
    """Reference: all feasible ``v`` in ``[0, box]^n`` sorted by cost then grevlex-ish tie-break."""
    from itertools import product as _product

    A = _as_int_matrix(A)
    n = len(A[0])
    sols = [v for v in _product(range(box + 1), repeat=n)
            if all(sum(a * x for a, x in zip(r, v)) == bi for r, bi in zip(A, b))]
    if not sols:
        raise ResourceLimitError("no feasible point inside the search box")
    best = min(sum(c * x for c, x in zip(cost, v)) for v in sols)
    return best, [list(v) for v in sols if sum(c * x for c, x in zip(cost, v)) == best]
