"""Binary polynomial optimisation with Groebner bases.

Two exact methods are provided:

* elimination: adjoin a range variable ``z`` with ``z - f`` and the boolean
  relations, compute a lex basis with ``z`` least significant, read every
  attainable value off the univariate eliminant and back-substitute;
* eigenvalues: penalise non-binary points with ``alpha_i^2 y_i (y_i - 1)``,
  form the gradient ideal and diagonalise multiplication operators on the
  residue algebra.

Both return an :class:`Optimum` with exact rational data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import univariate as uv
from .errors import GroebOptError, InfeasibleError, ResourceLimitError
from .groebner import (
    GroebnerBasis,
    IdealGens,
    buchberger,
    eliminate,
    multiplication_matrix,
    restrict_to,
    standard_monomials,
)
from .linalg import RatMatrix, det_over_ring, rational_nullspace
from .polyring import Polynomial, RingContext, lex, partial_derivative


@dataclass
class BinaryProblem:
    objective: Polynomial
    equality_constraints: list = field(default_factory=list)
    variables: list | None = None  # names of the binary variables, default: every ring variable

    def __post_init__(self):
        ring = self.objective.ring
        for c in self.equality_constraints:
            if c.ring != ring:
                raise ValueError("objective and constraints must share a ring")
        if self.variables is None:
            self.variables = list(ring.names)
        if not self.variables:
            raise ValueError("at least one binary variable is required")

    @property
    def ring(self) -> RingContext:
        return self.objective.ring

    @property
    def m(self) -> int:
        return len(self.variables)


@dataclass
class Optimum:
    value: Fraction
    minimizers: list
    value_spectrum: list | None = None
    details: dict = field(default_factory=dict, repr=False)


def _points(m):
    return product((0, 1), repeat=m)


def brute_force(p: BinaryProblem) -> Optimum:
    """Exhaustive oracle over ``{0,1}^m``."""
    ring = p.ring
    idx = [ring.index(v) for v in p.variables]
    if len(idx) != ring.arity:
        raise ValueError("brute force needs every ring variable to be binary")
    best, arg, spectrum = None, [], set()
    for pt in _points(p.m):
        full = [0] * ring.arity
        for i, v in zip(idx, pt):
            full[i] = v
        if any(c(full) for c in p.equality_constraints):
            continue
        val = p.objective(full)
        spectrum.add(val)
        if best is None or val < best:
            best, arg = val, [pt]
        elif val == best:
            arg.append(pt)
    if best is None:
        raise InfeasibleError("no binary point satisfies the constraints")
    return Optimum(best, sorted(arg), sorted(spectrum))


def boolean_relations(ring: RingContext, names: Sequence[str]) -> list[Polynomial]:
    out = []
    for n in names:
        y = ring.gen(n)
        out.append(y * y - y)
    return out


def _binary_solutions(polys: Sequence[Polynomial], var_order: Sequence[int], fixed: dict | None = None):
    """All 0/1 assignments of ``var_order`` that zero every polynomial.

    Variables are assigned in the given sequence (least significant first for
    a lex-triangular basis); a branch is cut as soon as some polynomial
    becomes a nonzero constant.
    """
    results = []

    def rec(k, current, assign):
        if any(p.is_constant() and not p.is_zero() for p in current):
            return
        if k == len(var_order):
            if all(p.is_zero() for p in current):
                results.append(dict(assign))
            return
        v = var_order[k]
        for bit in (0, 1):
            assign[v] = bit
            rec(k + 1, [p.substitute({v: bit}) for p in current], assign)
            del assign[v]

    start = list(polys)
    if fixed:
        start = [p.substitute(fixed) for p in start]
    rec(0, start, {})
    return results


def solve_by_elimination(p: BinaryProblem, max_vars: int = 16, budget: int | None = None) -> Optimum:
    if p.m > max_vars:
        raise ResourceLimitError(f"{p.m} binary variables exceed the elimination limit of {max_vars}")
    ring = p.ring
    zname = ring.fresh_name("z")
    big = ring.extend([zname])
    zi = big.index(zname)
    f = p.objective.to_ring(big)
    gens = [big.gen(zi) - f]
    gens += [c.to_ring(big) for c in p.equality_constraints]
    gens += boolean_relations(big, p.variables)
    # lex: binary variables in declared order, any other ring variable next, z last
    others = [i for i in range(ring.arity) if ring.names[i] not in p.variables]
    perm = [big.index(v) for v in p.variables] + others + [zi]
    order = lex(perm)
    gb = buchberger(IdealGens(gens, big), order, budget)
    if gb.is_unit():
        raise InfeasibleError("the constraints have no binary solution")
    zpart = eliminate(gb, 1)
    if len(zpart) != 1:
        raise GroebOptError("expected a single univariate eliminant in the range variable")
    elim = uv.from_poly(zpart[0], zi)
    spectrum = uv.rational_roots(elim)
    if len(spectrum) != uv.degree(uv.squarefree(elim)):
        raise AssertionError("the value eliminant has non-rational roots")
    value = spectrum[0]
    # back-substitute z = value, walk the binary variables from least significant up
    walk = [big.index(v) for v in reversed(p.variables)]
    sols = _binary_solutions(gb.elements, walk, {zi: value})
    minimizers = []
    for s in sols:
        pt = tuple(s[big.index(v)] for v in p.variables)
        full = [0] * ring.arity
        for name, bit in zip(p.variables, pt):
            full[ring.index(name)] = bit
        if p.objective(full) != value or any(c(full) for c in p.equality_constraints):
            raise AssertionError(f"back-substitution produced an invalid point {pt}")
        minimizers.append(pt)
    return Optimum(value, sorted(minimizers), spectrum, {"gb": gb, "eliminant": zpart[0]})


def feasibility_conditions(system: Sequence[Polynomial], binary_vars: Sequence[str], param_vars: Sequence[str],
                           ring: RingContext | None = None, budget: int | None = None) -> GroebnerBasis:
    """Basis of the parameter constraints that make ``system`` solvable with binary variables.

    The result lives in the original ring and involves only ``param_vars``.
    """
    if ring is None:
        if not system:
            raise ValueError("an empty system needs an explicit ring")
        ring = system[0].ring
    params = [ring.index(v) for v in param_vars]
    rest = [i for i in range(ring.arity) if i not in params]
    order = lex(rest + params)
    gens = list(system) + boolean_relations(ring, binary_vars)
    if not gens:
        return GroebnerBasis([], order, ring)
    gb = buchberger(IdealGens(gens, ring), order, budget)
    return eliminate(gb, len(params))


@dataclass
class TildeProblem:
    tilde_f: Polynomial
    gradient_gens: list
    y_names: list
    alpha_names: list

    @property
    def ring(self) -> RingContext:
        return self.tilde_f.ring


def build_tilde(f: Polynomial, alpha_prefix: str = "alpha_") -> TildeProblem:
    """``f + sum alpha_i^2 y_i (y_i - 1)`` and its gradient generators."""
    ring = f.ring
    ynames = list(ring.names)
    anames = []
    for y in ynames:
        anames.append(RingContext(ynames + anames).fresh_name(f"{alpha_prefix}{y}"))
    big = ring.extend(anames)
    ft = f.to_ring(big)
    for y, a in zip(ynames, anames):
        yv, av = big.gen(y), big.gen(a)
        ft = ft + av * av * yv * (yv - 1)
    grads = [partial_derivative(ft, big.index(y)) for y in ynames]
    grads += [partial_derivative(ft, big.index(a)) for a in anames]
    return TildeProblem(ft, grads, ynames, anames)


def char_poly(m: RatMatrix, var: str = "lam") -> list:
    """Dense characteristic polynomial ``det(M - lam I)`` (lowest degree first)."""
    n = m.shape[0]
    ring = RingContext([var])
    lam = ring.gen(0)
    rows = [
        [Polynomial.constant(ring, m[i, j]) - (lam if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    return uv.from_poly(det_over_ring(rows), 0)


def _eigen_split(space, operators, values_per_op):
    """Split a space of column vectors into joint eigenspaces of commuting operators.

    Returns a list of (eigenvalue tuple, basis) pairs.
    """
    if not operators:
        return [((), space)]
    op, vals = operators[0], values_per_op[0]
    out = []
    for c in vals:
        shifted = op.shift(c)
        # vectors v = sum w_k e_k in the space with (op - c) v = 0
        images = [shifted @ e for e in space]
        mat = [[images[k][r] for k in range(len(space))] for r in range(len(images[0]))]
        ws = rational_nullspace(mat)
        if not ws:
            continue
        sub = [[sum(w[k] * space[k][r] for k in range(len(space))) for r in range(len(space[0]))] for w in ws]
        for tail, basis in _eigen_split(sub, operators[1:], values_per_op[1:]):
            out.append(((c,) + tail, basis))
    return out


def solve_by_eigenvalues(f: Polynomial, max_vars: int = 6, budget: int | None = None) -> Optimum:
    """Minimise ``f`` over ``{0,1}^m`` through the residue algebra of the gradient ideal.

    The boolean relations are added to the gradient generators so the ideal
    is zero dimensional; the basis is computed in lex with the alpha block
    first and then eliminated down to the ``y`` variables, whose residue
    algebra carries the multiplication operators.
    """
    ring = f.ring
    m = ring.arity
    if m > max_vars:
        raise ResourceLimitError(f"{m} variables exceed the eigenvalue method limit of {max_vars}")
    tp = build_tilde(f)
    big = tp.ring
    gens = tp.gradient_gens + boolean_relations(big, tp.y_names)
    a_idx = [big.index(a) for a in tp.alpha_names]
    y_idx = [big.index(y) for y in tp.y_names]
    order = lex(a_idx + y_idx)
    gb_full = buchberger(IdealGens(gens, big), order, budget)
    if gb_full.is_unit():
        raise InfeasibleError("the gradient ideal has no points")
    gb_y = restrict_to(eliminate(gb_full, m), tp.y_names)
    qb = standard_monomials(gb_y)
    # f_tilde - f lies in the ideal (boolean relations), so both act identically on the quotient
    mf = multiplication_matrix(f, qb)
    cp = char_poly(mf)
    eigenvalues = uv.rational_roots(cp)
    if len(eigenvalues) != uv.degree(uv.squarefree(cp)):
        raise AssertionError("the multiplication matrix has non-rational eigenvalues")
    lam0 = eigenvalues[0]
    mfT = mf.transpose()
    space = rational_nullspace(mfT.shift(lam0).rows)
    ops, vals = [], []
    for y in tp.y_names:
        my = multiplication_matrix(gb_y.ring.gen(y), qb)
        ops.append(my.transpose())
        vals.append(uv.rational_roots(char_poly(my)))
    joint = _eigen_split(space, ops, vals)
    minimizers = []
    for coords, basis in joint:
        pt = tuple(int(c) for c in coords)
        if f(pt) != lam0:
            raise AssertionError(f"recovered point {pt} does not attain the eigenvalue {lam0}")
        minimizers.append(pt)
    v0 = space[0] if len(space) == 1 else None
    if v0 is not None and v0[0]:
        v0 = [x / v0[0] for x in v0]
    details = {
        "gb": gb_full,
        "quotient": qb,
        "matrix": mf,
        "char_poly": cp,
        "eigenvector": v0,
        "eigenspace": space,
    }
    return Optimum(lam0, sorted(minimizers), eigenvalues, details)
