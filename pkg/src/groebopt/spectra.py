"""Critical points of the characteristic surface of a linear interpolation.

For ``H(s) = (1 - s) H_i + s H_f`` the surface is ``f(s, lam) =
det(H(s) - lam I)``.  Avoided crossings show up as nondegenerate critical
points of ``f``; they are found from a lex basis of ``<f_s, f_lam>`` and
classified by the normal form of the Hessian determinant, evaluated with
interval arithmetic on certified isolating boxes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import univariate as U
from .errors import InfiniteQuotientError, PositiveDimensionalError
from .groebner import GroebnerBasis, IdealGens, buchberger, normal_form, saturate, standard_monomials
from .linalg import det, det_over_ring
from .polyring import Polynomial, RingContext, as_rational, lex_by_names
from .univariate import Interval, eval_poly_interval

RING = RingContext(["s", "lam"])
S, LAM = 0, 1


def _sym(m) -> list[list[Fraction]]:
    rows = [[as_rational(v) for v in r] for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("Hamiltonian must be square")
    if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(n)):
        raise ValueError("Hamiltonian must be symmetric")
    return rows


@dataclass
class HamiltonianPair:
    h_initial: list
    h_final: list

    def __post_init__(self):
        self.h_initial = _sym(self.h_initial)
        self.h_final = _sym(self.h_final)
        if len(self.h_initial) != len(self.h_final):
            raise ValueError("Hamiltonians differ in dimension")
        if len(self.h_initial) < 2:
            raise ValueError("need at least a 2x2 Hamiltonian")

    @property
    def n(self) -> int:
        return len(self.h_initial)

    def at(self, s) -> list[list[Fraction]]:
        s = as_rational(s)
        return [[(1 - s) * a + s * b for a, b in zip(ra, rb)] for ra, rb in zip(self.h_initial, self.h_final)]


@dataclass
class SpectralSurface:
    f: Polynomial

    @property
    def ring(self) -> RingContext:
        return self.f.ring

    def __call__(self, s, lam):
        return self.f(s, lam)


def char_surface(pair: HamiltonianPair) -> SpectralSurface:
    s, lam = RING.gens()
    one = RING.one()
    n = pair.n
    m = [
        [
            (one - s).scale(pair.h_initial[i][j]) + s.scale(pair.h_final[i][j]) - (lam if i == j else RING.zero())
            for j in range(n)
        ]
        for i in range(n)
    ]
    return SpectralSurface(det_over_ring(m))


def numeric_char(pair: HamiltonianPair, s, lam) -> Fraction:
    """``det(H(s) - lam I)`` by rational elimination (independent of the symbolic route)."""
    h = pair.at(s)
    lam = as_rational(lam)
    return det([[v - (lam if i == j else 0) for j, v in enumerate(r)] for i, r in enumerate(h)])


def _as_surface(x) -> SpectralSurface:
    if isinstance(x, SpectralSurface):
        return x
    if isinstance(x, Polynomial):
        if x.ring != RING:
            x = x.to_ring(RING)
        return SpectralSurface(x)
    raise TypeError("expected a SpectralSurface or a polynomial in (s, lam)")


def critical_ideal(surface) -> IdealGens:
    f = _as_surface(surface).f
    return IdealGens([f.derivative(S), f.derivative(LAM)], RING)


def hessian_det(surface) -> Polynomial:
    f = _as_surface(surface).f
    fs, fl = f.derivative(S), f.derivative(LAM)
    return fs.derivative(S) * fl.derivative(LAM) - fs.derivative(LAM) ** 2


def critical_order():
    """Lex with ``lam > s`` so the last basis element is univariate in ``s``."""
    return lex_by_names(RING, ["lam", "s"])


def saturated_critical_ideal(surface, budget: int | None = None) -> GroebnerBasis:
    gens = critical_ideal(surface)
    order = critical_order()
    if not len(gens):
        return GroebnerBasis([], order, RING)
    return saturate(gens, hessian_det(surface), order, budget)


# ---------------------------------------------------------------------------
# Critical points


@dataclass
class CriticalPoint:
    s_box: tuple
    lambda_box: tuple
    degenerate: bool
    refined: tuple
    normal_form_value: Interval | None = None
    status: str = "nondegenerate"  # or "degenerate" / "inconclusive"
    gap: float | None = None

    def to_dict(self, as_float: bool = False) -> dict:
        fmt = (lambda v: float(v)) if as_float else str
        d = {
            "s_box": [fmt(v) for v in self.s_box],
            "lambda_box": [fmt(v) for v in self.lambda_box],
            "degenerate": self.degenerate,
            "status": self.status,
        }
        if self.normal_form_value is not None:
            d["normal_form_value_interval"] = [fmt(self.normal_form_value.lo), fmt(self.normal_form_value.hi)]
        if self.gap is not None:
            d["gap"] = self.gap
        return d


def _mid(box):
    return (box[0] + box[1]) / 2


def _lam_coefficients(g: Polynomial) -> list:
    """Coefficients of ``g`` in ``lam`` as polynomials in ``s`` (low degree first)."""
    coeffs = [RING.zero() for _ in range(g.degree_in(LAM) + 1)]
    for (es, el), c in g.terms.items():
        coeffs[el] = coeffs[el] + Polynomial(RING, {(es, 0): c})
    return coeffs


def _lambda_roots(gb: GroebnerBasis, s_box, tol: Fraction):
    """Real ``lam`` boxes over one isolated ``s`` root (Gianni-Kalkbrener specialisation).

    For a rational root the specialisation is exact.  Otherwise the
    coefficients are evaluated at the box midpoint after refining ``s`` far
    below ``tol``; each candidate is then checked by interval evaluation of
    the whole basis.
    """
    exact = s_box[0] == s_box[1]
    sm = s_box[0] if exact else _mid(s_box)
    cands = sorted((g for g in gb.elements if g.degree_in(LAM) > 0), key=lambda g: g.degree_in(LAM))
    for g in cands:
        coeffs = _lam_coefficients(g)
        lead = coeffs[-1]
        if exact:
            if lead(sm, 0):
                break
        else:
            box = eval_poly_interval(lead, [Interval(*s_box), Interval(0)])
            if not box.contains_zero():
                break
    else:
        raise PositiveDimensionalError("no basis element pins down lam over this s root")
    uni = [c(sm, 0) for c in coeffs]
    return U.isolate_real_roots(U.trim(uni)), uni


def _refine_pair(s_poly, s_box, lam_uni, lam_box, grads, tol):
    """Shrink both boxes until the gradient at the midpoint is within ``tol``."""
    for _ in range(200):
        pt = (_mid(s_box), _mid(lam_box))
        if s_box[1] - s_box[0] <= tol and lam_box[1] - lam_box[0] <= tol and all(abs(g(*pt)) <= tol for g in grads):
            return s_box, lam_box
        s_box = U.refine_root(s_poly, s_box, max((s_box[1] - s_box[0]) / 4, Fraction(0)))
        lam_box = U.refine_root(lam_uni, lam_box, max((lam_box[1] - lam_box[0]) / 4, Fraction(0)))
        if s_box[0] == s_box[1] and lam_box[0] == lam_box[1]:
            return s_box, lam_box
    return s_box, lam_box


def find_critical_points(surface, tol=Fraction(1, 10**9), s_range=(0, 1), budget: int | None = None) -> list[CriticalPoint]:
    """Real critical points of ``f`` with certified boxes; ``s_range=None`` reports all."""
    surface = _as_surface(surface)
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    gens = critical_ideal(surface)
    if not len(gens):
        raise PositiveDimensionalError("f is constant, every point is critical")
    order = critical_order()
    gb = buchberger(gens, order, budget)
    if gb.is_unit():
        return []
    try:
        standard_monomials(gb)
    except InfiniteQuotientError:
        raise PositiveDimensionalError("the critical set is positive dimensional") from None
    elim = [g for g in gb.elements if g.support() <= {S}]
    if len(elim) != 1:
        raise PositiveDimensionalError("no eliminant in s")
    s_poly = U.squarefree(U.from_poly(elim[0], S))
    if s_range is None:
        s_boxes = U.isolate_real_roots(s_poly)
    else:
        lo, hi = (as_rational(v) for v in s_range)
        s_boxes = U.isolate_real_roots(s_poly, lo, hi)
        if not U.evaluate(s_poly, lo):
            s_boxes = [(lo, lo)] + s_boxes
    grads = list(gens)
    hess = hessian_det(surface)
    r = normal_form(hess, gb.elements, order)
    out = []
    for s_box in s_boxes:
        if s_box[0] != s_box[1]:
            s_box = U.refine_root(s_poly, s_box, tol * tol)
        lam_boxes, lam_uni = _lambda_roots(gb, s_box, tol)
        lam_uni = U.squarefree(U.trim(lam_uni))
        for lam_box in lam_boxes:
            sb, lb = _refine_pair(s_poly, s_box, lam_uni, lam_box, grads, tol)
            if not all(eval_poly_interval(g, [Interval(*sb), Interval(*lb)]).contains_zero() for g in grads):
                continue
            pt = (_mid(sb), _mid(lb))
            cp = CriticalPoint(sb, lb, False, pt)
            nondegeneracy_test(surface, gb, cp, tol, r)
            cp.gap = _gap(surface, pt)
            out.append(cp)
    out.sort(key=lambda c: c.refined)
    return out


def nondegeneracy_test(surface, gb: GroebnerBasis, p: CriticalPoint, tol=Fraction(1, 10**9), r=None) -> bool:
    """Whether the normal form of the Hessian determinant is provably nonzero on ``p``'s box.

    Boxes are bisected towards the point until the interval excludes zero or
    its width falls below ``tol``; an interval that still contains zero is
    reported as inconclusive and treated as degenerate.
    """
    surface = _as_surface(surface)
    if r is None:
        r = normal_form(hessian_det(surface), gb.elements, gb.order)
    sb, lb = p.s_box, p.lambda_box
    if r.is_zero():
        p.normal_form_value = Interval(0)
        p.degenerate, p.status = True, "degenerate"
        return False
    for _ in range(80):
        val = eval_poly_interval(r, [Interval(*sb), Interval(*lb)])
        if not val.contains_zero():
            p.normal_form_value = val
            p.degenerate, p.status = False, "nondegenerate"
            return True
        if sb[0] == sb[1] and lb[0] == lb[1]:
            break
        if val.width <= tol:
            break
        sm, lm = p.refined
        sb = ((sb[0] + sm) / 2, (sb[1] + sm) / 2)
        lb = ((lb[0] + lm) / 2, (lb[1] + lm) / 2)
    p.normal_form_value = val
    if sb[0] == sb[1] and lb[0] == lb[1]:
        p.degenerate, p.status = True, "degenerate"
    else:
        p.degenerate, p.status = True, "inconclusive"
    return False


def _gap(surface: SpectralSurface, pt) -> float | None:
    """Distance between the real eigenvalues of ``H(s*)`` nearest to ``lam*`` on either side."""
    s, lam = pt
    uni = U.squarefree(U.from_poly(surface.f.substitute({S: s}), LAM))
    roots = [float(_mid(U.refine_root(uni, box, Fraction(1, 10**12)))) for box in U.isolate_real_roots(uni)]
    below = [x for x in roots if x <= float(lam)]
    above = [x for x in roots if x > float(lam)]
    if not below or not above:
        return None
    return min(above) - max(below)
