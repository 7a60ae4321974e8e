"""Exact rational linear programming (two-phase simplex with Bland's rule).

Small dense problems only; every pivot is carried out in Fractions so the
returned point satisfies the constraints exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyring import as_rational


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list | None = None
    value: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


def _pivot(tab, basis, r, c):
    row = tab[r]
    inv = 1 / row[c]
    if inv != 1:
        tab[r] = row = [v * inv for v in row]
    for i, other in enumerate(tab):
        if i != r:
            f = other[c]
            if f:
                tab[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(tab, basis, ncols, allowed):
    """Minimise the objective stored in the last row; columns outside ``allowed`` never enter."""
    m = len(tab) - 1
    obj = tab[m]
    while True:
        obj = tab[m]
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best, leave = None, None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        _pivot(tab, basis, leave, enter)


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[bool] | None = None,
) -> LPResult:
    """Minimise ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are non-negative unless flagged in ``free``.
    """
    n = len(c)
    free = list(free) if free is not None else [False] * n
    c = [as_rational(v) for v in c]
    # column map: original var -> (plus column, minus column or None)
    cols = []
    k = 0
    for j in range(n):
        if free[j]:
            cols.append((k, k + 1))
            k += 2
        else:
            cols.append((k, None))
            k += 1
    nx = k
    rows = []
    rhs = []
    kinds = []
    for row, b in zip(A_ub, b_ub):
        rows.append([as_rational(v) for v in row])
        rhs.append(as_rational(b))
        kinds.append("ub")
    for row, b in zip(A_eq, b_eq):
        rows.append([as_rational(v) for v in row])
        rhs.append(as_rational(b))
        kinds.append("eq")
    m = len(rows)
    n_slack = sum(1 for t in kinds if t == "ub")
    total = nx + n_slack + m  # structural + slacks + artificials
    tab = []
    basis = []
    s_idx = nx
    for i, (row, b, kind) in enumerate(zip(rows, rhs, kinds)):
        line = [Fraction(0)] * (total + 1)
        for j in range(n):
            p, q = cols[j]
            line[p] = row[j]
            if q is not None:
                line[q] = -row[j]
        if kind == "ub":
            line[s_idx] = Fraction(1)
            s_idx += 1
        if b < 0:
            line = [-v for v in line]
            b = -b
        line[nx + n_slack + i] = Fraction(1)
        line[-1] = b
        tab.append(line)
        basis.append(nx + n_slack + i)
    # phase 1: minimise the sum of artificials
    art0 = nx + n_slack
    obj = [Fraction(0)] * (total + 1)
    for line in tab:
        for j in range(total + 1):
            if j < art0 or j == total:
                obj[j] -= line[j]
    tab.append(obj)
    allowed = [j < art0 for j in range(total)]
    status = _simplex(tab, basis, total, allowed)
    if status != "optimal" or tab[-1][-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= art0:
            j = next((j for j in range(art0) if tab[i][j]), None)
            if j is not None:
                _pivot(tab, basis, i, j)
    # phase 2
    obj = [Fraction(0)] * (total + 1)
    for j in range(n):
        p, q = cols[j]
        obj[p] = c[j]
        if q is not None:
            obj[q] = -c[j]
    for i in range(m):
        b = basis[i]
        if obj[b]:
            f = obj[b]
            obj = [a - f * v for a, v in zip(obj, tab[i])]
    tab[-1] = obj
    status = _simplex(tab, basis, total, allowed)
    if status == "unbounded":
        return LPResult("unbounded")
    values = [Fraction(0)] * total
    for i in range(m):
        values[basis[i]] = tab[i][-1]
    x = []
    for j in range(n):
        p, q = cols[j]
        x.append(values[p] - (values[q] if q is not None else 0))
    value = sum((cj * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult("optimal", x, value)
