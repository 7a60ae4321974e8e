"""Exact linear algebra over Q and determinants over polynomial rings."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .polyring import Polynomial, as_rational, lex
from . import univariate as uv


class RatMatrix:
    """Dense rectangular matrix of Fractions (row major)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = [[as_rational(v) for v in r] for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("matrix is not rectangular")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "RatMatrix":
        return cls([[0] * c for _ in range(r)])

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def transpose(self) -> "RatMatrix":
        return RatMatrix([list(c) for c in zip(*self.rows)])

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            cols = list(zip(*other.rows))
            if len(cols[0]) != len(self.rows[0]):
                raise ValueError("shape mismatch")
            return RatMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])
        vec = [as_rational(v) for v in other]
        if len(vec) != len(self.rows[0]):
            raise ValueError("shape mismatch")
        return [sum(a * b for a, b in zip(r, vec)) for r in self.rows]

    def __add__(self, other):
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix([[c * a for a in r] for r in self.rows])

    def shift(self, lam) -> "RatMatrix":
        """Return ``self - lam * I``."""
        lam = as_rational(lam)
        return RatMatrix([[a - lam if i == j else a for j, a in enumerate(r)] for i, r in enumerate(self.rows)])

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.rows == other.rows

    def __repr__(self):
        return "RatMatrix(" + repr([[str(v) for v in r] for r in self.rows]) + ")"

    def tolist(self):
        return [list(r) for r in self.rows]


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(m) -> int:
    rows = m.rows if isinstance(m, RatMatrix) else [[as_rational(v) for v in r] for r in m]
    return len(rref(rows)[1])


def rational_nullspace(m) -> list[list[Fraction]]:
    """Basis of the right nullspace; one vector per free column, free entry 1."""
    rows = m.rows if isinstance(m, RatMatrix) else [[as_rational(v) for v in r] for r in m]
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(m, b):
    """One solution of ``m x = b`` or ``None`` when inconsistent."""
    rows = m.rows if isinstance(m, RatMatrix) else [[as_rational(v) for v in r] for r in m]
    aug = [r + [as_rational(bi)] for r, bi in zip(rows, b)]
    red, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return x


def det(m) -> Fraction:
    """Determinant of a square rational matrix by Gaussian elimination."""
    rows = [list(r) for r in (m.rows if isinstance(m, RatMatrix) else [[as_rational(v) for v in r] for r in m])]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        d *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def read_matrix(text: str) -> list[list[Fraction]]:
    """Parse whitespace separated rationals, one row per line, ``#`` comments."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([Fraction(tok) for tok in line.split()])
    if not rows:
        raise ValueError("empty matrix file")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix file rows have different lengths")
    return rows


def format_matrix(rows) -> str:
    return "\n".join(" ".join(str(as_rational(v)) for v in r) for r in rows) + "\n"


# ---------------------------------------------------------------------------
# Determinants with polynomial entries


def _check_square(m):
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    return n


def det_cofactor(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Leibniz expansion; exponential, used as an oracle and for tiny matrices."""
    n = _check_square(m)
    ring = m[0][0].ring
    total = ring.zero()
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ring.one()
        for i, j in enumerate(perm):
            term = term * m[i][j]
            if term.is_zero():
                break
        if term:
            total = total - term if inversions % 2 else total + term
    return total


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` for polynomials known to divide exactly."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if g.is_constant():
        return f.scale(1 / g.constant_term())
    order = lex()
    key = order.key
    lm_g = max(g.terms, key=key)
    lc_g = g.terms[lm_g]
    rem = dict(f.terms)
    q = {}
    while rem:
        lm = max(rem, key=key)
        shift = tuple(a - b for a, b in zip(lm, lm_g))
        if any(e < 0 for e in shift):
            raise ArithmeticError("polynomial division is not exact")
        c = rem[lm] / lc_g
        q[shift] = c
        for m, v in g.terms.items():
            t = tuple(a + b for a, b in zip(m, shift))
            s = rem.get(t, 0) - c * v
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    return Polynomial(f.ring, q, _trusted=True)


def _univariate_var(m):
    """Index of the single variable appearing in the entries, -1 if none, None if several."""
    var = -1
    for row in m:
        for p in row:
            for mono in p.terms:
                for i, e in enumerate(mono):
                    if e:
                        if var == -1:
                            var = i
                        elif var != i:
                            return None
    return var


def _bareiss_dense(a):
    """Bareiss over dense univariate coefficient lists; returns a dense list."""
    n = len(a)
    a = [list(r) for r in a]
    sign = 1
    prev = [Fraction(1)]
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return []
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = uv.sub(uv.mul(akk, row_i[j]), uv.mul(aik, row_k[j]))
                row_i[j] = uv.exact_div(num, prev)
            row_i[k] = []
        prev = akk
    d = a[n - 1][n - 1]
    return uv.neg(d) if sign < 0 else d


def _bareiss(m):
    n = len(m)
    a = [list(r) for r in m]
    ring = a[0][0].ring
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return ring.zero()
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = exact_quotient(akk * a[i][j] - aik * a[k][j], prev)
            a[i][k] = ring.zero()
        prev = akk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_over_ring(m: Sequence[Sequence[Polynomial]], method: str = "auto") -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    ``method`` is ``"bareiss"``, ``"cofactor"`` or ``"auto"`` (cofactor for
    n <= 2, fraction-free Bareiss elimination otherwise).  When every entry
    involves at most one variable the elimination runs on dense coefficient
    lists.
    """
    n = _check_square(m)
    ring = m[0][0].ring
    for row in m:
        for p in row:
            if p.ring != ring:
                from .errors import RingMismatchError

                raise RingMismatchError("matrix entries live in different rings")
    if method == "cofactor" or (method == "auto" and n <= 2):
        return det_cofactor(m)
    if method not in ("auto", "bareiss"):
        raise ValueError(f"unknown determinant method {method!r}")
    var = _univariate_var(m)
    if var is not None:
        idx = max(var, 0)
        dense = [[uv.from_poly(p, idx) for p in row] for row in m]
        return uv.to_poly(_bareiss_dense(dense), ring, idx)
    return _bareiss(m)
