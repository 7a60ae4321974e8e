"""Dense univariate polynomials over Q and exact real-root isolation.

A polynomial is a list of Fractions, lowest degree first, with no trailing
zeros; ``[]`` is the zero polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, lcm as ilcm

from .polyring import Polynomial


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p) -> int:
    return len(p) - 1


def from_poly(f: Polynomial, var: int):
    out = []
    for mono, c in f.terms.items():
        if any(e for i, e in enumerate(mono) if i != var):
            raise ValueError("polynomial is not univariate in the requested variable")
        e = mono[var]
        if e >= len(out):
            out.extend([Fraction(0)] * (e + 1 - len(out)))
        out[e] += c
    return trim(out)


def to_poly(p, ring, var: int) -> Polynomial:
    n = ring.arity
    terms = {}
    for e, c in enumerate(p):
        if c:
            terms[tuple(e if i == var else 0 for i in range(n))] = c
    return Polynomial(ring, terms, _trusted=True)


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p, c):
    return trim([a * c for a in p])


def divmod_(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    dq, lc = len(q) - 1, q[-1]
    if len(p) - 1 < dq:
        return [], trim(p)
    quot = [Fraction(0)] * (len(p) - dq)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = p[k + dq] / lc
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                p[k + j] -= c * b
    return trim(quot), trim(p[:dq])


def exact_div(p, q):
    quot, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("univariate division is not exact")
    return quot


def derivative(p):
    return trim([c * i for i, c in enumerate(p)][1:])


def evaluate(p, x):
    acc = Fraction(0) if not isinstance(x, Interval) else Interval(0, 0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def monic(p):
    return [c / p[-1] for c in p] if p else []


def gcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def squarefree(p):
    """Squarefree part ``p / gcd(p, p')`` (monic)."""
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    g = gcd(p, derivative(p))
    return monic(exact_div(p, g))


def primitive_int(p):
    """Scale to a primitive integer polynomial (positive leading coefficient)."""
    if not p:
        return []
    den = 1
    for c in p:
        den = ilcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = igcd(g, v)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


# ---------------------------------------------------------------------------
# Sturm sequences


def sturm_sequence(p):
    p = trim(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        r = divmod_(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(neg(r))
    return [s for s in seq if s]


def _sign_changes(values):
    changes, last = 0, 0
    for v in values:
        if v:
            s = 1 if v > 0 else -1
            if last and s != last:
                changes += 1
            last = s
    return changes


def count_roots(seq, a, b) -> int:
    """Distinct real roots in the half-open interval (a, b]."""
    va = _sign_changes(evaluate(s, a) for s in seq)
    vb = _sign_changes(evaluate(s, b) for s in seq)
    return va - vb


def root_bound(p) -> Fraction:
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    lc = abs(p[-1])
    return 1 + max((abs(c) / lc for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p, lo=None, hi=None):
    """Disjoint isolating intervals ``(a, b]`` of the distinct real roots.

    Exact roots are returned as degenerate intervals ``(r, r)``.  Only roots in
    ``(lo, hi]`` are reported when bounds are given.
    """
    p = squarefree(p)
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    bound = root_bound(p)
    a = Fraction(lo) if lo is not None else -bound
    b = Fraction(hi) if hi is not None else bound
    out = []
    stack = [(a, b)]
    while stack:
        a, b = stack.pop()
        k = count_roots(seq, a, b)
        if k == 0:
            continue
        if k == 1:
            if not evaluate(p, b):
                out.append((b, b))
            else:
                out.append((a, b))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort()
    return out


def refine_root(p, interval, tol):
    """Bisect an isolating interval of squarefree ``p`` until its width is <= tol."""
    a, b = interval
    if a == b:
        return a, b
    fb = evaluate(p, b)
    if not fb:
        return b, b
    tol = Fraction(tol)
    sb = fb > 0
    while b - a > tol:
        mid = (a + b) / 2
        fm = evaluate(p, mid)
        if not fm:
            return mid, mid
        if (fm > 0) == sb:
            b = mid
        else:
            a = mid
    return a, b


def real_roots(p, tol, lo=None, hi=None):
    sq = squarefree(p)
    return [refine_root(sq, iv, tol) for iv in isolate_real_roots(sq, lo, hi)]


def rational_roots(p):
    """All distinct rational roots, ascending.

    With ``q(y) = a_n^(n-1) p(y / a_n)`` monic over Z, rational roots of ``p``
    are ``y / a_n`` for the integer roots ``y`` of ``q``; those are found by
    isolating the real roots of ``q`` and testing the integers in each box.
    """
    ints = primitive_int(squarefree(p))
    if len(ints) <= 1:
        return []
    n = len(ints) - 1
    lead = ints[-1]
    # coefficients of q: c_i * lead^(n-1-i), leading 1
    q = [Fraction(ints[i] * lead ** (n - 1 - i)) for i in range(n)] + [Fraction(1)]
    roots = []
    for a, b in isolate_real_roots(q):
        if a == b:
            if a.denominator == 1:
                roots.append(a / lead)
            continue
        a, b = refine_root(q, (a, b), Fraction(1, 2))
        lo_i = -((-a.numerator) // a.denominator)  # ceil(a)
        hi_i = b.numerator // b.denominator
        for y in range(lo_i, hi_i + 1):
            if a <= y <= b and not evaluate(q, Fraction(y)):
                roots.append(Fraction(y, lead))
    return sorted(set(roots))


# ---------------------------------------------------------------------------
# Interval arithmetic with rational endpoints


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            lo, hi = hi, lo
        self.lo, self.hi = lo, hi

    @staticmethod
    def _c(x):
        return x if isinstance(x, Interval) else Interval(x)

    def __add__(self, o):
        o = self._c(o)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k == 0:
            return Interval(1)
        if k % 2 == 1 or self.lo >= 0:
            return Interval(self.lo**k, self.hi**k)
        if self.hi <= 0:
            return Interval(self.hi**k, self.lo**k)
        return Interval(0, max(self.lo**k, self.hi**k))

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def eval_poly_interval(f: Polynomial, boxes) -> Interval:
    """Natural interval extension of a multivariate polynomial."""
    total = Interval(0)
    for mono, c in f.terms.items():
        term = Interval(c)
        for box, e in zip(boxes, mono):
            if e:
                term = term * (box**e)
        total = total + term
    return total
