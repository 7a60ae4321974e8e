"""Buchberger's algorithm and the quotient-algebra toolkit built on it.

Internally every polynomial is a ``dict`` from monomial tuple to ``int``
(coefficients are kept primitive and fraction free); division runs on a
heap of monomials ordered by the active monomial order, with bit masks to
skip reducers whose leading monomial cannot divide.  Public results are
plain :class:`~groebopt.polyring.Polynomial` objects with monic, reduced
elements sorted by leading monomial ascending.
"""

from __future__ import annotations

import heapq
import os
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    InfiniteQuotientError,
    OrderError,
    ResourceLimitError,
    RingMismatchError,
)
from .linalg import RatMatrix
from .polyring import (
    MonomialOrder,
    Polynomial,
    RingContext,
    block_order,
    leading_term,
    lex,
)

DEFAULT_PAIR_BUDGET = 10**6


def pair_budget() -> int:
    raw = os.environ.get("GA_PAIR_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"GA_PAIR_BUDGET must be an integer, got {raw!r}") from None
        if value <= 0:
            raise ValueError("GA_PAIR_BUDGET must be positive")
        return value
    return DEFAULT_PAIR_BUDGET


class IdealGens:
    """Generators of an ideal; zero polynomials are dropped."""

    __slots__ = ("generators", "ring")

    def __init__(self, generators: Iterable[Polynomial], ring: RingContext | None = None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("an empty generator list needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generators live in different rings")
        self.ring = ring
        self.generators = [g for g in gens if not g.is_zero()]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"IdealGens({[str(g) for g in self.generators]})"


def _as_gens(gens) -> IdealGens:
    return gens if isinstance(gens, IdealGens) else IdealGens(gens)


# ---------------------------------------------------------------------------
# Integer polynomial kernel
#
# Monomials are packed into one Python int with a 32-bit field per variable
# (plus a leading total-degree field for graded and matrix orders).  The top
# bit of every field is a guard bit, so monomial product is integer addition
# and divisibility is a single subtraction and mask test.  Field layout is
# chosen so that for lex and grlex the packed int itself is the order key.

_W = 32
_FIELD = (1 << _W) - 1


def _primitive(d: dict) -> dict:
    g = 0
    for v in d.values():
        g = gcd(g, v)
        if g == 1:
            return d
    if g > 1:
        return {m: v // g for m, v in d.items()}
    return d


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class _Packing:
    def __init__(self, order: MonomialOrder, n: int):
        order.check_arity(n)
        self.n = n
        self.order = order
        kind = order.kind
        if kind == "lex":
            layout = list(order.perm) if order.perm is not None else list(range(n))
            graded, mode = False, "id"
        elif kind == "grlex":
            layout, graded, mode = list(range(n)), True, "id"
        elif kind == "grevlex":
            layout, graded, mode = list(range(n - 1, -1, -1)), True, "grevlex"
        else:
            layout, graded, mode = list(range(n)), True, "cache"
        self.graded = graded
        self.mode = mode
        self.shift = [0] * n
        for k, v in enumerate(layout):
            self.shift[v] = _W * (n - 1 - k)
        self.deg_shift = _W * n
        nfields = n + (1 if graded else 0)
        self.guard = sum(1 << (_W * f + _W - 1) for f in range(nfields))
        self.ones = sum(1 << (_W * f) for f in range(nfields))
        self.low = (1 << (_W * n)) - 1
        self.zero = 0
        self._cache: dict = {}
        okey = order.key
        unpack = self.unpack
        cache = self._cache
        if mode == "id":
            self.key = lambda p: p
            self.heap_key = lambda p: -p
        elif mode == "grevlex":
            low = self.low
            self.key = lambda p: p - 2 * (p & low)
            self.heap_key = lambda p: 2 * (p & low) - p
        else:
            hcache: dict = {}

            def heap_key(p):
                k = hcache.get(p)
                if k is None:
                    k = tuple(-v for v in key(p))
                    hcache[p] = k
                return k

            self.heap_key = heap_key

            def key(p):
                k = cache.get(p)
                if k is None:
                    k = okey(unpack(p))
                    cache[p] = k
                return k

            self.key = key

    def pack(self, mono) -> int:
        p = 0
        for e, sh in zip(mono, self.shift):
            if e:
                if e >= 1 << (_W - 2):
                    raise ResourceLimitError("exponent too large for the packed representation")
                p |= e << sh
        if self.graded:
            p |= sum(mono) << self.deg_shift
        return p

    def unpack(self, p):
        return tuple((p >> sh) & _FIELD for sh in self.shift)

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b + g) - a) & g == g

    def support_bits(self, p: int) -> int:
        g = self.guard
        return ((p + g) - self.ones) & g

    def lcm(self, a: int, b: int) -> int:
        return self.pack(_lcm(self.unpack(a), self.unpack(b)))


class _Engine:
    """Reducer set plus normal-form routines for one order and ring."""

    def __init__(self, order: MonomialOrder, arity: int):
        self.pk = _Packing(order, arity)
        self.key = self.pk.key
        self.lms: list = []
        self.lcs: list = []
        self.supp: list = []
        self.polys: list = []
        self.active: list = []
        self._rcache: dict = {}

    def pack_poly(self, f: Polynomial, integer=True) -> dict:
        pack = self.pk.pack
        if not integer:
            return {pack(m): c for m, c in f.terms.items()}
        den = 1
        for c in f.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        return _primitive({pack(m): int(c * den) for m, c in f.terms.items()})

    def unpack_poly(self, ring, d: dict, monic=False) -> Polynomial:
        unpack = self.pk.unpack
        if not d:
            return ring.zero()
        if monic:
            lc = d[max(d, key=self.key)]
            return Polynomial(ring, {unpack(m): Fraction(v) / lc for m, v in d.items()}, _trusted=True)
        return Polynomial(ring, {unpack(m): Fraction(v) for m, v in d.items()}, _trusted=True)

    def leading(self, d: dict) -> int:
        return max(d, key=self.key)

    def add(self, d: dict) -> int:
        lm = self.leading(d)
        self.lms.append(lm)
        self.lcs.append(d[lm])
        self.supp.append(self.pk.support_bits(lm))
        self.polys.append(d)
        self.active.append(True)
        return len(self.polys) - 1

    def deactivate(self, i):
        self.active[i] = False
        self._rcache.clear()

    def find_reducer(self, m: int, skip=-1) -> int:
        """First active element (by index) whose leading monomial divides ``m``."""
        if skip < 0:
            hit = self._rcache.get(m)
            if hit is not None:
                if hit >= 0:
                    return hit
                start = -hit - 1
            else:
                start = 0
        else:
            start = 0
        g = self.pk.guard
        mg = m + g
        lms, active = self.lms, self.active
        for i in range(start, len(lms)):
            if active[i] and i != skip and (mg - lms[i]) & g == g:
                if skip < 0:
                    self._rcache[m] = i
                return i
        if skip < 0:
            self._rcache[m] = -len(lms) - 1
        return -1

    def reduce(self, f: dict, skip=-1) -> dict:
        """Full normal form of an integer polynomial, up to a positive scalar."""
        if not f:
            return f
        f = dict(f)
        key = self.key
        ident = self.pk.mode == "id"
        if ident:
            heap = [-m for m in f]
        else:
            hk = self.pk.heap_key
            heap = [(hk(m), m) for m in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        rem: dict = {}
        polys, lcs, lms = self.polys, self.lcs, self.lms
        steps = 0
        while heap:
            m = -pop(heap) if ident else pop(heap)[1]
            c = f.pop(m, None)
            if c is None:
                continue
            i = self.find_reducer(m, skip)
            if i < 0:
                rem[m] = c
                continue
            lc = lcs[i]
            g = gcd(lc, c)
            a, b = lc // g, c // g
            if a < 0:
                a, b = -a, -b
            if a != 1:
                for k in f:
                    f[k] *= a
                for k in rem:
                    rem[k] *= a
            lm = lms[i]
            sh = m - lm
            for gm, gv in polys[i].items():
                if gm == lm:
                    continue
                t = gm + sh
                old = f.get(t)
                if old is None:
                    f[t] = -b * gv
                    push(heap, -t if ident else (hk(t), t))
                else:
                    v = old - b * gv
                    if v:
                        f[t] = v
                    else:
                        del f[t]
            steps += 1
            if steps % 32 == 0:
                f, rem = _shrink(f, rem)
        return _primitive(rem)

    def reduce_exact(self, f: dict, skip=-1) -> dict:
        """Normal form with Fraction coefficients (exact scale)."""
        f = {m: Fraction(v) for m, v in f.items()}
        hk = self.pk.heap_key
        heap = [(hk(m), m) for m in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            i = self.find_reducer(m, skip)
            if i < 0:
                rem[m] = c
                continue
            lm = self.lms[i]
            q = c / self.lcs[i]
            sh = m - lm
            for gm, gv in self.polys[i].items():
                if gm == lm:
                    continue
                t = gm + sh
                old = f.get(t)
                if old is None:
                    f[t] = -q * gv
                    heapq.heappush(heap, (hk(t), t))
                else:
                    v = old - q * gv
                    if v:
                        f[t] = v
                    else:
                        del f[t]
        return rem

    def spoly(self, i: int, j: int) -> dict:
        lmi, lmj = self.lms[i], self.lms[j]
        lci, lcj = self.lcs[i], self.lcs[j]
        l = self.pk.lcm(lmi, lmj)
        si, sj = l - lmi, l - lmj
        g = gcd(lci, lcj)
        a, b = lcj // g, lci // g
        out: dict = {}
        for m, v in self.polys[i].items():
            if m != lmi:
                out[m + si] = a * v
        for m, v in self.polys[j].items():
            if m != lmj:
                t = m + sj
                s = out.get(t, 0) - b * v
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return out


def _shrink(f, rem):
    g = 0
    for v in f.values():
        g = gcd(g, v)
        if g == 1:
            return f, rem
    for v in rem.values():
        g = gcd(g, v)
        if g == 1:
            return f, rem
    if g > 1:
        f = {k: v // g for k, v in f.items()}
        rem = {k: v // g for k, v in rem.items()}
    return f, rem


# ---------------------------------------------------------------------------
# Buchberger


class GroebnerBasis:
    """A reduced Groebner basis: monic elements sorted by leading monomial ascending."""

    def __init__(self, elements: Sequence[Polynomial], order: MonomialOrder, ring: RingContext):
        self.elements = list(elements)
        self.order = order
        self.ring = ring

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and set(self.elements) == set(other.elements)

    def __repr__(self):
        return f"GroebnerBasis({[str(e) for e in self.elements]}, {self.order!r})"

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def is_zero_ideal(self) -> bool:
        return not self.elements

    def leading_monomials(self):
        return [leading_term(g, self.order)[0] for g in self.elements]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.elements, self.order)

    def contains(self, f: Polynomial) -> bool:
        return ideal_membership(f, self)

    def to_strings(self):
        from .polyring import format_poly

        return [format_poly(g, self.order) for g in self.elements]


def buchberger(gens, order: MonomialOrder, budget: int | None = None, stats: dict | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first, ties by
    generator index) and pruned with the coprime and chain criteria in the
    Gebauer-Moeller formulation.  ``budget`` caps the number of S-pair
    reductions (default from ``GA_PAIR_BUDGET`` or one million).
    """
    gens = _as_gens(gens)
    ring = gens.ring
    budget = pair_budget() if budget is None else budget
    eng = _Engine(order, ring.arity)
    pk = eng.pk
    key = eng.key

    unit = GroebnerBasis([ring.one()], order, ring)
    inputs = [eng.pack_poly(g) for g in gens.generators]
    if not inputs:
        return GroebnerBasis([], order, ring)

    pairs: list = []
    live: set = set()
    lcm_of: dict = {}

    def update(t):
        """Gebauer-Moeller update after appending element ``t``."""
        lms, supp = eng.lms, eng.supp
        lm_t, s_t = lms[t], supp[t]
        cands = [i for i in range(t) if eng.active[i]]
        lcms = {i: pk.lcm(lms[i], lm_t) for i in cands}
        kept = []
        for idx, i in enumerate(cands):
            if not supp[i] & s_t:
                kept.append(i)
                continue
            li = lcms[i]
            if any(pk.divides(lcms[j], li) for j in cands[idx + 1 :]):
                continue
            if any(pk.divides(lcms[j], li) for j in kept):
                continue
            kept.append(i)
        dead = []
        for pair in live:
            l = lcm_of[pair]
            i, j = pair
            if pk.divides(lm_t, l) and pk.lcm(lms[i], lm_t) != l and pk.lcm(lms[j], lm_t) != l:
                dead.append(pair)
        for pair in dead:
            live.discard(pair)
        for i in kept:
            if not supp[i] & s_t:
                continue
            pair = (i, t)
            lcm_of[pair] = lcms[i]
            live.add(pair)
            heapq.heappush(pairs, (key(lcms[i]), t, i))
        for i in cands:
            if pk.divides(lm_t, lms[i]):
                eng.deactivate(i)

    def is_unit(d):
        return len(d) == 1 and 0 in d

    for d in inputs:
        r = eng.reduce(d)
        if not r:
            continue
        if is_unit(r):
            return unit
        update(eng.add(r))

    reductions = 0
    while pairs:
        _, j, i = heapq.heappop(pairs)
        if (i, j) not in live:
            continue
        live.discard((i, j))
        reductions += 1
        if reductions > budget:
            raise ResourceLimitError(
                f"Buchberger pair budget of {budget} reductions exhausted "
                f"({len(eng.polys)} basis elements so far)"
            )
        r = eng.reduce(eng.spoly(i, j))
        if not r:
            continue
        if is_unit(r):
            if stats is not None:
                stats.update(reductions=reductions, elements=len(eng.polys))
            return unit
        update(eng.add(r))

    if stats is not None:
        stats.update(reductions=reductions, elements=len(eng.polys))
    return _reduced_basis(eng, ring, order)


def _reduced_basis(eng: _Engine, ring, order) -> GroebnerBasis:
    pk = eng.pk
    idx = [i for i in range(len(eng.polys)) if eng.active[i]]
    minimal = []
    for i in idx:
        lm = eng.lms[i]
        if any(j != i and pk.divides(eng.lms[j], lm) and (eng.lms[j] != lm or j < i) for j in idx):
            continue
        minimal.append(i)
    final = _Engine(order, ring.arity)
    for i in minimal:
        final.add(eng.polys[i])
    out = []
    for k in range(len(minimal)):
        lm = final.lms[k]
        tail = dict(final.polys[k])
        lc = tail.pop(lm)
        nf = final.reduce_exact(tail, skip=k) if tail else {}
        terms = {lm: Fraction(1)}
        for m, v in nf.items():
            terms[m] = v / lc
        out.append((final.key(lm), terms))
    out.sort(key=lambda t: t[0])
    unpack = pk.unpack
    polys = [Polynomial(ring, {unpack(m): v for m, v in terms.items()}, _trusted=True) for _, terms in out]
    return GroebnerBasis(polys, order, ring)


# ---------------------------------------------------------------------------
# Public helpers


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise RingMismatchError("S-polynomial of polynomials from different rings")
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    l = _lcm(mf, mg)
    a = tuple(x - y for x, y in zip(l, mf))
    b = tuple(x - y for x, y in zip(l, mg))
    return f.mul_term(a, 1 / cf) - g.mul_term(b, 1 / cg)


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of multivariate division of ``f`` by the list ``G`` (exact)."""
    G = [g for g in G if not g.is_zero()]
    ring = f.ring
    if not G or f.is_zero():
        return f
    for g in G:
        if g.ring != ring:
            raise RingMismatchError("normal form across different rings")
    eng = _Engine(order, ring.arity)
    for g in G:
        eng.add(eng.pack_poly(g))
    rem = eng.reduce_exact(eng.pack_poly(f, integer=False))
    unpack = eng.pk.unpack
    return Polynomial(ring, {unpack(m): c for m, c in rem.items()}, _trusted=True)


def division(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder):
    """Textbook division returning ``(quotients, remainder)`` with ``f = sum q_i g_i + r``."""
    ring = f.ring
    qs = [ring.zero() for _ in G]
    lts = [leading_term(g, order) for g in G]
    p = f
    r = ring.zero()
    while not p.is_zero():
        m, c = leading_term(p, order)
        for i, (lm, lc) in enumerate(lts):
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                q = c / lc
                qs[i] = qs[i] + Polynomial(ring, {shift: q}, _trusted=True)
                p = p - G[i].mul_term(shift, q)
                break
        else:
            r = r + Polynomial(ring, {m: c}, _trusted=True)
            p = p - Polynomial(ring, {m: c}, _trusted=True)
    return qs, r


def ideal_membership(f: Polynomial, gb: GroebnerBasis) -> bool:
    if f.ring != gb.ring:
        raise RingMismatchError("membership test across different rings")
    return normal_form(f, gb.elements, gb.order).is_zero()


def is_groebner(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Every S-polynomial reduces to zero modulo ``G``."""
    G = [g for g in G if not g.is_zero()]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not normal_form(s_polynomial(G[i], G[j], order), G, order).is_zero():
                return False
    return True


def is_reduced(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Monic, and no term of any element divisible by another element's leading monomial."""
    lts = [leading_term(g, order) for g in G]
    for i, g in enumerate(G):
        if lts[i][1] != 1:
            return False
        for m in g.terms:
            for j, (lm, _) in enumerate(lts):
                if j != i and _divides(lm, m):
                    return False
    return True


# ---------------------------------------------------------------------------
# Elimination and saturation


def _kept_indices(gb: GroebnerBasis, keep_suffix_len: int):
    order = gb.order
    n = gb.ring.arity
    if not 0 <= keep_suffix_len <= n:
        raise ValueError(f"cannot keep {keep_suffix_len} of {n} variables")
    sig = order.significance(n)
    if sig is not None:
        return set(sig[n - keep_suffix_len :])
    if order.kind == "block":
        first, rest = order.split
        if keep_suffix_len == len(rest):
            return set(rest)
        if keep_suffix_len == n:
            return set(range(n))
        inner_sig = order.inner.significance(len(rest))
        if inner_sig is not None and keep_suffix_len < len(rest):
            return {rest[i] for i in inner_sig[len(rest) - keep_suffix_len :]}
    if keep_suffix_len in (0, n):
        return set(range(n)) if keep_suffix_len else set()
    raise OrderError(f"{order!r} is not an elimination order for keeping {keep_suffix_len} variables")


def eliminate(gb: GroebnerBasis, keep_suffix_len: int) -> GroebnerBasis:
    """Elements of ``gb`` involving only the last ``keep_suffix_len`` variables of the order."""
    kept = _kept_indices(gb, keep_suffix_len)
    elems = [g for g in gb.elements if g.support() <= kept]
    return GroebnerBasis(elems, gb.order, gb.ring)


def eliminate_vars(gb: GroebnerBasis, names: Sequence[str]) -> GroebnerBasis:
    """Like :func:`eliminate` with the kept variables given by name."""
    kept = {gb.ring.index(n) for n in names}
    if kept != _kept_indices(gb, len(kept)):
        raise OrderError(f"{gb.order!r} does not eliminate down to {list(names)}")
    return eliminate(gb, len(kept))


def restrict_to(gb: GroebnerBasis, names: Sequence[str]) -> GroebnerBasis:
    """Move an eliminated basis into the subring on ``names`` (keeps the induced order)."""
    sub = RingContext(names)
    elems = [g.to_ring(sub) for g in gb.elements]
    idx = [gb.ring.index(n) for n in names]
    order = induced_order(gb.order, idx, gb.ring.arity)
    return GroebnerBasis(elems, order, sub)


def induced_order(order: MonomialOrder, idx: Sequence[int], n: int) -> MonomialOrder:
    """Order on the subring spanned by the variables ``idx`` (restriction of ``order``)."""
    pos = {v: k for k, v in enumerate(idx)}
    sig = order.significance(n)
    if sig is not None:
        return lex([pos[v] for v in sig if v in pos])
    if order.kind == "block":
        first, rest = order.split
        if set(idx) == set(rest):
            inner = order.inner
            if list(idx) == list(rest):
                return inner
            return induced_order(inner, [rest.index(v) for v in idx], len(rest))
    if order.kind in ("grlex", "grevlex") and list(idx) == sorted(idx):
        return order
    if order.kind == "matrix":
        from .polyring import matrix_order

        return matrix_order([[row[v] for v in idx] for row in order.rows])
    raise OrderError(f"cannot restrict {order!r} to a subring")


def saturate(gens, g: Polynomial, order: MonomialOrder, budget: int | None = None) -> GroebnerBasis:
    """Groebner basis of ``I : g^inf`` via the Rabinowitsch construction.

    A fresh variable ``t`` is adjoined, ``t*g - 1`` is added and ``t`` is
    eliminated with a block order whose second block uses ``order``.
    """
    gens = _as_gens(gens)
    if g.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    ring = gens.ring
    if g.ring != ring:
        raise RingMismatchError("saturating polynomial lives in another ring")
    if g.is_constant():
        return buchberger(gens, order, budget)
    tname = ring.fresh_name("t_sat")
    big = RingContext((tname,) + ring.names)
    lifted = [p.to_ring(big) for p in gens.generators]
    t = big.gen(0)
    lifted.append(t * g.to_ring(big) - 1)
    border = block_order([0], list(range(1, big.arity)), order)
    gb = buchberger(IdealGens(lifted, big), border, budget)
    elems = [p.to_ring(ring) for p in gb.elements if 0 not in p.support()]
    return GroebnerBasis(elems, order, ring)


# ---------------------------------------------------------------------------
# Quotient algebra


class QuotientBasis:
    """Standard monomials of a zero-dimensional ideal, ascending under the basis order."""

    def __init__(self, monomials, gb: GroebnerBasis):
        self.standard_monomials = list(monomials)
        self.gb = gb
        self.index = {m: i for i, m in enumerate(self.standard_monomials)}

    def __len__(self):
        return len(self.standard_monomials)

    def __iter__(self):
        return iter(self.standard_monomials)

    def as_polynomials(self):
        ring = self.gb.ring
        return [Polynomial(ring, {m: Fraction(1)}, _trusted=True) for m in self.standard_monomials]

    def coordinates(self, f: Polynomial) -> list[Fraction]:
        r = self.gb.reduce(f)
        vec = [Fraction(0)] * len(self.standard_monomials)
        for m, c in r.terms.items():
            vec[self.index[m]] = c
        return vec


def standard_monomials(gb: GroebnerBasis, max_count: int = 100_000) -> QuotientBasis:
    ring = gb.ring
    n = ring.arity
    if gb.is_unit():
        return QuotientBasis([], gb)
    lms = gb.leading_monomials()
    for v in range(n):
        if not any(m[v] and sum(m) == m[v] for m in lms):
            raise InfiniteQuotientError(
                f"the quotient is infinite dimensional: no leading monomial is a pure power of {ring.names[v]}"
            )
    out = []
    # depth-first over exponent vectors, bounded by the pure powers
    bounds = [min(m[v] for m in lms if m[v] and sum(m) == m[v]) for v in range(n)]

    def rec(prefix, v):
        if v == n:
            mono = tuple(prefix)
            if not any(_divides(lm, mono) for lm in lms):
                out.append(mono)
                if len(out) > max_count:
                    raise ResourceLimitError(f"more than {max_count} standard monomials")
            return
        for e in range(bounds[v]):
            prefix.append(e)
            partial = tuple(prefix) + (0,) * (n - v - 1)
            if any(_divides(lm, partial) for lm in lms):
                prefix.pop()
                break
            rec(prefix, v + 1)
            prefix.pop()

    rec([], 0)
    key = gb.order.key
    out.sort(key=key)
    return QuotientBasis(out, gb)


def multiplication_matrix(g: Polynomial, qb: QuotientBasis) -> RatMatrix:
    """Matrix of ``h -> g*h`` on the quotient; column j holds NF(g * b_j)."""
    size = len(qb)
    if size == 0:
        raise ValueError("the quotient algebra is zero")
    ring = qb.gb.ring
    cols = []
    for m in qb.standard_monomials:
        cols.append(qb.coordinates(g.mul_term(m, 1)))
    rows = [[cols[j][i] for j in range(size)] for i in range(size)]
    return RatMatrix(rows)
