"""Sparse multivariate polynomials over the rationals.

Monomials are plain tuples of non-negative exponents (one slot per ring
variable).  A :class:`Polynomial` is an immutable map from monomials to
nonzero :class:`fractions.Fraction` coefficients bound to a
:class:`RingContext`.  Monomial orders are separate objects so that one
canonical polynomial can be viewed under many orders.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import OrderError, ParseError, RingMismatchError

Rational = Fraction
Monomial = tuple

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return Fraction(value)


class RingContext:
    """An ordered list of distinct variable names, i.e. Q[x_0, ..., x_{n-1}]."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def gen(self, var) -> "Polynomial":
        i = var if isinstance(var, int) else self.index(var)
        mono = tuple(1 if k == i else 0 for k in range(self.arity))
        return Polynomial(self, {mono: Fraction(1)}, _trusted=True)

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.arity)]

    def one(self) -> "Polynomial":
        return Polynomial.constant(self, 1)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    def extend(self, names: Iterable[str]) -> "RingContext":
        return RingContext(self.names + tuple(names))

    def fresh_name(self, base: str) -> str:
        name, k = base, 0
        while name in self._index:
            k += 1
            name = f"{base}{k}"
        return name

    def __eq__(self, other):
        return isinstance(other, RingContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"RingContext({list(self.names)})"


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping[tuple, object] = (), *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            n = ring.arity
            for mono, c in dict(terms).items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != n or any(e < 0 for e in mono):
                    raise ValueError(f"bad monomial {mono} for ring of arity {n}")
                c = as_rational(c)
                if c:
                    c = clean.get(mono, 0) + c
                    if c:
                        clean[mono] = c
                    else:
                        clean.pop(mono, None)
            self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, ring: RingContext, c) -> "Polynomial":
        c = as_rational(c)
        return cls(ring, {(0,) * ring.arity: c} if c else {}, _trusted=True)

    @classmethod
    def monomial(cls, ring: RingContext, mono, c=1) -> "Polynomial":
        return cls(ring, {tuple(mono): c})

    # -- basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.arity, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, var) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        return max((m[i] for m in self.terms), default=-1)

    def support(self) -> set[int]:
        """Indices of variables that occur with a positive exponent."""
        out = set()
        for m in self.terms:
            out.update(i for i, e in enumerate(m) if e)
        return out

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        return Polynomial.constant(self.ring, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()}, _trusted=True)

    def __truediv__(self, c):
        return self.scale(1 / as_rational(c))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, mono, c=1) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self.terms.items()},
            _trusted=True,
        )

    def monic(self, order) -> "Polynomial":
        if not self.terms:
            return self
        _, lc = leading_term(self, order)
        return self.scale(1 / lc)

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Polynomial.constant(self.ring, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus / evaluation -------------------------------------------
    def derivative(self, var) -> "Polynomial":
        return partial_derivative(self, var)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return evaluate(self, point)

    def substitute(self, values: Mapping) -> "Polynomial":
        """Partially evaluate: ``values`` maps variable index or name to a rational."""
        vals = {}
        for k, v in values.items():
            vals[k if isinstance(k, int) else self.ring.index(k)] = as_rational(v)
        out: dict = {}
        for m, c in self.terms.items():
            coeff = c
            mono = list(m)
            for i, v in vals.items():
                e = mono[i]
                if e:
                    coeff = coeff * v**e
                    mono[i] = 0
                    if not coeff:
                        break
            if coeff:
                key = tuple(mono)
                s = out.get(key, 0) + coeff
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Polynomial(self.ring, out, _trusted=True)

    def to_ring(self, ring: RingContext) -> "Polynomial":
        """Re-express in another ring by matching variable names."""
        mapping = []
        for i, name in enumerate(self.ring.names):
            if name in ring:
                mapping.append(ring.index(name))
            else:
                mapping.append(None)
        out = {}
        n = ring.arity
        for m, c in self.terms.items():
            new = [0] * n
            for i, e in enumerate(m):
                if e:
                    j = mapping[i]
                    if j is None:
                        raise RingMismatchError(
                            f"variable {self.ring.names[i]} does not exist in {ring}"
                        )
                    new[j] = e
            out[tuple(new)] = c
        return Polynomial(ring, out, _trusted=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, {list(self.ring.names)})"


# ---------------------------------------------------------------------------
# Monomial orders


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class MonomialOrder:
    """A monomial order described by a sort key.

    ``key(mono)`` returns a tuple; comparing keys with ``<`` compares the
    monomials.  Kinds: ``lex`` (with a variable permutation, most significant
    first), ``grlex``, ``grevlex``, ``matrix`` and ``block`` (an elimination
    product order).
    """

    __slots__ = ("kind", "perm", "rows", "inner", "split", "_key")

    def __init__(self, kind, perm=None, rows=None, inner=None, split=None):
        self.kind = kind
        self.perm = tuple(perm) if perm is not None else None
        self.rows = tuple(tuple(int(v) for v in r) for r in rows) if rows is not None else None
        self.inner = inner
        self.split = tuple(split) if split is not None else None
        self._key = self._build_key()

    def _build_key(self):
        kind = self.kind
        if kind == "lex":
            perm = self.perm
            if perm is None or perm == tuple(range(len(perm))):
                return lambda m: m
            return lambda m: tuple(m[i] for i in perm)
        if kind == "grlex":
            return lambda m: (sum(m),) + m
        if kind == "grevlex":
            return lambda m: (sum(m),) + tuple(-e for e in reversed(m))
        if kind == "matrix":
            rows = self.rows
            return lambda m: tuple(sum(r * e for r, e in zip(row, m) if e) for row in rows)
        if kind == "block":
            first, rest = self.split
            inner_key = self.inner.key

            def key(m):
                return (sum(m[i] for i in first),) + tuple(m[i] for i in first) + inner_key(
                    tuple(m[i] for i in rest)
                )

            return key
        raise OrderError(f"unknown order kind {kind!r}")

    @property
    def key(self):
        return self._key

    def check_arity(self, n: int):
        if self.kind == "lex" and self.perm is not None and sorted(self.perm) != list(range(n)):
            raise OrderError(f"lex permutation {self.perm} is not a bijection on {n} variables")
        if self.kind == "matrix" and any(len(r) != n for r in self.rows):
            raise OrderError(f"order matrix has {len(self.rows[0])} columns, ring has {n} variables")
        if self.kind == "block":
            first, rest = self.split
            if sorted(first + rest) != list(range(n)):
                raise OrderError("block order split does not cover the ring")
            self.inner.check_arity(len(rest))

    def significance(self, n: int) -> list[int] | None:
        """For lex-like orders, variable indices from most to least significant."""
        if self.kind == "lex":
            return list(self.perm) if self.perm is not None else list(range(n))
        return None

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and (self.kind, self.perm, self.rows, self.split) == (other.kind, other.perm, other.rows, other.split)
            and self.inner == other.inner
        )

    def __hash__(self):
        return hash((self.kind, self.perm, self.rows, self.split))

    def __repr__(self):
        if self.kind == "lex":
            return f"lex({list(self.perm) if self.perm is not None else ''})"
        if self.kind == "matrix":
            return f"matrix({[list(r) for r in self.rows]})"
        if self.kind == "block":
            return f"block({list(self.split[0])} | {self.inner!r})"
        return self.kind


def lex(perm: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("lex", perm=perm)


def lex_by_names(ring: RingContext, names: Sequence[str]) -> MonomialOrder:
    """Lex order with ``names[0]`` most significant; unnamed variables trail in ring order."""
    perm = [ring.index(n) for n in names]
    perm += [i for i in range(ring.arity) if i not in perm]
    return lex(perm)


def grlex() -> MonomialOrder:
    return MonomialOrder("grlex")


def grevlex() -> MonomialOrder:
    return MonomialOrder("grevlex")


def matrix_order(rows: Sequence[Sequence[int]]) -> MonomialOrder:
    """Matrix order; rank-deficient matrices are completed with lex tie-break rows.

    The completed matrix must have full column rank and the first nonzero
    entry of every column must be positive (so 1 is the smallest monomial).
    """
    rows = [tuple(int(v) for v in r) for r in rows]
    if not rows or not rows[0]:
        raise OrderError("empty order matrix")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise OrderError("order matrix is not rectangular")
    full = list(rows)
    rank = _int_rank(full)
    for i in range(n):
        if rank == n:
            break
        e = tuple(1 if k == i else 0 for k in range(n))
        if _int_rank(full + [e]) > rank:
            full.append(e)
            rank += 1
    if rank < n:
        raise OrderError("order matrix does not define a total order")
    for j in range(n):
        col = [r[j] for r in full if r[j]]
        if not col or col[0] < 0:
            raise OrderError(f"column {j} of the order matrix does not start with a positive entry")
    return MonomialOrder("matrix", rows=full)


def weight_order(weights: Sequence[int], tiebreak: str = "grevlex") -> MonomialOrder:
    """Order by the weight vector first, ties broken by a standard order."""
    n = len(weights)
    if tiebreak == "lex":
        rows = [tuple(weights)] + [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    else:
        # grevlex tie-break as matrix rows: all-ones, then negated reversed unit vectors
        rows = [tuple(weights), (1,) * n] + [
            tuple(-1 if k == n - 1 - i else 0 for k in range(n)) for i in range(n - 1)
        ]
    return MonomialOrder("matrix", rows=_prune_rows(rows, n))


def _prune_rows(rows, n):
    out = []
    for r in rows:
        if _int_rank(out + [r]) > len(out):
            out.append(r)
        if len(out) == n:
            break
    return out


def block_order(first: Sequence[int], rest: Sequence[int], inner: MonomialOrder) -> MonomialOrder:
    """Elimination order: variables in ``first`` dominate, ``inner`` orders ``rest``.

    Within the eliminated block the order is degree then lex (which is all an
    elimination needs).
    """
    return MonomialOrder("block", inner=inner, split=(tuple(first), tuple(rest)))


def _int_rank(rows) -> int:
    m = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def parse_order(text: str, ring: RingContext) -> MonomialOrder:
    """``lex`` / ``grlex`` / ``grevlex`` / ``lex:z,y,x`` (explicit significance)."""
    text = text.strip()
    if text == "lex":
        return lex()
    if text.startswith("lex:"):
        return lex_by_names(ring, [s.strip() for s in text[4:].split(",") if s.strip()])
    if text == "grlex":
        return grlex()
    if text == "grevlex":
        return grevlex()
    raise OrderError(f"unknown order {text!r}")


def compare(order: MonomialOrder, a, b) -> Ordering:
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise RingMismatchError("monomials come from rings of different arity")
    order.check_arity(len(a))
    ka, kb = order.key(a), order.key(b)
    if ka == kb:
        return Ordering.EQ
    return Ordering.GT if ka > kb else Ordering.LT


def leading_term(f: Polynomial, order: MonomialOrder):
    """Return ``(monomial, coefficient)`` of the largest term of ``f``."""
    if not f.terms:
        raise ValueError("the zero polynomial has no leading term")
    key = order.key
    mono = max(f.terms, key=key)
    return mono, f.terms[mono]


def sorted_terms(f: Polynomial, order: MonomialOrder, descending=True):
    return sorted(f.terms.items(), key=lambda t: order.key(t[0]), reverse=descending)


# ---------------------------------------------------------------------------
# Arithmetic entry points


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        if not isinstance(g, Polynomial):
            raise TypeError("mul needs two polynomials; use scale for constants")
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown operation {op!r}")


def evaluate(f: Polynomial, point: Sequence) -> Fraction:
    if len(point) != f.ring.arity:
        raise ValueError(f"point has {len(point)} coordinates, ring has {f.ring.arity} variables")
    pt = [as_rational(v) for v in point]
    total = Fraction(0)
    for m, c in f.terms.items():
        v = c
        for x, e in zip(pt, m):
            if e:
                v *= x**e
                if not v:
                    break
        total += v
    return total


def partial_derivative(f: Polynomial, var) -> Polynomial:
    i = var if isinstance(var, int) else f.ring.index(var)
    if not 0 <= i < f.ring.arity:
        raise IndexError(f"variable index {i} out of range")
    out = {}
    for m, c in f.terms.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1 :]] = c * e
    return Polynomial(f.ring, out, _trusted=True)


# ---------------------------------------------------------------------------
# Text format


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(ring: RingContext, mono) -> str:
    parts = []
    for name, e in zip(ring.names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(f: Polynomial, order: MonomialOrder | None = None) -> str:
    """Render in the text grammar; terms descending by ``order`` (default grlex)."""
    if not f.terms:
        return "0"
    key = (order or grlex()).key
    items = sorted(f.terms.items(), key=lambda t: key(t[0]), reverse=True)
    out = []
    for idx, (m, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if any(m):
            body = format_monomial(f.ring, m)
            if a != 1:
                body = f"{_fmt_coeff(a)}*{body}"
        else:
            body = _fmt_coeff(a)
        if idx == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingContext):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        terms: dict = {}
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            mono, c = self.term()
            c *= sign
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
            kind = self.peek()[0]
            if kind == "end":
                break
            if kind not in "+-":
                tok = self.peek()
                raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
            sign = -1 if self.take()[0] == "-" else 1
        return Polynomial(self.ring, terms, _trusted=True)

    def term(self):
        n = self.ring.arity
        exps = [0] * n
        coeff = Fraction(1)
        self.factor(exps, coeff_box := [coeff])
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                self.factor(exps, coeff_box)
            elif kind in ("name", "int"):
                # implicit product such as "2x"
                self.factor(exps, coeff_box)
            else:
                break
        return tuple(exps), coeff_box[0]

    def factor(self, exps, coeff_box):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            value = Fraction(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                value /= den[1]
            coeff_box[0] *= value
        elif tok[0] == "name":
            self.take()
            if tok[1] not in self.ring:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
            e = 1
            if self.peek()[0] == "^":
                self.take()
                e = self.take("int")[1]
            exps[self.ring.index(tok[1])] += e
        elif tok[0] == "(":
            raise ParseError("parentheses are not part of the polynomial grammar", tok[2])
        else:
            raise ParseError(f"expected a coefficient or variable, found {tok[1]!r}", tok[2])


def parse_poly(text: str, ring: RingContext) -> Polynomial:
    if not text.strip():
        raise ParseError("empty polynomial", 0)
    return _Parser(text, ring).parse()


def variables_in(text: str) -> list[str]:
    """Variable names in order of first appearance (used to infer rings)."""
    seen = []
    for tok in _tokenize(text):
        if tok[0] == "name" and tok[1] not in seen:
            seen.append(tok[1])
    return seen


def read_poly_lines(text: str) -> list[str]:
    """Split a ``.poly`` file: one polynomial per line, ``#`` comments, commas allowed."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        out.extend(p.strip() for p in line.split(",") if p.strip())
    return out
