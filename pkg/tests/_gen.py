"""Seeded random instances shared by the property and acceptance suites."""

from __future__ import annotations

import random
from fractions import Fraction

from groebopt.embed import Graph
from groebopt.polyring import Polynomial, RingContext


def rand_poly(rng: random.Random, ring: RingContext, terms: int, max_deg: int, coeff: int = 5) -> Polynomial:
    out = {}
    n = ring.arity
    for _ in range(terms):
        mono = [0] * n
        for _ in range(rng.randint(0, max_deg)):
            mono[rng.randrange(n)] += 1
        c = rng.randint(-coeff, coeff)
        if c:
            out[tuple(mono)] = out.get(tuple(mono), 0) + c
    return Polynomial(ring, out)


def rand_boolean_poly(rng: random.Random, ring: RingContext, terms: int, coeff: int = 6) -> Polynomial:
    out = {}
    for _ in range(terms):
        mono = tuple(rng.randint(0, 1) for _ in range(ring.arity))
        out[mono] = out.get(mono, 0) + rng.randint(-coeff, coeff)
    return Polynomial(ring, out)


def rand_connected_graph(rng: random.Random, names, p: float) -> Graph:
    n = len(names)
    while True:
        edges = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = Graph(names, edges)
        if g.is_connected(range(n)):
            return g


def rand_symmetric(rng: random.Random, n: int, lo: int = -3, hi: int = 3):
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = Fraction(rng.randint(lo, hi), rng.randint(1, 3))
    return m
