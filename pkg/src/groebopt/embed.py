"""Minor embeddings of a logical graph ``Y`` into a hardware graph ``X`` as fiber maps.

A fiber map sends each hardware vertex ``x_i`` to at most one logical
vertex.  Binary variables ``a_i_j`` mark ``x_i -> y_j`` and ``b_i`` marks
``x_i`` as used.  The equations are

* booleans ``a^2 - a`` and ``b^2 - b``,
* disjointness ``a_i_j * a_i_k`` for ``j != k``,
* usage ``sum_j a_i_j - b_i``,
* one pullback equation per logical edge ``(j, k)``:
  ``-1 + sum over hardware edges (a, b) of a_a_j a_b_k + a_a_k a_b_j``,
  so exactly one hardware edge realises each logical edge.

Fiber connectivity is encoded as extra polynomials by default (see
``connectivity_equations``); ``connectivity="filter"`` drops them and checks
connectivity on the extracted maps instead.  Solutions are read off a lex
basis (``b`` variables last) by branching back-substitution; large systems
are first split on the images of a few hardware vertices.  Folding
along a twin automorphism replaces the rows of each orbit by count
variables ``n_o_j`` in ``{0..|o|}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import ResourceLimitError
from .groebner import GroebnerBasis, IdealGens, buchberger, eliminate_vars, restrict_to
from .polyring import Polynomial, RingContext, lex


class Graph:
    def __init__(self, vertices: Sequence[str], edges: Iterable[Sequence[str]] = ()):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        self.index = {v: i for i, v in enumerate(self.vertices)}
        es = set()
        for e in edges:
            a, b = (str(v) for v in e)
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if a not in self.index or b not in self.index:
                raise ValueError(f"edge ({a}, {b}) references an unknown vertex")
            i, j = sorted((self.index[a], self.index[b]))
            es.add((i, j))
        self.edges = sorted(es)  # index pairs, i < j
        self.adj = [set() for _ in self.vertices]
        for i, j in self.edges:
            self.adj[i].add(j)
            self.adj[j].add(i)

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"Graph({self.vertices}, {[(self.vertices[i], self.vertices[j]) for i, j in self.edges]})"

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def is_connected(self, subset: Iterable[int]) -> bool:
        """Whether the induced subgraph on ``subset`` (indices) is connected; empty counts as not."""
        nodes = set(subset)
        if not nodes:
            return False
        start = next(iter(nodes))
        seen, stack = {start}, [start]
        while stack:
            u = stack.pop()
            for w in self.adj[u] & nodes:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == nodes

    def quadratic_form(self, ring: RingContext | None = None) -> Polynomial:
        ring = ring or RingContext(self.vertices)
        q = ring.zero()
        for i, j in self.edges:
            q = q + ring.gen(self.vertices[i]) * ring.gen(self.vertices[j])
        return q

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [[self.vertices[i], self.vertices[j]] for i, j in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        return cls(data["vertices"], data.get("edges", []))

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Equations


@dataclass
class BundleSystem:
    ring: RingContext
    alpha: list  # alpha[i][j] = variable name for x_i -> y_j
    beta: list
    disjointness: list
    usage: list
    booleans: list
    pullback: list = field(default_factory=list)
    extra: list = field(default_factory=list)

    @property
    def equations(self) -> list[Polynomial]:
        return self.booleans + self.disjointness + self.usage + self.pullback + self.extra

    @property
    def alpha_names(self) -> list[str]:
        return [a for row in self.alpha for a in row]


def _ring_for(X: Graph, Y: Graph) -> tuple[RingContext, list, list]:
    alpha = [[f"a_{i + 1}_{j + 1}" for j in range(len(Y))] for i in range(len(X))]
    beta = [f"b_{i + 1}" for i in range(len(X))]
    return RingContext([a for row in alpha for a in row] + beta), alpha, beta


def bundle_equations(X: Graph, Y: Graph) -> BundleSystem:
    if not len(X) or not len(Y):
        raise ValueError("both graphs need at least one vertex")
    ring, alpha, beta = _ring_for(X, Y)
    g = ring.gen
    disjoint, usage, booleans = [], [], []
    for i, row in enumerate(alpha):
        for j, k in combinations(range(len(row)), 2):
            disjoint.append(g(row[j]) * g(row[k]))
        s = -g(beta[i])
        for a in row:
            s = s + g(a)
        usage.append(s)
    for name in ring.names:
        booleans.append(g(name) * g(name) - g(name))
    return BundleSystem(ring, alpha, beta, disjoint, usage, booleans)


def pullback_equations(X: Graph, Y: Graph, ring: RingContext | None = None) -> list[Polynomial]:
    if ring is None:
        ring, alpha, _ = _ring_for(X, Y)
    else:
        alpha = [[f"a_{i + 1}_{j + 1}" for j in range(len(Y))] for i in range(len(X))]
    g = ring.gen
    out = []
    for j, k in Y.edges:
        p = -ring.one()
        for a, b in X.edges:
            p = p + g(alpha[a][j]) * g(alpha[b][k]) + g(alpha[a][k]) * g(alpha[b][j])
        out.append(p)
    return out


def _connected_subsets(X: Graph, max_size: int | None = None):
    n = len(X)
    found = set()
    frontier = {frozenset([v]) for v in range(n)}
    while frontier:
        found |= frontier
        grown = set()
        for c in frontier:
            if max_size is not None and len(c) >= max_size:
                continue
            for u in c:
                for w in X.adj[u] - c:
                    grown.add(c | {w})
        frontier = grown - found
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def connectivity_equations(X: Graph, Y: Graph, ring: RingContext) -> list[Polynomial]:
    """Polynomials vanishing exactly on maps whose nonempty fibers are connected.

    A fiber ``F`` is disconnected iff it contains a connected ``C``, no
    neighbour of ``C``, and some vertex ``v`` outside ``C`` and its
    neighbourhood.  Each such pattern contributes
    ``prod_C a * prod_{N(C)} (1 - a) * a_v`` per logical vertex.
    """
    g = ring.gen
    out = []
    for C in _connected_subsets(X):
        nb = set().union(*(X.adj[u] for u in C)) - C
        rest = [v for v in range(len(X)) if v not in C and v not in nb]
        for j in range(len(Y)):
            base = ring.one()
            for u in sorted(C):
                base = base * g(f"a_{u + 1}_{j + 1}")
            for u in sorted(nb):
                base = base * (1 - g(f"a_{u + 1}_{j + 1}"))
            for v in rest:
                if v > min(C):  # each disconnected pair is caught from its smaller side
                    out.append(base * g(f"a_{v + 1}_{j + 1}"))
    return out


# ---------------------------------------------------------------------------
# Solutions


@dataclass
class EmbeddingSolution:
    fibers: dict  # logical name -> frozenset of hardware names
    used: frozenset
    multiplicity: int = 1
    orbit_counts: dict | None = None

    def key(self):
        return tuple(sorted((y, tuple(sorted(f))) for y, f in self.fibers.items()))

    def check(self, X: Graph, Y: Graph) -> bool:
        """Disjoint, nonempty, connected fibers and an adjacent pair per logical edge."""
        seen = set()
        for y in Y.vertices:
            f = self.fibers.get(y, frozenset())
            if not f or seen & f:
                return False
            seen |= f
            if not X.is_connected(X.index[v] for v in f):
                return False
        for j, k in Y.edges:
            fj = [X.index[v] for v in self.fibers[Y.vertices[j]]]
            fk = {X.index[v] for v in self.fibers[Y.vertices[k]]}
            if not any(X.adj[a] & fk for a in fj):
                return False
        return seen == self.used

    def to_dict(self, X: Graph | None = None) -> dict:
        d = {"fibers": {y: sorted(f) for y, f in self.fibers.items()}}
        if X is not None:
            d["beta"] = [int(v in self.used) for v in X.vertices]
        else:
            d["used"] = sorted(self.used)
        if self.multiplicity != 1:
            d["multiplicity"] = self.multiplicity
        return d


def connected_fiber_filter(fibers, X: Graph) -> bool:
    """True iff every fiber (collection of hardware names or indices) induces a connected subgraph."""
    items = fibers.values() if isinstance(fibers, dict) else fibers
    for f in items:
        idx = [X.index[v] if isinstance(v, str) else v for v in f]
        if idx and not X.is_connected(idx):
            return False
    return True


def _grid_solutions(polys: Sequence[Polynomial], var_order: Sequence[int], domains: dict) -> list[dict]:
    """Assignments over finite ``domains`` zeroing every polynomial, by branching substitution."""
    results = []

    def rec(k, current, assign):
        if any(p.is_constant() and not p.is_zero() for p in current):
            return
        if k == len(var_order):
            if all(p.is_zero() for p in current):
                results.append(dict(assign))
            return
        v = var_order[k]
        for val in domains[v]:
            assign[v] = val
            rec(k + 1, [p.substitute({v: val}) for p in current], assign)
            del assign[v]

    rec(0, list(polys), {})
    return results


@dataclass
class EmbeddingRun:
    system: BundleSystem
    gb: GroebnerBasis | None  # None when the search was split into branches
    solutions: list
    candidates: int
    branches: int = 1  # surviving (non-unit) branches

    def support_ideal(self) -> GroebnerBasis:
        """The basis intersected with ``Q[b]``."""
        if self.gb is None:
            raise ValueError("no global basis: the enumeration was split into branches")
        return restrict_to(eliminate_vars(self.gb, self.system.beta), self.system.beta)


def _system(X: Graph, Y: Graph, extra, connectivity: str, max_vars: int) -> BundleSystem:
    if len(X) * len(Y) > max_vars:
        raise ResourceLimitError(f"{len(X) * len(Y)} fiber variables exceed the limit {max_vars}")
    system = bundle_equations(X, Y)
    system.pullback = pullback_equations(X, Y, system.ring)
    system.extra = [p.to_ring(system.ring) for p in extra]
    if connectivity == "polynomial":
        system.extra += connectivity_equations(X, Y, system.ring)
    elif connectivity != "filter":
        raise ValueError(f"unknown connectivity mode {connectivity!r}")
    return system


def embedding_basis(X: Graph, Y: Graph, extra: Sequence[Polynomial] = (), connectivity: str = "polynomial",
                    max_vars: int = 30, budget: int | None = None) -> tuple[BundleSystem, GroebnerBasis]:
    system = _system(X, Y, extra, connectivity, max_vars)
    gb = buchberger(IdealGens(system.equations, system.ring), lex(), budget)
    return system, gb


_SPLIT_TARGET = 15  # free variables left per branch once splitting kicks in


def _row_fixings(system: BundleSystem, k: int):
    """Every assignment of the first ``k`` hardware rows: one logical vertex or unused."""
    ring = system.ring
    ny = len(system.alpha[0])
    for choice in product(range(ny + 1), repeat=k):
        sub = {}
        for i, c in enumerate(choice):
            for j in range(ny):
                sub[ring.index(system.alpha[i][j])] = int(c == j)
            sub[ring.index(system.beta[i])] = int(c < ny)
        yield sub


def enumerate_embeddings(X: Graph, Y: Graph, extra: Sequence[Polynomial] = (), connectivity: str = "polynomial",
                         max_vars: int = 48, budget: int | None = None, full: bool = False,
                         split_above: int = 20):
    """All fiber maps satisfying the equations with nonempty connected fibers.

    Up to ``split_above`` ring variables one lex basis is computed.  Larger
    systems are split on the images of the first few hardware vertices; each
    branch gets its own basis and branches whose ideal is the unit ideal are
    dropped.  With ``full=True`` the ``EmbeddingRun`` is returned instead of
    the bare list.
    """
    system = _system(X, Y, extra, connectivity, max_vars)
    ring = system.ring
    eqs = system.equations
    width = len(Y) + 1
    k = 0 if ring.arity <= split_above else min(len(X), -(-(ring.arity - _SPLIT_TARGET) // width))
    gb = None
    branches = []
    if k == 0:
        gb = buchberger(IdealGens(eqs, ring), lex(), budget)
        if not gb.is_unit():
            branches.append(({}, gb))
    else:
        for sub in _row_fixings(system, k):
            polys = [p for p in (q.substitute(sub) for q in eqs) if not p.is_zero()]
            if any(p.is_constant() for p in polys):
                continue
            g = buchberger(IdealGens(polys, ring), lex(), budget)
            if not g.is_unit():
                branches.append((sub, g))
    sols, ncand = [], 0
    for sub, g in branches:
        order = [v for v in range(ring.arity - 1, -1, -1) if v not in sub]
        for assign in _grid_solutions(g.elements, order, {v: (0, 1) for v in order}):
            assign.update(sub)
            ncand += 1
            fibers = {
                y: frozenset(X.vertices[i] for i in range(len(X)) if assign[ring.index(system.alpha[i][j])])
                for j, y in enumerate(Y.vertices)
            }
            used = frozenset(X.vertices[i] for i in range(len(X)) if assign[ring.index(system.beta[i])])
            point = [assign[i] for i in range(ring.arity)]
            if any(p(*point) for p in eqs):
                raise AssertionError("extracted assignment violates the defining equations")
            sol = EmbeddingSolution(fibers, used)
            if all(fibers.values()) and connected_fiber_filter(fibers, X):
                sols.append(sol)
    sols.sort(key=EmbeddingSolution.key)
    if full:
        return EmbeddingRun(system, gb, sols, ncand, len(branches))
    return sols


def brute_force_embeddings(X: Graph, Y: Graph, max_maps: int = 2_000_000) -> list[EmbeddingSolution]:
    """Every map ``V(X) -> V(Y) + {unused}`` with nonempty connected fibers and exactly one
    hardware edge per logical edge."""
    nx, ny = len(X), len(Y)
    if (ny + 1) ** nx > max_maps:
        raise ResourceLimitError("too many maps for brute force")
    sols = []
    for f in product(range(-1, ny), repeat=nx):
        fib = [[] for _ in range(ny)]
        for i, j in enumerate(f):
            if j >= 0:
                fib[j].append(i)
        if not all(fib) or not all(X.is_connected(c) for c in fib):
            continue
        ok = True
        for j, k in Y.edges:
            hits = sum(1 for a, b in X.edges if {f[a], f[b]} == {j, k})
            if hits != 1:
                ok = False
                break
        if ok:
            fibers = {Y.vertices[j]: frozenset(X.vertices[i] for i in fib[j]) for j in range(ny)}
            used = frozenset(X.vertices[i] for i in range(nx) if f[i] >= 0)
            sols.append(EmbeddingSolution(fibers, used))
    sols.sort(key=EmbeddingSolution.key)
    return sols


# ---------------------------------------------------------------------------
# Symmetry


def find_automorphisms(X: Graph, max_vertices: int = 10) -> list[tuple]:
    """All adjacency-preserving permutations as tuples ``perm[i] = image of i``."""
    n = len(X)
    if n > max_vertices:
        raise ResourceLimitError(f"automorphism search limited to {max_vertices} vertices")
    deg = [len(a) for a in X.adj]
    out = []
    perm = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            out.append(tuple(perm))
            return
        for c in range(n):
            if used[c] or deg[c] != deg[i]:
                continue
            if any((j in X.adj[i]) != (perm[j] in X.adj[c]) for j in range(i)):
                continue
            perm[i], used[c] = c, True
            rec(i + 1)
            perm[i], used[c] = -1, False

    rec(0)
    return out


def is_automorphism(X: Graph, perm: Sequence[int]) -> bool:
    n = len(X)
    if sorted(perm) != list(range(n)):
        return False
    return all(perm[j] in X.adj[perm[i]] for i, j in X.edges)


def transposition(X: Graph, a: str, b: str) -> tuple:
    p = list(range(len(X)))
    i, j = X.index[a], X.index[b]
    p[i], p[j] = j, i
    return tuple(p)


@dataclass
class SymmetryFold:
    graph: Graph
    orbits: list  # lists of vertex indices, ordered by smallest member
    invariant_names: list
    folded_quadratic: Polynomial

    @property
    def ring(self) -> RingContext:
        return self.folded_quadratic.ring

    def substitution(self) -> dict:
        """Invariant name -> orbit sum in the original vertex ring."""
        ring = RingContext(self.graph.vertices)
        out = {}
        for name, orb in zip(self.invariant_names, self.orbits):
            s = ring.zero()
            for v in orb:
                s = s + ring.gen(self.graph.vertices[v])
            out[name] = s
        return out


def fold_by_symmetry(X: Graph, aut: Sequence[int]) -> SymmetryFold:
    """Orbits of ``aut`` become invariants; each nontrivial orbit must be a set of twins."""
    if not is_automorphism(X, aut):
        raise ValueError("permutation is not an automorphism of the graph")
    n = len(X)
    seen = [False] * n
    orbits = []
    for v in range(n):
        if seen[v]:
            continue
        orb, w = [], v
        while not seen[w]:
            seen[w] = True
            orb.append(w)
            w = aut[w]
        orbits.append(sorted(orb))
    for orb in orbits:
        if len(orb) > 1:
            nbs = {frozenset(X.adj[v]) for v in orb}
            if len(nbs) != 1 or any(X.adj[v] & set(orb) for v in orb):
                raise ValueError("folding needs orbits of pairwise non-adjacent vertices with equal neighbourhoods")
    nontrivial = [o for o in orbits if len(o) > 1]
    names = []
    for orb in orbits:
        if len(orb) == 1:
            names.append(X.vertices[orb[0]])
        elif len(nontrivial) == 1:
            names.append("K")
        else:
            names.append(f"K{nontrivial.index(orb) + 1}")
    ring = RingContext(names)
    where = {v: k for k, orb in enumerate(orbits) for v in orb}
    pairs = sorted({tuple(sorted((where[i], where[j]))) for i, j in X.edges})
    q = ring.zero()
    for o, p in pairs:
        q = q + ring.gen(names[o]) * ring.gen(names[p])
    return SymmetryFold(X, orbits, names, q)


@dataclass
class FoldedSystem:
    ring: RingContext
    counts: list  # counts[o][j] variable names
    equations: list
    domains: dict


def folded_equations(fold: SymmetryFold, Y: Graph) -> FoldedSystem:
    names = [f"n_{inv}_{j + 1}" for inv in fold.invariant_names for j in range(len(Y))]
    ring = RingContext(names)
    g = ring.gen
    counts = [[f"n_{inv}_{j + 1}" for j in range(len(Y))] for inv in fold.invariant_names]
    eqs, domains = [], {}
    for orb, row in zip(fold.orbits, counts):
        size = len(orb)
        for v in row:
            eqs.append(prod((g(v) - c for c in range(size + 1)), start=ring.one()))
            domains[ring.index(v)] = tuple(range(size + 1))
        if size == 1:
            for a, b in combinations(row, 2):
                eqs.append(g(a) * g(b))
        else:
            total = ring.zero()
            for v in row:
                total = total + g(v)
            eqs.append(prod((total - c for c in range(size + 1)), start=ring.one()))
    X = fold.graph
    where = {v: k for k, orb in enumerate(fold.orbits) for v in orb}
    pairs = sorted({tuple(sorted((where[i], where[j]))) for i, j in X.edges})
    for j, k in Y.edges:
        p = -ring.one()
        for o, q in pairs:
            p = p + g(counts[o][j]) * g(counts[q][k]) + g(counts[o][k]) * g(counts[q][j])
        eqs.append(p)
    return FoldedSystem(ring, counts, eqs, domains)


def enumerate_embeddings_folded(X: Graph, Y: Graph, fold: SymmetryFold, budget: int | None = None,
                                full: bool = False):
    """Embeddings up to the fold: one representative per count pattern.

    Each representative carries its orbit counts and the number of full
    embeddings it stands for (a multinomial per orbit).
    """
    if fold.graph is not X and fold.graph.to_dict() != X.to_dict():
        raise ValueError("fold was built for a different hardware graph")
    fs = folded_equations(fold, Y)
    gb = buchberger(IdealGens(fs.equations, fs.ring), lex(), budget)
    sols = []
    if not gb.is_unit():
        order = list(range(fs.ring.arity - 1, -1, -1))
        for assign in _grid_solutions(gb.elements, order, fs.domains):
            point = [assign[i] for i in range(fs.ring.arity)]
            if any(p(*point) for p in fs.equations):
                raise AssertionError("extracted assignment violates the folded equations")
            fibers = {y: [] for y in Y.vertices}
            mult = 1
            counts = {}
            for orb, inv, row in zip(fold.orbits, fold.invariant_names, fs.counts):
                members = list(orb)
                cs = [assign[fs.ring.index(v)] for v in row]
                counts[inv] = cs
                mult *= factorial(len(orb)) // prod(factorial(c) for c in cs + [len(orb) - sum(cs)])
                for y, c in zip(Y.vertices, cs):
                    fibers[y] += [X.vertices[v] for v in members[:c]]
                    members = members[c:]
            fibers = {y: frozenset(f) for y, f in fibers.items()}
            if all(fibers.values()) and connected_fiber_filter(fibers, X):
                used = frozenset().union(*fibers.values())
                sols.append(EmbeddingSolution(fibers, used, mult, counts))
    sols.sort(key=EmbeddingSolution.key)
    if full:
        return fs, gb, sols
    return sols


def unfold(sol: EmbeddingSolution, fold: SymmetryFold) -> list[EmbeddingSolution]:
    """Every full embedding a folded representative stands for."""
    X = fold.graph
    fixed = {}
    for y, f in sol.fibers.items():
        for v in f:
            fixed[X.index[v]] = y
    choices = []
    for orb in fold.orbits:
        labels = sorted((fixed.get(v) for v in orb), key=lambda t: (t is None, t or ""))
        perms = sorted(set(_permutations_multiset(labels)), key=lambda t: tuple((s is None, s or "") for s in t))
        choices.append([(orb, p) for p in perms])
    out = []
    for pick in product(*choices):
        fibers = {y: set() for y in sol.fibers}
        for orb, labels in pick:
            for v, y in zip(orb, labels):
                if y is not None:
                    fibers[y].add(X.vertices[v])
        fibers = {y: frozenset(f) for y, f in fibers.items()}
        out.append(EmbeddingSolution(fibers, sol.used if len(pick) == 0 else frozenset().union(*fibers.values())))
    out.sort(key=EmbeddingSolution.key)
    return out


def _permutations_multiset(items):
    if not items:
        yield ()
        return
    seen = set()
    for i, x in enumerate(items):
        if x in seen:
            continue
        seen.add(x)
        for rest in _permutations_multiset(items[:i] + items[i + 1:]):
            yield (x,) + rest
