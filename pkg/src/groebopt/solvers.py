"""Exact exhaustive search and seeded simulated annealing for ``Qubo`` instances.

The annealer draws from numpy's PCG64, seeded per restart with
``base_seed ^ restart``.  Initial states and the acceptance uniforms are
generated up front and handed to the kernel, so the compiled and the pure
Python kernels see identical inputs and return identical samples.  Energies
reported to callers are always recomputed in exact arithmetic.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import ResourceLimitError
from .polyring import as_rational
from .quboc import Qubo


@dataclass
class AnnealSchedule:
    sweeps: int = 1000
    beta_start: float | None = None
    beta_end: float | None = None
    restarts: int = 10
    base_seed: int = 0

    def __post_init__(self):
        if self.sweeps < 1:
            raise ValueError("sweeps must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if (self.beta_start is None) != (self.beta_end is None):
            raise ValueError("give both beta_start and beta_end or neither")
        if self.beta_start is not None:
            if not 0 < self.beta_start < self.beta_end:
                raise ValueError("need 0 < beta_start < beta_end")
        self.base_seed = int(self.base_seed) & (2**64 - 1)

    def betas(self, q: Qubo) -> np.ndarray:
        b0, b1 = self.beta_start, self.beta_end
        if b0 is None:
            b0, b1 = default_beta_range(q)
        if self.sweeps == 1:
            return np.array([b1], dtype=np.float64)
        return np.geomspace(b0, b1, self.sweeps)


def default_beta_range(q: Qubo) -> tuple[float, float]:
    """Hot end accepts the largest single flip with probability 1/2, cold end the smallest with 1/100."""
    scale = [abs(float(v)) for v in q.linear]
    for (i, j), v in q.quadratic.items():
        scale[i] += abs(float(v))
        scale[j] += abs(float(v))
    nonzero = [v for v in q.linear if v] + list(q.quadratic.values())
    if not nonzero or max(scale) == 0:
        return 0.1, 1.0
    big = max(scale)
    small = min(abs(float(v)) for v in nonzero)
    b0 = math.log(2) / big
    b1 = math.log(100) / small
    if b1 <= b0:
        b1 = 10 * b0
    return b0, b1


@dataclass(frozen=True)
class Sample:
    x: tuple
    energy: Fraction
    count: int = 1


@dataclass
class SampleSet:
    samples: list = field(default_factory=list)
    best_energy: Fraction | None = None
    total: int = 0  # number of minimizers found, may exceed the stored list

    @classmethod
    def from_counts(cls, q: Qubo, counts: dict, total=None) -> "SampleSet":
        samples = [Sample(tuple(x), q.energy(x), c) for x, c in counts.items()]
        samples.sort(key=lambda s: (s.energy, s.x))
        best = samples[0].energy if samples else None
        return cls(samples, best, total if total is not None else sum(counts.values()))

    @property
    def minimizers(self) -> list[tuple]:
        return [s.x for s in self.samples if s.energy == self.best_energy]

    def __len__(self):
        return sum(s.count for s in self.samples)

    def verify(self, q: Qubo) -> bool:
        if not self.samples:
            return self.best_energy is None
        ok = all(q.energy(s.x) == s.energy for s in self.samples)
        return ok and self.best_energy == min(s.energy for s in self.samples)

    def to_dict(self) -> dict:
        return {
            "samples": [{"x": list(s.x), "energy": str(s.energy), "count": s.count} for s in self.samples],
            "best": None if self.best_energy is None else str(self.best_energy),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "SampleSet":
        samples = [Sample(tuple(int(b) for b in s["x"]), Fraction(s["energy"]), int(s.get("count", 1))) for s in data["samples"]]
        best = data.get("best")
        return cls(samples, None if best is None else Fraction(best), sum(s.count for s in samples))

    @classmethod
    def from_json(cls, text: str) -> "SampleSet":
        return cls.from_dict(json.loads(text))


def _mask_to_bits(mask: int, n: int) -> tuple:
    return tuple((mask >> i) & 1 for i in range(n))


def solve_exhaustive(q: Qubo, max_n: int = 24, max_keep: int = 1 << 16) -> SampleSet:
    """Every minimizer of ``q`` over ``{0,1}^n`` (up to ``max_keep`` stored)."""
    n = q.n
    if n > max_n:
        raise ResourceLimitError(f"exhaustive search over {n} variables exceeds the limit {max_n}")
    if n == 0:
        return SampleSet([Sample((), q.offset, 1)], q.offset, 1)
    try:
        den, h, J = q.integer_form()
    except ResourceLimitError:
        return _exhaustive_exact(q, max_keep)
    _, masks, total = kernels.gray_exhaustive(h, J, n, max_keep)
    counts = {_mask_to_bits(int(m), n): 1 for m in masks}
    return SampleSet.from_counts(q, counts, total)


def _exhaustive_exact(q: Qubo, max_keep: int) -> SampleSet:
    best, keep, total = None, [], 0
    for x in product((0, 1), repeat=q.n):
        e = q.energy(x)
        if best is None or e < best:
            best, keep, total = e, [x], 1
        elif e == best:
            total += 1
            if len(keep) < max_keep:
                keep.append(x)
    return SampleSet.from_counts(q, {x: 1 for x in keep}, total)


def solve_below(q: Qubo, threshold, max_n: int = 24, max_keep: int = 1 << 16) -> SampleSet:
    """All assignments with energy <= ``threshold`` (exact), lowest first."""
    threshold = as_rational(threshold)
    n = q.n
    if n > max_n:
        raise ResourceLimitError(f"exhaustive search over {n} variables exceeds the limit {max_n}")
    try:
        den, h, J = q.integer_form()
    except ResourceLimitError:
        hits = [x for x in product((0, 1), repeat=n) if q.energy(x) <= threshold][:max_keep]
        return SampleSet.from_counts(q, {x: 1 for x in hits})
    scaled = math.floor((threshold - q.offset) * den)
    if abs(scaled) >= 2**62:
        scaled = int(math.copysign(2**62, scaled))
    masks, _ = kernels.gray_below(h, J, n, scaled, max_keep)
    return SampleSet.from_counts(q, {_mask_to_bits(int(m), n): 1 for m in masks})


def _anneal_one(q: Qubo, arrays, betas, seed: int) -> tuple:
    h, indptr, indices, data = arrays
    rng = np.random.Generator(np.random.PCG64(seed))
    state = rng.integers(0, 2, size=q.n, dtype=np.int8)
    rand = rng.random(len(betas) * q.n)
    kernels.anneal_run(h, indptr, indices, data, betas, state, rand)
    return tuple(int(v) for v in state)


def simulated_anneal(q: Qubo, sched: AnnealSchedule, jobs: int = 1) -> SampleSet:
    """One Metropolis run per restart; duplicate end states are merged with counts."""
    if q.n == 0:
        return SampleSet([Sample((), q.offset, sched.restarts)], q.offset, sched.restarts)
    arrays = q.csr()
    betas = sched.betas(q)
    seeds = [sched.base_seed ^ r for r in range(sched.restarts)]
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            finals = list(pool.map(lambda s: _anneal_one(q, arrays, betas, s), seeds))
    else:
        finals = [_anneal_one(q, arrays, betas, s) for s in seeds]
    counts: dict = {}
    for x in finals:
        counts[x] = counts.get(x, 0) + 1
    return SampleSet.from_counts(q, counts)


def exclude_solutions(q: Qubo, known: Iterable[Sequence[int]], penalty) -> Qubo:
    """Add ``penalty * (1 - d(x, a)/n)`` per known ``a``, with ``d`` the Hamming distance.

    The known point rises by exactly ``penalty``; any other point by less.
    """
    penalty = as_rational(penalty)
    if penalty <= 0:
        raise ValueError("penalty must be positive")
    out = q.copy()
    n = q.n
    if n == 0:
        return out
    step = penalty / n
    for a in known:
        if len(a) != n:
            raise ValueError("known assignment length differs from n")
        ones = 0
        for i, bit in enumerate(a):
            if bit:
                out.linear[i] += step
                ones += 1
            else:
                out.linear[i] -= step
        out.offset += penalty - step * ones
    return out
