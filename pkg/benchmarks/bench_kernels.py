"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 16] [--sweeps 200] [--repeat 3]

Both backends get identical inputs; the script also checks their outputs match.
"""

import argparse
import time

import numpy as np

from groebopt import _kernels_py
from groebopt.quboc import Qubo
from groebopt.solvers import AnnealSchedule

try:
    from groebopt import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def random_qubo(n: int, density: float, seed: int) -> Qubo:
    rng = np.random.default_rng(seed)
    lin = [int(v) for v in rng.integers(-8, 9, n)]
    quad = {(i, j): int(rng.integers(-8, 9)) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    return Qubo(n, lin, {k: v for k, v in quad.items() if v})


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench(mod, q, sweeps, repeat):
    h, indptr, indices, data = q.csr()
    betas = AnnealSchedule(sweeps=sweeps).betas(q)
    rng = np.random.default_rng(0)
    state0 = rng.integers(0, 2, q.n, dtype=np.int8)
    rand = rng.random(len(betas) * q.n)

    def anneal():
        s = state0.copy()
        mod.anneal_run(h, indptr, indices, data, betas, s, rand)
        return s

    den, hi, J = q.integer_form()
    t_a, s = best_of(anneal, repeat)
    t_g, g = best_of(lambda: mod.gray_exhaustive(hi, J, q.n, 1024), repeat)
    return t_a, t_g, s, g


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=16)
    ap.add_argument("--sweeps", type=int, default=200)
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    q = random_qubo(a.n, a.density, 1)
    print(f"n={a.n} sweeps={a.sweeps} couplings={len(q.quadratic)} exhaustive states={2 ** a.n}")
    py = bench(_kernels_py, q, a.sweeps, a.repeat)
    print(f"{'kernel':<18}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    if _kernels_c is None:
        print(f"{'anneal_run':<18}{py[0]:>12.4f}{'-':>12}")
        print(f"{'gray_exhaustive':<18}{py[1]:>12.4f}{'-':>12}")
        print("compiled extension not available")
        return
    cy = bench(_kernels_c, q, a.sweeps, a.repeat)
    print(f"{'anneal_run':<18}{py[0]:>12.4f}{cy[0]:>12.5f}{py[0] / cy[0]:>9.0f}x")
    print(f"{'gray_exhaustive':<18}{py[1]:>12.4f}{cy[1]:>12.5f}{py[1] / cy[1]:>9.0f}x")
    same = (py[2] == cy[2]).all() and py[3][0] == cy[3][0] and sorted(py[3][1]) == sorted(cy[3][1])
    print(f"outputs identical: {bool(same)}")


if __name__ == "__main__":
    main()
