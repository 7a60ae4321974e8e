"""Pure-Python versions of the hot loops in ``_kernels.pyx``.

Signatures and floating point operation order match the compiled module
exactly, so both backends produce bit-identical results.
"""

from math import exp


def anneal_run(h, indptr, indices, data, betas, state, rand):
    """Metropolis single-flip sweeps; ``state`` (0/1 int8 array) is updated in place."""
    n = len(h)
    x = [int(v) for v in state]
    hl = [float(v) for v in h]
    ip = [int(v) for v in indptr]
    ix = [int(v) for v in indices]
    dv = [float(v) for v in data]
    field = list(hl)
    for i in range(n):
        if x[i]:
            for k in range(ip[i], ip[i + 1]):
                field[ix[k]] += dv[k]
    pos = 0
    for s in range(len(betas)):
        beta = float(betas[s])
        for i in range(n):
            d = field[i] if x[i] == 0 else -field[i]
            u = float(rand[pos])
            pos += 1
            if d <= 0.0 or u < exp(-beta * d):
                if x[i]:
                    x[i] = 0
                    for k in range(ip[i], ip[i + 1]):
                        field[ix[k]] -= dv[k]
                else:
                    x[i] = 1
                    for k in range(ip[i], ip[i + 1]):
                        field[ix[k]] += dv[k]
    for i in range(n):
        state[i] = x[i]


def gray_exhaustive(h, J, n, max_keep):
    """Enumerate ``{0,1}^n`` in Gray-code order with integer energies.

    ``h`` holds linear terms, ``J`` the dense symmetric coupling matrix
    (row major, zero diagonal).  Returns ``(best, states, count)`` where
    ``states`` lists up to ``max_keep`` minimising bitmasks and ``count`` is
    the total number of minimisers.
    """
    hl = [int(v) for v in h]
    Jl = [int(v) for v in J]
    field = list(hl)
    x = [0] * n
    e = 0
    best = 0
    states = [0]
    count = 1
    for k in range(1, 1 << n):
        i = (k & -k).bit_length() - 1
        base = i * n
        if x[i]:
            e -= field[i]
            x[i] = 0
            for j in range(n):
                field[j] -= Jl[base + j]
        else:
            e += field[i]
            x[i] = 1
            for j in range(n):
                field[j] += Jl[base + j]
        if e < best:
            best = e
            count = 1
            states = [k ^ (k >> 1)]
        elif e == best:
            count += 1
            if len(states) < max_keep:
                states.append(k ^ (k >> 1))
    return best, states, count


def gray_below(h, J, n, threshold, max_keep):
    """All bitmasks with integer energy ``<= threshold`` (up to ``max_keep``), plus their energies."""
    hl = [int(v) for v in h]
    Jl = [int(v) for v in J]
    field = list(hl)
    x = [0] * n
    e = 0
    states, energies = [], []
    if e <= threshold:
        states.append(0)
        energies.append(0)
    for k in range(1, 1 << n):
        i = (k & -k).bit_length() - 1
        base = i * n
        if x[i]:
            e -= field[i]
            x[i] = 0
            for j in range(n):
                field[j] -= Jl[base + j]
        else:
            e += field[i]
            x[i] = 1
            for j in range(n):
                field[j] += Jl[base + j]
        if e <= threshold and len(states) < max_keep:
            states.append(k ^ (k >> 1))
            energies.append(e)
    return states, energies
