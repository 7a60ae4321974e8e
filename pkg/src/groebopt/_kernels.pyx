# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: Metropolis sweeps and Gray-code enumeration.

Floating point operations run in the same order as ``_kernels_py`` so both
backends agree bit for bit.
"""

from libc.math cimport exp
from libc.stdint cimport int64_t, int8_t


def anneal_run(const double[::1] h, const int64_t[::1] indptr, const int64_t[::1] indices,
               const double[::1] data, const double[::1] betas, int8_t[::1] state,
               const double[::1] rand):
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t nsweeps = betas.shape[0]
    cdef Py_ssize_t i, k, s, pos = 0
    cdef double d, beta, u
    cdef double[::1] field
    import numpy as np
    field = np.array(h, dtype=np.float64)
    for i in range(n):
        if state[i]:
            for k in range(indptr[i], indptr[i + 1]):
                field[indices[k]] += data[k]
    for s in range(nsweeps):
        beta = betas[s]
        for i in range(n):
            if state[i] == 0:
                d = field[i]
            else:
                d = -field[i]
            u = rand[pos]
            pos += 1
            if d <= 0.0 or u < exp(-beta * d):
                if state[i]:
                    state[i] = 0
                    for k in range(indptr[i], indptr[i + 1]):
                        field[indices[k]] -= data[k]
                else:
                    state[i] = 1
                    for k in range(indptr[i], indptr[i + 1]):
                        field[indices[k]] += data[k]


cdef inline int _ctz(unsigned long long v) nogil:
    cdef int c = 0
    while not (v & 1):
        v >>= 1
        c += 1
    return c


def gray_exhaustive(const int64_t[::1] h, const int64_t[::1] J, int n, Py_ssize_t max_keep):
    cdef int64_t[::1] field
    cdef int8_t[::1] x
    cdef int64_t e = 0, best = 0, count = 1
    cdef unsigned long long k, total = 1ULL << n
    cdef Py_ssize_t i, j, base
    import numpy as np
    field = np.array(h, dtype=np.int64)
    x = np.zeros(n, dtype=np.int8)
    states = [0]
    for k in range(1, total):
        i = _ctz(k)
        base = i * n
        if x[i]:
            e -= field[i]
            x[i] = 0
            for j in range(n):
                field[j] -= J[base + j]
        else:
            e += field[i]
            x[i] = 1
            for j in range(n):
                field[j] += J[base + j]
        if e < best:
            best = e
            count = 1
            states = [k ^ (k >> 1)]
        elif e == best:
            count += 1
            if len(states) < max_keep:
                states.append(k ^ (k >> 1))
    return best, states, count


def gray_below(const int64_t[::1] h, const int64_t[::1] J, int n, int64_t threshold, Py_ssize_t max_keep):
    cdef int64_t[::1] field
    cdef int8_t[::1] x
    cdef int64_t e = 0
    cdef unsigned long long k, total = 1ULL << n
    cdef Py_ssize_t i, j, base
    import numpy as np
    field = np.array(h, dtype=np.int64)
    x = np.zeros(n, dtype=np.int8)
    states = []
    energies = []
    if e <= threshold:
        states.append(0)
        energies.append(0)
    for k in range(1, total):
        i = _ctz(k)
        base = i * n
        if x[i]:
            e -= field[i]
            x[i] = 0
            for j in range(n):
                field[j] -= J[base + j]
        else:
            e += field[i]
            x[i] = 1
            for j in range(n):
                field[j] += J[base + j]
        if e <= threshold and len(states) < max_keep:
            states.append(k ^ (k >> 1))
            energies.append(e)
    return states, energies
