"""
Numba backend: the same two kernels as backend_numpy, compiled with @njit.

Compiled artifacts are cached on disk (cache=True), so only the first call
in a fresh environment pays the compilation cost. Agreement with the numpy
backend is asserted in the test suite.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = ["kl_table", "h_slab", "h_exchange_batch"]


@njit(cache=True)
def _kl_table_impl(big_n, width, off, lmul, length, min_left_descent):
    table = np.zeros((big_n, big_n, width), dtype=np.int64)
    table[0, 0, off] = 1
    for w in range(1, big_n):
        s = min_left_descent[w] - 1
        y = lmul[s, w]
        for u in range(big_n):
            su = lmul[s, u]
            if length[su] < length[u]:
                for k in range(width - 1):
                    table[w, u, k + 1] = table[y, su, k + 1] + table[y, u, k]
                table[w, u, 0] = table[y, su, 0]
            else:
                for k in range(width - 1):
                    table[w, u, k] = table[y, su, k] + table[y, u, k + 1]
                table[w, u, width - 1] = table[y, su, width - 1]
        for z in range(big_n):
            if length[z] >= length[y]:
                break
            m = table[y, z, off - 1]
            if m != 0 and length[lmul[s, z]] < length[z]:
                for u in range(big_n):
                    for k in range(width):
                        table[w, u, k] -= m * table[z, u, k]
    return table


@njit(cache=True)
def _h_slab_impl(
    big_n, width, lmul, length, min_left_descent,
    mu_indptr, mu_t, mu_v, y, off,
):
    slab = np.zeros((big_n, big_n, width), dtype=np.int64)
    slab[0, y, off] = 1
    row = np.zeros((big_n, width), dtype=np.int64)
    for x in range(1, big_n):
        s = min_left_descent[x] - 1
        parent = lmul[s, x]
        row[:, :] = 0
        # left generator application to the parent row
        for z in range(big_n):
            sz = lmul[s, z]
            if length[sz] < length[z]:
                for k in range(width - 1):
                    row[z, k + 1] += slab[parent, z, k]
                    row[z, k] += slab[parent, z, k + 1]
                for k in range(width):
                    row[z, k] += slab[parent, sz, k]
            else:
                for j in range(mu_indptr[z], mu_indptr[z + 1]):
                    t = mu_t[j]
                    if length[lmul[s, t]] < length[t]:
                        m = mu_v[j]
                        for k in range(width):
                            row[t, k] += m * slab[parent, z, k]
        # subtract shorter siblings of the parent
        for j in range(mu_indptr[parent], mu_indptr[parent + 1]):
            t = mu_t[j]
            if length[lmul[s, t]] < length[t]:
                m = mu_v[j]
                for z in range(big_n):
                    for k in range(width):
                        row[z, k] -= m * slab[t, z, k]
        slab[x] = row
    return slab


@njit(cache=True)
def _h_exchange_impl(tensor, support, quads):
    big_n = tensor.shape[0]
    width = tensor.shape[3]
    acc = np.zeros((width, width), dtype=np.int64)
    for q in range(quads.shape[0]):
        w, xp, x, y = quads[q, 0], quads[q, 1], quads[q, 2], quads[q, 3]
        acc[:, :] = 0
        for u in range(big_n):
            if support[xp, w, u] and support[u, x, y]:
                a = tensor[xp, w, u]
                b = tensor[u, x, y]
                for e in range(width):
                    av = np.int64(a[e])
                    if av != 0:
                        for f in range(width):
                            acc[e, f] += av * b[f]
            if support[xp, u, y] and support[w, x, u]:
                c = tensor[xp, u, y]
                d = tensor[w, x, u]
                for e in range(width):
                    cv = np.int64(c[e])
                    if cv != 0:
                        for f in range(width):
                            acc[e, f] -= cv * d[f]
        for e in range(width):
            for f in range(width):
                if acc[e, f] != 0:
                    return q
    return -1


def kl_table(big_n, width, off, lmul, length, min_left_descent):
    return _kl_table_impl(
        big_n, width, off,
        np.ascontiguousarray(lmul),
        np.ascontiguousarray(length),
        np.ascontiguousarray(min_left_descent),
    )


def h_slab(
    big_n, width, lmul, length, min_left_descent,
    mu_indptr, mu_t, mu_v, y, off,
):
    return _h_slab_impl(
        big_n, width,
        np.ascontiguousarray(lmul),
        np.ascontiguousarray(length),
        np.ascontiguousarray(min_left_descent),
        np.ascontiguousarray(mu_indptr),
        np.ascontiguousarray(mu_t),
        np.ascontiguousarray(mu_v),
        y, off,
    )


def h_exchange_batch(tensor, support, quads):
    return int(
        _h_exchange_impl(
            np.ascontiguousarray(tensor),
            np.ascontiguousarray(support),
            np.ascontiguousarray(quads),
        )
    )
