"""
Pure-numpy backend: vectorized coefficient-window arithmetic.

Both kernels walk the group in index order (monotone in length) so every
recursion step only reads rows that are already complete.
"""

from __future__ import annotations

import numpy as np

__all__ = ["kl_table", "h_slab", "h_exchange_batch"]


def kl_table(
    big_n: int,
    width: int,
    off: int,
    lmul: np.ndarray,
    length: np.ndarray,
    min_left_descent: np.ndarray,
) -> np.ndarray:
    """
    Fill the (N, N, width) base-change table. Row w is produced from the
    shorter row y = s*w (s its smallest left descent) by

        p(u, w) = p(su, y) + v^(+-1) p(u, y) - sum mu(z, y) p(u, z)

    with exponent shift +1 when su < u, -1 otherwise, and the correction
    running over shorter z with sz < z and a nonzero leading pairing with y.
    """
    table = np.zeros((big_n, big_n, width), dtype=np.int64)
    table[0, 0, off] = 1
    for w in range(1, big_n):
        s = min_left_descent[w] - 1
        y = int(lmul[s, w])
        su = lmul[s]
        prev = table[y]
        row = prev[su].copy()                  # p(su, y) for every u
        down = length[su] < length             # u with su < u
        row[down, 1:] += prev[down, :-1]       # v * p(u, y)
        row[~down, :-1] += prev[~down, 1:]     # v^-1 * p(u, y)
        mus = prev[:, off - 1]
        for z in np.nonzero(mus)[0]:
            if length[lmul[s, z]] < length[z]:
                row -= mus[z] * table[z]
        table[w] = row
    return table


def _apply_left_generator(
    row: np.ndarray,
    s: int,
    lmul: np.ndarray,
    length: np.ndarray,
    mu_indptr: np.ndarray,
    mu_t: np.ndarray,
    mu_v: np.ndarray,
) -> np.ndarray:
    """
    One left multiplication by a generator on a coefficient vector over the
    canonical basis: basis elements z with sz < z pick up a factor
    (v + v^-1); those with sz > z move to sz and spill onto the shorter
    elements t < z with st < t weighted by the leading pairing mu(t, z).
    """
    out = np.zeros_like(row)
    sz = lmul[s]
    down = length[sz] < length
    out[down, 1:] += row[down, :-1]
    out[down, :-1] += row[down, 1:]
    out[down] += row[sz[down]]
    for z in np.nonzero(~down)[0]:
        lo, hi = mu_indptr[z], mu_indptr[z + 1]
        for k in range(lo, hi):
            t = mu_t[k]
            if length[lmul[s, t]] < length[t]:
                out[t] += mu_v[k] * row[z]
    return out


def h_slab(
    big_n: int,
    width: int,
    lmul: np.ndarray,
    length: np.ndarray,
    min_left_descent: np.ndarray,
    mu_indptr: np.ndarray,
    mu_t: np.ndarray,
    mu_v: np.ndarray,
    y: int,
    off: int,
) -> np.ndarray:
    """
    Structure constants for a fixed right factor y: slab[x, z, k] is the
    coefficient of v^(k - off) in h(x, y, z). Row x is built from its parent
    p = s*x by one left generator application minus the shorter siblings
    t < p with st < t, weighted by mu(t, p).
    """
    slab = np.zeros((big_n, big_n, width), dtype=np.int64)
    slab[0, y, off] = 1
    for x in range(1, big_n):
        s = min_left_descent[x] - 1
        parent = int(lmul[s, x])
        row = _apply_left_generator(
            slab[parent], s, lmul, length, mu_indptr, mu_t, mu_v
        )
        lo, hi = mu_indptr[parent], mu_indptr[parent + 1]
        for k in range(lo, hi):
            t = mu_t[k]
            if length[lmul[s, t]] < length[t]:
                row -= mu_v[k] * slab[t]
        slab[x] = row
    return slab


def h_exchange_batch(
    tensor: np.ndarray, support: np.ndarray, quads: np.ndarray
) -> int:
    """
    Check the two-indeterminate exchange identity on a batch of quadruples.

    tensor[y, x, z, k] holds the coefficient of v^(k - off) in h(x, y, z)
    and support[y, x, z] marks nonzero polynomials. Each quadruple
    (w, x', x, y) requires, as an identity of integer grids indexed by the
    two exponent windows,

        sum_u h(w, x', u) (x) h(x, u, y)  ==  sum_u h(y', x', y)|_{y'=u} ...

    concretely: sum over the middle element u of the outer product of the
    first factor's coefficients (slot 1) with the second factor's (slot 2),
    compared for the two ways of bracketing. Returns the index of the first
    failing quadruple, or -1.
    """
    width = tensor.shape[3]
    zero = np.zeros((width, width), dtype=np.int64)
    for q in range(quads.shape[0]):
        w, xp, x, y = (int(v) for v in quads[q])
        left_mid = np.flatnonzero(support[xp, w] & support[:, x, y])
        right_mid = np.flatnonzero(support[xp, :, y] & support[w, x])
        lhs = (
            np.einsum(
                "ue,uf->ef",
                tensor[xp, w, left_mid].astype(np.int64),
                tensor[left_mid, x, y].astype(np.int64),
            )
            if left_mid.size
            else zero
        )
        rhs = (
            np.einsum(
                "ue,uf->ef",
                tensor[xp, right_mid, y].astype(np.int64),
                tensor[w, x, right_mid].astype(np.int64),
            )
            if right_mid.size
            else zero
        )
        if not np.array_equal(lhs, rhs):
            return q
    return -1
