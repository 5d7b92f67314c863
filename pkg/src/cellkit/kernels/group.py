"""
Packed integer tables for a whole symmetric group.

Elements are indexed 0..N-1 in the canonical order (length, then one-line
lexicographic), so index 0 is the identity, indices are monotone in length,
and every recursion over the group can walk straight up the index range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..coxeter import Perm, elements_by_length

__all__ = ["GroupTable", "mu_csr"]


@dataclass(frozen=True)
class GroupTable:
    """Index tables for S_n: multiplication, inversion, lengths, descents."""

    n: int
    perms: np.ndarray             # (N, n) one-line images
    length: np.ndarray            # (N,)
    inv: np.ndarray               # (N,) index of the inverse
    lmul: np.ndarray              # (n-1, N) index of s_i * w  (row i-1)
    rmul: np.ndarray              # (n-1, N) index of w * s_i
    min_left_descent: np.ndarray  # (N,) smallest i with s_i w shorter; 0 at id
    index: dict[tuple[int, ...], int] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.length)

    @property
    def maxlen(self) -> int:
        return self.n * (self.n - 1) // 2

    def perm(self, idx: int) -> Perm:
        return Perm(tuple(int(v) for v in self.perms[idx]))

    def idx(self, w: Perm) -> int:
        return self.index[w.images]

    @staticmethod
    def build(n: int) -> "GroupTable":
        elems = elements_by_length(n)
        big_n = len(elems)
        index = {w.images: k for k, w in enumerate(elems)}
        perms = np.array([w.images for w in elems], dtype=np.int64)
        length = np.array([w.length for w in elems], dtype=np.int64)
        inv = np.array([index[w.inverse().images] for w in elems], dtype=np.int64)
        lmul = np.zeros((max(n - 1, 0), big_n), dtype=np.int64)
        rmul = np.zeros((max(n - 1, 0), big_n), dtype=np.int64)
        for i in range(1, n):
            s = Perm.transposition(n, i)
            lmul[i - 1] = [index[(s * w).images] for w in elems]
            rmul[i - 1] = [index[(w * s).images] for w in elems]
        mins = np.zeros(big_n, dtype=np.int64)
        for k, w in enumerate(elems):
            ds = w.left_descents()
            mins[k] = min(ds) if ds else 0
        return GroupTable(n, perms, length, inv, lmul, rmul, mins, index)


def mu_csr(
    table: np.ndarray, off: int, length: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Extract the leading-coefficient pairing from a base-change table in CSR
    form over the longer element: for each w, the shorter elements t with a
    nonzero coefficient of v^(-1) in the polynomial attached to (t, w).

    Returns (indptr, t_idx, value) with indptr of length N+1.
    """
    big_n = table.shape[0]
    mus = table[:, :, off - 1]
    indptr = np.zeros(big_n + 1, dtype=np.int64)
    t_out: list[int] = []
    v_out: list[int] = []
    for w in range(big_n):
        cols = np.nonzero(mus[w])[0]
        for t in cols:
            if length[t] < length[w]:
                t_out.append(int(t))
                v_out.append(int(mus[w, t]))
        indptr[w + 1] = len(t_out)
    return (
        indptr,
        np.array(t_out, dtype=np.int64),
        np.array(v_out, dtype=np.int64),
    )
