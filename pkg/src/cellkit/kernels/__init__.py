"""
Integer kernels behind the exact-arithmetic API.

Polynomial tables are stored as dense int64 coefficient windows so the inner
recursions run as array arithmetic. Two interchangeable backends implement
them: a pure-numpy one and a numba-compiled one. Selection is controlled by
the CELLKIT_BACKEND environment variable:

* ``numpy``  - always use the pure-numpy backend;
* ``numba``  - always use the compiled backend (error if numba is missing);
* ``auto``   - (default) compile with numba for ranks where it pays off
  (n >= 5) and fall back to numpy otherwise or when numba is unavailable.

All coefficients fit comfortably in int64 at supported ranks; results are
cross-checked against pure-Python arithmetic in the test suite.
"""

from __future__ import annotations

import os
from typing import Optional

import numpy as np

from .group import GroupTable, mu_csr

__all__ = [
    "GroupTable",
    "mu_csr",
    "resolve_backend",
    "kl_table_array",
    "h_slab_array",
    "h_exchange_batch",
    "kl_offset",
    "h_offset",
]

_KL_MARGIN = 1   # transient slots above exponent 0 during the recursion
_H_MARGIN = 2    # guard slots outside [-l(w0), l(w0)]


def kl_offset(gt: GroupTable) -> tuple[int, int]:
    """(window width, index of exponent 0) for the base-change table."""
    width = gt.maxlen + 1 + 2 * _KL_MARGIN
    return width, gt.maxlen + _KL_MARGIN


def h_offset(gt: GroupTable) -> tuple[int, int]:
    """(window width, index of exponent 0) for structure-constant slabs."""
    width = 2 * (gt.maxlen + _H_MARGIN) + 1
    return width, gt.maxlen + _H_MARGIN


def resolve_backend(n: int | None = None) -> str:
    """Resolve CELLKIT_BACKEND to a concrete backend name."""
    choice = os.environ.get("CELLKIT_BACKEND", "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"CELLKIT_BACKEND must be auto, numba or numpy (got {choice!r})"
        )
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        from . import backend_numba  # noqa: F401  (raises if unavailable)

        return "numba"
    # auto: compilation only pays off once the group is non-tiny
    if n is not None and n < 5:
        return "numpy"
    try:
        from . import backend_numba  # noqa: F401

        return "numba"
    except ImportError:
        return "numpy"


def _impl(name: str):
    if name == "numba":
        from . import backend_numba as mod
    else:
        from . import backend_numpy as mod
    return mod


def kl_table_array(
    gt: GroupTable,
    backend: Optional[str] = None,
    descent_choice: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Dense (N, N, E) int64 table; entry [w, x, k] is the coefficient of
    v^(k - off) in the base-change polynomial attached to (x, w).

    descent_choice may supply an alternative left descent per element (the
    result is provably independent of it; tests assert this).
    """
    name = backend or resolve_backend(gt.n)
    width, off = kl_offset(gt)
    choice = gt.min_left_descent if descent_choice is None else descent_choice
    table = _impl(name).kl_table(
        gt.order, width, off, gt.lmul, gt.length, choice
    )
    # final rows must live in exponents [-maxlen, 0]
    if table[:, :, :_KL_MARGIN].any() or table[:, :, off + 1 :].any():
        raise AssertionError("base-change table escaped its exponent window")
    return table


def h_slab_array(
    gt: GroupTable,
    mu: tuple[np.ndarray, np.ndarray, np.ndarray],
    y: int,
    backend: Optional[str] = None,
) -> np.ndarray:
    """
    Dense (N, N, E) int64 slab for a fixed right factor y; entry [x, z, k]
    is the coefficient of v^(k - off) in the structure constant h(x, y, z).
    """
    name = backend or resolve_backend(gt.n)
    width, off = h_offset(gt)
    indptr, t_idx, val = mu
    slab = _impl(name).h_slab(
        gt.order,
        width,
        gt.lmul,
        gt.length,
        gt.min_left_descent,
        indptr,
        t_idx,
        val,
        y,
        off,
    )
    if slab[:, :, :_H_MARGIN].any() or slab[:, :, -_H_MARGIN:].any():
        raise AssertionError("structure constants escaped their window")
    return slab


def h_exchange_batch(
    tensor: np.ndarray,
    support: np.ndarray,
    quads: np.ndarray,
    n: Optional[int] = None,
    backend: Optional[str] = None,
) -> int:
    """
    Batch-check the two-indeterminate exchange identity over quadruple rows
    (w, x', x, y) of element indices; tensor is the stacked [y, x, z, k]
    structure-constant window and support its nonzero mask. Returns the
    index of the first failing quadruple, or -1 if the whole batch holds.
    """
    name = backend or resolve_backend(n)
    return int(_impl(name).h_exchange_batch(tensor, support, quads))
