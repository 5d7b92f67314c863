"""
The Iwahori-Hecke algebra of S_n over the Laurent ring Z[v, v^-1].

Elements are sparse linear combinations over one of three bases: the
standard basis T_w with

    T_s T_w = T_{sw}                      if l(sw) > l(w),
    T_s T_w = T_{sw} + (v - v^-1) T_w     if l(sw) < l(w),

and the two canonical bases C'_w and C_w characterized by bar-invariance
together with unitriangularity: C'_w = T_w + sum_{y < w} p(y, w) T_y with
every p(y, w) of strictly negative exponents, and C_w the image of C'_w
under the sign twist j.

>>> s = HeckeElt.t(Perm.from_word("s1", 2))
>>> (s * s).render()
'T[e] + (-v^-1 + v)*T[s1]'
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .coxeter import Perm, bruhat_leq
from .kernels import (
    GroupTable,
    h_offset,
    h_slab_array,
    kl_offset,
    kl_table_array,
    mu_csr,
    resolve_backend,
)
from .laurent import Laurent, ONE, V

__all__ = [
    "HeckeElt",
    "KLTable",
    "get_group_table",
    "kl_table",
    "kl_element",
    "t_mul",
    "apply_involution",
    "convert_basis",
    "h_constants",
    "tau_trace",
]

_VMINUS = V - V.bar()  # v - v^-1

_BASES = ("T", "Cprime", "C")


class HeckeElt:
    """A sparse algebra element tagged with the basis its coefficients use."""

    __slots__ = ("n", "basis", "_coeffs")

    def __init__(
        self,
        n: int,
        basis: str,
        coeffs: Mapping[Perm, Laurent] | Iterable[tuple[Perm, Laurent]] = (),
    ):
        if basis not in _BASES:
            raise ValueError(f"unknown basis tag {basis!r}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        stored: dict[Perm, Laurent] = {}
        for w, a in items:
            if w.n != n:
                raise ValueError("rank mismatch in coefficients")
            a = a if isinstance(a, Laurent) else Laurent.from_int(a)
            if not a.is_zero:
                acc = stored.get(w)
                stored[w] = a if acc is None else acc + a
                if stored[w].is_zero:
                    del stored[w]
        self.n = n
        self.basis = basis
        self._coeffs = stored

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n: int, basis: str = "T") -> HeckeElt:
        return HeckeElt(n, basis)

    @staticmethod
    def unit(n: int, basis: str = "T") -> HeckeElt:
        return HeckeElt(n, basis, {Perm.identity(n): ONE})

    @staticmethod
    def t(w: Perm) -> HeckeElt:
        return HeckeElt(w.n, "T", {w: ONE})

    @staticmethod
    def basis_elt(w: Perm, basis: str) -> HeckeElt:
        return HeckeElt(w.n, basis, {w: ONE})

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> dict[Perm, Laurent]:
        return dict(self._coeffs)

    def coeff(self, w: Perm) -> Laurent:
        return self._coeffs.get(w, Laurent.zero())

    @property
    def support(self) -> frozenset[Perm]:
        return frozenset(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def sorted_terms(self) -> list[tuple[Perm, Laurent]]:
        return sorted(self._coeffs.items(), key=lambda kv: (kv[0].length, kv[0].images))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: HeckeElt):
        if self.n != other.n or self.basis != other.basis:
            raise ValueError("elements live in different bases or ranks")

    def __add__(self, other: HeckeElt) -> HeckeElt:
        self._check(other)
        out = dict(self._coeffs)
        for w, a in other._coeffs.items():
            b = out.get(w, Laurent.zero()) + a
            if b.is_zero:
                out.pop(w, None)
            else:
                out[w] = b
        return HeckeElt(self.n, self.basis, out)

    def __neg__(self) -> HeckeElt:
        return HeckeElt(self.n, self.basis, {w: -a for w, a in self._coeffs.items()})

    def __sub__(self, other: HeckeElt) -> HeckeElt:
        return self + (-other)

    def scale(self, a: Laurent | int) -> HeckeElt:
        a = a if isinstance(a, Laurent) else Laurent.from_int(a)
        return HeckeElt(self.n, self.basis, {w: a * c for w, c in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            self._check(other)
            if self.basis != "T":
                raise ValueError("products require the T basis (convert first)")
            return t_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HeckeElt)
            and self.n == other.n
            and self.basis == other.basis
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash((self.n, self.basis, frozenset(self._coeffs.items())))

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        if not self._coeffs:
            return "0"
        tag = {"T": "T", "Cprime": "Cp", "C": "C"}[self.basis]
        parts = []
        for w, a in self.sorted_terms():
            name = f"{tag}[{w.word_str()}]"
            if a == ONE:
                parts.append(name)
            elif len(a.terms) == 1 and a.render().lstrip("-").isdigit():
                parts.append(f"{a.render()}*{name}")
            else:
                parts.append(f"({a.render()})*{name}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"HeckeElt({self.render()})"


# -- T-basis multiplication ---------------------------------------------------


def _left_gen_mul(i: int, h: HeckeElt) -> HeckeElt:
    """T_{s_i} * h in the T basis."""
    s = Perm.transposition(h.n, i)
    out: dict[Perm, Laurent] = {}

    def bump(w: Perm, a: Laurent):
        b = out.get(w, Laurent.zero()) + a
        if b.is_zero:
            out.pop(w, None)
        else:
            out[w] = b

    for w, a in h._coeffs.items():
        sw = s * w
        bump(sw, a)
        if sw.length < w.length:
            bump(w, _VMINUS * a)
    return HeckeElt(h.n, "T", out)


def t_mul(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """Product of two T-basis elements by cascading the defining relations."""
    if a.basis != "T" or b.basis != "T":
        raise ValueError("t_mul requires both factors in the T basis")
    if a.n != b.n:
        raise ValueError("rank mismatch")
    total = HeckeElt.zero(a.n)
    for x, ax in a._coeffs.items():
        part = b
        for i in reversed(x.reduced_word()):
            part = _left_gen_mul(i, part)
        total = total + part.scale(ax)
    return total


# -- involutions --------------------------------------------------------------

_BAR_T_MEMO: dict[tuple[int, tuple[int, ...]], HeckeElt] = {}


def _bar_t(w: Perm) -> HeckeElt:
    """bar(T_w) = (T_{w^-1})^-1 in the T basis, by the generator recursion
    bar(T_{sy}) = (T_s - (v - v^-1) T_1) bar(T_y)."""
    key = (w.n, w.images)
    got = _BAR_T_MEMO.get(key)
    if got is not None:
        return got
    if w.length == 0:
        out = HeckeElt.unit(w.n)
    else:
        i = min(w.left_descents())
        rest = _bar_t(Perm.transposition(w.n, i) * w)
        out = _left_gen_mul(i, rest) - rest.scale(_VMINUS)
    _BAR_T_MEMO[key] = out
    return out


def apply_involution(h: HeckeElt, kind: str) -> HeckeElt:
    """
    The four symmetries on T-basis elements: "j" twists coefficients by
    sign and bar; "bar" is the ring involution fixing every C'_w; "dagger"
    is the composite j after bar; "flat" sends T_w to T_{w^-1} (an
    anti-automorphism, coefficients untouched).
    """
    if h.basis != "T":
        raise ValueError("involutions act on the T basis (convert first)")
    if kind == "flat":
        return HeckeElt(h.n, "T", {w.inverse(): a for w, a in h._coeffs.items()})
    if kind == "j":
        return HeckeElt(
            h.n, "T", {w: a.bar() * w.sign for w, a in h._coeffs.items()}
        )
    if kind == "bar":
        total = HeckeElt.zero(h.n)
        for w, a in h._coeffs.items():
            total = total + _bar_t(w).scale(a.bar())
        return total
    if kind == "dagger":
        return apply_involution(apply_involution(h, "bar"), "j")
    raise ValueError(f"unknown involution {kind!r}")


# -- Kazhdan-Lusztig table -----------------------------------------------------


class KLTable:
    """
    The complete table of base-change polynomials p(y, w) for one rank,
    backed by a dense integer coefficient window, together with the group
    tables used to build it.
    """

    def __init__(self, gt: GroupTable, table: np.ndarray, backend: str):
        self.gt = gt
        self.table = table
        self.backend = backend
        _, self.off = kl_offset(gt)
        self._mu = table[:, :, self.off - 1]

    @property
    def n(self) -> int:
        return self.gt.n

    @staticmethod
    def build(n: int, backend: str | None = None, descent_choice=None) -> "KLTable":
        gt = GroupTable.build(n)
        name = backend or resolve_backend(n)
        table = kl_table_array(gt, backend=name, descent_choice=descent_choice)
        return KLTable(gt, table, name)

    def _poly(self, row: np.ndarray) -> Laurent:
        off = self.off
        return Laurent._raw(
            {int(k) - off: int(c) for k, c in enumerate(row) if c}
        )

    def p(self, y: Perm, w: Perm) -> Laurent:
        """p(y, w); equals 1 at y = w and 0 unless y <= w."""
        return self._poly(self.table[self.gt.idx(w), self.gt.idx(y)])

    def mu(self, y: Perm, w: Perm) -> int:
        """The coefficient of v^-1 in p(y, w)."""
        return int(self._mu[self.gt.idx(w), self.gt.idx(y)])

    def mu_pairs(self, w: Perm) -> list[tuple[Perm, int]]:
        """All shorter y with mu(y, w) != 0, in canonical order."""
        wi = self.gt.idx(w)
        out = []
        for yi in np.nonzero(self._mu[wi])[0]:
            if self.gt.length[yi] < self.gt.length[wi]:
                out.append((self.gt.perm(int(yi)), int(self._mu[wi, yi])))
        return out

    def cprime(self, w: Perm) -> HeckeElt:
        """The T-expansion of C'_w."""
        wi = self.gt.idx(w)
        coeffs = {}
        for yi in range(self.gt.order):
            p = self._poly(self.table[wi, yi])
            if not p.is_zero:
                coeffs[self.gt.perm(yi)] = p
        return HeckeElt(self.n, "T", coeffs)

    def c(self, w: Perm) -> HeckeElt:
        """The T-expansion of C_w = sign(w) * j(C'_w)."""
        wi = self.gt.idx(w)
        sw = self.gt.perm(wi).sign
        coeffs = {}
        for yi in range(self.gt.order):
            p = self._poly(self.table[wi, yi])
            if not p.is_zero:
                y = self.gt.perm(yi)
                coeffs[y] = p.bar() * (y.sign * sw)
        return HeckeElt(self.n, "T", coeffs)

    def items(self):
        """Yield (y, w, p(y, w)) over all nonzero entries, canonical order."""
        for wi in range(self.gt.order):
            for yi in range(self.gt.order):
                p = self._poly(self.table[wi, yi])
                if not p.is_zero:
                    yield self.gt.perm(yi), self.gt.perm(wi), p

    def mu_csr(self):
        return mu_csr(self.table, self.off, self.gt.length)

    def h_slab(self, y: Perm | int, backend: str | None = None) -> np.ndarray:
        """Dense structure-constant slab for the fixed right factor y."""
        yi = y if isinstance(y, int) else self.gt.idx(y)
        return h_slab_array(self.gt, self.mu_csr(), yi, backend=backend)


_KL_MEMO: dict[int, KLTable] = {}


def get_group_table(n: int) -> GroupTable:
    return kl_table(n).gt


def kl_table(n: int, backend: str | None = None) -> KLTable:
    """The (memoized) complete table for rank n."""
    got = _KL_MEMO.get(n)
    if got is None or (backend is not None and got.backend != backend):
        got = KLTable.build(n, backend=backend)
        _KL_MEMO[n] = got
    return got


def install_table(table: KLTable) -> None:
    """Publish an externally constructed table (e.g. a cache reload) so that
    every later kl_table(n) call in this process reuses it."""
    _KL_MEMO[table.n] = table


def kl_element(w: Perm, kind: str, table: KLTable) -> HeckeElt:
    """The T-expansion of the canonical basis element attached to w."""
    if kind == "Cprime":
        return table.cprime(w)
    if kind == "C":
        return table.c(w)
    raise ValueError(f"kind must be C or Cprime, got {kind!r}")


# -- basis conversion ----------------------------------------------------------


def convert_basis(h: HeckeElt, target: str, table: KLTable) -> HeckeElt:
    """Exact change of basis among T, Cprime and C (unitriangular peel-off)."""
    if target not in _BASES:
        raise ValueError(f"unknown basis tag {target!r}")
    if h.basis == target:
        return h
    if h.basis != "T":
        expand = table.cprime if h.basis == "Cprime" else table.c
        total = HeckeElt.zero(h.n)
        for w, a in h._coeffs.items():
            total = total + expand(w).scale(a)
        return total if target == "T" else convert_basis(total, target, table)
    # T -> canonical: strip maximal terms, which carry coefficient 1 on top
    expand = table.cprime if target == "Cprime" else table.c
    rest = h
    out: dict[Perm, Laurent] = {}
    while not rest.is_zero:
        w = max(rest.support, key=lambda u: (u.length, u.images))
        a = rest.coeff(w)
        out[w] = a
        rest = rest - expand(w).scale(a)
    return HeckeElt(h.n, target, out)


def h_constants(
    x: Perm, y: Perm, table: KLTable, basis: str = "Cprime"
) -> dict[Perm, Laurent]:
    """
    Structure constants of the canonical basis: the map z -> h(x, y, z)
    with C'_x C'_y = sum_z h(x, y, z) C'_z. With basis="C" the constants
    of the sign-twisted basis are returned: sign(x)sign(y)sign(z) h(x,y,z).
    """
    prod = t_mul(table.cprime(x), table.cprime(y))
    out = convert_basis(prod, "Cprime", table).coeffs
    if basis == "C":
        sxy = x.sign * y.sign
        return {z: a * (sxy * z.sign) for z, a in out.items()}
    if basis != "Cprime":
        raise ValueError(f"basis must be Cprime or C, got {basis!r}")
    return out


def tau_trace(h: HeckeElt) -> Laurent:
    """The symmetrizing trace: the T-coefficient of the identity."""
    if h.basis != "T":
        raise ValueError("tau_trace reads the T basis (convert first)")
    return h.coeff(Perm.identity(h.n))
