"""
The Murphy basis of the Hecke algebra, the dominance-order ideal filtration,
and its exact change of basis into the canonical basis.

For a partition $\\lambda$ of $n$ the element
$x_\\lambda = \\sum_{w} v^{l(w)} T_w$ (sum over the Young subgroup) and the
pair basis $x_{st} = T_{d(s)}\\, x_\\lambda\\, T_{d(t)^{-1}}$ indexed by
same-shape standard tableaux give an alternative basis of the algebra.  Its
image under the sign-twisting involution, rescaled by $\\pm v^{l(w_\\lambda)}$,
is the family $\\tilde y_{st} = T_{d(s)}\\, C_{w_\\lambda}\\, T_{d(t)^{-1}}$,
which this module expands exactly in the canonical basis: each
$\\tilde y_{st}$ is a single $C_w$ (for a distinguished $w$ read off a grid of
cell intersections) plus $v\\mathbb{Z}[v]$-combinations of same-shape terms
plus terms of strictly dominating shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cells import CellPartition, cell_partition
from .coxeter import (
    Partition,
    Perm,
    StdTableau,
    all_partitions,
    d_of_tableau,
    dominance_leq,
    elements_by_length,
    parabolic_elements,
    rsk,
    std_tableaux,
    young_data,
)
from .errors import VerificationError
from .hecke import (
    HeckeElt,
    KLTable,
    apply_involution,
    convert_basis,
    kl_table,
    t_mul,
)
from .laurent import DivisionFailure, Laurent, ONE

__all__ = [
    "TableauPair",
    "IndexMap",
    "BaseChange",
    "IdealBasis",
    "x_lambda",
    "murphy_element",
    "shape_of",
    "index_map",
    "z_element",
    "base_change",
    "ideal_basis",
]


# -- tableau pairs -------------------------------------------------------------


@dataclass(frozen=True)
class TableauPair:
    """An ordered pair of standard tableaux of one common shape."""

    lam: Partition
    s: StdTableau
    t: StdTableau

    def __post_init__(self) -> None:
        if self.s.shape != self.lam or self.t.shape != self.lam:
            raise ValueError("tableaux must both have the stated shape")

    def words(self) -> tuple[str, str]:
        """The coset-representative words (d(s), d(t)) naming the pair."""
        return d_of_tableau(self.s).word_str(), d_of_tableau(self.t).word_str()


def shape_of(w: Perm) -> Partition:
    """
    The partition labelling the two-sided family of w: the conjugate of the
    insertion shape of w.

    >>> shape_of(Perm.identity(4)).render()
    '1,1,1,1'
    >>> shape_of(Perm.longest(4)).render()
    '4'
    >>> shape_of(Perm.from_word("s1 s2 s1", 4)).render()
    '3,1'
    """
    return rsk(w).shape.conjugate()


# -- the subgroup sum and the pair basis ----------------------------------------


def x_lambda(lam: Partition) -> HeckeElt:
    """
    The Young-subgroup sum $\\sum_{w} v^{l(w)} T_w$ over the row stabilizer
    of the canonical tableau.

    >>> x_lambda(Partition.parse("2")).render()
    'T[e] + (v)*T[s1]'
    """
    n = lam.size
    yd = young_data(lam)
    coeffs = {
        w: Laurent.monomial(w.length)
        for w in parabolic_elements(n, yd.generator_indices)
    }
    return HeckeElt(n, "T", coeffs)


def murphy_element(pair: TableauPair, variant: str, table: KLTable) -> HeckeElt:
    """
    The pair-basis element for (s, t): with d = coset representatives,
    variant "x_st" is $T_{d(s)}\\, x_\\lambda\\, T_{d(t)^{-1}}$ and variant
    "y_st" is $T_{d(s)}\\, C_{w_\\lambda}\\, T_{d(t)^{-1}}$.  The exact
    rescaling identity y_st = sign * v^{l(w_lambda)} * j(x_st), with sign the
    product of the three signs involved, is asserted on every call.
    """
    if variant not in ("x_st", "y_st"):
        raise ValueError(f"variant must be x_st or y_st, got {variant!r}")
    yd = young_data(pair.lam)
    ds = d_of_tableau(pair.s)
    dt = d_of_tableau(pair.t)
    left = HeckeElt.t(ds)
    right = HeckeElt.t(dt.inverse())
    x_elt = t_mul(t_mul(left, x_lambda(pair.lam)), right)
    y_elt = t_mul(t_mul(left, table.c(yd.w_lambda)), right)
    sign = yd.w_lambda.sign * ds.sign * dt.sign
    expected = apply_involution(x_elt, "j").scale(
        Laurent.monomial(yd.w_lambda.length, sign)
    )
    if y_elt != expected:
        raise VerificationError(
            f"pair-basis rescaling identity fails for {pair.words()}"
        )
    return x_elt if variant == "x_st" else y_elt


# -- the index grid of cell intersections ---------------------------------------


@dataclass(frozen=True)
class IndexMap:
    """
    The grid enumerating the two-sided family of shape lam: entry (i, j) is
    the unique element lying in the right cell of x_i w_lambda and the left
    cell of x_j w_lambda, where x_1, ..., x_d are the coset representatives
    of the standard tableaux in canonical order (x_1 = identity).
    """

    lam: Partition
    x_list: tuple[Perm, ...]
    grid: tuple[tuple[Perm, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.x_list)

    def position(self, w: Perm) -> tuple[int, int]:
        """The (row, column) of w in the grid (0-based); ValueError if absent."""
        for i, row in enumerate(self.grid):
            for j, u in enumerate(row):
                if u == w:
                    return i, j
        raise ValueError(f"{w.word_str()} does not have shape {self.lam.render()}")

    def members(self) -> frozenset[Perm]:
        return frozenset(w for row in self.grid for w in row)


_INDEX_MEMO: dict[tuple[int, tuple[int, ...]], IndexMap] = {}


def index_map(
    lam: Partition,
    cells: Optional[tuple[CellPartition, CellPartition]] = None,
    table: Optional[KLTable] = None,
) -> IndexMap:
    """
    Build the index grid for lam out of cell intersections.  Empty or
    non-singleton intersections contradict the one-element theorem and raise
    VerificationError.

    >>> im = index_map(Partition.parse("3,1"))
    >>> im.grid[0][1].word_str()
    's1 s2 s1 s3'
    >>> im.grid[1][1].word_str()
    's1 s2 s3 s2 s1'
    """
    n = lam.size
    key = (n, lam.parts)
    if key in _INDEX_MEMO:
        return _INDEX_MEMO[key]
    if table is None:
        table = kl_table(n)
    if cells is None:
        cells = (cell_partition(n, "L", table), cell_partition(n, "R", table))
    left, right = cells
    wl = young_data(lam).w_lambda
    x_list = tuple(d_of_tableau(t) for t in std_tableaux(lam))
    if x_list[0] != Perm.identity(n):
        raise VerificationError("first coset representative is not the identity")
    rows = [right.cell(x * wl) for x in x_list]
    cols = [left.cell(wl * x.inverse()) for x in x_list]
    grid = []
    for i, row_cell in enumerate(rows):
        row = []
        for j, col_cell in enumerate(cols):
            meet = row_cell & col_cell
            if len(meet) != 1:
                raise VerificationError(
                    f"cell intersection ({i + 1},{j + 1}) for shape "
                    f"{lam.render()} has {len(meet)} elements"
                )
            row.append(next(iter(meet)))
        grid.append(tuple(row))
    imap = IndexMap(lam, x_list, tuple(grid))
    _validate_index_map(imap, wl)
    _INDEX_MEMO[key] = imap
    return imap


def _validate_index_map(imap: IndexMap, wl: Perm) -> None:
    d = imap.dim
    if imap.grid[0][0] != wl:
        raise VerificationError("grid corner is not the Young-subgroup longest")
    seen = set()
    for i in range(d):
        if imap.grid[i][0] != imap.x_list[i] * wl:
            raise VerificationError("first grid column differs from x_i w_lambda")
        for j in range(d):
            w = imap.grid[i][j]
            if imap.grid[j][i] != w.inverse():
                raise VerificationError("grid transpose/inverse symmetry fails")
            if shape_of(w) != imap.lam:
                raise VerificationError(
                    f"grid entry {w.word_str()} has shape {shape_of(w).render()}"
                )
            seen.add(w)
    if len(seen) != d * d:
        raise VerificationError("grid entries repeat")


# -- the bar-invariant products Z_w ---------------------------------------------


def z_element(w: Perm, imap: IndexMap, table: KLTable) -> HeckeElt:
    """
    The canonical-basis expansion of
    $\\varepsilon_{w_\\lambda} v^{l(w_\\lambda)}
    C_{x_i w_\\lambda} C_{w_\\lambda x_j^{-1}} / P_\\lambda$
    where (i, j) is the grid position of w and $P_\\lambda$ the Young-subgroup
    Poincare polynomial.  Exact divisibility and bar-invariance are asserted.

    >>> lam = Partition.parse("2")
    >>> z = z_element(Perm.longest(2), index_map(lam), kl_table(2))
    >>> z.render()
    'C[s1]'
    """
    i, j = imap.position(w)
    yd = young_data(imap.lam)
    wl = yd.w_lambda
    a = table.c(imap.x_list[i] * wl)
    b = table.c(wl * imap.x_list[j].inverse())
    scale = Laurent.monomial(wl.length, wl.sign)
    prod = convert_basis(t_mul(a, b).scale(scale), "C", table)
    coeffs = {}
    for y, coef in prod.coeffs.items():
        try:
            coeffs[y] = coef.div_exact(yd.poincare)
        except DivisionFailure as exc:
            raise VerificationError(
                f"coefficient of C[{y.word_str()}] in Z[{w.word_str()}] is "
                f"not divisible by the Poincare polynomial"
            ) from exc
    out = HeckeElt(w.n, "C", coeffs)
    as_t = convert_basis(out, "T", table)
    if apply_involution(as_t, "bar") != as_t:
        raise VerificationError(f"Z[{w.word_str()}] is not bar-invariant")
    return out


# -- classification of the base change ------------------------------------------


@dataclass(frozen=True)
class BaseChange:
    """
    The canonical-basis expansion of one y_st, split into the distinguished
    leading term (coefficient exactly 1), the remaining same-shape terms
    (coefficients in v*Z[v]) and the strictly-dominating-shape terms.
    """

    pair: TableauPair
    leading: Perm
    same_shape_terms: dict[Perm, Laurent]
    higher_terms: dict[Perm, Laurent]


def base_change(
    pair: TableauPair, table: KLTable, imap: Optional[IndexMap] = None
) -> BaseChange:
    """
    Expand the pair element y_st in the canonical basis and classify every
    term; any violation of the leading-coefficient, same-shape-coefficient or
    shape-dominance constraints raises VerificationError naming the term.
    """
    if imap is None:
        imap = index_map(pair.lam, table=table)
    i = imap.x_list.index(d_of_tableau(pair.s))
    j = imap.x_list.index(d_of_tableau(pair.t))
    leading = imap.grid[i][j]
    expansion = convert_basis(
        murphy_element(pair, "y_st", table), "C", table
    ).coeffs
    if leading not in expansion:
        raise VerificationError(
            f"expected leading term C[{leading.word_str()}] is absent for "
            f"pair {pair.words()}"
        )
    same: dict[Perm, Laurent] = {}
    higher: dict[Perm, Laurent] = {}
    for y, coef in expansion.items():
        shape = shape_of(y)
        if y == leading:
            if coef != ONE:
                raise VerificationError(
                    f"leading coefficient of pair {pair.words()} is "
                    f"{coef.render()}, not 1"
                )
        elif shape == pair.lam:
            if not coef.in_strictly_positive():
                raise VerificationError(
                    f"same-shape coefficient {coef.render()} of "
                    f"C[{y.word_str()}] is not in v*Z[v]"
                )
            same[y] = coef
        elif dominance_leq(pair.lam, shape):
            higher[y] = coef
        else:
            raise VerificationError(
                f"term C[{y.word_str()}] of shape {shape.render()} does not "
                f"dominate {pair.lam.render()}"
            )
    return BaseChange(pair, leading, same, higher)


# -- the two-sided ideal attached to a shape -------------------------------------


@dataclass(frozen=True)
class IdealBasis:
    """
    Two spanning sets of the two-sided ideal attached to lam: all pair
    elements of shapes dominating lam, and all canonical basis elements whose
    shape dominates lam.  Membership testing reduces to a support check in
    the canonical basis.
    """

    lam: Partition
    murphy_basis: tuple[TableauPair, ...]
    kl_basis: tuple[Perm, ...]

    def contains(self, h: HeckeElt, table: KLTable) -> bool:
        """Exact ideal membership for an arbitrary algebra element."""
        allowed = frozenset(self.kl_basis)
        expansion = h if h.basis == "C" else convert_basis(h, "C", table)
        return all(w in allowed for w in expansion.support)


def ideal_basis(lam: Partition, table: KLTable) -> IdealBasis:
    """
    Build both spanning sets; their cardinalities agree (the square counts
    of standard tableaux over all shapes dominating lam).

    >>> ib = ideal_basis(Partition.parse("3,1"), kl_table(4))
    >>> (len(ib.murphy_basis), len(ib.kl_basis))
    (10, 10)
    """
    n = lam.size
    pairs = []
    for mu in all_partitions(n):
        if dominance_leq(lam, mu):
            tabs = std_tableaux(mu)
            pairs.extend(
                TableauPair(mu, s, t) for s in tabs for t in tabs
            )
    kl = tuple(
        w
        for w in elements_by_length(n)
        if dominance_leq(lam, shape_of(w))
    )
    if len(pairs) != len(kl):
        raise VerificationError(
            f"spanning-set sizes differ for {lam.render()}: "
            f"{len(pairs)} pairs vs {len(kl)} canonical elements"
        )
    return IdealBasis(lam, tuple(pairs), kl)
