"""
Cells of the canonical basis: the left/right/two-sided preorders, their
equivalence classes, star operations, cell modules with their generator
matrices, and character identification against the partition labelling.

The left preorder is generated by one-step arrows: an arrow y -> x exists
when the basis element of x occurs in C'_s C'_y for some generator s. Cells
are the strongly connected components of the arrow graph; the right and
two-sided variants are obtained through inversion and union of the edge
sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .coxeter import (
    Partition,
    Perm,
    all_partitions,
    std_tableaux,
    young_data,
)
from .errors import VerificationError
from .hecke import KLTable, kl_table
from .laurent import Laurent, ONE, V

__all__ = [
    "CellPartition",
    "CellModule",
    "preorder_leq",
    "cell_partition",
    "star_operation",
    "cell_module",
    "irreducible_character",
    "decompose_cell_character",
    "mn_character",
    "conjugacy_classes",
]

_SIDES = ("L", "R", "LR")


@dataclass(frozen=True)
class CellPartition:
    """The cells of one side, ordered by their length-lex-minimal element."""

    side: str
    cells: tuple[frozenset[Perm], ...]
    _index: dict[Perm, int]
    _reach: tuple[frozenset[int], ...]  # reach[j] = cell ids weakly below j

    def cell_of(self, w: Perm) -> int:
        return self._index[w]

    def cell(self, w: Perm) -> frozenset[Perm]:
        return self.cells[self._index[w]]

    def leq_cells(self, i: int, j: int) -> bool:
        """Whether every element of cell i is below every element of cell j."""
        return i in self._reach[j]

    def equivalent(self, x: Perm, y: Perm) -> bool:
        return self._index[x] == self._index[y]

    def sorted_members(self, i: int) -> list[Perm]:
        return sorted(self.cells[i], key=lambda w: (w.length, w.images))

    def __len__(self) -> int:
        return len(self.cells)


def _left_adjacency(table: KLTable) -> list[set[int]]:
    """Arrow sets: adj[y] = {x != y : some C'_s C'_y involves C'_x}."""
    gt = table.gt
    indptr, t_idx, _ = table.mu_csr()
    adj: list[set[int]] = [set() for _ in range(gt.order)]
    for y in range(gt.order):
        spill = [int(t_idx[k]) for k in range(indptr[y], indptr[y + 1])]
        for s in range(gt.n - 1):
            sy = int(gt.lmul[s, y])
            if gt.length[sy] > gt.length[y]:
                adj[y].add(sy)
                for t in spill:
                    if gt.length[gt.lmul[s, t]] < gt.length[t]:
                        adj[y].add(t)
    return adj


def _sccs(adj: Sequence[set[int]]) -> list[list[int]]:
    """Strongly connected components (iterative Tarjan), deterministic."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    comps: list[list[int]] = []
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, iter(sorted(adj[root])))]
        while work:
            v, edges = work[-1]
            advanced = False
            for u in edges:
                if index[u] == -1:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack[u] = True
                    work.append((u, iter(sorted(adj[u]))))
                    advanced = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp.append(u)
                    if u == v:
                        break
                comps.append(comp)
    return comps


_PARTITION_MEMO: dict[tuple[int, str], CellPartition] = {}


def cell_partition(n: int, side: str, table: Optional[KLTable] = None) -> CellPartition:
    """
    The cells of S_n on the given side ("L", "R" or "LR"), with the induced
    partial order between cells.
    """
    if side not in _SIDES:
        raise ValueError(f"side must be one of {_SIDES}, got {side!r}")
    got = _PARTITION_MEMO.get((n, side))
    if got is not None:
        return got
    table = table if table is not None else kl_table(n)
    gt = table.gt
    left = _left_adjacency(table)
    if side == "L":
        adj = left
    else:
        right: list[set[int]] = [set() for _ in range(gt.order)]
        for y in range(gt.order):
            yi = int(gt.inv[y])
            right[yi] = {int(gt.inv[x]) for x in left[y]}
        if side == "R":
            adj = right
        else:
            adj = [left[y] | right[y] for y in range(gt.order)]

    comps = _sccs(adj)
    key = lambda vi: (int(gt.length[vi]), tuple(gt.perms[vi]))
    comps.sort(key=lambda comp: min(key(v) for v in comp))
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    # condensation reachability: reach[j] = components weakly below j
    comp_adj: list[set[int]] = [set() for _ in comps]
    for y in range(gt.order):
        for x in adj[y]:
            if comp_of[x] != comp_of[y]:
                comp_adj[comp_of[y]].add(comp_of[x])
    reach: list[frozenset[int]] = [frozenset()] * len(comps)
    done = [False] * len(comps)

    def descend(ci: int) -> frozenset[int]:
        if done[ci]:
            return reach[ci]
        acc = {ci}
        done[ci] = True  # safe: condensation is acyclic
        for cj in comp_adj[ci]:
            acc |= descend(cj)
        reach[ci] = frozenset(acc)
        return reach[ci]

    for ci in range(len(comps)):
        descend(ci)
    cells = tuple(frozenset(gt.perm(v) for v in comp) for comp in comps)
    index = {w: ci for ci, members in enumerate(cells) for w in members}
    part = CellPartition(side, cells, index, tuple(reach))
    _PARTITION_MEMO[(n, side)] = part
    return part


def preorder_leq(x: Perm, y: Perm, side: str, table: Optional[KLTable] = None) -> bool:
    """x <= y in the chosen preorder (reachability from y down to x)."""
    if x.n != y.n:
        raise ValueError("rank mismatch")
    part = cell_partition(x.n, side, table)
    return part.leq_cells(part.cell_of(x), part.cell_of(y))


# -- star operations -----------------------------------------------------------


def star_operation(w: Perm, s: int, t: int) -> Optional[Perm]:
    """
    The right star operation for an adjacent generator pair: defined on the
    elements with exactly one descent among {s, t}, where it exchanges ws
    and wt according to which stays in the domain. Returns None off-domain.

    >>> star_operation(Perm.from_word("s1", 3), 1, 2).word_str()
    's1 s2'
    """
    if abs(s - t) != 1:
        raise ValueError("star operations need adjacent generators (sts = tst)")

    def in_domain(u: Perm) -> bool:
        ds = u.right_descents()
        return (s in ds) != (t in ds)

    if not in_domain(w):
        return None
    ws = w * Perm.transposition(w.n, s)
    wt = w * Perm.transposition(w.n, t)
    picks = [u for u in (ws, wt) if in_domain(u)]
    if len(picks) != 1:
        raise VerificationError(f"star domain dichotomy failed at {w}")
    return picks[0]


# -- cell modules ---------------------------------------------------------------


@dataclass(frozen=True)
class CellModule:
    """
    A based module on a union of left cells: basis indexed by the cell
    elements in canonical order, with one matrix per generator giving the
    action of the sign-twisted canonical generator C_s.
    """

    n: int
    elements: tuple[Perm, ...]
    gen_matrices: tuple[tuple[tuple[Laurent, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.elements)

    def t_action(self, i: int) -> list[list[Laurent]]:
        """Matrix of T_{s_i} = C_{s_i} + v."""
        mat = [list(row) for row in self.gen_matrices[i - 1]]
        for k in range(len(mat)):
            mat[k][k] = mat[k][k] + V
        return mat

    def character(self, w: Perm) -> Laurent:
        """Trace of T_w acting on the module."""
        out = _mat_identity(self.dim)
        for i in w.reduced_word():
            out = _mat_mul(out, self.t_action(i))
        return sum((out[k][k] for k in range(self.dim)), Laurent.zero())


def _mat_identity(d: int) -> list[list[Laurent]]:
    return [[ONE if i == j else Laurent.zero() for j in range(d)] for i in range(d)]


def _mat_mul(a, b) -> list[list[Laurent]]:
    d = len(a)
    out = [[Laurent.zero()] * d for _ in range(d)]
    for i in range(d):
        for k in range(d):
            aik = a[i][k]
            if aik.is_zero:
                continue
            row_b = b[k]
            row_o = out[i]
            for j in range(d):
                if not row_b[j].is_zero:
                    row_o[j] = row_o[j] + aik * row_b[j]
    return out


def _check_module_relations(n: int, mats: list[list[list[Laurent]]]):
    """
    The defining relations of the algebra, asserted on the standard-basis
    action matrices R_i = v*Id + M_i: the quadratic relation
    R_i^2 = Id + (v - v^-1) R_i, the braid relations, and commutation of
    non-adjacent generators.
    """
    d = len(mats[0]) if mats else 0
    vminus = V - V.bar()
    ident = _mat_identity(d)
    rs = []
    for m in mats:
        r = [list(row) for row in m]
        for k in range(d):
            r[k][k] = r[k][k] + V
        rs.append(r)
    for i, r in enumerate(rs, start=1):
        sq = _mat_mul(r, r)
        want = [
            [ident[a][b] + vminus * r[a][b] for b in range(d)] for a in range(d)
        ]
        if sq != want:
            raise VerificationError(f"quadratic relation fails for s{i}")
    for i in range(1, n - 1):
        a, b = rs[i - 1], rs[i]
        if _mat_mul(_mat_mul(a, b), a) != _mat_mul(_mat_mul(b, a), b):
            raise VerificationError(f"braid relation fails for (s{i}, s{i+1})")
    for i in range(1, n - 1):
        for j in range(i + 2, n):
            a, b = rs[i - 1], rs[j - 1]
            if _mat_mul(a, b) != _mat_mul(b, a):
                raise VerificationError(f"commutation fails for (s{i}, s{j})")


def cell_module(members: Iterable[Perm], table: Optional[KLTable] = None) -> CellModule:
    """
    The based module carried by a union of left cells. Entry (y, x) of the
    generator matrix is -h(s, x, y), read off the leading-coefficient table:
    (v + v^-1) when sx < x and y = x; 1 when y = sx > x; mu(y, x) when
    sy < y < x. Raises with a witness if the input is not a cell union.
    """
    members = sorted(set(members), key=lambda w: (w.length, w.images))
    if not members:
        raise ValueError("empty cell")
    n = members[0].n
    table = table if table is not None else kl_table(n)
    part = cell_partition(n, "L", table)
    chosen = {part.cell_of(w) for w in members}
    union = set().union(*(part.cells[c] for c in chosen))
    if union != set(members):
        missing = sorted(union - set(members), key=lambda w: (w.length, w.images))
        raise ValueError(
            f"not a union of left cells: missing {missing[0].word_str()!r}"
        )
    pos = {w: k for k, w in enumerate(members)}
    vpv = V + V.bar()
    mats = []
    for i in range(1, n):
        s = Perm.transposition(n, i)
        mat = [[Laurent.zero()] * len(members) for _ in members]
        for x in members:
            sx = s * x
            if sx.length < x.length:
                mat[pos[x]][pos[x]] = -vpv
            else:
                if sx in pos:
                    mat[pos[sx]][pos[x]] = -ONE
                for y, m in table.mu_pairs(x):
                    if y in pos and (s * y).length < y.length:
                        mat[pos[y]][pos[x]] = Laurent.from_int(-m)
        mats.append(mat)
    _check_module_relations(n, mats)
    return CellModule(
        n, tuple(members), tuple(tuple(tuple(r) for r in m) for m in mats)
    )


# -- characters ------------------------------------------------------------------


_IRR_MODULE_MEMO: dict[tuple[int, tuple[int, ...]], CellModule] = {}


def _module_of_shape(lam: Partition, table: KLTable) -> CellModule:
    got = _IRR_MODULE_MEMO.get((table.n, lam.parts))
    if got is None:
        wl = young_data(lam).w_lambda
        part = cell_partition(table.n, "L", table)
        got = cell_module(part.cell(wl), table)
        _IRR_MODULE_MEMO[(table.n, lam.parts)] = got
    return got


def irreducible_character(lam: Partition, w: Perm, table: Optional[KLTable] = None) -> Laurent:
    """
    The character value at T_w of the irreducible module labelled by lam,
    realized on the left cell containing the longest Young-subgroup element.
    """
    table = table if table is not None else kl_table(lam.size)
    if lam.size != w.n:
        raise ValueError("partition size must equal the rank")
    return _module_of_shape(lam, table).character(w)


def mn_character(lam: Partition, cycle_type: Partition) -> int:
    """
    Ordinary irreducible character of S_n by the Murnaghan-Nakayama rule,
    in the bead/abacus form: removing a border strip of size k moves a bead
    down k positions, with sign the number of beads jumped over.
    """
    if lam.size != cycle_type.size:
        raise ValueError("sizes differ")
    rows = len(lam.parts)
    beta = tuple(lam.parts[i] + (rows - 1 - i) for i in range(rows))

    @lru_cache(maxsize=None)
    def rec(beads: tuple[int, ...], parts: tuple[int, ...]) -> int:
        if not parts:
            return 1  # beads now encode the empty partition
        k, rest = parts[0], parts[1:]
        total = 0
        bead_set = set(beads)
        for b in beads:
            lo = b - k
            if lo < 0 or lo in bead_set:
                continue
            crossed = sum(1 for c in beads if lo < c < b)
            nxt = tuple(sorted((bead_set - {b}) | {lo}, reverse=True))
            total += (-1) ** crossed * rec(nxt, rest)
        return total

    return rec(tuple(sorted(beta, reverse=True)), cycle_type.parts)


def conjugacy_classes(n: int) -> list[tuple[Partition, int, Perm]]:
    """(cycle type, class size, representative) for every class of S_n."""
    out = []
    for ctype in all_partitions(n):
        mults: dict[int, int] = {}
        for p in ctype.parts:
            mults[p] = mults.get(p, 0) + 1
        z = 1
        for k, m in mults.items():
            z *= k**m * math.factorial(m)
        images = []
        start = 1
        for p in ctype.parts:
            block = list(range(start + 1, start + p)) + [start]
            images.extend(block)
            start += p
        out.append((ctype, math.factorial(n) // z, Perm(tuple(images))))
    return out


def decompose_cell_character(
    members: Iterable[Perm], table: Optional[KLTable] = None
) -> dict[Partition, int]:
    """
    Multiplicities of the irreducible characters in the character of a
    union of left cells, computed at v = 1 by orthogonality. The v = 1
    irreducible values are cross-checked against the Murnaghan-Nakayama
    rule; disagreement, non-integrality or negativity is a hard failure.
    """
    mod = cell_module(members, table)
    n = mod.n
    table = table if table is not None else kl_table(n)
    classes = conjugacy_classes(n)
    chi_c = [mod.character(rep).specialize(1) for _, _, rep in classes]
    out: dict[Partition, int] = {}
    total_dim = 0
    for lam in all_partitions(n):
        values = []
        for ctype, _, rep in classes:
            via_cells = irreducible_character(lam, rep, table).specialize(1)
            # the cell labelling puts the trivial character at (1^n), so the
            # classically-labelled hook-walk character sits at the conjugate
            via_hooks = mn_character(lam.conjugate(), ctype)
            if via_cells != via_hooks:
                raise VerificationError(
                    f"character value mismatch at lambda={lam.render()} "
                    f"type={ctype.render()}: {via_cells} vs {via_hooks}"
                )
            values.append(via_cells)
        dot = sum(
            size * a * b for (_, size, _), a, b in zip(classes, chi_c, values)
        )
        mult, rem = divmod(dot, math.factorial(n))
        if rem or mult < 0:
            raise VerificationError(
                f"multiplicity of {lam.render()} is {dot}/{math.factorial(n)}"
            )
        if mult:
            out[lam] = mult
            total_dim += mult * len(std_tableaux(lam))
    if total_dim != mod.dim:
        raise VerificationError("multiplicities do not add up to the dimension")
    return out
