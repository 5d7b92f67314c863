"""
Combinatorics of the symmetric group S_n: permutations in one-line notation,
length and descents, Bruhat order, partitions and dominance, Young subgroups
with their coset representatives, standard tableaux, and the
Robinson-Schensted correspondence.

Conventions. Permutations act on the left on {1..n}: the one-line notation
[w(1),...,w(n)] lists images, the product (w*u)(k) = w(u(k)) composes right
to left, and s_i is the adjacent transposition (i, i+1). A word "s1 s2 s1"
therefore multiplies generators left to right into exactly that product.

>>> w = Perm.from_word("s1 s2 s1", 4)
>>> w.images
(3, 2, 1, 4)
>>> w.length
3
>>> rsk(w).shape
Partition((2, 1, 1))
"""

from __future__ import annotations

import itertools
import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import reduce
from typing import Iterator, Sequence

from .laurent import Laurent, ONE, V

__all__ = [
    "Perm", "Partition", "StdTableau", "YoungData", "RSKResult",
    "bruhat_leq", "bruhat_lower_set", "all_partitions", "young_data",
    "coset_reps", "coset_decompose", "std_tableaux", "d_of_tableau",
    "canonical_tableau", "rsk", "rsk_inverse", "elements_by_length",
    "parabolic_elements", "dominance_leq",
]


@dataclass(frozen=True, order=True)
class Perm:
    """A permutation of {1..n} in one-line notation (images of 1..n)."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..n: {self.images}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int) -> Perm:
        return Perm(tuple(range(1, n + 1)))

    @staticmethod
    def transposition(n: int, i: int) -> Perm:
        """The adjacent transposition s_i = (i, i+1) in S_n."""
        if not 1 <= i < n:
            raise ValueError(f"s_{i} is not a generator of S_{n}")
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return Perm(tuple(images))

    @staticmethod
    def longest(n: int) -> Perm:
        """The longest element w_0 = [n, n-1, ..., 1]."""
        return Perm(tuple(range(n, 0, -1)))

    @staticmethod
    def from_word(word: str | Sequence[int], n: int) -> Perm:
        """
        Product of generators, e.g. "s1 s2 s1" or [1, 2, 1] (left to right).

        >>> Perm.from_word([2, 3], 4).images
        (1, 3, 4, 2)
        """
        if isinstance(word, str):
            word = [int(i) for i in re.findall(r"s\s*(\d+)", word)]
        return reduce(
            lambda acc, i: acc * Perm.transposition(n, i),
            word,
            Perm.identity(n),
        )

    @staticmethod
    def parse(text: str, n: int | None = None) -> Perm:
        """
        Accept one-line notation "[3,2,1,4]" or a word "s1 s2 s1" (the word
        form needs n).
        """
        text = text.strip()
        if "s" in text or text == "e":
            if n is None:
                raise ValueError("rank n required to parse a generator word")
            return Perm.from_word(text, n)
        images = tuple(int(t) for t in re.findall(r"-?\d+", text))
        return Perm(images)

    # -- basic data --------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def length(self) -> int:
        """Coxeter length = number of inversions."""
        im = self.images
        return sum(
            1
            for i, j in itertools.combinations(range(len(im)), 2)
            if im[i] > im[j]
        )

    @property
    def sign(self) -> int:
        """The sign character value (-1)^length."""
        return -1 if self.length % 2 else 1

    def __mul__(self, other: Perm) -> Perm:
        if len(self.images) != len(other.images):
            raise ValueError("rank mismatch")
        im = self.images
        return Perm(tuple(im[k - 1] for k in other.images))

    def inverse(self) -> Perm:
        out = [0] * len(self.images)
        for k, v in enumerate(self.images, start=1):
            out[v - 1] = k
        return Perm(tuple(out))

    def apply(self, k: int) -> int:
        return self.images[k - 1]

    def right_descents(self) -> set[int]:
        """{i : l(w s_i) < l(w)}, i.e. positions with w(i) > w(i+1)."""
        im = self.images
        return {i for i in range(1, len(im)) if im[i - 1] > im[i]}

    def left_descents(self) -> set[int]:
        """{i : l(s_i w) < l(w)}, i.e. i appearing after i+1 in one-line."""
        pos = {v: k for k, v in enumerate(self.images)}
        return {i for i in range(1, len(self.images)) if pos[i] > pos[i + 1]}

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word, built by stripping smallest left descents."""
        word: list[int] = []
        w = self
        while True:
            ds = w.left_descents()
            if not ds:
                return tuple(word)
            i = min(ds)
            word.append(i)
            w = Perm.transposition(len(w.images), i) * w

    def cycle_type(self) -> Partition:
        """Partition of n listing cycle lengths, descending."""
        seen = [False] * len(self.images)
        sizes = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            size, k = 0, start
            while not seen[k]:
                seen[k] = True
                size += 1
                k = self.images[k] - 1
            sizes.append(size)
        return Partition(tuple(sorted(sizes, reverse=True)))

    def is_involution(self) -> bool:
        return self * self == Perm.identity(len(self.images))

    def word_str(self) -> str:
        """Word rendering "s1 s2 s1"; the identity renders as "e"."""
        word = self.reduced_word()
        return " ".join(f"s{i}" for i in word) if word else "e"

    def one_line_str(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def __repr__(self) -> str:
        return f"Perm({self.one_line_str()})"


def elements_by_length(n: int) -> list[Perm]:
    """All of S_n in the canonical order (length, then one-line lex)."""
    elems = [Perm(p) for p in itertools.permutations(range(1, n + 1))]
    elems.sort(key=lambda w: (w.length, w.images))
    return elems


def parabolic_elements(n: int, gens: frozenset[int] | set[int]) -> list[Perm]:
    """
    The standard parabolic subgroup generated by {s_i : i in gens}, as a
    closure under right multiplication, in canonical (length, lex) order.

    >>> [w.word_str() for w in parabolic_elements(3, {2})]
    ['e', 's2']
    """
    ss = [Perm.transposition(n, i) for i in sorted(gens)]
    seen = {Perm.identity(n)}
    frontier = [Perm.identity(n)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in ss:
                u = w * s
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(seen, key=lambda w: (w.length, w.images))


# -- Bruhat order -----------------------------------------------------------


def bruhat_leq(y: Perm, w: Perm) -> bool:
    """
    Bruhat-Chevalley order via the sorted-prefix (tableau) criterion:
    y <= w iff for every k the sorted first k images of y are dominated
    entrywise by those of w.

    >>> s1, s1s2 = Perm.from_word("s1", 3), Perm.from_word("s1 s2", 3)
    >>> bruhat_leq(s1, s1s2), bruhat_leq(s1s2, s1)
    (True, False)
    """
    if y.n != w.n:
        raise ValueError("rank mismatch")
    ys: list[int] = []
    ws: list[int] = []
    for k in range(y.n - 1):
        ys.insert(bisect_left(ys, y.images[k]), y.images[k])
        ws.insert(bisect_left(ws, w.images[k]), w.images[k])
        if any(a > b for a, b in zip(ys, ws)):
            return False
    return True


def bruhat_lower_set(w: Perm) -> frozenset[Perm]:
    """
    {y : y <= w}, computed independently of bruhat_leq as the set of all
    subword products of one fixed reduced word of w.
    """
    acc = {Perm.identity(w.n)}
    for i in w.reduced_word():
        s = Perm.transposition(w.n, i)
        acc |= {u * s for u in acc}
    return frozenset(acc)


# -- partitions --------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Partition:
    """A partition: weakly decreasing positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be weakly decreasing")

    @staticmethod
    def parse(text: str) -> Partition:
        """Comma list "3,1"."""
        return Partition(tuple(int(t) for t in re.findall(r"\d+", text)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def conjugate(self) -> Partition:
        """Transpose of the Young diagram."""
        parts = self.parts
        return Partition(
            tuple(
                sum(1 for p in parts if p > j)
                for j in range(parts[0] if parts else 0)
            )
        )

    def partial_sums(self) -> tuple[int, ...]:
        out, total = [], 0
        for p in self.parts:
            total += p
            out.append(total)
        return tuple(out)

    def dominates_or_equal(self, other: Partition) -> bool:
        """True iff self >= other in dominance (other is below self)."""
        return dominance_leq(other, self)

    def render(self) -> str:
        return ",".join(map(str, self.parts))

    def __repr__(self) -> str:
        return f"Partition(({self.render()},))" if len(self.parts) == 1 else f"Partition({self.parts})"


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """
    The dominance order: lam <= mu iff every partial sum of lam is at most
    the corresponding partial sum of mu (both of the same total size).

    >>> dominance_leq(Partition((2, 2)), Partition((3, 1)))
    True
    >>> dominance_leq(Partition((3, 1)), Partition((2, 2)))
    False
    """
    if lam.size != mu.size:
        raise ValueError("dominance compares partitions of the same n")
    a, b = lam.partial_sums(), mu.partial_sums()
    k = max(len(a), len(b))
    a = a + (a[-1],) * (k - len(a))
    b = b + (b[-1],) * (k - len(b))
    return all(x <= y for x, y in zip(a, b))


def all_partitions(n: int) -> list[Partition]:
    """All partitions of n, in descending lexicographic order ((n) first)."""

    def gen(total: int, cap: int) -> Iterator[tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for first in range(min(total, cap), 0, -1):
            for rest in gen(total - first, first):
                yield (first,) + rest

    return [Partition(p) for p in gen(n, n)]


# -- Young subgroups ---------------------------------------------------------


@dataclass(frozen=True)
class YoungData:
    """The Young subgroup data attached to a partition of n."""

    lam: Partition
    generator_indices: frozenset[int]  # indices i with s_i inside the subgroup
    w_lambda: Perm                     # longest element of the subgroup
    poincare: Laurent                  # sum of v^(2 l(w)) over the subgroup


def _row_blocks(lam: Partition) -> list[range]:
    """Consecutive integer blocks [1..l1], [l1+1..l1+l2], ... of the rows."""
    blocks, start = [], 1
    for p in lam.parts:
        blocks.append(range(start, start + p))
        start += p
    return blocks


def young_data(lam: Partition) -> YoungData:
    """
    Generator indices (the complement of the partial sums inside {1..n-1}),
    longest element, and Poincare polynomial of the row-stabilizer subgroup.

    >>> yd = young_data(Partition((3, 1)))
    >>> sorted(yd.generator_indices), yd.w_lambda.images
    ([1, 2], (3, 2, 1, 4))
    >>> yd.poincare
    Laurent('1 + 2v^2 + 2v^4 + v^6')
    """
    n = lam.size
    cuts = set(lam.partial_sums())
    gens = frozenset(i for i in range(1, n) if i not in cuts)
    images: list[int] = []
    for block in _row_blocks(lam):
        images.extend(reversed(block))
    q = V * V
    poincare = ONE
    for p in lam.parts:
        for k in range(1, p + 1):
            poincare = poincare * sum((q**j for j in range(k)), Laurent.zero())
    return YoungData(lam, gens, Perm(tuple(images)), poincare)


def coset_reps(lam: Partition) -> list[Perm]:
    """
    The minimal-length left coset representatives: permutations increasing
    on each row block of positions, sorted by (length, one-line lex).

    >>> [x.word_str() for x in coset_reps(Partition((3, 1)))]
    ['e', 's3', 's2 s3', 's1 s2 s3']
    """
    n = lam.size
    blocks = [len(b) for b in _row_blocks(lam)]
    reps: list[Perm] = []

    def place(remaining: tuple[int, ...], acc: tuple[int, ...], idx: int):
        if idx == len(blocks):
            reps.append(Perm(acc))
            return
        for chosen in itertools.combinations(remaining, blocks[idx]):
            rest = tuple(v for v in remaining if v not in chosen)
            place(rest, acc + chosen, idx + 1)

    place(tuple(range(1, n + 1)), (), 0)
    reps.sort(key=lambda w: (w.length, w.images))
    return reps


def coset_decompose(w: Perm, lam: Partition) -> tuple[Perm, Perm]:
    """
    Write w = x * u with u in the Young subgroup, x a minimal-length coset
    representative, and lengths adding: l(w) = l(x) + l(u).

    >>> w = Perm.from_word("s2 s3 s1 s2 s1", 4)
    >>> x, u = coset_decompose(w, Partition((3, 1)))
    >>> x.word_str(), u.word_str()
    ('s2 s3', 's1 s2 s1')
    """
    gens = young_data(lam).generator_indices
    u = Perm.identity(w.n)
    x = w
    while True:
        ds = x.right_descents() & gens
        if not ds:
            return x, u
        i = min(ds)
        s = Perm.transposition(w.n, i)
        x = x * s
        u = s * u


# -- standard tableaux -------------------------------------------------------


@dataclass(frozen=True, order=True)
class StdTableau:
    """A standard Young tableau, stored as its rows."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = [x for row in self.rows for x in row]
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise ValueError("filling must be a bijection onto 1..n")
        for row in self.rows:
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ValueError("rows must increase")
        for i in range(len(self.rows) - 1):
            upper, lower = self.rows[i], self.rows[i + 1]
            if len(lower) > len(upper):
                raise ValueError("row lengths must weakly decrease")
            if any(upper[j] >= lower[j] for j in range(len(lower))):
                raise ValueError("columns must increase")

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def transpose(self) -> StdTableau:
        rows = self.rows
        return StdTableau(
            tuple(
                tuple(rows[i][j] for i in range(len(rows)) if len(rows[i]) > j)
                for j in range(len(rows[0]) if rows else 0)
            )
        )

    def render(self) -> str:
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + "]"

    @staticmethod
    def parse(text: str) -> StdTableau:
        """Row-list form "[[1,2,3],[4]]"."""
        rows = []
        for m in re.finditer(r"\[([\d,\s]+)\]", text):
            rows.append(tuple(int(t) for t in re.findall(r"\d+", m.group(1))))
        return StdTableau(tuple(rows))

    def __repr__(self) -> str:
        return f"StdTableau({self.render()})"


def canonical_tableau(lam: Partition) -> StdTableau:
    """The row-filled tableau: 1..l1 in row one, then continuing row by row."""
    return StdTableau(tuple(tuple(b) for b in _row_blocks(lam)))


def d_of_tableau(t: StdTableau) -> Perm:
    """
    The unique minimal-length coset representative carrying the canonical
    tableau of the same shape onto t (entrywise).

    >>> d_of_tableau(StdTableau(((1, 3, 4), (2,)))).word_str()
    's2 s3'
    """
    base = canonical_tableau(t.shape)
    images = [0] * t.size
    for row_t, row_b in zip(t.rows, base.rows):
        for v_t, v_b in zip(row_t, row_b):
            images[v_b - 1] = v_t
    return Perm(tuple(images))


def std_tableaux(lam: Partition) -> list[StdTableau]:
    """
    All standard tableaux of shape lam in the canonical order: sorted by the
    length of d(t), ties broken by the one-line notation of d(t). The
    canonical (row-filled) tableau always comes first.

    >>> [t.render() for t in std_tableaux(Partition((3, 1)))]
    ['[[1,2,3],[4]]', '[[1,2,4],[3]]', '[[1,3,4],[2]]']
    """
    n = lam.size
    parts = lam.parts
    fillings: list[StdTableau] = []
    rows: list[list[int]] = [[] for _ in parts]

    def grow(entry: int):
        if entry > n:
            fillings.append(StdTableau(tuple(tuple(r) for r in rows)))
            return
        for i, row in enumerate(rows):
            if len(row) >= parts[i]:
                continue
            if i > 0 and len(rows[i - 1]) <= len(row):
                continue
            row.append(entry)
            grow(entry + 1)
            row.pop()

    grow(1)
    fillings.sort(key=lambda t: ((d := d_of_tableau(t)).length, d.images))
    return fillings


# -- Robinson-Schensted ------------------------------------------------------


@dataclass(frozen=True)
class RSKResult:
    shape: Partition
    p: StdTableau  # insertion tableau
    q: StdTableau  # recording tableau


def rsk(w: Perm) -> RSKResult:
    """
    Row insertion of the one-line word (w(1),...,w(n)); P is the insertion
    tableau, Q records the growth.

    >>> r = rsk(Perm((2, 1, 3)))
    >>> r.p.render(), r.q.render()
    ('[[1,3],[2]]', '[[1,3],[2]]')
    """
    rows_p: list[list[int]] = []
    rows_q: list[list[int]] = []
    for step, x in enumerate(w.images, start=1):
        i = 0
        while True:
            if i == len(rows_p):
                rows_p.append([x])
                rows_q.append([step])
                break
            row = rows_p[i]
            j = bisect_right(row, x)
            if j == len(row):
                row.append(x)
                rows_q[i].append(step)
                break
            row[j], x = x, row[j]
            i += 1
    p = StdTableau(tuple(tuple(r) for r in rows_p))
    q = StdTableau(tuple(tuple(r) for r in rows_q))
    return RSKResult(p.shape, p, q)


def rsk_inverse(p: StdTableau, q: StdTableau) -> Perm:
    """
    Invert row insertion: rsk_inverse(rsk(w).p, rsk(w).q) == w.

    >>> rsk_inverse(StdTableau(((1, 3), (2,))), StdTableau(((1, 3), (2,))))
    Perm([2,1,3])
    """
    if p.shape != q.shape:
        raise ValueError("tableaux must have equal shape")
    rows = [list(r) for r in p.rows]
    place: dict[int, int] = {}
    for i, row in enumerate(q.rows):
        for x in row:
            place[x] = i
    images = [0] * p.size
    for step in range(p.size, 0, -1):
        i = place[step]
        x = rows[i].pop()
        if not rows[i]:
            del rows[i]
        for upper in range(i - 1, -1, -1):
            row = rows[upper]
            j = bisect_left(row, x) - 1
            row[j], x = x, row[j]
        images[step - 1] = x
    return Perm(tuple(images))
