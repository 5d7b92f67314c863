"""
Exact arithmetic in the ring $A = \\mathbb{Z}[v, v^{-1}]$ of integer Laurent
polynomials, together with the bivariate variant $\\mathbb{Z}[v, v^{-1},
\\breve{v}, \\breve{v}^{-1}]$ used for two-parameter identities.

Polynomials are sparse maps from integer exponents to arbitrary-precision
integer coefficients, kept in canonical form (no zero coefficient is ever
stored; the zero polynomial is the empty map). Equality is structural.
Values are immutable and hashable, hence safe to share freely.

The ring involution $\\bar{\\ }: v \\mapsto v^{-1}$, exact division, and the
subsets $A_{<0} = v^{-1}\\mathbb{Z}[v^{-1}]$ and $A_{>0} = v\\mathbb{Z}[v]$
are all provided here.

>>> (V + V**-1) * ONE == V + V**-1
True
>>> (V - V**-1) * (V - V**-1)
Laurent('v^-2 - 2 + v^2')
>>> (V**2 - V**-2).div_exact(V - V**-1)
Laurent('v^-1 + v')
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Laurent", "BiLaurent", "DivisionFailure",
    "ZERO", "ONE", "V",
]


class DivisionFailure(ArithmeticError):
    """Raised when an exact division in Z[v, v^-1] does not come out even.

    Callers treat this as a hard verification failure: every division the
    library performs is one that a theorem asserts to be exact.
    """


class Laurent:
    """
    An integer Laurent polynomial in the variable v.

    >>> Laurent({1: 1, -1: 1})
    Laurent('v^-1 + v')
    >>> Laurent({0: 5, 2: 0})        # zero coefficients are pruned
    Laurent('5')
    >>> Laurent({}).is_zero
    True
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            c = acc.get(e, 0) + c
            if c:
                acc[e] = c
            elif e in acc:
                del acc[e]
        self._terms = acc
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> Laurent:
        return ZERO

    @staticmethod
    def one() -> Laurent:
        return ONE

    @staticmethod
    def monomial(exponent: int, coefficient: int = 1) -> Laurent:
        """The monomial c * v^e."""
        return Laurent({exponent: coefficient})

    @staticmethod
    def from_int(c: int) -> Laurent:
        return Laurent({0: c})

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        """The exponent -> coefficient map (a defensive copy)."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        """Terms in ascending exponent order."""
        return iter(sorted(self._terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exponent: int) -> int:
        """The coefficient of v^exponent (0 if absent)."""
        return self._terms.get(exponent, 0)

    @property
    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    @property
    def min_exp(self) -> int:
        """Smallest stored exponent. Querying the zero polynomial is an error."""
        if not self._terms:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        """Largest stored exponent. Querying the zero polynomial is an error."""
        if not self._terms:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self._terms)

    def in_strictly_negative(self) -> bool:
        """Membership in A_{<0} = v^-1 Z[v^-1]. Zero counts as a member."""
        return not self._terms or max(self._terms) < 0

    def in_strictly_positive(self) -> bool:
        """Membership in A_{>0} = v Z[v]. Zero counts as a member."""
        return not self._terms or min(self._terms) > 0

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Laurent | int) -> Laurent:
        if isinstance(other, int):
            other = Laurent({0: other})
        elif not isinstance(other, Laurent):
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            c = acc.get(e, 0) + c
            if c:
                acc[e] = c
            else:
                del acc[e]
        return Laurent._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> Laurent:
        return Laurent._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Laurent | int) -> Laurent:
        if isinstance(other, int):
            other = Laurent({0: other})
        elif not isinstance(other, Laurent):
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            c = acc.get(e, 0) - c
            if c:
                acc[e] = c
            else:
                del acc[e]
        return Laurent._raw(acc)

    def __rsub__(self, other: int) -> Laurent:
        return (-self) + other

    def __mul__(self, other: Laurent | int) -> Laurent:
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return Laurent._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, Laurent):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                c = acc.get(e, 0) + c1 * c2
                if c:
                    acc[e] = c
                elif e in acc:
                    del acc[e]
        return Laurent._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Laurent:
        if n < 0:
            if len(self._terms) == 1:
                ((e, c),) = self._terms.items()
                if c in (1, -1):
                    return Laurent._raw({e * n: c if n % 2 else 1})
            raise DivisionFailure("negative power of a non-unit")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exponent: int) -> Laurent:
        """Multiply by v^exponent."""
        if not exponent:
            return self
        return Laurent._raw({e + exponent: c for e, c in self._terms.items()})

    def bar(self) -> Laurent:
        """The ring involution determined by v -> v^-1 (exponent negation)."""
        return Laurent._raw({-e: c for e, c in self._terms.items()})

    def div_exact(self, divisor: Laurent) -> Laurent:
        """
        Exact quotient q with q * divisor == self, over Z[v, v^-1].

        >>> P = Laurent({0: 1, 2: 2, 4: 2, 6: 1})
        >>> P.div_exact(Laurent({0: 1, 2: 1}))
        Laurent('1 + v^2 + v^4')
        >>> try:
        ...     (V + 1).div_exact(V - 1)
        ... except DivisionFailure as exc:
        ...     print(exc)
        nonzero remainder: 2
        """
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return ZERO
        # Reduce to ordinary polynomial division on coefficient lists.
        a_lo, b_lo = self.min_exp, divisor.min_exp
        num = self._dense(a_lo)
        den = divisor._dense(b_lo)
        quot = [0] * (len(num) - len(den) + 1)
        if len(num) < len(den):
            raise DivisionFailure("degree of dividend below degree of divisor")
        lead = den[-1]
        for k in range(len(quot) - 1, -1, -1):
            c = num[k + len(den) - 1]
            if c % lead:
                raise DivisionFailure(f"leading coefficient {lead} does not divide {c}")
            q = c // lead
            quot[k] = q
            if q:
                for i, d in enumerate(den):
                    num[k + i] -= q * d
        if any(num):
            raise DivisionFailure(f"nonzero remainder: {next(c for c in num if c)}")
        return Laurent._raw(
            {k + a_lo - b_lo: q for k, q in enumerate(quot) if q}
        )

    def specialize(self, value: int = 1) -> int:
        """Evaluate at v = value (value must be a unit for negative exponents)."""
        if value == 1:
            return sum(self._terms.values())
        if value == -1:
            return sum(c if e % 2 == 0 else -c for e, c in self._terms.items())
        total = 0
        for e, c in self._terms.items():
            if e < 0:
                raise ValueError("negative exponent at a non-unit specialization")
            total += c * value**e
        return total

    # -- comparison / hashing / rendering ----------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"Laurent('{self.render()}')"

    def render(self) -> str:
        """
        Canonical text form: ascending exponents, like "v^-3 + 2 + v^2".

        >>> Laurent({-3: 1, 0: 2, 2: 1}).render()
        'v^-3 + 2 + v^2'
        >>> Laurent({1: 1, -1: -1}).render()
        '-v^-1 + v'
        >>> ZERO.render()
        '0'
        """
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in sorted(self._terms.items()):
            mag, neg = abs(c), c < 0
            if e == 0:
                body = str(mag)
            else:
                power = "v" if e == 1 else f"v^{e}"
                body = power if mag == 1 else f"{mag}{power}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    @staticmethod
    def parse(text: str) -> Laurent:
        """
        Inverse of render (also accepts unnormalized whitespace and "+ -").

        >>> Laurent.parse('v^-3 + 2 + v^2') == Laurent({-3: 1, 0: 2, 2: 1})
        True
        >>> Laurent.parse(Laurent({5: -7}).render())
        Laurent('-7v^5')
        """
        text = text.strip()
        if text in ("0", ""):
            return ZERO
        terms: list[tuple[int, int]] = []
        sign = 1
        # split on +/- except the minus of a "^-k" exponent
        for piece in re.split(r"(?<!\^)([+-])", text):
            piece = piece.strip()
            if not piece:
                continue
            if piece == "+":
                continue
            if piece == "-":
                sign = -sign
                continue
            m = re.fullmatch(r"(\d+)?\s*(v(?:\^(-?\d+))?)?", piece)
            if not m or not (m.group(1) or m.group(2)):
                raise ValueError(f"cannot parse term {piece!r}")
            coeff = int(m.group(1)) if m.group(1) else 1
            if m.group(2):
                exponent = int(m.group(3)) if m.group(3) else 1
            else:
                exponent = 0
            terms.append((exponent, sign * coeff))
            sign = 1
        return Laurent(terms)

    def to_pairs(self) -> list[list]:
        """JSON form: ascending [exponent, coefficient-string] pairs."""
        return [[e, str(c)] for e, c in sorted(self._terms.items())]

    @staticmethod
    def from_pairs(pairs: Iterable[Iterable]) -> Laurent:
        return Laurent({int(e): int(c) for e, c in pairs})

    # -- internal ----------------------------------------------------------

    @staticmethod
    def _raw(terms: dict[int, int]) -> Laurent:
        # terms must already be canonical (no zeros)
        p = Laurent.__new__(Laurent)
        p._terms = terms
        p._hash = None
        return p

    def _dense(self, lo: int) -> list[int]:
        hi = max(self._terms)
        out = [0] * (hi - lo + 1)
        for e, c in self._terms.items():
            out[e - lo] = c
        return out


ZERO = Laurent._raw({})
ONE = Laurent._raw({0: 1})
V = Laurent._raw({1: 1})


class BiLaurent:
    """
    An integer Laurent polynomial in two variables v and vb (v-breve), as a
    sparse map from exponent pairs (e_v, e_vb) to integer coefficients.

    Only ring arithmetic is needed: these polynomials carry identities that
    mix a one-variable family with the same family in a second variable.

    >>> a = BiLaurent.from_laurent(V + V**-1, slot=0)
    >>> b = BiLaurent.from_laurent(V, slot=1)
    >>> (a * b).terms == {(1, 1): 1, (-1, 1): 1}
    True
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], int] = {}
        for ee, c in items:
            ee = (int(ee[0]), int(ee[1]))
            c = acc.get(ee, 0) + c
            if c:
                acc[ee] = c
            elif ee in acc:
                del acc[ee]
        self._terms = acc

    @staticmethod
    def from_laurent(p: Laurent, slot: int) -> BiLaurent:
        """Promote a one-variable polynomial into variable slot 0 (v) or 1 (vb)."""
        if slot == 0:
            return BiLaurent({(e, 0): c for e, c in p.terms.items()})
        if slot == 1:
            return BiLaurent({(0, e): c for e, c in p.terms.items()})
        raise ValueError("slot must be 0 or 1")

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: BiLaurent) -> BiLaurent:
        acc = dict(self._terms)
        for ee, c in other._terms.items():
            c = acc.get(ee, 0) + c
            if c:
                acc[ee] = c
            else:
                del acc[ee]
        out = BiLaurent.__new__(BiLaurent)
        out._terms = acc
        return out

    def __sub__(self, other: BiLaurent) -> BiLaurent:
        acc = dict(self._terms)
        for ee, c in other._terms.items():
            c = acc.get(ee, 0) - c
            if c:
                acc[ee] = c
            else:
                del acc[ee]
        out = BiLaurent.__new__(BiLaurent)
        out._terms = acc
        return out

    def __neg__(self) -> BiLaurent:
        out = BiLaurent.__new__(BiLaurent)
        out._terms = {ee: -c for ee, c in self._terms.items()}
        return out

    def __mul__(self, other: BiLaurent) -> BiLaurent:
        acc: dict[tuple[int, int], int] = {}
        for (a1, a2), c1 in self._terms.items():
            for (b1, b2), c2 in other._terms.items():
                ee = (a1 + b1, a2 + b2)
                c = acc.get(ee, 0) + c1 * c2
                if c:
                    acc[ee] = c
                elif ee in acc:
                    del acc[ee]
        out = BiLaurent.__new__(BiLaurent)
        out._terms = acc
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "BiLaurent('0')"
        bits = [
            f"{c}*v^{e1}*vb^{e2}"
            for (e1, e2), c in sorted(self._terms.items())
        ]
        return f"BiLaurent('{' + '.join(bits)}')"
