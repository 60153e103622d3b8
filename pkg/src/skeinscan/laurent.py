"""Exact Laurent polynomials in a single variable A over arbitrary-precision integers.

Polynomials are stored as sparse exponent -> coefficient maps with no zero
coefficients (canonical form).  Values are immutable after construction, so
they can be shared freely between threads and used as building blocks of
larger immutable states.
"""

from __future__ import annotations

from typing import Iterator, Mapping, NamedTuple

MIXED = "mixed"


class EmptyPolynomial(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


class NotDivisible(ArithmeticError):
    """Raised when no exact quotient exists in Z[A, A^-1]."""


class SpanGrade(NamedTuple):
    span: int
    grade: int | str  # residue 0..3, or MIXED


class LaurentPoly:
    """An element of Z[A, A^-1].  The zero polynomial is the empty term map."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = int(c)
        self._terms = t

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int = 0) -> "LaurentPoly":
        return cls({exp: coeff})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def min_exp(self) -> int:
        if not self._terms:
            raise EmptyPolynomial("zero polynomial has no exponents")
        return min(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            raise EmptyPolynomial("zero polynomial has no exponents")
        return max(self._terms)

    def span_and_grade(self) -> SpanGrade:
        """Span = max exponent - min exponent; grade = the common residue of
        all exponents mod 4, or MIXED when they disagree."""
        if not self._terms:
            raise EmptyPolynomial("span_and_grade of the zero polynomial")
        exps = self._terms.keys()
        lo, hi = min(exps), max(exps)
        residues = {e % 4 for e in exps}
        grade = residues.pop() if len(residues) == 1 else MIXED
        return SpanGrade(hi - lo, grade)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({} if other == 0 else {0: other})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        t = dict(self._terms)
        for e, c in other._terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = t
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        t = dict(self._terms)
        for e, c in other._terms.items():
            s = t.get(e, 0) - c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = t
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        t: dict[int, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = t
        return out

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by A^k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e + k: c for e, c in self._terms.items()}
        return out

    def scaled(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly.zero()
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: c * v for e, v in self._terms.items()}
        return out

    def exact_div(self, d: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient q with q * d == self, else NotDivisible.

        Works by shifting both operands to ordinary polynomials and running
        long division over Z; any inexact coefficient step or nonzero
        remainder aborts.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        shift = self.min_exp() - d.min_exp()
        rem = {e - self.min_exp(): c for e, c in self._terms.items()}
        div = {e - d.min_exp(): c for e, c in d._terms.items()}
        dtop = max(div)
        dlead = div[dtop]
        quot: dict[int, int] = {}
        while rem:
            rtop = max(rem)
            if rtop < dtop:
                raise NotDivisible(f"{self} is not divisible by {d}")
            c, r = divmod(rem[rtop], dlead)
            if r:
                raise NotDivisible(f"{self} is not divisible by {d}")
            e = rtop - dtop
            quot[e] = c
            for de, dc in div.items():
                k = de + e
                s = rem.get(k, 0) - c * dc
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e + shift: c for e, c in quot.items()}
        return out

    def mirror(self) -> "LaurentPoly":
        """Substitute A -> A^-1 (the effect of reflecting a diagram)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {-e: c for e, c in self._terms.items()}
        return out

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self._terms!r})"

    def to_json(self) -> dict[str, str]:
        """Exponent -> decimal-string coefficient map, decreasing exponents."""
        return {str(e): str(self._terms[e]) for e in sorted(self._terms, reverse=True)}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data.items()})


# Ring constants used throughout the skein machinery.
ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
A = LaurentPoly.monomial(1, 1)
A_INV = LaurentPoly.monomial(1, -1)
# Loop value of the bracket: closing a circle multiplies by -A^2 - A^-2.
DELTA = LaurentPoly({2: -1, -2: -1})
# Loop value of the positive variant: A^2 + A^-2 (no cancellation possible).
DELTA_PLUS = LaurentPoly({2: 1, -2: 1})
