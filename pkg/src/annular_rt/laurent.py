"""Exact arithmetic in the Laurent ring Z[q, q^-1].

Elements are immutable and stored as ``{exponent: coefficient}`` maps with
no zero coefficients, so equality is plain dict comparison.  Coefficients
are Python ints and never overflow.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "LaurentPoly",
    "LaurentParseError",
    "lp_monomial",
    "lp_add",
    "lp_mul",
    "ZERO",
    "ONE",
    "Q",
]


class LaurentParseError(ValueError):
    pass


Scalar = Union["LaurentPoly", int]


class LaurentPoly:
    """An element of Z[q, q^-1] in canonical form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # caller guarantees canonical form
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def coerce(cls, x: Scalar) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls._raw({0: x} if x else {})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        """(exponent, coefficient) pairs, exponent ascending."""
        return iter(sorted(self._terms.items()))

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(self._terms)

    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    # -- ring operations ------------------------------------------------
    def __add__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1:
            ((eb, cb),) = b.items()
            return LaurentPoly._raw({e + eb: c * cb for e, c in a.items()})
        if len(a) == 1:
            ((ea, ca),) = a.items()
            return LaurentPoly._raw({e + ea: c * ca for e, c in b.items()})
        out: dict[int, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                k = ea + eb
                out[k] = out.get(k, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._terms) == 1:
                ((e, c),) = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly._raw({e * k: c ** (-k)})
            raise ValueError("only signed monomials are invertible in Z[q, q^-1]")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, d: int) -> "LaurentPoly":
        """Multiply by q**d."""
        return LaurentPoly._raw({e + d: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    # -- comparisons ----------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- text / json ----------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    _TERM = re.compile(
        r"\s*([+-])?\s*(?:(\d+)\s*(\*\s*)?)?(q(?:\s*\^\s*(-?\d+))?)?\s*"
    )

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``; also accepts ``q^1``, ``q^0`` and ``3 q``."""
        s = text.strip()
        if not s:
            raise LaurentParseError("empty polynomial")
        pos, out, first = 0, ZERO, True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            sign, num, star, mono, exp = m.groups()
            if m.end() == pos or (num is None and mono is None) or (star and mono is None):
                raise LaurentParseError(f"bad term at position {pos}: {s[pos:]!r}")
            if sign is None and not first:
                raise LaurentParseError(f"missing operator at position {pos}")
            coeff = int(num) if num is not None else 1
            if sign == "-":
                coeff = -coeff
            e = 0 if mono is None else (1 if exp is None else int(exp))
            out = out + cls.monomial(coeff, e)
            pos, first = m.end(), False
        return out

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "LaurentPoly":
        out = ZERO
        for e, c in data:
            out = out + cls.monomial(int(c), int(e))
        return out


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
Q = LaurentPoly._raw({1: 1})


def lp_monomial(coeff: int, exp: int) -> LaurentPoly:
    return LaurentPoly.monomial(coeff, exp)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b
