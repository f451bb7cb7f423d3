"""The free module V^{(x)k} over Z[q, q^-1] and sparse operators between such modules.

Basis vectors v_I are keyed by bitmask: bit ``s - 1`` is set iff slot ``s``
holds v_1.  Arity 0 is the scalar module, spanned by the empty mask.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

from .laurent import ONE, ZERO, LaurentPoly, Scalar

__all__ = [
    "ArityError",
    "TensorVector",
    "LinearOperator",
    "mask_to_index",
    "index_to_mask",
    "tv_basis",
    "tv_tensor",
    "from_line_bundle",
    "to_line_bundle_coeffs",
    "op_apply",
    "op_compose",
    "op_slot_extend",
]


class ArityError(ValueError):
    """Raised when tensor arities do not chain."""


def mask_to_index(mask: int, k: int) -> tuple[int, ...]:
    return tuple((mask >> s) & 1 for s in range(k))


def index_to_mask(index: Sequence[int]) -> int:
    mask = 0
    for s, bit in enumerate(index):
        if bit not in (0, 1):
            raise ValueError(f"index entries must be 0 or 1, got {bit}")
        if bit:
            mask |= 1 << s
    return mask


def _accumulate(acc: dict, mask: int, c: LaurentPoly) -> None:
    prev = acc.get(mask)
    if prev is None:
        acc[mask] = c
    else:
        s = prev + c
        if s:
            acc[mask] = s
        else:
            del acc[mask]


class TensorVector:
    """Sparse element of V^{(x)k}."""

    __slots__ = ("arity", "_terms")

    def __init__(self, arity: int, terms: Mapping[int, Scalar] | None = None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.arity = arity
        clean = {}
        if terms:
            bound = 1 << arity
            for mask, c in terms.items():
                if not 0 <= mask < bound:
                    raise ValueError(f"basis mask {mask} out of range for arity {arity}")
                c = LaurentPoly.coerce(c)
                if c:
                    clean[mask] = c
        self._terms = clean

    @classmethod
    def _raw(cls, arity: int, terms: dict) -> "TensorVector":
        v = object.__new__(cls)
        v.arity = arity
        v._terms = terms
        return v

    @classmethod
    def zero(cls, arity: int) -> "TensorVector":
        return cls._raw(arity, {})

    @classmethod
    def scalar(cls, c: Scalar = 1) -> "TensorVector":
        return cls(0, {0: c})

    @classmethod
    def basis(cls, arity: int, subset: Iterable[int] = ()) -> "TensorVector":
        mask = 0
        for s in subset:
            if not 1 <= s <= arity:
                raise ValueError(f"slot {s} outside 1..{arity}")
            mask |= 1 << (s - 1)
        return cls._raw(arity, {mask: ONE})

    @classmethod
    def from_index(cls, index: Sequence[int], coeff: Scalar = 1) -> "TensorVector":
        return cls(len(index), {index_to_mask(index): coeff})

    # -- access ---------------------------------------------------------
    @property
    def terms(self) -> dict[int, LaurentPoly]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, LaurentPoly]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, key: int | Sequence[int]) -> LaurentPoly:
        mask = key if isinstance(key, int) else index_to_mask(key)
        return self._terms.get(mask, ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- module operations ----------------------------------------------
    def _check(self, other: "TensorVector") -> None:
        if not isinstance(other, TensorVector):
            raise TypeError("expected TensorVector")
        if other.arity != self.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "TensorVector") -> "TensorVector":
        self._check(other)
        out = dict(self._terms)
        for mask, c in other._terms.items():
            _accumulate(out, mask, c)
        return TensorVector._raw(self.arity, out)

    def __neg__(self) -> "TensorVector":
        return TensorVector._raw(self.arity, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-other)

    def scale(self, c: Scalar) -> "TensorVector":
        c = LaurentPoly.coerce(c)
        if not c:
            return TensorVector.zero(self.arity)
        return TensorVector._raw(self.arity, {m: x * c for m, x in self._terms.items()})

    def __mul__(self, c: Scalar) -> "TensorVector":
        if isinstance(c, (int, LaurentPoly)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def tensor(self, other: "TensorVector") -> "TensorVector":
        shift = self.arity
        out = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                p = ca * cb
                if p:
                    out[ma | (mb << shift)] = p
        return TensorVector._raw(self.arity + other.arity, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self._terms.items())))

    # -- text / json ----------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        if self.arity == 0:
            return str(self._terms[0])
        parts = []
        for mask, c in sorted(self._terms.items()):
            label = "v_" + "".join(str(b) for b in mask_to_index(mask, self.arity))
            if c.is_monomial():
                ((e, k),) = c.terms.items()
                mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
                mag = abs(k)
                if mono and mag != 1:
                    body = f"{mag}*{mono} {label}"
                elif mono:
                    body = f"{mono} {label}"
                else:
                    body = label if mag == 1 else f"{mag} {label}"
                neg = k < 0
            else:
                body, neg = f"({c}) {label}", False
            if not parts:
                parts.append("-" + body if neg else body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"TensorVector({self.arity}, {self})"

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [
                {"index": list(mask_to_index(m, self.arity)), "coeff": c.to_json()}
                for m, c in sorted(self._terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TensorVector":
        k = int(data["arity"])
        out = TensorVector.zero(k)
        for term in data["terms"]:
            index = term["index"]
            if len(index) != k:
                raise ArityError(f"index {index} has length != {k}")
            out = out + TensorVector(k, {index_to_mask(index): LaurentPoly.from_json(term["coeff"])})
        return out


def tv_basis(k: int, subset: Iterable[int] = ()) -> TensorVector:
    return TensorVector.basis(k, subset)


def tv_tensor(a: TensorVector, b: TensorVector) -> TensorVector:
    return a.tensor(b)


def _lb_exponent(powers: Sequence[int]) -> int:
    return -sum(s * p for s, p in enumerate(powers, start=1))


def from_line_bundle(powers: Sequence[int]) -> TensorVector:
    """The class [Lambda_{i_1..i_k}] = q^{-sum s*i_s} v_{i_1} (x) ... (x) v_{i_k}.

    Only 0/1 powers name basis elements; see ``ktheory.line_bundle_class``
    for arbitrary integer powers.
    """
    for p in powers:
        if p not in (0, 1):
            raise ValueError(f"line bundle power {p} outside {{0, 1}}")
    return TensorVector(len(powers), {index_to_mask(powers): LaurentPoly.monomial(1, _lb_exponent(powers))})


def to_line_bundle_coeffs(v: TensorVector) -> dict[tuple[int, ...], LaurentPoly]:
    out = {}
    for mask, c in v.items():
        idx = mask_to_index(mask, v.arity)
        out[idx] = c.shift(-_lb_exponent(idx))
    return out


class LinearOperator:
    """Sparse map V^{(x)r} -> V^{(x)s}, stored column by column.

    Missing columns are zero.
    """

    __slots__ = ("domain_arity", "codomain_arity", "_columns")

    def __init__(self, domain_arity: int, codomain_arity: int,
                 columns: Mapping[int, TensorVector] | None = None):
        self.domain_arity = domain_arity
        self.codomain_arity = codomain_arity
        clean = {}
        bound = 1 << domain_arity
        for mask, col in (columns or {}).items():
            if not 0 <= mask < bound:
                raise ValueError(f"column {mask} out of range for arity {domain_arity}")
            if col.arity != codomain_arity:
                raise ArityError(f"column arity {col.arity} != codomain arity {codomain_arity}")
            if not col.is_zero():
                clean[mask] = col
        self._columns = clean

    @classmethod
    def _raw(cls, r: int, s: int, columns: dict) -> "LinearOperator":
        op = object.__new__(cls)
        op.domain_arity, op.codomain_arity, op._columns = r, s, columns
        return op

    @classmethod
    def identity(cls, k: int) -> "LinearOperator":
        return cls._raw(k, k, {m: TensorVector._raw(k, {m: ONE}) for m in range(1 << k)})

    @classmethod
    def scalar(cls, k: int, c: Scalar) -> "LinearOperator":
        c = LaurentPoly.coerce(c)
        if not c:
            return cls._raw(k, k, {})
        return cls._raw(k, k, {m: TensorVector._raw(k, {m: c}) for m in range(1 << k)})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.domain_arity, self.codomain_arity)

    def column(self, mask: int) -> TensorVector:
        return self._columns.get(mask) or TensorVector.zero(self.codomain_arity)

    def columns(self) -> Iterator[tuple[int, TensorVector]]:
        return iter(sorted(self._columns.items()))

    def entry(self, row: int, col: int) -> LaurentPoly:
        return self.column(col).coeff(row)

    def apply(self, v: TensorVector) -> TensorVector:
        if v.arity != self.domain_arity:
            raise ArityError(f"cannot apply ({self.domain_arity}->{self.codomain_arity}) "
                             f"operator to arity-{v.arity} vector")
        acc: dict = {}
        cols = self._columns
        for mask, c in v._terms.items():
            col = cols.get(mask)
            if col is None:
                continue
            for m2, c2 in col._terms.items():
                _accumulate(acc, m2, c * c2)
        return TensorVector._raw(self.codomain_arity, acc)

    def compose(self, inner: "LinearOperator") -> "LinearOperator":
        """``self o inner``: apply ``inner`` first."""
        if inner.codomain_arity != self.domain_arity:
            raise ArityError(f"cannot compose: inner codomain {inner.codomain_arity} "
                             f"!= outer domain {self.domain_arity}")
        cols = {}
        for mask, col in inner._columns.items():
            img = self.apply(col)
            if not img.is_zero():
                cols[mask] = img
        return LinearOperator._raw(inner.domain_arity, self.codomain_arity, cols)

    def __matmul__(self, other):
        if isinstance(other, LinearOperator):
            return self.compose(other)
        if isinstance(other, TensorVector):
            return self.apply(other)
        return NotImplemented

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        if self.shape != other.shape:
            raise ArityError(f"shape mismatch {self.shape} vs {other.shape}")
        cols = dict(self._columns)
        for mask, col in other._columns.items():
            s = cols[mask] + col if mask in cols else col
            if s.is_zero():
                cols.pop(mask, None)
            else:
                cols[mask] = s
        return LinearOperator._raw(self.domain_arity, self.codomain_arity, cols)

    def __neg__(self) -> "LinearOperator":
        return self.scale(-1)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        return self + (-other)

    def scale(self, c: Scalar) -> "LinearOperator":
        c = LaurentPoly.coerce(c)
        if not c:
            return LinearOperator._raw(self.domain_arity, self.codomain_arity, {})
        return LinearOperator._raw(self.domain_arity, self.codomain_arity,
                                   {m: col.scale(c) for m, col in self._columns.items()})

    def power(self, k: int) -> "LinearOperator":
        if self.domain_arity != self.codomain_arity:
            raise ArityError("only square operators have powers")
        out = LinearOperator.identity(self.domain_arity)
        for _ in range(k):
            out = self.compose(out)
        return out

    def tensor(self, other: "LinearOperator") -> "LinearOperator":
        """Kronecker product; ``self`` acts on the leading slots."""
        r = self.domain_arity
        cols = {}
        for ma, ca in self._columns.items():
            for mb, cb in other._columns.items():
                cols[ma | (mb << r)] = ca.tensor(cb)
        return LinearOperator._raw(r + other.domain_arity,
                                   self.codomain_arity + other.codomain_arity, cols)

    def slot_extend(self, n: int, i: int) -> "LinearOperator":
        """``id^{(x)(i-1)} (x) self (x) id^{(x)rest}``.

        ``n`` is the arity of the larger boundary of the result and ``i`` the
        first slot ``self`` acts on, as in the generator names g_n^i, f_n^i.
        """
        r, s = self.domain_arity, self.codomain_arity
        left = i - 1
        right = n - left - max(r, s)
        if left < 0 or right < 0:
            raise ArityError(f"cannot place a ({r}->{s}) operator at slot {i} of {n}")
        lmask = (1 << left) - 1
        rmask = (1 << right) - 1
        cols = {}
        for dom in range(1 << (left + r + right)):
            mid = (dom >> left) & ((1 << r) - 1)
            col = self._columns.get(mid)
            if col is None:
                continue
            lo = dom & lmask
            hi = ((dom >> (left + r)) & rmask) << (left + s)
            cols[dom] = TensorVector._raw(
                left + s + right,
                {lo | (m << left) | hi: c for m, c in col._terms.items()},
            )
        return LinearOperator._raw(left + r + right, left + s + right, cols)

    def is_identity(self) -> bool:
        if self.domain_arity != self.codomain_arity:
            return False
        return self == LinearOperator.identity(self.domain_arity)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return self.shape == other.shape and self._columns == other._columns

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self._columns.items())))

    def to_table(self) -> str:
        """One line per nonzero column: ``v_in -> image``."""
        r = self.domain_arity
        lines = []
        for mask in range(1 << r):
            label = "v_" + "".join(str(b) for b in mask_to_index(mask, r)) if r else "1"
            lines.append(f"{label} -> {self.column(mask)}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"LinearOperator({self.domain_arity}->{self.codomain_arity}, {len(self._columns)} cols)"

    def to_json(self) -> dict:
        return {
            "domain_arity": self.domain_arity,
            "codomain_arity": self.codomain_arity,
            "columns": [
                {"index": list(mask_to_index(m, self.domain_arity)), "image": col.to_json()}
                for m, col in sorted(self._columns.items())
            ],
        }


def op_apply(a: LinearOperator, v: TensorVector) -> TensorVector:
    return a.apply(v)


def op_compose(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    return a.compose(b)


def op_slot_extend(a: LinearOperator, n: int, i: int) -> LinearOperator:
    return a.slot_extend(n, i)
