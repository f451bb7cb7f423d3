"""The representation psi of framed affine tangles on V^{(x)n}.

psi is generated by four inputs only: the cap/cup tables, the crossing
formulas ``t(1) = id + q*g*f`` and ``t(2) = id + q^-1*g*f``, the framing
twists read off from Reidemeister I, and s_n^n acting as tensoring with
Lambda_n^-1.  Every other closed form is checked against these.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from typing import Iterable

from .laurent import ONE, ZERO, LaurentPoly
from .tangles import (
    Generator,
    Kind,
    MalformedReading,
    RelationInstance,
    TangleWord,
    instantiate_relations,
    malformed_literal_readings,
    rot_as_word,
    rot_inverse_word,
)
from .tensor import LinearOperator, TensorVector, mask_to_index

__all__ = [
    "Conventions",
    "DEFAULT",
    "UnsupportedGenerator",
    "psi_generator",
    "psi_word",
    "operator_ratio",
    "apply_word",
    "twist_scalar",
    "rot_matrix",
    "t1_table_report",
    "lemma_rot_closed_form",
    "check_lemma_computation",
    "RelationResult",
    "ConventionLedger",
    "verify_relations",
]


class UnsupportedGenerator(ValueError):
    pass


@dataclass(frozen=True)
class Conventions:
    """Which crossing table and which rotation chain psi uses."""

    literal_t1: bool = False
    rot_chain: int = 1

    def __post_init__(self):
        if self.rot_chain not in (1, 2):
            raise ValueError("rot_chain must be 1 or 2")

    @property
    def t1_table_corrected(self) -> bool:
        return not self.literal_t1

    def with_chain(self, sign: int) -> "Conventions":
        return Conventions(self.literal_t1, sign)


DEFAULT = Conventions()

_q = LaurentPoly.monomial


def _vec(k: int, **terms) -> TensorVector:
    # keys like v01 -> slot string
    return TensorVector(k, {int(name[1:][::-1], 2): c for name, c in terms.items()})


CAP = LinearOperator(2, 0, {0b10: TensorVector.scalar(_q(1, 1)), 0b01: TensorVector.scalar(-1)})
CUP = LinearOperator(0, 2, {0: _vec(2, v10=_q(1, -1), v01=-1)})
_GF = CUP.compose(CAP)

T1_DERIVED = LinearOperator.identity(2) + _GF.scale(_q(1, 1))
T2 = LinearOperator.identity(2) + _GF.scale(_q(1, -1))
T1_LITERAL = LinearOperator(2, 2, {
    0b00: _vec(2, v00=1),
    0b10: _vec(2, v01=1 - _q(1, 2), v10=_q(1, 1)),
    0b01: _vec(2, v01=1),
    0b11: _vec(2, v11=1),
})
T2_LITERAL = LinearOperator(2, 2, {
    0b00: _vec(2, v00=1),
    0b10: _vec(2, v10=_q(1, -1)),
    0b01: _vec(2, v10=1 - _q(1, -2), v01=_q(1, -1)),
    0b11: _vec(2, v11=1),
})


def _crossing(sign: int, conv: Conventions) -> LinearOperator:
    if sign == 2:
        return T2
    return T1_LITERAL if conv.literal_t1 else T1_DERIVED


def _wind_last(n: int) -> LinearOperator:
    # tensoring with Lambda_n^-1, on the last slot
    return LinearOperator(1, 1, {
        0: TensorVector(1, {0: _q(2, -2), 1: _q(-1, -4 - n)}),
        1: TensorVector(1, {0: _q(1, n)}),
    })


def _wind_last_inverse(n: int) -> LinearOperator:
    # tensoring with Lambda_n
    return LinearOperator(1, 1, {
        0: TensorVector(1, {1: _q(1, -n)}),
        1: TensorVector(1, {0: _q(-1, 4 + n), 1: _q(2, 2)}),
    })


@functools.lru_cache(maxsize=None)
def twist_scalar(sign: int, conv: Conventions = DEFAULT) -> LaurentPoly:
    """Scalar of w(sign), read off from f_3^1 o t_3^2(sign) o g_3^1 on one strand."""
    op = (psi_generator(Generator(Kind.CAP, 3, 1), conv)
          .compose(psi_generator(Generator(Kind.CROSS, 3, 2, sign), conv))
          .compose(psi_generator(Generator(Kind.CUP, 3, 1), conv)))
    c0, c1 = op.column(0), op.column(1)
    s = c0.coeff(0)
    if c0 != TensorVector(1, {0: s}) or c1 != TensorVector(1, {1: s}):
        raise ArithmeticError(f"Reidemeister I does not give a scalar for sign {sign}: {op.to_table()}")
    return s


@functools.lru_cache(maxsize=4096)
def psi_generator(gen: Generator, conv: Conventions = DEFAULT) -> LinearOperator:
    k, n, i = gen.kind, gen.n, gen.i
    if k is Kind.CAP:
        return CAP.slot_extend(n, i)
    if k is Kind.CUP:
        return CUP.slot_extend(n, i)
    if k is Kind.CROSS:
        return _crossing(gen.sign, conv).slot_extend(n, i)
    if k is Kind.TWIST:
        return LinearOperator.scalar(n, twist_scalar(gen.sign, conv))
    if k in (Kind.WIND, Kind.WIND_INV):
        if i != n:
            raise UnsupportedGenerator(f"{gen}: only the last-strand winding s_n^n is defined")
        base = _wind_last(n) if k is Kind.WIND else _wind_last_inverse(n)
        return base.slot_extend(n, n)
    if k is Kind.ROT:
        return psi_word(rot_as_word(n, conv.rot_chain), conv)
    if k is Kind.ROT_INV:
        return psi_word(rot_inverse_word(n, conv.rot_chain), conv)
    raise UnsupportedGenerator(str(gen))


def psi_word(word: TangleWord, conv: Conventions = DEFAULT) -> LinearOperator:
    op = LinearOperator.identity(word.domain_arity)
    for g in word.application_order():
        op = psi_generator(g, conv).compose(op)
    return op


def _expand(gen: Generator, conv: Conventions) -> Iterable[Generator]:
    if gen.kind is Kind.ROT:
        return rot_as_word(gen.n, conv.rot_chain).application_order()
    if gen.kind is Kind.ROT_INV:
        return rot_inverse_word(gen.n, conv.rot_chain).application_order()
    return (gen,)


def apply_word(word: TangleWord, v: TensorVector, conv: Conventions = DEFAULT) -> TensorVector:
    """psi(word) applied to ``v`` one elementary factor at a time.

    Rotations are expanded into their chains, so no 2^n x 2^n operator is
    ever formed.
    """
    for g in word.application_order():
        for h in _expand(g, conv):
            v = psi_generator(h, conv).apply(v)
    return v


@functools.lru_cache(maxsize=64)
def rot_matrix(k: int, conv: Conventions = DEFAULT) -> LinearOperator:
    """The matrix of the rotation r_k in the basis v_I."""
    return psi_generator(Generator(Kind.ROT, k), conv)


def t1_table_report() -> list[dict]:
    """Entries where the tabulated t(1) table differs from id + q*g*f."""
    out = []
    for mask in range(4):
        lit, der = T1_LITERAL.column(mask), T1_DERIVED.column(mask)
        if lit != der:
            out.append({"input": "v_" + "".join(map(str, mask_to_index(mask, 2))),
                        "literal": str(lit), "derived": str(der)})
    return out


def lemma_rot_closed_form(k: int, mask: int) -> TensorVector:
    """The stated closed form for the rotation applied to v_{i_1..i_k}."""
    idx = mask_to_index(mask, k)
    rest = list(idx[1:])
    if idx[0] == 1:
        return TensorVector.from_index(rest + [0], _q(1, k))
    out = TensorVector.zero(k)
    one_minus_q2 = 1 - _q(1, 2)
    for j in range(2, k + 1):
        if idx[j - 1] != 1:
            continue
        before = sum(idx[: j - 1])
        shifted = rest[:]
        shifted[j - 2] = 0
        out = out + TensorVector.from_index(shifted + [0], one_minus_q2 * _q(1, before + k))
    ones = sum(idx)
    tail = TensorVector(1, {0: _q(2, -2), 1: _q(-1, -4 - k)})
    head = TensorVector.from_index(rest, _q(1, ones))
    return out + head.tensor(tail)


@dataclass
class LemmaDiscrepancy:
    input: tuple[int, ...]
    composed: TensorVector
    closed_form: TensorVector

    def to_json(self) -> dict:
        return {"input": list(self.input), "composed": str(self.composed),
                "closed_form": str(self.closed_form)}


def check_lemma_computation(k: int, conv: Conventions = DEFAULT, bound: int = 8) -> list[LemmaDiscrepancy]:
    """Basis inputs where the composed rotation differs from the stated closed form."""
    if not 1 <= k <= bound:
        raise ValueError(f"k={k} outside 1..{bound}")
    A = rot_matrix(k, conv)
    out = []
    for mask in range(1 << k):
        got, want = A.column(mask), lemma_rot_closed_form(k, mask)
        if got != want:
            out.append(LemmaDiscrepancy(mask_to_index(mask, k), got, want))
    return out


# -- relation verification -------------------------------------------------

GROUND_TRUTH_READINGS = ("standard", "corrected")


@dataclass
class RelationResult:
    relation_id: int
    reading: str
    rot_chain: int
    instances: int
    holds: bool
    counterexample: str | None = None
    note: str | None = None

    @property
    def ground_truth(self) -> bool:
        return self.reading in GROUND_TRUTH_READINGS

    def to_json(self) -> dict:
        params = {"reading": self.reading, "rot_chain": self.rot_chain, "instances": self.instances}
        if self.note:
            params["note"] = self.note
        return {"id": self.relation_id, "params": params, "holds": self.holds,
                "counterexample": self.counterexample}


@dataclass
class ConventionLedger:
    conventions: Conventions = DEFAULT
    n_max: int | None = None
    relations: list[RelationResult] = field(default_factory=list)

    @property
    def t1_table_corrected(self) -> bool:
        return self.conventions.t1_table_corrected

    @property
    def rot_chain_sign(self) -> int:
        return self.conventions.rot_chain

    def result(self, relation_id: int, reading: str | None = None,
               rot_chain: int | None = None) -> list[RelationResult]:
        chain = self.rot_chain_sign if rot_chain is None else rot_chain
        return [r for r in self.relations if r.relation_id == relation_id and r.rot_chain == chain
                and (reading is None or r.reading == reading)]

    def holds(self, relation_id: int, reading: str | None = None) -> bool:
        rs = self.result(relation_id, reading)
        return bool(rs) and all(r.holds for r in rs)

    def some_reading_holds(self, relation_id: int) -> bool:
        return any(r.holds for r in self.result(relation_id))

    def exit_code(self) -> int:
        """0: everything holds; 1: a ground-truth relation fails; 2: only literal readings fail."""
        mine = [r for r in self.relations if r.rot_chain == self.rot_chain_sign]
        if any(r.ground_truth and not r.holds for r in mine):
            return 1
        if any(not r.holds for r in mine):
            return 2
        return 0

    def to_json(self) -> dict:
        return {
            "t1_table_corrected": self.t1_table_corrected,
            "rot_chain_sign": self.rot_chain_sign,
            "relations": [r.to_json() for r in self.relations],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


_ROTATION_RELATIONS = {12, 13, 14, 15, 21}


def _size(inst: RelationInstance) -> tuple:
    return (max(g.n for g in inst.lhs.factors + inst.rhs.factors + (Generator(Kind.ROT, 1),)),
            len(inst.lhs) + len(inst.rhs), inst.params)


def operator_ratio(a: LinearOperator, b: LinearOperator) -> LaurentPoly | None:
    """The signed monomial c with a == c*b, if there is one."""
    for mask, col in b.columns():
        for row, cb in col.items():
            ca = a.column(mask).coeff(row)
            if len(ca) != 1 or len(cb) != 1:
                return None
            (ea, xa), = ca.items()
            (eb, xb), = cb.items()
            if xa != xb and xa != -xb:
                return None
            c = LaurentPoly.monomial(xa // xb, ea - eb)
            return c if a == b.scale(c) else None
    return None


def _check(instances: list[RelationInstance], conv: Conventions, cache: dict) -> tuple[int, RelationInstance | None, str | None]:
    def ev(word):
        key = (word, conv)
        if key not in cache:
            cache[key] = psi_word(word, conv)
        return cache[key]

    failing = [inst for inst in instances if ev(inst.lhs) != ev(inst.rhs)]
    if not failing:
        return len(instances), None, None
    ratios = {str(operator_ratio(ev(i.lhs), ev(i.rhs))) for i in failing}
    if "None" in ratios:
        note = f"{len(failing)}/{len(instances)} instances fail; some are not scalar multiples"
    else:
        note = f"{len(failing)}/{len(instances)} instances fail; lhs = c*rhs with c in {{{', '.join(sorted(ratios))}}}"
    return len(instances), min(failing, key=_size), note


def verify_relations(n: int, conv: Conventions = DEFAULT, other_chain: bool = True) -> ConventionLedger:
    """Check every relation instance with strand counts <= n as exact operator equality.

    Results are aggregated per (relation, reading).  With ``other_chain``
    the rotation relations are also evaluated under the other rotation
    chain sign; those entries are informational.
    """
    groups: dict[tuple[int, str], list[RelationInstance]] = {}
    for inst in instantiate_relations(n):
        groups.setdefault((inst.relation_id, inst.reading), []).append(inst)
    ledger = ConventionLedger(conv, n)
    cache: dict = {}
    for (rid, reading), insts in sorted(groups.items()):
        count, bad, note = _check(insts, conv, cache)
        ledger.relations.append(RelationResult(rid, reading, conv.rot_chain, count, bad is None,
                                               None if bad is None else str(bad), note))
    for m in malformed_literal_readings():
        ledger.relations.append(RelationResult(m.relation_id, m.reading, conv.rot_chain, 0, False,
                                               m.text, note=m.reason))
    if other_chain:
        alt = conv.with_chain(3 - conv.rot_chain)
        for (rid, reading), insts in sorted(groups.items()):
            if rid not in _ROTATION_RELATIONS:
                continue
            count, bad, note = _check(insts, alt, cache)
            ledger.relations.append(RelationResult(rid, reading, alt.rot_chain, count, bad is None,
                                                   None if bad is None else str(bad), note))
    ledger.relations.sort(key=lambda r: (r.rot_chain != conv.rot_chain, r.relation_id, r.reading,
                                         r.counterexample or ""))
    return ledger
