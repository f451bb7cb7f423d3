"""Classes of crossingless sheaves in K-theory, in the basis v_I of V^{(x)k}."""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .laurent import ONE, LaurentPoly
from .matchings import (
    Matching,
    MatchingError,
    RotationDecomposition,
    combinatorics,
    decompose,
    good_to_word,
    is_good,
)
from .rt_rep import DEFAULT, ConventionLedger, Conventions, apply_word, psi_generator, rot_matrix
from .tangles import Generator, Kind, TangleWord
from .tensor import TensorVector, index_to_mask, mask_to_index, to_line_bundle_coeffs

__all__ = [
    "base_class",
    "good_class_oracle",
    "good_class_formula",
    "FormulaReport",
    "ClassResult",
    "crossingless_class",
    "class_by_word",
    "line_bundle_class",
    "full_rotation_report",
    "results_to_csv",
]

_q = LaurentPoly.monomial


def base_class(m: int) -> TensorVector:
    """Skyscraper class: (v_0 - q^-1 v_1) (x) ... (x) (v_0 - q^-m v_1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    out = TensorVector.scalar(1)
    for i in range(1, m + 1):
        out = out.tensor(TensorVector(1, {0: ONE, 1: _q(-1, -i)}))
    return out


def good_class_oracle(beta: Matching, conv: Conventions = DEFAULT) -> TensorVector:
    """psi(cup word of beta) applied to the skyscraper class."""
    return apply_word(good_to_word(beta), base_class(beta.m), conv)


@dataclass
class FormulaReport:
    corrected: TensorVector
    literal: TensorVector
    discrepancies: list[tuple[tuple[int, ...], LaurentPoly, LaurentPoly]]

    def to_json(self) -> dict:
        return {
            "corrected": self.corrected.to_json(),
            "literal": self.literal.to_json(),
            "discrepancies": [
                {"index": list(idx), "literal": str(lit), "corrected": str(cor)}
                for idx, lit, cor in self.discrepancies
            ],
        }


def good_class_formula(beta: Matching) -> FormulaReport:
    """Closed form for a good matching, with the through-strand factor read two ways.

    corrected: each chosen through point d_i contributes -q^-i.
    literal:   the chosen through points contribute (-q)^(sum of their ranks).
    """
    if not is_good(beta):
        raise MatchingError(f"{beta} is not good")
    comb = combinatorics(beta)
    N = beta.size
    pref = _q(1, -beta.n)
    cor, lit = {}, {}
    for I in comb.t_set:
        s = comb.sgn[I] * pref
        for choice in itertools.product((0, 1), repeat=beta.m):
            J = [d for d, c in zip(comb.d_set, choice) if c]
            ranks = [r for r, c in enumerate(choice, start=1) if c]
            mask = 0
            for p in itertools.chain(I, J):
                mask |= 1 << (p - 1)
            cor_c = s * _q((-1) ** len(ranks), -sum(ranks))
            lit_c = s * _q((-1) ** sum(ranks), sum(ranks))
            cor[mask] = cor.get(mask, LaurentPoly()) + cor_c
            lit[mask] = lit.get(mask, LaurentPoly()) + lit_c
    corrected, literal = TensorVector(N, cor), TensorVector(N, lit)
    diffs = []
    for mask in sorted(set(cor) | set(lit)):
        a, b = literal.coeff(mask), corrected.coeff(mask)
        if a != b:
            diffs.append((mask_to_index(mask, N), a, b))
    return FormulaReport(corrected, literal, diffs)


@dataclass
class ClassResult:
    matching: Matching
    decomposition: RotationDecomposition
    class_v: TensorVector
    ledger: ConventionLedger = field(default_factory=ConventionLedger)

    @property
    def class_lambda(self) -> dict[tuple[int, ...], LaurentPoly]:
        return to_line_bundle_coeffs(self.class_v)

    def to_json(self) -> dict:
        return {
            "matching": self.matching.to_json(),
            "decomposition": {"k": self.decomposition.k, "beta": self.decomposition.beta.to_json()},
            "class_v": self.class_v.to_json(),
            "class_lambda": [{"powers": list(p), "coeff": c.to_json()}
                             for p, c in sorted(self.class_lambda.items())],
            "ledger": self.ledger.to_json(),
        }

    def text(self, basis: str = "v") -> str:
        head = f"{self.matching}  k={self.decomposition.k}  beta={self.decomposition.beta}"
        if basis == "v":
            return f"{head}\n  class = {self.class_v}"
        terms = " + ".join(f"({c}) [L_{''.join(map(str, p))}]" for p, c in sorted(self.class_lambda.items()))
        return f"{head}\n  class = {terms or '0'}"

    def csv_rows(self, basis: str = "v") -> list[tuple[str, str, str]]:
        rows = []
        if basis == "v":
            for mask, c in self.class_v.items():
                rows.append((str(self.matching), "".join(map(str, mask_to_index(mask, self.class_v.arity))), str(c)))
        else:
            for p, c in sorted(self.class_lambda.items()):
                rows.append((str(self.matching), "".join(map(str, p)), str(c)))
        return rows


def crossingless_class(alpha: Matching, conv: Conventions = DEFAULT) -> ClassResult:
    """A_{r,N}^k b_beta for alpha = r^k beta, using the cached rotation matrix."""
    dec = decompose(alpha)
    v = good_class_oracle(dec.beta, conv)
    if dec.k:
        A = rot_matrix(alpha.size, conv)
        for _ in range(dec.k):
            v = A.apply(v)
    return ClassResult(alpha, dec, v, ConventionLedger(conv))


def class_by_word(alpha: Matching, conv: Conventions = DEFAULT) -> TensorVector:
    """Same class through one tangle word r^k o (cups of beta), applied generator by generator."""
    dec = decompose(alpha)
    N = alpha.size
    word = TangleWord.of(Generator(Kind.ROT, N), arity=N).power(dec.k) if dec.k else TangleWord.identity(N)
    return apply_word(word.compose(good_to_word(dec.beta)), base_class(alpha.m), conv)


def line_bundle_class(powers: Sequence[int]) -> TensorVector:
    """[Lambda_1^{l_1} (x) ... (x) Lambda_k^{l_k}] for arbitrary integer powers."""
    out = TensorVector.scalar(1)
    for s, l in enumerate(powers, start=1):
        factor = TensorVector(1, {0: _q(-(l - 1), 2 * l), 1: _q(l, 2 * l - 2 - s)})
        out = out.tensor(factor)
    return out


def full_rotation_report(beta: Matching, conv: Conventions = DEFAULT) -> dict:
    """Does A^N b_beta equal b_beta up to a signed monomial?  Measured, not asserted."""
    N = beta.size
    b = good_class_oracle(beta, conv)
    A = rot_matrix(N, conv)
    v = b
    for _ in range(N):
        v = A.apply(v)
    ratio = _monomial_ratio(v, b)
    return {"matching": str(beta), "equal": v == b,
            "monomial_multiple": None if ratio is None else str(ratio)}


def _monomial_ratio(v: TensorVector, w: TensorVector) -> LaurentPoly | None:
    if v.is_zero() or w.is_zero():
        return None
    mask, c = next(iter(w.items()))
    a = v.coeff(mask)
    if len(a) != 1 or len(c) != 1:
        return None
    (ea, ca), = a.items()
    (ec, cc), = c.items()
    if ca % cc or abs(ca // cc) != 1:
        return None
    r = _q(ca // cc, ea - ec)
    return r if v == w.scale(r) else None


def results_to_csv(results: Iterable[ClassResult], basis: str = "v") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["matching", "basis_index" if basis == "v" else "line_bundle_powers", "coefficient"])
    for r in results:
        w.writerows(r.csv_rows(basis))
    return buf.getvalue()
