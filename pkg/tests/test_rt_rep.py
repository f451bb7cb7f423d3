import pytest
import sympy as sp
from hypothesis import given

import oracles as O
from annular_rt.laurent import LaurentPoly
from annular_rt.rt_rep import (
    CAP,
    CUP,
    DEFAULT,
    T1_DERIVED,
    T1_LITERAL,
    T2,
    Conventions,
    UnsupportedGenerator,
    apply_word,
    check_lemma_computation,
    lemma_rot_closed_form,
    operator_ratio,
    psi_generator,
    psi_word,
    rot_matrix,
    t1_table_report,
    twist_scalar,
    verify_relations,
)
from annular_rt.tangles import Generator, Kind, TangleWord, cap, cross, cup, rot, rot_inv, twist, wind
from annular_rt.tensor import LinearOperator, TensorVector
from strategies import words

P = LaurentPoly.parse


def col(op, idx):
    return str(op.column(sum(b << s for s, b in enumerate(idx))))


def test_cap_and_cup_tables():
    assert [col(CAP, i) for i in [(0, 0), (1, 1), (0, 1), (1, 0)]] == ["0", "0", "q", "-1"]
    assert str(CUP.column(0)) == "q^-1 v_10 - v_01"


def test_t2_table():
    assert col(T2, (0, 0)) == "v_00" and col(T2, (1, 1)) == "v_11"
    assert col(T2, (0, 1)) == "q^-1 v_10"
    assert T2.column(1) == (TensorVector.from_index((1, 0), P("1 - q^-2"))
                            + TensorVector.from_index((0, 1), P("q^-1")))


def test_t1_tabulated_entry_is_wrong_by_q():
    assert col(T1_DERIVED, (0, 1)) == "q v_10 + (-q^2 + 1) v_01"
    assert col(T1_DERIVED, (1, 0)) == "q v_01"
    assert col(T1_LITERAL, (1, 0)) == "v_01"
    assert t1_table_report() == [{"input": "v_10", "literal": "v_01", "derived": "q v_01"}]
    # only the derived table inverts t(2)
    assert (T1_DERIVED @ T2).is_identity()
    assert not (T1_LITERAL @ T2).is_identity()


def test_generators_match_dense_oracle():
    for n in range(2, 6):
        for i in range(1, n):
            assert O.same(O.dense(psi_generator(cup(n, i))), O.cup(n, i))
            assert O.same(O.dense(psi_generator(cap(n, i))), O.cap(n, i))
            for l in (1, 2):
                assert O.same(O.dense(psi_generator(cross(n, i, l))), O.cross(n, i, l))
    for n in range(1, 6):
        assert O.same(O.dense(psi_generator(wind(n, n))), O.wind(n))
        for chain in (1, 2):
            conv = Conventions(rot_chain=chain)
            assert O.same(O.dense(rot_matrix(n, conv)), O.rot(n, chain))


def test_twist_scalars():
    assert twist_scalar(1) == P("-q^-1") == O.from_sympy(O.twist_scalar(1))
    assert twist_scalar(2) == P("-q") == O.from_sympy(O.twist_scalar(2))
    assert psi_generator(twist(3, 2, 1)) == LinearOperator.scalar(3, P("-q^-1"))


def test_unknot():
    assert str(psi_word(TangleWord.parse("f(2,1) g(2,1)")).entry(0, 0)) == "-q - q^-1"


def test_closed_two_strand_kink():
    # a crossing fed by the cup it sits on rescales the cup: t(1) g = -q^2 g
    w1 = psi_word(TangleWord.parse("t(2,1,1) g(2,1)"))
    assert w1 == psi_generator(cup(2, 1)).scale(P("-q^2"))
    assert str(psi_word(TangleWord.parse("f(2,1) t(2,1,1) g(2,1)")).entry(0, 0)) == "q^3 + q"
    assert str(psi_word(TangleWord.parse("f(2,1) t(2,1,2) g(2,1)")).entry(0, 0)) == "q^-1 + q^-3"


@pytest.mark.parametrize("l,expected", [(1, "-q^-1"), (2, "-q")])
def test_open_kink_equals_twist(l, expected):
    for w in (f"f(3,1) t(3,2,{l}) g(3,1)", f"f(3,2) t(3,1,{l}) g(3,2)"):
        op = psi_word(TangleWord.parse(w))
        assert op == LinearOperator.scalar(1, P(expected)), w


def test_wind_examples():
    s2 = psi_generator(wind(2, 2))
    assert str(s2.column(0)) == "2*q^-2 v_00 - q^-6 v_01"
    with pytest.raises(UnsupportedGenerator):
        psi_generator(Generator(Kind.WIND, 3, 2))


def test_rotation_examples():
    A1 = rot_matrix(1)
    assert str(A1.column(1)) == "q v_0"
    assert str(A1.column(0)) == "2*q^-2 v_0 - q^-5 v_1"
    A2 = rot_matrix(2)
    assert str(A2.column(0b01)) == "q^3 v_00"
    assert str(A2.column(0b11)) == "q^2 v_10"


def test_temperley_lieb():
    E = (CUP @ CAP).scale(-1)
    assert E @ E == E.scale(P("q + q^-1"))


@pytest.mark.parametrize("n", range(2, 6))
def test_crossings_invert_and_braid(n):
    for i in range(1, n):
        a, b = psi_generator(cross(n, i, 1)), psi_generator(cross(n, i, 2))
        assert (a @ b).is_identity() and (b @ a).is_identity()
    for i in range(1, n - 1):
        for l in (1, 2):
            x, y = psi_generator(cross(n, i, l)), psi_generator(cross(n, i + 1, l))
            assert x @ y @ x == y @ x @ y


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("chain", [1, 2])
def test_rotation_inverse(k, chain):
    conv = Conventions(rot_chain=chain)
    A = rot_matrix(k, conv)
    Ainv = psi_generator(rot_inv(k), conv)
    assert (Ainv @ A).is_identity() and (A @ Ainv).is_identity()


@given(words(), words(max_len=3))
def test_functoriality(a, b):
    if a.domain_arity != b.codomain_arity:
        return
    assert psi_word(a @ b) == psi_word(a) @ psi_word(b)


@given(words())
def test_apply_word_agrees_with_operator(w):
    v = TensorVector(w.domain_arity, {m: 1 for m in range(1 << w.domain_arity)})
    assert apply_word(w, v) == psi_word(w).apply(v)


@given(words(n=3))
def test_psi_word_matches_dense_product(w):
    M = O.eye(w.domain_arity)
    for g in w.application_order():
        M = O.dense(psi_generator(g)) * M
    assert O.same(O.dense(psi_word(w)), M)


def test_rotation_closed_form_discrepancies():
    counts = [len(check_lemma_computation(k)) for k in range(1, 7)]
    assert counts == [2 ** k - k - 1 for k in range(1, 7)]
    first = check_lemma_computation(2)[0]
    assert first.input == (1, 0)
    assert str(first.composed) == "q^3 v_00" and str(first.closed_form) == "q^2 v_00"


def test_rotation_closed_form_under_tabulated_table():
    conv = Conventions(literal_t1=True)
    for k in range(1, 7):
        assert check_lemma_computation(k, conv) == []


def test_rotation_closed_form_at_one_strand():
    assert str(lemma_rot_closed_form(1, 0)) == "2*q^-2 v_0 - q^-5 v_1"
    assert str(lemma_rot_closed_form(1, 1)) == "q v_0"


def test_operator_ratio():
    a = psi_generator(cross(3, 1, 1))
    assert operator_ratio(a.scale(P("-q^3")), a) == P("-q^3")
    assert operator_ratio(a, psi_generator(cross(3, 1, 2))) is None


@pytest.fixture(scope="module")
def ledger():
    return verify_relations(5)


def test_ledger_holding_relations(ledger):
    for rid in [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 19, 21]:
        assert ledger.holds(rid), rid
    for rid in (17, 18, 20):
        assert ledger.holds(rid, "corrected")
        assert ledger.some_reading_holds(rid)


def test_ledger_known_failures(ledger):
    r11 = ledger.result(11)[0]
    assert not r11.holds and "c in {q, q^-1}" in r11.note
    for rid in (13, 14):
        assert not ledger.holds(rid)
    assert ledger.exit_code() == 1


def test_ledger_records_other_chain(ledger):
    assert ledger.result(15, rot_chain=2) and not ledger.result(15, rot_chain=2)[0].holds
    assert ledger.result(12, rot_chain=2)[0].holds


def test_ledger_json_shape(ledger):
    data = ledger.to_json()
    assert data["t1_table_corrected"] is True and data["rot_chain_sign"] == 1
    assert set(data["relations"][0]) == {"id", "params", "holds", "counterexample"}
    assert verify_relations(3).dumps() == verify_relations(3).dumps()


def test_exit_code_contract():
    from annular_rt.rt_rep import ConventionLedger, RelationResult
    ok = RelationResult(1, "standard", 1, 3, True)
    lit = RelationResult(17, "literal", 1, 0, False)
    bad = RelationResult(11, "standard", 1, 3, False)
    assert ConventionLedger(DEFAULT, 3, [ok]).exit_code() == 0
    assert ConventionLedger(DEFAULT, 3, [ok, lit]).exit_code() == 2
    assert ConventionLedger(DEFAULT, 3, [ok, lit, bad]).exit_code() == 1
