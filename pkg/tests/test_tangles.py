import pytest
from hypothesis import given
from hypothesis import strategies as st

from annular_rt.tangles import (
    RELATION_IDS,
    Generator,
    Kind,
    TangleError,
    TangleWord,
    WordParseError,
    instantiate_relations,
    malformed_literal_readings,
    rot_as_word,
    rot_inverse_word,
    word_compose,
)
from strategies import words


def test_parse_and_print():
    w = TangleWord.parse("f(4,1) t(4,2,1) g(4,1)")
    assert str(w) == "f(4,1) t(4,2,1) g(4,1)"
    assert (w.domain_arity, w.codomain_arity) == (2, 2)
    assert [str(g) for g in w.application_order()] == ["g(4,1)", "t(4,2,1)", "f(4,1)"]


def test_every_token_kind_parses():
    w = TangleWord.parse("rinv(3) r(3) s(3,3) w(3,2,2) w(3,1,1) t(3,1,2) t(3,2,1) f(5,4) g(5,4)")
    assert [g.kind for g in w] == [Kind.ROT_INV, Kind.ROT, Kind.WIND, Kind.TWIST, Kind.TWIST,
                                   Kind.CROSS, Kind.CROSS, Kind.CAP, Kind.CUP]


@pytest.mark.parametrize("text,pos", [
    ("g(2,2)", 0),
    ("g(2,1) t(3,3,1)", 7),
    ("w(2,1,3)", 0),
    ("f(2,1) x(2)", 7),
    ("g(2,1", 0),
    ("r(0)", 0),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(WordParseError) as err:
        TangleWord.parse(text)
    assert err.value.position == pos
    assert f"position {pos}" in str(err.value)


def test_arity_chain_error_names_boundaries():
    with pytest.raises(TangleError, match="expects 2 strands, gets 0"):
        TangleWord.parse("f(2,1) f(2,1)")


def test_empty_word_needs_arity():
    with pytest.raises(WordParseError):
        TangleWord.parse("")
    w = TangleWord.parse("", arity=2)
    assert len(w) == 0 and w.domain_arity == w.codomain_arity == 2


def test_rotation_words():
    assert str(rot_as_word(3, 1)) == "s(3,3) t(3,2,1) t(3,1,1)"
    assert str(rot_as_word(3, 2)) == "s(3,3) t(3,2,2) t(3,1,2)"
    assert str(rot_inverse_word(3, 1)) == "t(3,1,2) t(3,2,2) sinv(3,3)"
    assert str(rot_as_word(1, 1)) == "s(1,1)"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("sign", [1, 2])
def test_rotation_and_inverse_chain(n, sign):
    w = word_compose(rot_inverse_word(n, sign), rot_as_word(n, sign))
    assert w.domain_arity == w.codomain_arity == n


def test_simplify_cancels_rotations():
    assert str(TangleWord.parse("r(3) rinv(3) t(3,1,1)").simplify()) == "t(3,1,1)"
    assert len(TangleWord.parse("rinv(2) rinv(2) r(2) r(2)").simplify()) == 0


def test_relation_three_at_two_strands():
    rel = [i for i in instantiate_relations(2) if i.relation_id == 3]
    assert [str(r) for r in rel] == ["t(2,1,2) t(2,1,1) = id(2)", "t(2,1,1) t(2,1,2) = id(2)"]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_relation_instances_are_well_typed(n):
    insts = instantiate_relations(n)
    ids = {i.relation_id for i in insts}
    # zigzags, kinks and braids need 3 strands; far commutation needs 4
    need = {1: 3, 2: 3, 4: 3, 11: 3, **{r: 4 for r in range(5, 11)}}
    assert ids == {r for r in RELATION_IDS if need.get(r, 2) <= n}
    for inst in insts:
        assert inst.lhs.domain_arity == inst.rhs.domain_arity, str(inst)
        assert inst.lhs.codomain_arity == inst.rhs.codomain_arity, str(inst)
        assert all(g.n <= n for g in inst.lhs.factors + inst.rhs.factors)


def test_instances_grow_with_n():
    small = {str(i) for i in instantiate_relations(3)}
    big = {str(i) for i in instantiate_relations(4)}
    assert small < big


def test_malformed_readings_are_listed():
    bad = malformed_literal_readings()
    assert sorted(m.relation_id for m in bad) == [17, 18, 20, 20]
    assert all(m.reason for m in bad)


def test_generator_validation():
    with pytest.raises(TangleError):
        Generator(Kind.CUP, 1, 1)
    with pytest.raises(TangleError):
        Generator(Kind.CROSS, 3, 1, 0)
    assert Generator(Kind.CUP, 4, 2).domain_arity == 2
    assert Generator(Kind.CAP, 4, 2).codomain_arity == 2


@given(words())
def test_print_parse_round_trip(w):
    assert TangleWord.parse(str(w), arity=w.domain_arity) == w


@given(words(n=2), st.integers(0, 3))
def test_power_length(w, k):
    if w.domain_arity == w.codomain_arity:
        assert len(w.power(k)) == k * len(w)
