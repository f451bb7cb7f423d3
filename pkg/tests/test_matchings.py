from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from annular_rt.laurent import LaurentPoly
from annular_rt.matchings import (
    Matching,
    MatchingError,
    combinatorics,
    cup_insertion_orders,
    decompose,
    enumerate_matchings,
    good_to_word,
    is_good,
    matching_validate,
)
from annular_rt.rt_rep import psi_word

SIZES = [(m, n) for N in range(1, 9) for n in range(0, (N - 1) // 2 + 1) for m in [N - 2 * n]]


def all_matchings(max_size=8):
    return [a for m, n in SIZES if m + 2 * n <= max_size for a in enumerate_matchings(m, n)]


@pytest.mark.parametrize("m,n", SIZES)
def test_enumeration_matches_brute_force(m, n):
    got = [a.cups for a in enumerate_matchings(m, n)]
    assert len(got) == len(set(got))
    assert set(got) == O.brute_force_matchings(m, n)
    assert len(got) == comb(m + 2 * n, n)


def test_small_counts():
    assert len(enumerate_matchings(1, 1)) == 3
    assert len(enumerate_matchings(2, 1)) == 4


def test_enumeration_is_sorted():
    got = [a.cups for a in enumerate_matchings(2, 2)]
    assert got == sorted(got)


def test_two_cup_combinatorics():
    c = combinatorics(Matching.parse("m=2 n=2 cups=[[1,2],[3,6]]"))
    assert c.t_set == ((1, 3), (1, 6), (2, 3), (2, 6))
    assert c.sgn[(1, 3)] == LaurentPoly({0: 1})
    assert c.sgn[(2, 6)] == LaurentPoly({2: 1})
    assert c.sgn[(1, 6)] == c.sgn[(2, 3)] == LaurentPoly({1: -1})
    assert c.d_set == (4, 5)


def test_identity_and_single_cup_combinatorics():
    c = combinatorics(Matching.identity(3))
    assert c.t_set == ((),) and c.sgn[()] == LaurentPoly({0: 1}) and c.d_set == (1, 2, 3)
    c = combinatorics(Matching.parse("m=1 n=1 cups=[[2,3]]"))
    assert c.t_set == ((2,), (3,)) and c.sgn[(3,)] == LaurentPoly({1: -1}) and c.d_set == (1,)


@pytest.mark.parametrize("text,fragment", [
    ("m=1 n=1 cups=[[1,4]]", "outside"),
    ("m=1 n=2 cups=[[1,4],[2,5]]", "not crossingless"),
    ("m=2 n=1 cups=[[1,3]]", "stuck"),
    ("m=0 n=1 cups=[[1,2]]", "m must be >= 1"),
    ("m=1 n=1 cups=[[1,1]]", None),
    ("m=1 n=2 cups=[[1,2]]", None),
    ("cups=[]", "cannot parse"),
])
def test_invalid_matchings(text, fragment):
    with pytest.raises(MatchingError, match=fragment):
        Matching.parse(text)


def test_text_and_json_forms():
    a = Matching.parse("m=2 n=1 cups=[[4,1]]")
    assert str(a) == "m=2 n=1 cups=[[1,4]]"
    assert Matching.parse('{"m": 2, "n": 1, "cups": [[4, 1]]}') == a
    assert Matching.from_json(a.to_json()) == a
    assert a.through == (2, 3)


def test_decompose_examples():
    d = decompose(Matching.parse("m=1 n=2 cups=[[5,1],[2,3]]"))
    assert d.k == 1 and str(d.beta) == "m=1 n=2 cups=[[1,2],[3,4]]"
    d = decompose(Matching.parse("m=2 n=1 cups=[[4,1]]"))
    assert d.k == 1 and str(d.beta) == "m=2 n=1 cups=[[1,2]]"
    assert decompose(Matching.identity(3)).k == 0


def test_good_to_word_examples():
    assert str(good_to_word(Matching.parse("m=1 n=2 cups=[[2,5],[3,4]]"))) == "g(5,3) g(3,2)"
    assert str(good_to_word(Matching.identity(2))) == ""
    with pytest.raises(MatchingError):
        good_to_word(Matching.parse("m=2 n=1 cups=[[1,4]]"))


def test_every_matching_decomposes():
    for a in all_matchings():
        d = decompose(a)
        assert is_good(d.beta)
        assert d.beta.shift(-d.k) == a
        assert all(not is_good(a.shift(j)) for j in range(d.k))


def test_good_words_are_order_independent():
    for beta in all_matchings(7):
        if not is_good(beta):
            continue
        words = list(cup_insertion_orders(beta))
        w0 = good_to_word(beta)
        assert w0 in words
        assert (w0.domain_arity, w0.codomain_arity) == (beta.m, beta.size)
        ops = {psi_word(w) for w in words}
        assert len(ops) == 1, str(beta)


@st.composite
def matchings(draw):
    m, n = draw(st.sampled_from(SIZES))
    return draw(st.sampled_from(enumerate_matchings(m, n)))


@given(matchings(), st.integers(-20, 20))
def test_shift_preserves_validity(a, k):
    b = a.shift(k)
    assert matching_validate(b.m, b.n, [list(c) for c in b.cups]) == b
    assert b.shift(-k) == a


@given(matchings())
def test_partner_is_an_involution(a):
    for p in range(1, a.size + 1):
        o = a.partner(p)
        if o is None:
            assert p in a.through
        else:
            assert a.partner(o) == p
