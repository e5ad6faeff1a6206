from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slopebases import rootsys
from slopebases.envalg import (
    WordVector,
    parse_word,
    serre_span,
    u_coproduct_pairs,
    u_dim,
    word_str,
    words_of_weight,
)
from slopebases.rootsys import cartan

A2 = cartan("A2")


def _strs(words):
    return sorted(word_str(w) for w in words)


def test_words_of_weight_examples():
    assert _strs(words_of_weight(A2, (1, 1))) == ["12", "21"]
    assert _strs(words_of_weight(A2, (2, 0))) == ["11"]
    assert _strs(words_of_weight(A2, (2, 1))) == ["112", "121", "211"]


def test_serre_span_examples():
    s = serre_span(A2, (2, 1))
    assert len(s.basis) == 1
    rel = s.basis[0]
    # proportional to e1 e1 e2 - 2 e1 e2 e1 + e2 e1 e1
    v = {word_str(w): x for w, x in rel.terms.items()}
    scale = v["112"]
    assert v == {"112": scale, "121": -2 * scale, "211": scale}
    assert u_dim(A2, (2, 1)) == 2
    assert len(serre_span(A2, (1, 1)).basis) == 0 and u_dim(A2, (1, 1)) == 2
    assert len(serre_span(A2, (3, 0)).basis) == 0 and u_dim(A2, (3, 0)) == 1


def test_u_dim_examples():
    assert u_dim(cartan("A3"), (1, 1, 1)) == 4
    for label in ("A2", "B2", "D4"):
        c = cartan(label)
        assert u_dim(c, c.zero()) == 1


@pytest.mark.parametrize("label,h", [("A2", 6), ("A3", 4), ("B2", 5)])
def test_pbw_dimensions(label, h):
    c = cartan(label)
    for k in range(h + 1):
        for nu in rootsys.weights_of_height(c.rank, k):
            assert u_dim(c, nu) == rootsys.kostant_dim(c, nu)


def test_coproduct_of_word_12():
    x = WordVector((1, 1), {parse_word("12"): Fraction(1)})
    pairs = u_coproduct_pairs(x)
    assert pairs[((0, 0), (1, 1))] == [((), parse_word("12"), 1)]
    assert pairs[((1, 0), (0, 1))] == [(parse_word("1"), parse_word("2"), 1)]
    assert pairs[((0, 1), (1, 0))] == [(parse_word("2"), parse_word("1"), 1)]
    assert pairs[((1, 1), (0, 0))] == [(parse_word("12"), (), 1)]
    assert len(pairs) == 4


def test_coproduct_of_word_11_and_empty():
    x = WordVector((2, 0), {parse_word("11"): Fraction(1)})
    assert u_coproduct_pairs(x)[((1, 0), (1, 0))] == [(parse_word("1"), parse_word("1"), 2)]
    one = WordVector((0, 0), {(): Fraction(1)})
    assert u_coproduct_pairs(one) == {((0, 0), (0, 0)): [((), (), 1)]}


letters = st.lists(st.integers(0, 1), min_size=0, max_size=4)


@given(letters, letters, letters)
def test_concatenation_associative(a, b, c):
    def wv(w):
        return WordVector(tuple(w.count(i) for i in range(2)), {tuple(w): Fraction(1)})

    assert (wv(a) * wv(b)) * wv(c) == wv(a) * (wv(b) * wv(c))


@given(letters)
def test_coproduct_counit_and_total(w):
    x = WordVector(tuple(w.count(i) for i in range(2)), {tuple(w): Fraction(1)})
    pairs = u_coproduct_pairs(x)
    # 2^len splittings in total
    assert sum(coef for items in pairs.values() for _, _, coef in items) == 2 ** len(w)
    zero = (0, 0)
    assert pairs[(zero, x.weight)] == [((), tuple(w), 1)]
