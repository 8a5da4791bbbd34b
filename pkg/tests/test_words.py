import math

import pytest
from hypothesis import given, strategies as st

from seqrecon.words import (
    Word,
    hamming_ball_volume,
    hamming_distance,
    insertion_ball_volume,
    support,
    weight,
)


def test_parse_and_text_roundtrip_small_alphabet():
    w = Word.parse("11101", 2)
    assert w.symbols == (1, 1, 1, 0, 1)
    assert w.text == "11101"
    assert Word.parse("", 3) == Word((), 3)
    assert Word((), 3).text == ""


def test_parse_large_alphabet_uses_commas():
    w = Word.parse("1,12,0", 13)
    assert w.symbols == (1, 12, 0)
    assert w.text == "1,12,0"


def test_parse_rejects_out_of_alphabet_symbols():
    with pytest.raises(ValueError):
        Word.parse("012", 2)
    with pytest.raises(ValueError):
        Word((0, 5), 4)
    with pytest.raises(ValueError):
        Word("010", 2)  # raw constructor takes ints, not text


def test_word_is_immutable_and_hashable():
    w = Word.parse("0101", 2)
    with pytest.raises(AttributeError):
        w.symbols = (1,)
    assert len({w, Word.parse("0101", 2)}) == 1


def test_support_examples():
    assert support(Word.parse("0010", 2)) == {3}
    assert support(Word.parse("0000", 2)) == set()
    assert support(Word.parse("111100", 2)) == {1, 2, 3, 4}


def test_weight_and_distance_examples():
    assert weight(Word.parse("111100", 2)) == 4
    w = Word.parse("11101", 2)
    assert hamming_distance(w, w) == 0
    assert hamming_distance(w, Word.parse("11011", 2)) == 2


def test_distance_requires_matching_shape():
    with pytest.raises(ValueError):
        hamming_distance(Word.parse("01", 2), Word.parse("011", 2))
    with pytest.raises(ValueError):
        hamming_distance(Word.parse("01", 2), Word.parse("01", 3))


def test_hamming_ball_volume_examples():
    assert hamming_ball_volume(2, 6, 1) == 7
    assert hamming_ball_volume(5, 9, 0) == 1
    assert hamming_ball_volume(4, 3, 1) == 10
    assert hamming_ball_volume(2, 100, 3) == 166751


def test_hamming_ball_volume_domain():
    with pytest.raises(ValueError):
        hamming_ball_volume(2, 4, 5)
    with pytest.raises(ValueError):
        hamming_ball_volume(2, 4, -1)


@pytest.mark.parametrize("n", range(0, 12))
def test_binary_ball_of_full_radius_is_whole_space(n):
    assert hamming_ball_volume(2, n, n) == 2**n


def test_insertion_ball_volume_examples():
    assert insertion_ball_volume(2, 3, 1) == 9
    assert insertion_ball_volume(7, 5, 0) == 1
    assert insertion_ball_volume(4, 10, 2) == 1101


def test_insertion_ball_is_stars_and_bars_sum():
    for q in (2, 3, 4):
        for n in range(0, 7):
            for t in range(0, 3):
                expect = sum(q**i * math.comb(n + i, i) for i in range(t + 1))
                assert insertion_ball_volume(q, n, t) == expect


words_q4 = st.integers(1, 8).flatmap(
    lambda n: st.tuples(*([st.integers(0, 3)] * n)).map(lambda s: Word(s, 4))
)


@given(words_q4, words_q4, words_q4)
def test_distance_metric_properties(a, b, c):
    if not len(a) == len(b) == len(c):
        return
    assert hamming_distance(a, b) == hamming_distance(b, a)
    assert hamming_distance(a, b) <= hamming_distance(a, c) + hamming_distance(c, b)
    assert (hamming_distance(a, b) == 0) == (a == b)


@given(words_q4)
def test_weight_equals_support_size(w):
    assert weight(w) == len(support(w))
