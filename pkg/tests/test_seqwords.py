import random
from itertools import product

import pytest
from hypothesis import assume, given, strategies as st

import oracles
from raag.seqwords import (
    InconsistentPeriods,
    SeqPreconditionError,
    common_root_check,
    free_reduce,
    match_word_quasiroots,
    merge_periods,
    rotate,
    seq_is_primitive,
    symbol_word,
)

S = symbol_word


def test_merge_periods_examples():
    assert merge_periods(3, 3, S("abcabc")) == 3
    assert merge_periods(4, 6, S("ababababab")) == 2
    assert merge_periods(2, 3, S("aaaaa")) == 1


def test_merge_periods_inconsistent_window():
    # "ababa" has period 2 but not period 3, so it is not a valid input
    with pytest.raises(InconsistentPeriods):
        merge_periods(2, 3, S("ababa"))


def test_merge_periods_short_window():
    with pytest.raises(ValueError):
        merge_periods(2, 3, S("aaaa"))
    with pytest.raises(ValueError):
        merge_periods(0, 3, S("aaaa"))


def test_merge_periods_length_ten_brute_force():
    # every length-10 sequence over {a,b,c} with periods 4 and 6 has period 2
    for w in product("abc", repeat=4):
        seq = tuple((w * 3)[:10])
        if oracles.has_period(seq, 6):
            assert merge_periods(4, 6, symbol_word("".join(seq))) == 2
            assert oracles.has_period(seq, 2)


@pytest.mark.parametrize("w, expected", [("ab", True), ("abab", False), ("aab", True), ("a", True)])
def test_seq_is_primitive(w, expected):
    assert seq_is_primitive(S(w)) is expected


def test_seq_is_primitive_empty():
    with pytest.raises(ValueError):
        seq_is_primitive(())


def test_common_root_examples():
    assert common_root_check("ab", "ab")
    with pytest.raises(SeqPreconditionError) as info:
        common_root_check("ab", "ba")
    assert "w1^2 prefix of a power of w2" in info.value.failed
    with pytest.raises(SeqPreconditionError):
        common_root_check("abab", "abab")


words_ab = st.text(alphabet="abc", min_size=1, max_size=8)


@given(words_ab)
def test_common_root_on_equal_primitive(w):
    assume(seq_is_primitive(S(w)))
    assert common_root_check(w, w)


@given(words_ab, st.integers(0, 20))
def test_rotation_preserves_primitivity(w, r):
    assert seq_is_primitive(rotate(S(w), r)) == seq_is_primitive(S(w))


def test_rotate():
    assert rotate(S("abc"), 1) == S("bca")
    assert rotate((), 3) == ()


def test_free_reduce():
    assert free_reduce([("a", 1), ("b", 1), ("b", -1), ("a", -1), ("c", 1)]) == (("c", 1),)


def test_match_example():
    assert match_word_quasiroots("abababab", ("", "ab", 4, ""), ("a", "ba", 3, "b"), 1, 1) == (1, True)
    assert match_word_quasiroots("abababab", ("a", "ba", 3, "b"), ("", "ab", 4, ""), 1, 1) == (1, True)


def test_match_identical():
    d = ("c", "ab", 3, "c")
    assert match_word_quasiroots("cabababc", d, d, 1, 1) == (0, True)


def test_match_preconditions():
    with pytest.raises(SeqPreconditionError) as info:
        match_word_quasiroots("abab", ("", "ab", 2, ""), ("", "abab", 1, ""), 0, 0)
    assert "m2 >= 2" in info.value.failed and "w2 primitive" in info.value.failed
    with pytest.raises(SeqPreconditionError):
        match_word_quasiroots("abababab", ("", "ab", 4, ""), ("a", "ba", 3, "b"), 0, 0)


def test_match_on_all_short_words():
    rng = random.Random(0)
    for n in range(4, 11):
        for w in product("ab", repeat=n):
            w = "".join(w)
            decs = oracles.word_decompositions(S(w))
            for d1 in decs:
                d2 = rng.choice(decs)
                A = max(len(d1[0]), len(d2[0]))
                B = max(len(d1[3]), len(d2[3]))
                if n - (A + B) >= 2 * max(len(d1[1]), len(d2[1])):
                    r, ok = match_word_quasiroots(w, d1, d2, A, B)
                    assert ok and rotate(d2[1], r) == d1[1]


def test_match_short_window_rejected():
    # a window shorter than 2|w_i| is outside the hypotheses, so it is rejected up front
    with pytest.raises(SeqPreconditionError) as info:
        match_word_quasiroots("aabaab", ("", "aab", 2, ""), ("a", "aba", 1, "ab"), 1, 2)
    assert "|w| - (A+B) >= 2|w1|" in info.value.failed
