import json
import warnings
from collections import Counter
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from recurlab.words import (
    CONTEXT_FREE,
    POSSIBLY_NOT,
    MaterializationCapError,
    WordSystem,
    algorithm_A_permutation,
    apply_algorithm_A_system,
    apply_permutation,
    direct_kgram_counts,
    grammar_condition_classify,
    kgram_frequencies,
    lag_set_root,
    letter_frequency_limits,
    permuted_system,
)

PRINTED = ["A", "AB", "CA", "AAB", "ABCA", "CAAAB", "AABABCA", "ABCACAAAB"]


def abc():
    return WordSystem(("A", "AB", "CA"), (3, 2))


def test_printed_words():
    s = abc()
    assert s.words(8) == PRINTED
    assert s.word(9) == s.word(6) + s.word(7)


def test_fibonacci_words():
    assert WordSystem(("A", "B"), (2, 1)).words(5) == ["A", "B", "AB", "BAB", "ABBAB"]


def test_self_copy():
    assert WordSystem(("A",), (1,)).words(4) == ["A"] * 4


def test_lengths():
    s = abc()
    assert [s.length(p) for p in range(1, 11)] == [1, 2, 2, 3, 4, 5, 7, 9, 12, 16]


def test_next_word_metadata_and_cap():
    s = WordSystem(("A", "AB", "CA"), (3, 2), cap=20)
    s.extend(9)
    meta = s.next_word()
    assert meta["p"] == 10 and meta["length"] == 16 and meta["word"] is not None
    s.extend(14)
    with pytest.raises(MaterializationCapError):
        s.word(14)
    assert sum(s.letter_counts(14).values()) == s.length(14)


def test_letter_limits():
    lim = letter_frequency_limits(abc(), 60)
    assert abs(lim.length_ratio - lim.dominant_root) < 1e-8
    assert mpmath.nstr(lim.dominant_root, 10) == "1.324717957"
    assert sum(lim.frequencies.values()) == 1
    assert all(d < 1e-9 for d in lim.differences.values())
    with pytest.raises(ValueError):
        letter_frequency_limits(abc(), 6)


def test_single_letter_frequency():
    s = WordSystem(("A", "A"), (2, 1))
    lim = letter_frequency_limits(s, 20)
    assert lim.frequencies == {"A": 1}


def test_bigram_example():
    t = kgram_frequencies(abc(), 2, 6)
    assert t.counts[6] == Counter({"CA": 1, "AA": 2, "AB": 1})
    assert t.frequencies(6)["AA"] == Fraction(1, 2)


def test_unigrams_match_letter_counts():
    s = abc()
    t = kgram_frequencies(s, 1, 30)
    assert all(dict(t.counts[p]) == {c: v for c, v in s.letter_counts(p).items() if v} for p in range(1, 31))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_incremental_kgrams_match_scan(k):
    s = abc()
    t = kgram_frequencies(s, k, 30)
    for p in range(1, 31):
        assert t.counts[p] == direct_kgram_counts(s.word(p), k)


def test_kgram_at_40():
    s = abc()
    t = kgram_frequencies(s, 2, 40)
    assert t.counts[40] == direct_kgram_counts(s.word(40), 2)


words_strategy = st.lists(st.text("ABC", min_size=1, max_size=4), min_size=1, max_size=4)


@settings(max_examples=40)
@given(words_strategy, st.data())
def test_kgrams_property(init, data):
    n = len(init)
    lags = sorted(set(data.draw(st.lists(st.integers(1, n), max_size=3))) | {n})
    order = data.draw(st.permutations(lags))
    k = data.draw(st.integers(1, 4))
    s = WordSystem(tuple(init), tuple(lags), tuple(order))
    t = kgram_frequencies(s, k, 22)
    for p in range(1, 23):
        w = s.word(p)
        assert t.counts[p] == direct_kgram_counts(w, k)
        assert s.length(p) == len(w)


@settings(max_examples=40)
@given(words_strategy, st.integers(8, 40))
def test_frequencies_sum_to_one(init, p):
    s = WordSystem(tuple(init), (len(init),) if len(init) == 1 else (1, len(init)))
    counts = s.letter_counts(p)
    assert sum(Fraction(v, s.length(p)) for v in counts.values()) == 1


def test_permuted_system():
    assert permuted_system("ABC", (2, 3, 1)).word(4) == "BAC"
    assert permuted_system(("A", "AB", "CA"), (3, 2)).words(8) == PRINTED
    plain = WordSystem(("A", "B"), (2, 1))
    swapped = permuted_system(("A", "B"), (1, 2))
    assert plain.word(3) != swapped.word(3)


def test_algorithm_a():
    assert algorithm_A_permutation(3) == (1, 3, 2)
    assert algorithm_A_permutation(4) == (4, 3, 1, 2)
    with pytest.warns(UserWarning):
        assert algorithm_A_permutation(2) == (1, 2)
    with pytest.raises(ValueError):
        algorithm_A_permutation(9)


def test_algorithm_a_system():
    run = apply_algorithm_A_system("ABC", 8)
    assert run.words[3] == "BCA"
    assert run.words[4] == "C" + apply_permutation("BCA", (1, 3, 2)) + "B"
    assert run.stopped_at is not None
    for p in range(4, len(run.words) + 1):
        w = run.words[p - 1]
        assert Counter(w) == Counter(run.words[p - 3]) + Counter(run.words[p - 2]) + Counter(run.words[p - 4])


def test_algorithm_a_changes_kgrams():
    run = apply_algorithm_A_system("ABC", 6)
    plain = permuted_system("ABC", (2, 1, 3))
    assert direct_kgram_counts(run.words[4], 2) != direct_kgram_counts(plain.word(5), 2)


def test_grammar_condition():
    assert grammar_condition_classify(["A", "B", "C"]) == CONTEXT_FREE
    assert grammar_condition_classify(["A", "AB", "CA"]) == POSSIBLY_NOT
    assert grammar_condition_classify(["A", "A"]) == POSSIBLY_NOT


def test_config_round_trip():
    s = abc()
    again = WordSystem.from_config(s.to_json())
    assert again.words(8) == PRINTED
    with pytest.raises(ValueError):
        WordSystem.from_config({"init_words": ["A"], "lags": [1], "permuted_middle": True})


def test_csv():
    text = kgram_frequencies(abc(), 2, 6).to_csv([6]).splitlines()
    assert text[0] == "p,gram,count,frequency" and "6,AA,2,1/2" in text


def test_lag_set_root():
    with mpmath.workdps(50):
        assert abs(lag_set_root([2, 3]) - mpmath.mpf("1.3247179572447460259609")) < mpmath.mpf(10) ** -20
