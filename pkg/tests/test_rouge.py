import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxcov.rouge import RougeError, corpus_rouge, rouge1, rouge1_multi

VOCAB = list("abcdefgh")
tokens = st.lists(st.sampled_from(VOCAB), max_size=15)


def test_identity():
    ref = ["the", "cat", "sat", "on", "the", "mat"]
    assert rouge1(ref, ref).value == 1.0


def test_half_recall():
    s = rouge1(["the", "cat", "sat"], ["the", "cat", "ran", "far"])
    assert abs(s.value - 0.5) < 1e-12
    assert (s.match_count, s.reference_length) == (2, 4)


def test_disjoint():
    assert rouge1(["dog"], ["cat", "mouse"]).value == 0.0
    assert rouge1([], ["cat"]).value == 0.0


def test_clipping():
    # "the" appears twice in the reference but once in the summary
    assert abs(rouge1(["the", "cat"], ["the", "the", "cat"]).value - 2 / 3) < 1e-12
    assert abs(rouge1(["the", "the", "the"], ["the", "cat"]).value - 0.5) < 1e-12


def test_set_mode():
    s = rouge1(["the", "cat"], ["the", "the", "cat", "ran"], mode="set")
    assert abs(s.value - 2 / 3) < 1e-12
    assert s.reference_length == 3


def test_multi_reference_mean():
    assert abs(rouge1_multi(["a", "b"], [["a", "c", "d", "e", "f"], ["a", "b", "x", "y", "z"]]) - 0.3) < 1e-12


def test_four_reference_fixture():
    summary = ["a", "b", "c"]
    refs = [["a", "b"], ["a", "x"], ["x", "y"], ["a", "a", "b", "c"]]
    # 1, 1/2, 0, 3/4
    assert abs(rouge1_multi(summary, refs) - 0.5625) < 1e-12
    assert abs(rouge1_multi(summary, refs, "set") - (1 + 0.5 + 0 + 1) / 4) < 1e-12


def test_corpus_mean():
    assert abs(corpus_rouge([0.2, 0.4, 0.9]) - 0.5) < 1e-12


def test_errors():
    with pytest.raises(RougeError):
        rouge1(["a"], [])
    with pytest.raises(RougeError):
        rouge1_multi(["a"], [])
    with pytest.raises(RougeError):
        rouge1(["a"], ["a"], mode="bigram")
    with pytest.raises(RougeError):
        corpus_rouge([])


def test_random_pairs_bounds_and_monotonicity():
    rng = random.Random(7)
    for _ in range(1000):
        ref = rng.choices(VOCAB, k=rng.randint(1, 12))
        summ = rng.choices(VOCAB, k=rng.randint(0, 12))
        extra = rng.choices(VOCAB, k=rng.randint(1, 4))
        for mode in ("multiset", "set"):
            r = rouge1(summ, ref, mode).value
            assert 0.0 <= r <= 1.0
            assert rouge1(summ + extra, ref, mode).value >= r


@given(tokens, tokens.filter(bool), st.randoms(use_true_random=False))
def test_order_invariance(summ, ref, rnd):
    shuffled = list(summ)
    rnd.shuffle(shuffled)
    assert rouge1(shuffled, ref).value == rouge1(summ, ref).value


@given(tokens.filter(bool))
def test_superset_summary_scores_one(ref):
    assert rouge1(ref + ["zzz"], ref).value == 1.0
