from __future__ import annotations

import string

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asckit.metrics import bleu, csr


def test_identical_texts():
    text = "Version 4\nSHEET 1 880 680\nWIRE 0 0 16 0"
    assert bleu(text, text) == pytest.approx(1.0, abs=1e-12)


def test_empty_candidate():
    assert bleu("", "WIRE 0 0 16 0") == 0.0


def test_hand_derived_fixture():
    # Precisions 4/5, 3/4, 2/3, 1/2; geometric mean (0.2)^(1/4); BP = 1.
    value = bleu("WIRE 0 0 16 16", "WIRE 0 0 16 0")
    assert value == pytest.approx(0.6687, abs=1e-3)
    assert value == pytest.approx((4 / 5 * 3 / 4 * 2 / 3 * 1 / 2) ** 0.25, abs=1e-12)


def test_short_candidate_scores_zero():
    assert bleu("WIRE 0 0", "WIRE 0 0") == 0.0


def test_brevity_penalty_applied():
    ref = "a b c d e f g h"
    cand = "a b c d"
    # Precisions are 1 for n<=4; only the brevity penalty remains.
    import math

    assert bleu(cand, ref) == pytest.approx(math.exp(1 - 8 / 4), abs=1e-12)


def test_no_overlap_scores_zero():
    assert bleu("a b c d", "w x y z") == 0.0


tokens = st.lists(st.sampled_from(list(string.ascii_lowercase)), min_size=4, max_size=12)


@given(tokens, tokens)
def test_bleu_bounded(cand, ref):
    value = bleu(" ".join(cand), " ".join(ref))
    assert 0.0 <= value <= 1.0


@given(tokens, tokens)
def test_bleu_invariant_under_consistent_renaming(cand, ref):
    mapping = {c: f"tok{i}" for i, c in enumerate(string.ascii_lowercase)}
    renamed_cand = " ".join(mapping[t] for t in cand)
    renamed_ref = " ".join(mapping[t] for t in ref)
    assert bleu(" ".join(cand), " ".join(ref)) == pytest.approx(
        bleu(renamed_cand, renamed_ref), abs=1e-12
    )


def test_csr_fractional_rate():
    outcomes = [True] * 89 + [False] * 28
    assert csr(outcomes) == pytest.approx(0.7607, abs=1e-4)


def test_csr_all_and_none():
    assert csr([True, True]) == 1.0
    assert csr([False, False]) == 0.0


def test_csr_empty_is_error():
    with pytest.raises(ValueError):
        csr([])
