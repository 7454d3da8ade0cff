import math

import pytest
from hypothesis import given, settings, strategies as st

from amalgams.errors import BudgetExceeded, DomainError
from amalgams.fuchsian.matrices import trace_to_length
from amalgams.fuchsian.torus import build_one_holed_torus, enumerate_classes_free
from amalgams.fuchsian.words import twist_word
from amalgams.hypkernel import ASINH1, symmetric_torus_side, twisted_length

from oracles import brute_force_classes, mp_generators, mp_length

SURR = symmetric_torus_side(2 * ASINH1)


@pytest.mark.parametrize("s,u", [(SURR, SURR), (1.0, 3.0), (2.6, 1.9)])
def test_words_of_length_le_6_agree_with_brute_force(s, u):
    rep = build_one_holed_torus(s, u)
    L = 7.0
    got = {c.word: c.length for c in enumerate_classes_free(rep, L) if len(c.word) <= 6}
    ref = brute_force_classes(s, u, L, 6)
    assert set(got) == set(ref)
    for w in ref:
        assert got[w] == pytest.approx(ref[w], rel=1e-10)


def test_commutator_trace():
    rep = build_one_holed_torus(1.5, 2.1)
    c = rep.commutator()
    assert c.trace == pytest.approx(-2 * math.cosh(rep.bdry / 2), rel=1e-12)


def test_twist_lengths_match_trace():
    rep = build_one_holed_torus(0.6, 4.0)
    for k in range(5):
        m = rep.matrix(twist_word("b", "a", k))
        assert trace_to_length(m) == pytest.approx(twisted_length(k, 0.6, 4.0), rel=1e-12)


def test_output_sorted_and_unique():
    rep = build_one_holed_torus(SURR, SURR)
    out = enumerate_classes_free(rep, 6.0)
    keys = [c.sort_key() for c in out]
    assert keys == sorted(keys)
    assert len({c.word for c in out}) == len(out)
    assert all(c.primitive for c in out)


@settings(max_examples=10, deadline=None)
@given(st.floats(3.0, 6.0))
def test_counts_monotone_in_L(L):
    rep = build_one_holed_torus(SURR, SURR)
    assert len(enumerate_classes_free(rep, L)) <= len(enumerate_classes_free(rep, L + 0.5))


def test_lengths_agree_with_high_precision():
    rep = build_one_holed_torus(1.0, 3.0)
    gens = mp_generators(1.0, 3.0)
    for c in enumerate_classes_free(rep, 8.0):
        assert c.length == pytest.approx(float(mp_length(c.word, gens)), rel=1e-9)


def test_rejects_bad_input():
    rep = build_one_holed_torus(SURR, SURR)
    with pytest.raises(DomainError):
        enumerate_classes_free(rep, 0.0)
    with pytest.raises(BudgetExceeded):
        enumerate_classes_free(rep, 30.0, max_word_length=6)
