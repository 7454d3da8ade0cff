import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from amalgams.errors import ConstructionError
from amalgams.fuchsian.genus2 import (
    covering_radius,
    dirichlet_generators,
    double_across_boundary,
    enumerate_classes_genus2,
    normal_form,
    syllable_intersection,
)
from amalgams.fuchsian.intersect import geometric_intersection_cocompact
from amalgams.fuchsian.search import ball_elements
from amalgams.fuchsian.torus import build_one_holed_torus
from amalgams.hypkernel import ASINH1, symmetric_torus_side

SURR = symmetric_torus_side(2 * ASINH1)


@pytest.fixture(scope="module")
def S():
    return double_across_boundary(build_one_holed_torus(SURR, SURR))


@pytest.fixture(scope="module")
def geo(S):
    rho = covering_radius(S)
    return rho, dirichlet_generators(S, rho)


def test_cusped_torus_has_no_double():
    with pytest.raises(ConstructionError):
        double_across_boundary(build_one_holed_torus(2 * ASINH1, 2 * ASINH1))


def test_relation_holds(S):
    m = S.matrix("abABdcDC").array()
    assert np.allclose(np.abs(m), np.eye(2), atol=1e-9)


@pytest.mark.parametrize("s,u", [(1.83, 1.83), (1.9, 1.9), (1.5, 2.5), (1.0, 3.0)])
def test_double_generic_sides(s, u):
    # the boundary element is nearly diagonal here; its fixed points must not be noise
    D = double_across_boundary(build_one_holed_torus(s, u))
    assert np.allclose(np.abs(D.matrix("abABdcDC").array()), np.eye(2), atol=1e-9)
    assert D.length("abAB") == pytest.approx(D.bdry, rel=1e-10)


def test_mirror_lengths(S):
    for w, v in (("a", "c"), ("b", "d"), ("ab", "cd"), ("aB", "cD")):
        assert S.length(w) == pytest.approx(S.length(v), rel=1e-12)
    assert S.length("abAB") == pytest.approx(S.bdry, rel=1e-12)


def test_counts_pinned(S):
    # regression values from the full enumeration
    assert len(enumerate_classes_genus2(S, 6.0)) == 37


def test_counts_stable_under_slack_doubling(S, geo):
    rho, _ = geo
    a = enumerate_classes_genus2(S, 6.0)
    b = enumerate_classes_genus2(S, 6.0, slack=2 * rho)
    # representatives may differ, the length spectrum may not
    assert len(a) == len(b)
    assert np.allclose([c.length for c in a], [c.length for c in b], rtol=1e-9)
    assert all(S.length(c.word) == pytest.approx(c.length, rel=1e-9) for c in b)


def test_classes_distinct_and_primitive(S):
    out = enumerate_classes_genus2(S, 6.0)
    lengths = [round(c.length, 9) for c in out]
    assert lengths == sorted(lengths)
    assert min(lengths) == pytest.approx(S.bdry, rel=1e-9)
    for c in out:
        assert S.length(c.word) == pytest.approx(c.length, rel=1e-9)


@pytest.mark.parametrize("word,expected", [
    ("a", 0), ("ab", 0), ("abAB", 0), ("ac", 2), ("abcd", 2), ("acbd", 4), ("aCbD", 4),
])
def test_syllable_intersection(word, expected):
    assert syllable_intersection(word) == expected


def test_edge_syllables_are_absorbed():
    # abAB is the boundary, so abAB c reduces into the right factor
    assert len(normal_form("abABc")) == 1


def test_syllable_count_matches_geometry(S, geo):
    rho, gens = geo
    beta = S.matrix("abAB")
    for c in enumerate_classes_genus2(S, 5.5):
        if c.word == "abAB":
            continue
        geom = geometric_intersection_cocompact(gens, rho, S.matrix(c.word), beta)
        assert geom == syllable_intersection(c.word), c.word


def test_dirichlet_ball_matches_word_ball(S, geo):
    rho, gens = geo
    r = 4.0
    big = ball_elements(S.generators, r + 6.0)
    ref = np.sort(big.cosh_disp[big.within(r)])
    got = ball_elements(gens, r)
    assert got.complete
    assert np.allclose(np.sort(got.cosh_disp), ref)


@settings(max_examples=20, deadline=None)
@given(st.text(alphabet="aAbBcCdD", min_size=1, max_size=8))
def test_normal_form_is_conjugation_invariant(w):
    assert syllable_intersection(w) == syllable_intersection("c" + w + "C")
