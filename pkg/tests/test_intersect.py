import pytest

from amalgams.errors import DomainError, NotHyperbolicError
from amalgams.fuchsian.genus2 import covering_radius, dirichlet_generators, double_across_boundary
from amalgams.fuchsian.intersect import (
    geometric_intersection,
    geometric_intersection_axes,
    geometric_intersection_cocompact,
)
from amalgams.fuchsian.matrices import Mat2
from amalgams.fuchsian.torus import build_one_holed_torus
from amalgams.fuchsian.words import algebraic_intersection, homology_class, twist_word
from amalgams.hypkernel import ASINH1, symmetric_torus_side

SURR = symmetric_torus_side(2 * ASINH1)


@pytest.fixture(scope="module")
def torus():
    return build_one_holed_torus(SURR, SURR)


@pytest.mark.parametrize("gamma,beta,expected", [
    ("a", "b", 1),
    ("a", "a", 0),
    ("ab", "aB", 2),
    ("aab", "b", 2),
    ("abAB", "a", 0),
])
def test_small_pairs(torus, gamma, beta, expected):
    assert geometric_intersection_axes(torus, gamma, beta) == expected


def test_symmetric(torus):
    g, b = twist_word("a", "b", 2), twist_word("b", "a", 1)
    assert geometric_intersection_axes(torus, g, b) == geometric_intersection_axes(torus, b, g)


@pytest.mark.parametrize("gamma,beta", [("aab", "abb"), ("aaB", "ab"), ("abAAB", "b")])
def test_geometric_dominates_algebraic(torus, gamma, beta):
    alg = abs(algebraic_intersection(homology_class(gamma), homology_class(beta)))
    assert geometric_intersection_axes(torus, gamma, beta) >= alg


def test_parabolic_rejected(torus):
    with pytest.raises(NotHyperbolicError):
        geometric_intersection(torus.generators, Mat2(1.0, 1.0, 0.0, 1.0), torus.matrix("a"), 2)


def test_precision_guard():
    S = double_across_boundary(build_one_holed_torus(SURR, SURR))
    rho = covering_radius(S)
    gens = dirichlet_generators(S, rho)
    long = S.matrix("ab" * 8 + "c")
    with pytest.raises(DomainError):
        geometric_intersection_cocompact(gens, rho, long, S.matrix("ab" * 4))
