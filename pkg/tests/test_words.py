from hypothesis import given, strategies as st

from amalgams.fuchsian.words import (
    algebraic_intersection,
    canonical,
    cyclic_reduce,
    free_reduce,
    homology_class,
    inverse,
    is_canonical,
    is_proper_power,
    twist_word,
)

words = st.text(alphabet="aAbB", max_size=12)
words4 = st.text(alphabet="aAbBcCdD", max_size=10)


@given(words)
def test_free_reduce_idempotent(w):
    assert free_reduce(free_reduce(w)) == free_reduce(w)


@given(words)
def test_inverse_cancels(w):
    assert free_reduce(w + inverse(w)) == ""


@given(words4, st.integers(0, 12))
def test_canonical_invariant_under_rotation_and_inversion(w, r):
    w = cyclic_reduce(w)
    if not w:
        return
    r %= len(w)
    rot = w[r:] + w[:r]
    assert canonical(rot) == canonical(w) == canonical(inverse(w))
    assert is_canonical(canonical(w))


@given(words4, words4)
def test_canonical_invariant_under_conjugation(w, h):
    assert canonical(h + w + inverse(h)) == canonical(w)


@given(words4)
def test_homology_is_conjugation_invariant(w):
    assert homology_class(cyclic_reduce(w), 4) == homology_class(w, 4)


def test_proper_powers():
    assert is_proper_power("abab")
    assert is_proper_power("aaa")
    assert not is_proper_power("aab")
    assert not is_proper_power("a")


def test_twist_words():
    assert twist_word("b", "a", 3) == "baaa"
    assert twist_word("a", "b", 2) == "aBB"


def test_twist_intersection_formula():
    for k in range(5):
        for kp in range(5):
            h1 = homology_class(twist_word("a", "b", kp))
            h2 = homology_class(twist_word("b", "a", k))
            assert abs(algebraic_intersection(h1, h2)) == k * kp + 1


def test_doubled_pairing_sign():
    # (a, b) and (d, c) are symplectic pairs
    assert algebraic_intersection((1, 0, 0, 0), (0, 1, 0, 0)) == 1
    assert algebraic_intersection((0, 0, 0, 1), (0, 0, 1, 0)) == 1


def test_fixed_points_of_nearly_diagonal_matrix():
    from amalgams.fuchsian.matrices import Mat2

    m = Mat2(-2.413056429530503, 1.6e-14, -1.1e-14, -0.4144121901842803)
    rep, att = m.fixed_points()
    small = min(rep, att, key=abs)
    assert abs(small) < 1e-13
    for x in (rep, att):
        assert abs(m.a * x + m.b - x * (m.c * x + m.d)) <= 1e-12 * max(1.0, x * x)
