"""Words in signed generators and their conjugacy-class identity.

A word is a plain string: a lowercase letter is a generator, the uppercase
letter its inverse. Unoriented free-homotopy classes are represented by the
canonical cyclic word, the minimum over all rotations of the word and of
its inverse under the alphabet order a < A < b < B < c < C < d < D.
"""

from dataclasses import dataclass

from ..errors import UnsupportedTwistError

ALPHABET = "aAbBcCdD"
_RANK = {ch: i for i, ch in enumerate(ALPHABET)}


def inverse_letter(ch):
    return ch.lower() if ch.isupper() else ch.upper()


def inverse(word):
    return "".join(inverse_letter(ch) for ch in reversed(word))


def free_reduce(word):
    out = []
    for ch in word:
        if out and out[-1] == inverse_letter(ch):
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def cyclic_reduce(word):
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == inverse_letter(w[j - 1]):
        i += 1
        j -= 1
    return w[i:j]


def is_reduced(word):
    return all(word[i] != inverse_letter(word[i + 1]) for i in range(len(word) - 1))


def is_cyclically_reduced(word):
    return is_reduced(word) and (len(word) < 2 or word[0] != inverse_letter(word[-1]))


def _key(word):
    return tuple(_RANK[ch] for ch in word)


def canonical(word):
    """Canonical representative of the unoriented conjugacy class of `word`."""
    w = cyclic_reduce(word)
    if not w:
        return w
    best = None
    for cand in (w, inverse(w)):
        for i in range(len(cand)):
            rot = cand[i:] + cand[:i]
            k = _key(rot)
            if best is None or k < best[0]:
                best = (k, rot)
    return best[1]


def is_canonical(word):
    return word == canonical(word)


def is_proper_power(word):
    """True if the cyclically reduced word is v^n for some n >= 2."""
    w = cyclic_reduce(word)
    return len(w) > 1 and (w + w).find(w, 1) < len(w)


def homology_class(word, rank=None):
    """Exponent-sum vector of `word` in the abelianisation."""
    if rank is None:
        rank = 4 if any(ch in "cCdD" for ch in word) else 2
    vec = [0] * rank
    for ch in word:
        idx = ALPHABET.index(ch.lower()) // 2
        vec[idx] += -1 if ch.isupper() else 1
    return tuple(vec)


def algebraic_intersection(h1, h2):
    """Symplectic pairing of two homology classes.

    Pairs are on the one-holed torus basis (a, b). For the doubled torus
    (a, b, c, d) the relation [a, b] = [c, d] makes (a, b), (d, c) a
    symplectic basis, so the second block enters with a minus sign.
    """
    if len(h1) != len(h2) or len(h1) not in (2, 4):
        raise ValueError("homology classes must both be pairs or both be 4-tuples")
    out = h1[0] * h2[1] - h1[1] * h2[0]
    if len(h1) == 4:
        out -= h1[2] * h2[3] - h1[3] * h2[2]
    return out


def twist_word(target, twister, k):
    """Word of the k-fold positive Dehn twist of a base curve about its dual.

    Both twists have the same handedness: T_a(b) = b a and T_b(a) = a b^-1,
    so [b_k] = [b] + k[a] and [a_k] = [a] - k[b]. With this convention
    |<a_k', b_k>| = k k' + 1.
    """
    if int(k) != k or k < 0:
        raise UnsupportedTwistError(f"twist count must be >= 0, got {k!r}")
    target, twister = str(target), str(twister)
    if (target, twister) == ("b", "a"):
        return "b" + "a" * k
    if (target, twister) == ("a", "b"):
        return "a" + "B" * k
    raise UnsupportedTwistError(
        f"only twists of a about b and of b about a are supported, got {target!r} about {twister!r}"
    )


@dataclass(frozen=True, order=True)
class CyclicWord:
    letters: str

    @classmethod
    def of(cls, word):
        return cls(canonical(word))

    @property
    def reduced(self):
        return is_reduced(self.letters)

    @property
    def cyclically_reduced(self):
        return is_cyclically_reduced(self.letters)

    @property
    def primitive(self):
        return not is_proper_power(self.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters
