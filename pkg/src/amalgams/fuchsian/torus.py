"""One-holed torus groups and exact enumeration of their closed geodesics.

The representation puts the axis of A on the imaginary axis and the axis of
B on the unit circle, so the two axes meet orthogonally at i. When the
boundary is a genuine geodesic (b > 0) the four half-planes

    H_a = {|z| >= e^(s/2)},            H_A = {|z| <= e^(-s/2)},
    H_b = B^(1/2) of {Re z >= 0},      H_B = B^(-1/2) of {Re z <= 0}

are pairwise disjoint and form a ping-pong table; adjacent boundary lines
sit at distance b/4 and opposite ones at distance s or u. The axis of a
cyclically reduced word crosses one translate of the complement per letter,
which gives the certified length lower bounds used to prune the search.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ..config import Deadline
from ..errors import BudgetExceeded, DomainError
from ..hypkernel import boundary_length
from .matrices import Mat2, cayley_angle, trace_to_length, with_inverses, word_to_matrix
from .words import ALPHABET, _key, canonical, homology_class, inverse_letter, is_proper_power

WINDOW = 3  # longest letter window used by the pruning bound


@dataclass(frozen=True)
class GeodesicClass:
    word: str
    length: float
    trace: float
    homology: tuple
    primitive: bool = True
    syllables: tuple = ()

    def sort_key(self):
        return (round(self.length, 9), _key(self.word))


@dataclass(frozen=True)
class TorusRep:
    A: Mat2
    B: Mat2
    s: float
    u: float
    bdry: float
    generators: dict = field(repr=False, compare=False, hash=False, default=None)

    @property
    def cusped(self):
        return self.bdry < 1e-9

    def matrix(self, word):
        return word_to_matrix(word, self.generators)

    def length(self, word):
        return trace_to_length(self.matrix(word))

    def commutator(self):
        return self.matrix("abAB")


def build_one_holed_torus(s, u):
    """One-holed torus with orthogonal curves a, b of lengths s, u meeting at i."""
    if s <= 0 or u <= 0:
        raise DomainError(f"curve lengths must be positive, got s={s!r}, u={u!r}")
    bdry = boundary_length(s, u)
    A = Mat2(math.exp(s / 2), 0.0, 0.0, math.exp(-s / 2))
    ch, sh = math.cosh(u / 2), math.sinh(u / 2)
    B = Mat2(ch, sh, sh, ch)
    return TorusRep(A, B, s, u, bdry, with_inverses({"a": A, "b": B}))


# ---- ping-pong geometry ------------------------------------------------------


def _half_plane_lines(rep):
    """Boundary line of each ping-pong half-plane as a pair of endpoints on R."""
    ea = math.exp(rep.s / 2)
    t = math.tanh(rep.u / 4)
    return {
        "a": (-ea, ea),
        "A": (-1 / ea, 1 / ea),
        "b": (t, 1 / t),
        "B": (-1 / t, -t),
    }


def _chord(x, y):
    return abs(math.sin((cayley_angle(x) - cayley_angle(y)) / 2))


def line_distance(l1, l2):
    """Distance between two geodesics given by endpoint pairs; 0 if they meet."""
    (x1, x2), (y1, y2) = l1, l2
    th = [cayley_angle(v) % (2 * math.pi) for v in (x1, x2, y1, y2)]
    lo, hi = sorted(th[:2])
    if (lo < th[2] < hi) != (lo < th[3] < hi):
        return 0.0
    num = _chord(x1, y1) * _chord(x2, y2)
    den = _chord(x1, y2) * _chord(x2, y1)
    if num == 0 or den == 0:
        return 0.0
    chi = min(num / den, den / num)
    t = math.sqrt(chi)  # tanh(d/2)
    if t >= 1.0:
        return 0.0
    return math.log((1 + t) / (1 - t))


def window_bounds(rep, k_max=WINDOW):
    """Certified lower bounds for axis length spent across windows of letters.

    For a window x_0 x_1 ... x_k the axis crosses the line bounding H_{x_0^-1}
    and then, k translates later, x_1...x_{k-1} applied to the line bounding
    H_{x_k}; their distance is returned keyed by the window string. Summing
    the k-windows cyclically and dividing by k bounds the translation length.
    """
    lines = _half_plane_lines(rep)
    gens = rep.generators
    letters = "aAbB"
    tables = {}
    for k in range(1, k_max + 1):
        table = {}
        for win in itertools.product(letters, repeat=k + 1):
            if any(win[i] == inverse_letter(win[i + 1]) for i in range(k)):
                continue
            first = lines[inverse_letter(win[0])]
            g = word_to_matrix("".join(win[1:k]), gens)
            last = tuple(g.act(x) for x in lines[win[k]])
            table["".join(win)] = line_distance(first, last)
        tables[k] = table
    return tables


def two_letter_delta(rep):
    """min over reduced two-letter words vw of l(vw)/2 (not a certified bound)."""
    best = math.inf
    for v, w in itertools.product("aAbB", repeat=2):
        if v != inverse_letter(w):
            best = min(best, rep.length(v + w) / 2)
    return best


def per_letter_bound(rep):
    """Certified per-letter length lower bound min(s, u, b/4); 0 when cusped."""
    return min(rep.s, rep.u, rep.bdry / 4)


def completeness_horizon(rep, L):
    """Word length beyond which no class of length <= L can occur."""
    delta = per_letter_bound(rep)
    if delta <= 0:
        delta = two_letter_delta(rep)
    return max(1, math.ceil(L / delta))


# ---- enumeration -------------------------------------------------------------


def _cyclic_lower_bound(word, tables):
    n = len(word)
    best = 0.0
    ww = word * (WINDOW + 1)
    for k, table in tables.items():
        total = sum(table[ww[j : j + k + 1]] for j in range(n))
        best = max(best, total / k)
    return best


def classify(rep, word):
    m = rep.matrix(word)
    return GeodesicClass(
        word=word,
        length=trace_to_length(m),
        trace=abs(m.trace),
        homology=homology_class(word, 2),
        primitive=not is_proper_power(word),
    )


def enumerate_classes_free(rep, L, max_word_length=40, deadline=None):
    """All unoriented primitive classes of translation length <= L, sorted.

    Depth-first search over reduced words whose first letter is the smallest
    letter present (a necessary condition for being canonical), pruned by the
    window lower bounds. Around a cusp those bounds vanish: words can wind
    (abAB)^n with length growing only like 2 log n. There the search starts
    at the word-length horizon ceil(L / delta), delta the two-letter
    displacement proxy, and adds one commutator (4 letters) at a time until
    the class set is unchanged, which is a stability check, not a proof.
    """
    if L <= 0:
        raise DomainError(f"L must be positive, got {L!r}")
    deadline = deadline or Deadline()
    tables = window_bounds(rep)
    if not rep.cusped:
        return _search_free(rep, L, tables, max_word_length, deadline, strict=True)
    cap = min(max_word_length, completeness_horizon(rep, L))
    prev = _search_free(rep, L, tables, cap, deadline, strict=False)
    while True:
        if cap + 4 > max_word_length:
            raise BudgetExceeded(
                f"cusped enumeration did not stabilise within word length {max_word_length}",
                horizon=None,
            )
        cap += 4
        cur = _search_free(rep, L, tables, cap, deadline, strict=False)
        if [c.word for c in cur] == [c.word for c in prev]:
            return cur
        prev = cur


def _search_free(rep, L, tables, cap, deadline, strict):
    gens = rep.generators
    found = {}
    hit_cap = []
    calls = [0]

    def extend(word, sums, ch):
        w2 = word + ch
        new = dict(sums)
        for k, table in tables.items():
            if len(w2) >= k + 1:
                new[k] = new.get(k, 0.0) + table[w2[-(k + 1) :]]
                if new[k] / k > L + 1e-9:
                    return None
        return new

    def visit(word, m, sums, allowed):
        n = len(word)
        calls[0] += 1
        if calls[0] % 4096 == 0:
            deadline.check("free-group enumeration", horizon=None)
        if n < 2 or word[0] != inverse_letter(word[-1]):
            if is_hyperbolic_trace(m) and not is_proper_power(word) and word == canonical(word):
                if trace_to_length(m) <= L + 1e-12:
                    found[word] = classify(rep, word)
        for ch in allowed:
            if ch == inverse_letter(word[-1]):
                continue
            new = extend(word, sums, ch)
            if new is None:
                continue
            if n == cap:
                if strict:
                    hit_cap.append(max([v / k for k, v in new.items()] + [0.0]))
                continue
            m2 = m @ gens[ch]
            if (n + 1) % 32 == 0:
                m2 = m2.renormalized()
            visit(word + ch, m2, new, allowed)

    for first in "ab":
        allowed = [ch for ch in "aAbB" if ALPHABET.index(ch.lower()) >= ALPHABET.index(first)]
        visit(first, gens[first], {}, allowed)

    if hit_cap:
        raise BudgetExceeded(
            f"word-length budget {cap} reached below L={L:g}; "
            f"output is complete only up to length {min(hit_cap):.6g}",
            horizon=min(hit_cap),
        )
    return sorted(found.values(), key=GeodesicClass.sort_key)


def is_hyperbolic_trace(m):
    return abs(m.trace) > 2.0 + 1e-12


def lengths_bulk(rep, words):
    """Translation lengths for many words at once (inf for non-hyperbolic)."""
    out = np.empty(len(words))
    for i, w in enumerate(words):
        m = rep.matrix(w)
        out[i] = trace_to_length(m) if is_hyperbolic_trace(m) else math.inf
    return out
