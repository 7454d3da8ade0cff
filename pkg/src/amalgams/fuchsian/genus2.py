"""The closed genus-2 surface obtained by doubling a one-holed torus.

After conjugation the boundary element C = [A, B] is diagonal, its axis is
the imaginary axis and the left limit set lies on one side of it. The mirror
factor is the image under the reflection z -> -conj(z), which acts on
matrices by (a, b; c, d) -> (a, -b; -c, d) and fixes C. Letters a, b generate
the left factor and c, d the right one, with the single relation
abAB = cdCD.

Conjugacy classes are found geometrically. Every class of length <= L has a
representative whose axis passes within delta of i once delta bounds the
distance from i to every point of the surface; all such representatives
move i by at most 2 arcsinh(cosh(delta) sinh(L/2)) and any two of them are
conjugate by an element moving i by at most 2 delta + L/2.
"""

import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from ..config import Deadline
from ..errors import ConstructionError, DomainError
from .intersect import normalizing_frame
from .matrices import (
    Mat2,
    abs_traces,
    axis_distance_to_i,
    cosh_displacement,
    inverse_stack,
    lengths_from_traces,
    trace_to_length,
    with_inverses,
    word_to_matrix,
)
from .search import ball_elements
from .torus import GeodesicClass, TorusRep
from .words import _key, canonical, cyclic_reduce, free_reduce, homology_class

LEFT, RIGHT = "aAbB", "cCdD"
EDGE = {LEFT: ("abAB", "baBA"), RIGHT: ("cdCD", "dcDC")}
MATCH_TOL = 1e-7


@dataclass(frozen=True)
class Genus2Rep:
    left: TorusRep
    right: TorusRep
    glue: Mat2
    frame: Mat2
    generators: dict = field(repr=False, compare=False, hash=False, default=None)
    alphabet: str = "abcd"

    @property
    def bdry(self):
        return self.left.bdry

    def matrix(self, word):
        return word_to_matrix(word, self.generators)

    def length(self, word):
        return trace_to_length(self.matrix(word))


def _reflect(m):
    return Mat2(m.a, -m.b, -m.c, m.d)


def _limit_side(rep, max_len=4):
    """+1 or -1: the side of the imaginary axis holding the limit set of `rep`."""
    signs = set()
    for n in range(1, max_len + 1):
        for w in itertools.product("aAbB", repeat=n):
            w = "".join(w)
            if w != free_reduce(w):
                continue
            m = rep.matrix(w)
            if not m.is_hyperbolic():
                continue
            for x in m.fixed_points():
                # endpoints of the boundary axis itself carry rounding noise
                if 1e-6 < abs(x) < 1e6:
                    signs.add(1 if x > 0 else -1)
    if len(signs) != 1:
        raise ConstructionError("factor limit set is not on one side of the boundary axis")
    return signs.pop()


def double_across_boundary(rep):
    """Genus-2 double of a one-holed torus along its boundary geodesic."""
    if rep.cusped:
        raise ConstructionError(
            f"boundary length {rep.bdry:.3g}: the boundary is a cusp, there is no geodesic to double along"
        )
    comm = rep.commutator()
    if not comm.is_hyperbolic():
        raise ConstructionError("commutator is not hyperbolic")
    n = normalizing_frame(comm)
    k = 1.0 / math.sqrt(abs(n.act(1j)))
    frame = Mat2(k, 0.0, 0.0, 1.0 / k) @ n

    def conj(m):
        return (frame @ m @ frame.inv()).renormalized()

    A1, B1 = conj(rep.A), conj(rep.B)
    left = TorusRep(A1, B1, rep.s, rep.u, rep.bdry, with_inverses({"a": A1, "b": B1}))
    _limit_side(left)
    A2, B2 = _reflect(A1), _reflect(B1)
    right = TorusRep(A2, B2, rep.s, rep.u, rep.bdry, with_inverses({"a": A2, "b": B2}))
    glue = left.commutator()
    other = right.commutator()
    diff = max(abs(x - y) for x, y in zip(
        (glue.a, glue.b, glue.c, glue.d), (other.a, other.b, other.c, other.d)))
    if diff > 1e-9 * max(1.0, abs(glue.a), abs(glue.d)):
        raise ConstructionError(f"factor commutators differ by {diff:.3g}")
    gens = with_inverses({"a": A1, "b": B1, "c": A2, "d": B2})
    return Genus2Rep(left, right, glue, frame, gens)


# ---- amalgam normal form -----------------------------------------------------


def _side(ch):
    return LEFT if ch in LEFT else RIGHT


def _edge_power(syl, side):
    """n if the reduced syllable equals C^n (C the boundary word of its side), else None."""
    w = free_reduce(syl)
    if not w:
        return 0
    for sgn, unit in zip((1, -1), EDGE[side]):
        n, r = divmod(len(w), 4)
        if r == 0 and w == unit * n:
            return sgn * n
    return None


def _syllables(word):
    word = cyclic_reduce(word)
    if not word:
        return []
    # rotate so that the word starts a syllable
    start = next((i for i in range(len(word)) if _side(word[i]) != _side(word[i - 1])), None)
    if start is None:
        return [word]
    word = word[start:] + word[:start]
    return ["".join(g) for _, g in itertools.groupby(word, key=_side)]


def normal_form(word):
    """Cyclic alternating normal form as a tuple of reduced syllables.

    Syllables lying in the boundary subgroup are moved across and merged with
    their neighbours until none is left; a single remaining syllable means
    the class lives in one factor.
    """
    syls = [(_side(w[0]), w) for w in _syllables(word)]
    while len(syls) > 1:
        hit = next(((i, n) for i, (side, w) in enumerate(syls)
                    if (n := _edge_power(w, side)) is not None), None)
        if hit is None:
            break
        i, n = hit
        other = RIGHT if syls[i][0] == LEFT else LEFT
        moved = EDGE[other][0 if n >= 0 else 1] * abs(n)
        k = len(syls)
        if k == 2:
            syls = [(other, free_reduce(syls[1 - i][1] + moved))]
        else:
            merged = free_reduce(syls[i - 1][1] + moved + syls[(i + 1) % k][1])
            rest = [syls[(i + 2 + t) % k] for t in range(k - 3)]
            syls = [(other, merged)] + rest
    return tuple(w for _, w in syls)


def syllable_intersection(word):
    """Crossings of the class of `word` with the separating curve."""
    nf = normal_form(word)
    return len(nf) if len(nf) >= 2 else 0


# ---- enumeration -------------------------------------------------------------

GRID_STEP = 0.05


def _orbit_points(mats):
    a, b, c, d = mats[:, 0, 0], mats[:, 0, 1], mats[:, 1, 0], mats[:, 1, 1]
    den = c * c + d * d
    return (b * d + a * c) / den, 1.0 / den


def covering_radius(rep, step=GRID_STEP, reach=3.5):
    """Upper bound on the distance from any point of the surface to the orbit of i.

    The distance to the orbit is 1-Lipschitz, so its maximum over a grid of
    mesh `step` on the disk of radius `reach` about i, plus `step`, bounds it
    on the Dirichlet domain, which is star-shaped about i and hence inside
    the disk whenever the grid maximum stays below reach - step.
    """
    ball = ball_elements(rep.generators, 2 * reach + 4.0)
    ox, oy = _orbit_points(ball.mats[ball.within(2 * reach)])
    best = 0.0
    for r in np.arange(0.0, reach + step / 2, step):
        n = max(1, math.ceil(2 * math.pi * math.sinh(r) / step))
        w = math.tanh(r / 2) * np.exp(2j * np.pi * np.arange(n) / n)
        z = 1j * (1 + w) / (1 - w)
        x, y = z.real[:, None], z.imag[:, None]
        ch = 1.0 + ((ox - x) ** 2 + (oy - y) ** 2) / (2.0 * oy * y)
        best = max(best, float(np.arccosh(ch.min(axis=1)).max()))
    if best >= reach - step:
        raise ConstructionError(f"covering radius exceeds the sampled reach {reach}")
    return best + step


def dirichlet_generators(rep, rho):
    """Every element moving i by at most 2 rho, labelled by a word.

    This set contains the face pairings of the Dirichlet domain about i. For
    g != 1 the point g(i) lies outside that domain, so some face pairing s
    has d(i, s^-1 g i) < d(i, g i): every element of a displacement ball is
    reached through prefixes that stay inside the ball.
    """
    ball = ball_elements(rep.generators, 2 * rho + 4.0)
    out = {}
    for j in ball.within(2 * rho):
        w = ball.word(j)
        if w:
            out[w] = Mat2.from_array(ball.mats[j])
    return out


def _near_radius(L, delta):
    """Largest d(i, g i) for l(g) <= L with axis within delta of i."""
    return 2.0 * math.asinh(math.cosh(delta) * math.sinh(L / 2.0))


def _match_tree(mats):
    """KD-tree over +-g and +-g^-1 so that lookups ignore sign and orientation."""
    flat = mats.reshape(len(mats), 4)
    inv = inverse_stack(mats).reshape(len(mats), 4)
    pts = np.concatenate([flat, -flat, inv, -inv])
    owner = np.tile(np.arange(len(mats)), 4)
    return cKDTree(pts), owner


def _lookup(tree, owner, mats):
    flat = mats.reshape(len(mats), 4)
    r = MATCH_TOL * np.maximum(1.0, np.abs(flat).max(axis=1))
    hits = tree.query_ball_point(flat, r)
    return [sorted({int(owner[j]) for j in h}) for h in hits]


def _roots(m, kmax):
    """p with p^k = +-m for k = 2..kmax, by Sylvester's formula on the eigenvalues."""
    m = m if m.trace > 0 else Mat2(-m.a, -m.b, -m.c, -m.d)
    t = m.trace / 2.0
    lam = t + math.sqrt(t * t - 1.0)
    den = lam - 1.0 / lam
    out = []
    for k in range(2, kmax + 1):
        mu = lam ** (1.0 / k)
        alpha = (mu - 1.0 / mu) / den
        beta = (lam / mu - mu / lam) / den
        out.append(alpha * m.array() + beta * np.eye(2))
    return np.array(out)


def enumerate_classes_genus2(rep, L, slack=None, max_elements=3_000_000, deadline=None):
    """Primitive unoriented classes of length <= L on the genus-2 double, sorted.

    `slack` is the basepoint radius delta; the default is the certified
    covering radius, which every closed geodesic comes within. Elements are
    enumerated up to displacement 2 arcsinh(cosh(delta) sinh(L/2)) <= L + 2 delta.
    """
    if L <= 0:
        raise DomainError(f"L must be positive, got {L!r}")
    deadline = deadline or Deadline()
    rho = covering_radius(rep)
    if slack is None:
        slack = rho
    if slack <= 0:
        raise DomainError(f"slack must be positive, got {slack!r}")
    conj_r = 2 * slack + L / 2 + 1e-9
    radius = max(_near_radius(L, slack), conj_r)
    gens = dirichlet_generators(rep, rho)
    ball = ball_elements(gens, radius, max_elements=max_elements, deadline=deadline)
    mats = ball.mats
    tr = abs_traces(mats)
    hyp = np.nonzero(tr > 2.0 + 1e-12)[0]
    ell = lengths_from_traces(tr[hyp])
    dist = axis_distance_to_i(mats[hyp])
    near = hyp[(ell <= L + 1e-9) & (dist <= slack + 1e-9)]
    if len(near) == 0:
        return []
    near_ell = lengths_from_traces(tr[near])
    order = np.lexsort((near, np.round(near_ell, 9)))
    near, near_ell = near[order], near_ell[order]
    near_mats = mats[near]
    tree, owner = _match_tree(near_mats)

    hs = mats[cosh_displacement(mats) <= math.cosh(conj_r)]
    hinv = inverse_stack(hs)
    sys_min = float(near_ell.min())

    label = -np.ones(len(near), dtype=int)
    classes = []
    for j in range(len(near)):
        if label[j] >= 0:
            continue
        deadline.check("genus-2 class search")
        g = near_mats[j]
        conj = np.einsum("nij,jk,nkl->nil", hs, g, hinv)
        close = conj[axis_distance_to_i(conj) <= slack + 1e-9]
        members = {j}
        for hit in _lookup(tree, owner, close):
            members.update(hit)
        stray = [i for i in members if label[i] >= 0]
        if stray:
            warnings.warn(f"class search: {len(stray)} elements matched two classes", RuntimeWarning)
        cid = len(classes)
        for i in members:
            label[i] = cid
        kmax = int(near_ell[j] / sys_min + 1e-9)
        primitive = True
        if kmax >= 2:
            roots = _roots(Mat2.from_array(g), kmax)
            primitive = not any(_lookup(tree, owner, roots))
        classes.append((j, sorted(members), primitive))

    out = []
    for j, members, primitive in classes:
        if not primitive:
            continue
        words = [canonical(ball.word(near[i])) for i in members]
        word = min(words, key=lambda w: (len(w), _key(w)))
        m = Mat2.from_array(near_mats[j])
        out.append(
            GeodesicClass(
                word=word,
                length=float(near_ell[j]),
                trace=abs(m.trace),
                homology=homology_class(word, 4),
                primitive=True,
                syllables=normal_form(word),
            )
        )
    return sorted(out, key=GeodesicClass.sort_key)
