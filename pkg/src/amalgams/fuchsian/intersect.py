"""Geometric intersection numbers from the axes of group elements.

Conjugate so that the axis of gamma is the imaginary axis with gamma
translating towards infinity. A translate h(axis beta) with endpoints
x1 < x2 crosses it iff x1 * x2 < 0, at height sqrt(-x1 x2). Crossings are
identified modulo <gamma> by the height taken modulo the translation length,
and lines through the same point are told apart by their direction
(x1 + x2)/(x2 - x1). The number of distinct pairs is i(gamma, beta).
"""

import math

import numpy as np

from ..config import Deadline
from ..errors import DomainError, NotConverged, NotHyperbolicError
from .matrices import Mat2, axis_distance_to_i, inverse_stack, stack, trace_to_length
from .search import ball_elements, element_hashes

KEY_TOL = 1e-6
# crossing heights span e^(+-l/2) in the normalised frame; beyond this total
# length double precision no longer resolves them
MAX_TOTAL_LENGTH = 26.0


def normalizing_frame(g):
    """Unit-determinant N with N g N^-1 diagonal, expanding towards infinity."""
    r, a = g.fixed_points()
    if a == math.inf:
        n = Mat2(1.0, -r, 0.0, 1.0)
    elif r == math.inf:
        n = Mat2(0.0, -1.0, 1.0, -a)
    else:
        # z -> (z - r)/(z - a) up to sign, determinant r - a
        det = r - a
        sgn = 1.0 if det > 0 else -1.0
        k = 1.0 / math.sqrt(abs(det))
        n = Mat2(sgn * k, -sgn * r * k, k, -a * k)
    return n


def _check_pair(gamma, beta):
    for m in (gamma, beta):
        if not m.is_hyperbolic():
            raise NotHyperbolicError(f"trace {m.trace:.12g} is not hyperbolic")
    total = trace_to_length(gamma) + trace_to_length(beta)
    if total > MAX_TOTAL_LENGTH:
        raise DomainError(
            f"total length {total:.2f} exceeds {MAX_TOTAL_LENGTH}: crossings are not resolvable in double precision"
        )


def crossing_keys(gamma, beta, hs, tol=KEY_TOL):
    """Keys of the crossings of h(axis beta) with axis gamma, for h in the stack."""
    n = normalizing_frame(gamma)
    ell = trace_to_length(gamma)
    nh = np.einsum("ij,njk->nik", n.array(), hs)
    conj = np.einsum("nij,jk,nkl->nil", nh, beta.array(), inverse_stack(nh))
    a, b, c, d = conj[:, 0, 0], conj[:, 0, 1], conj[:, 1, 0], conj[:, 1, 1]
    scale = np.abs(conj).reshape(len(conj), 4).max(axis=1)
    # lines sharing an endpoint with axis gamma have b = 0 or c = 0
    ok = (np.abs(c) > 1e-12 * scale) & (np.abs(b) > 1e-12 * scale)
    ok &= b * c > 0
    a, b, c, d = a[ok], b[ok], c[ok], d[ok]
    tr = a + d
    disc = np.sqrt(np.maximum(tr * tr - 4.0, 0.0))
    height = 0.5 * np.log(b / c)
    phase = np.mod(height, ell)
    phase[ell - phase < tol] = 0.0
    direction = (a - d) * np.sign(c) / disc
    keys = set(zip(np.round(phase / tol).astype(np.int64), np.round(direction / tol).astype(np.int64)))
    return keys


def _tube_cosh_distance(n, ell, hs):
    """cosh of the distance from h(i) to the fundamental segment of the axis, in frame n."""
    y0 = abs(n.act(1j))
    lo, hi = y0 * math.exp(-ell / 2), y0 * math.exp(ell / 2)
    nh = np.einsum("ij,njk->nik", n.array(), hs)
    a, b, c, d = nh[:, 0, 0], nh[:, 0, 1], nh[:, 1, 0], nh[:, 1, 1]
    den = c * c + d * d
    x, y = (b * d + a * c) / den, 1.0 / den
    mod = np.hypot(x, y)
    end = np.where(mod < lo, lo, hi)
    off = 1.0 + (x * x + (y - end) ** 2) / (2.0 * y * end)
    return np.where((mod >= lo) & (mod <= hi), mod / y, off)


def geometric_intersection(generators, gamma, beta, depth, max_depth=60, slack=2.0,
                           max_elements=3_000_000, deadline=None):
    """i(gamma, beta) for hyperbolic elements of a discrete group, stabilised in word length.

    Every crossing class has a representative h(axis beta) meeting one
    fundamental segment of axis gamma with h(i) within d(i, axis beta) +
    l(beta)/2 of that segment, so the search walks a tube around the segment
    (widened by `slack` for the prefixes). The count over words of length
    <= depth is raised in steps of 2 until two consecutive counts agree.
    """
    _check_pair(gamma, beta)
    deadline = deadline or Deadline()
    n = normalizing_frame(gamma)
    ell = trace_to_length(gamma)
    (db,) = axis_distance_to_i(stack([beta]))
    width = db + trace_to_length(beta) / 2 + slack
    bound = math.cosh(width)
    ball = ball_elements(
        generators, width, max_depth=max_depth + 2, max_elements=max_elements,
        deadline=deadline, accept=lambda hs: _tube_cosh_distance(n, ell, hs) <= bound,
    )
    prev = None
    for dep in range(depth, max_depth + 3, 2):
        deadline.check("intersection search")
        count = len(crossing_keys(gamma, beta, ball.mats[ball.wordlen <= dep]))
        if prev is not None and count == prev:
            return count
        prev = count
    raise NotConverged(
        f"crossing count did not stabilise by word length {max_depth}", horizon=None
    )


def _cosh_dist_to(ms, x, y):
    """cosh d(g i, x + iy) for each g in the stack."""
    a, b, c, d = ms[:, 0, 0], ms[:, 0, 1], ms[:, 1, 0], ms[:, 1, 1]
    den = c * c + d * d
    ox, oy = (b * d + a * c) / den, 1.0 / den
    return 1.0 + ((ox - x) ** 2 + (oy - y) ** 2) / (2.0 * oy * y)


def segment_cover(generators, rho, gamma, width, step=0.25, deadline=None):
    """Elements h with h(i) within `width` of one fundamental segment of axis gamma.

    For a cocompact group: `rho` bounds the covering radius and `generators`
    contains every element moving i by at most 2 rho. Walking along the
    segment in steps of `step`, each sample point x has an orbit point g(i)
    within rho, found among the neighbours of the previous one, and every
    wanted h is g k with d(i, k i) <= width + rho + step / 2.
    """
    deadline = deadline or Deadline()
    n = normalizing_frame(gamma)
    ninv = n.inv()
    ell = trace_to_length(gamma)
    y0 = abs(n.act(1j))
    half = np.linspace(0.0, ell / 2, max(2, math.ceil(ell / (2 * step)) + 1))
    near_ball = ball_elements(generators, 2 * rho + step, deadline=deadline).mats
    reach = ball_elements(generators, width + rho + step / 2, deadline=deadline).mats
    # an orbit point within rho of the foot of i on the axis
    (dg,) = axis_distance_to_i(stack([gamma]))
    start = ball_elements(generators, dg + rho + 1e-9, deadline=deadline).mats
    foot = ninv.act(1j * y0)
    g0 = start[np.argmin(_cosh_dist_to(start, foot.real, foot.imag))]
    found = []
    for sgn in (1.0, -1.0):
        g = g0
        for t in half:
            deadline.check("segment walk")
            z = ninv.act(1j * y0 * math.exp(sgn * t))
            cand = np.einsum("ij,njk->nik", g, near_ball)
            ch = _cosh_dist_to(cand, z.real, z.imag)
            j = int(np.argmin(ch))
            if ch[j] > math.cosh(rho) * (1 + 1e-9):
                raise NotConverged(
                    f"no orbit point within {rho:.3f} of the segment; the covering radius is wrong"
                )
            g = cand[j]
            found.append(np.einsum("ij,njk->nik", g, reach))
    hs = np.concatenate(found)
    _, first = np.unique(element_hashes(hs), return_index=True)
    return hs[np.sort(first)]


def geometric_intersection_cocompact(generators, rho, gamma, beta, step=0.25, deadline=None):
    """i(gamma, beta) on a closed surface given a covering radius bound and Dirichlet generators."""
    _check_pair(gamma, beta)
    (db,) = axis_distance_to_i(stack([beta]))
    width = db + trace_to_length(beta) / 2
    hs = segment_cover(generators, rho, gamma, width, step=step, deadline=deadline)
    return len(crossing_keys(gamma, beta, hs))


def geometric_intersection_axes(rep, gamma, beta, depth=None, **kw):
    """Crossing number of the closed geodesics of two words on `rep`."""
    if depth is None:
        depth = len(gamma) + len(beta) + 4
    return geometric_intersection(rep.generators, rep.matrix(gamma), rep.matrix(beta), depth, **kw)
