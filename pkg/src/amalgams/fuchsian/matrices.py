"""2x2 unit-determinant matrices acting on the upper half-plane.

`Mat2` is the scalar-friendly type used by the word/matrix plumbing; the
enumeration code works on stacked numpy arrays of shape (n, 2, 2) and uses
the vectorised helpers at the bottom of this module.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import NotHyperbolicError
from ..hypkernel import arccosh

HYPERBOLIC_EPS = 1e-12
RENORMALIZE_EVERY = 32


@dataclass(frozen=True)
class Mat2:
    a: float
    b: float
    c: float
    d: float

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, m):
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    def __matmul__(self, o):
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inv(self):
        # unit determinant: the adjugate is the inverse
        return Mat2(self.d, -self.b, -self.c, self.a)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def trace(self):
        return self.a + self.d

    def renormalized(self):
        big = max(abs(self.a * self.d), abs(self.b * self.c))
        if big > 1e8:
            # ad - bc cancels below double precision: the drift is not measurable
            return self
        det = self.det
        if det <= 0:
            raise ValueError("matrix is not orientation preserving")
        if abs(det - 1.0) <= 1e-12:
            return self
        k = 1.0 / math.sqrt(det)
        return Mat2(self.a * k, self.b * k, self.c * k, self.d * k)

    def is_hyperbolic(self):
        return abs(self.trace) > 2.0 + HYPERBOLIC_EPS

    def array(self):
        return np.array([[self.a, self.b], [self.c, self.d]])

    def act(self, z):
        if z == math.inf:
            return self.a / self.c if self.c != 0 else math.inf
        den = self.c * z + self.d
        if den == 0:
            return math.inf
        return (self.a * z + self.b) / den

    def fixed_points(self):
        """(repelling, attracting) boundary fixed points of a hyperbolic element."""
        if not self.is_hyperbolic():
            raise NotHyperbolicError(f"trace {self.trace:.12g} is not hyperbolic")
        t = self.trace
        disc = math.sqrt(t * t - 4.0)
        if self.c == 0:
            other = self.b / (self.d - self.a)
            # z -> (a/d) z + b/d expands when |a| > |d|
            return (other, math.inf) if abs(self.a) > abs(self.d) else (math.inf, other)
        # roots of c x^2 + (d - a) x - b; the cancelling root comes from the product -b/c
        q = (self.a - self.d) + math.copysign(disc, self.a - self.d)
        big = q / (2 * self.c)
        small = -2 * self.b / q
        roots = (big, small)
        # derivative at a fixed point x is 1/(c x + d)^2; attracting iff it is < 1
        r0, r1 = roots
        if abs(self.c * r1 + self.d) > abs(self.c * r0 + self.d):
            return r0, r1
        return r1, r0


def trace_to_length(m):
    """Translation length 2 arccosh(|tr|/2) of a hyperbolic element."""
    t = abs(m.trace if isinstance(m, Mat2) else float(np.trace(m)))
    if t <= 2.0 + HYPERBOLIC_EPS:
        raise NotHyperbolicError(f"|trace| = {t:.12g} <= 2: element is not hyperbolic")
    return 2.0 * arccosh(t / 2.0)


def word_to_matrix(word, generators):
    """Product of generator matrices along `word` (lowercase letter g, uppercase g^-1)."""
    m = Mat2.identity()
    for i, ch in enumerate(word, 1):
        m = m @ generators[ch]
        if i % RENORMALIZE_EVERY == 0:
            m = m.renormalized()
    return m.renormalized()


def with_inverses(gens):
    """{'a': A, 'A': A^-1, ...} from {'a': A, ...}."""
    out = {}
    for name, g in gens.items():
        out[name] = g
        out[name.upper()] = g.inv()
    return out


def cayley_angle(x):
    """Boundary point of the upper half-plane as an angle on the unit circle."""
    if x == math.inf:
        return math.pi / 2
    # z -> (z - i)/(z + i) maps x to exp(i theta)
    return math.atan2(2.0 * x, x * x - 1.0)


# ---- vectorised helpers on arrays of shape (n, 2, 2) -----------------------


def stack(mats):
    return np.array([m.array() for m in mats], dtype=float)


def cosh_displacement(ms):
    """cosh d(i, g i) = |g|_F^2 / 2 for each g in the stack."""
    return 0.5 * np.einsum("nij,nij->n", ms, ms)


def abs_traces(ms):
    return np.abs(ms[:, 0, 0] + ms[:, 1, 1])


def lengths_from_traces(t):
    t = np.maximum(np.asarray(t, dtype=float) / 2.0, 1.0)
    return 2.0 * np.log(t + np.sqrt(t * t - 1.0))


def inverse_stack(ms):
    out = np.empty_like(ms)
    out[:, 0, 0] = ms[:, 1, 1]
    out[:, 1, 1] = ms[:, 0, 0]
    out[:, 0, 1] = -ms[:, 0, 1]
    out[:, 1, 0] = -ms[:, 1, 0]
    return out


def sign_normalize(ms):
    """Pick the representative of +-g whose first non-negligible entry is positive."""
    flat = ms.reshape(len(ms), 4)
    big = np.abs(flat) > 1e-9
    first = np.argmax(big, axis=1)
    sgn = np.sign(flat[np.arange(len(ms)), first])
    sgn[sgn == 0] = 1.0
    return ms * sgn[:, None, None]


def element_keys(ms, scale=1e6):
    """Hashable keys identifying group elements of PSL(2,R) up to rounding."""
    q = np.round(sign_normalize(ms).reshape(len(ms), 4) * scale).astype(np.int64)
    return [bytes(row) for row in q]


def axis_distance_to_i(ms):
    """Hyperbolic distance from i to the axis of each hyperbolic element."""
    ch_disp = np.maximum(cosh_displacement(ms), 1.0)
    disp = np.log(ch_disp + np.sqrt(ch_disp * ch_disp - 1.0))
    ell = lengths_from_traces(abs_traces(ms))
    # sinh(d(i, g i)/2) = cosh(dist) sinh(ell/2)
    ch_dist = np.sinh(disp / 2.0) / np.sinh(ell / 2.0)
    ch_dist = np.maximum(ch_dist, 1.0)
    return np.log(ch_dist + np.sqrt(ch_dist * ch_dist - 1.0))


def axis_endpoints(ms):
    """(n, 2) array of boundary endpoints as Cayley angles, repelling first."""
    out = np.empty((len(ms), 2))
    for i, m in enumerate(ms):
        r, a = Mat2.from_array(m).fixed_points()
        out[i] = cayley_angle(r), cayley_angle(a)
    return out
