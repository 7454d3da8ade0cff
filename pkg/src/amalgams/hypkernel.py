"""Closed-form hyperbolic trigonometry.

Everything here is a pure function of double-precision reals. Inverse
hyperbolic functions go through the log forms below so that arguments of
size e^(L/2) (traces of long words) lose no precision.
"""

import math

from .errors import DomainError

LOG3_OVER_4 = math.log(3.0) / 4.0
ASINH1 = math.asinh(1.0)
# cosh(b/4) for the fixed boundary length b = 2 arcsinh(1)
COSH_QUARTER_B0 = math.sqrt((1.0 + math.sqrt(2.0)) / 2.0)


def arccosh(x):
    if x < 1.0:
        if x > 1.0 - 1e-12:
            return 0.0
        raise DomainError(f"arccosh undefined for {x!r} < 1")
    return math.log(x + math.sqrt(x * x - 1.0))


def arcsinh(x):
    if x < 0:
        return -arcsinh(-x)
    return math.log(x + math.sqrt(x * x + 1.0))


def _positive(name, value, strict=True):
    if value < 0 or (strict and value == 0) or math.isnan(value):
        raise DomainError(f"{name} must be {'>' if strict else '>='} 0, got {value!r}")


def disk_area(r):
    """Area 2*pi*(cosh r - 1) of a hyperbolic disk of radius `r`."""
    _positive("r", r, strict=False)
    # 4 pi sinh^2(r/2) is the same number without the cancellation near 0
    return 4.0 * math.pi * math.sinh(r / 2.0) ** 2


def collar_width(ell):
    """Width w with sinh(w) sinh(ell/2) = 1."""
    _positive("ell", ell)
    return arcsinh(1.0 / math.sinh(ell / 2.0))


def strip_area(r, ell, n):
    """Area n * ell * sinh(r) of the r-neighbourhood of an n-sided curve."""
    _positive("r", r, strict=False)
    _positive("ell", ell)
    if int(n) != n or n < 2:
        raise DomainError(f"side count must be an integer >= 2, got {n!r}")
    return n * ell * math.sinh(r)


def min_angle_phi(r):
    """Lower bound on the angles of triangles with sides >= r inscribed in circles of radius >= r.

    Solves cot(phi/2) = cosh r * (sqrt(1 + 2 cosh r) + sqrt(2 + 2 cosh r)).
    """
    _positive("r", r)
    c = math.cosh(r)
    cot_half = c * (math.sqrt(1.0 + 2.0 * c) + math.sqrt(2.0 + 2.0 * c))
    return 2.0 * math.atan(1.0 / cot_half)


def max_disk_neighbors(r):
    return math.floor(2.0 * math.pi / min_angle_phi(r))


def r0_of(sys):
    _positive("sys", sys)
    return min(LOG3_OVER_4, sys / 4.0)


def pentagon_beta_length(s, b):
    """Length u with sinh(s/2) sinh(u/2) = cosh(b/4)."""
    _positive("s", s)
    _positive("b", b)
    return 2.0 * arcsinh(math.cosh(b / 4.0) / math.sinh(s / 2.0))


def boundary_length(s, u):
    """Inverse of `pentagon_beta_length` in b: cosh(b/4) = sinh(s/2) sinh(u/2).

    Returns 0.0 when the product is 1 (the boundary degenerates to a cusp) and
    raises when it is below 1 (no one-holed torus with orthogonal pair s, u).
    """
    _positive("s", s)
    _positive("u", u)
    prod = math.sinh(s / 2.0) * math.sinh(u / 2.0)
    if prod < 1.0 - 1e-12:
        raise DomainError(
            f"sinh(s/2) sinh(u/2) = {prod:.6g} < 1: no hyperbolic one-holed torus"
        )
    return 4.0 * arccosh(max(prod, 1.0))


def twisted_length(k, s, u):
    """Length of the k-fold Dehn twist of a curve of length u about an orthogonal curve of length s."""
    if int(k) != k or k < 0:
        raise DomainError(f"twist count must be a non-negative integer, got {k!r}")
    _positive("s", s)
    _positive("u", u)
    return 2.0 * arccosh(math.cosh(k * s / 2.0) * math.cosh(u / 2.0))


def transverse_check(ell_gamma, ell_delta):
    """True iff sinh(ell_gamma/2) sinh(ell_delta/2) >= 1 (up to rounding)."""
    _positive("ell_gamma", ell_gamma)
    _positive("ell_delta", ell_delta)
    return math.sinh(ell_gamma / 2.0) * math.sinh(ell_delta / 2.0) >= 1.0 - 1e-12


def symmetric_torus_side(b):
    """Common length s = u of the orthogonal pair on the one-holed torus with boundary b."""
    _positive("b", b, strict=False)
    return 2.0 * arcsinh(math.sqrt(math.cosh(b / 4.0)))
