"""Closed-form upper and lower bounds on geodesic counts and entropy.

Astronomical quantities are carried as log10 values; `format_log10` renders
them as decimal strings and `parse_number` reads them back.
"""

import math
from dataclasses import asdict, dataclass

from .errors import DomainError, PreconditionError
from .hypkernel import r0_of

NEIGHBOR_FLOOR = 13
LOG2_OVER_96 = math.log(2.0) / 96.0
LOG10_2 = math.log10(2.0)


def _check_inputs(A, B, sys, L):
    for name, v in (("A", A), ("B", B), ("sys", sys)):
        if not (v > 0) or math.isinf(v):
            raise PreconditionError(f"{name} must be positive and finite, got {v!r}")
    if L is not None and (L < 0 or math.isnan(L)):
        raise PreconditionError(f"L must be >= 0, got {L!r}")
    if B < sys * (1 - 1e-9):
        raise PreconditionError(
            f"B = {B:g} < sys = {sys:g}: a nonempty singular set forces sys(X) ≤ B"
        )


@dataclass(frozen=True)
class BoundsReport:
    A: float
    B: float
    sys: float
    L: float
    r0: float
    n_max: float
    leaves_max: float
    ball_area_max: float
    strip_max: float
    betaL_max: float
    lambda_max: float
    upper_stepwise_log10: float
    upper_coarse_log10: float
    entropy_upper: float

    def to_dict(self):
        return asdict(self)


def stepwise_report(A, B, sys, L):
    """Every intermediate quantity of the ball-covering upper bound."""
    _check_inputs(A, B, sys, L)
    r0 = r0_of(sys)
    n_max = 4.0 * A / (math.pi * r0 * r0)
    leaves = (B / (2.0 * r0)) * (3.0 * A / (2.0 * math.pi) - 2.0) + 2.0
    ball_area = leaves * 4.0 * math.pi * math.sinh(r0 / 2.0) ** 2
    strip = (3.0 * B * A * (2.0 * L + 2.0 * r0) / (r0 * r0)) * math.sinh(r0) ** 2
    beta_l = (12.0 * B * A / (math.pi * r0 * r0)) * math.cosh(r0 / 4.0) ** 2 \
        * math.cosh(r0 / 2.0) ** 2 * (2.0 * L + 2.0 * r0)
    lam = max(float(NEIGHBOR_FLOOR), leaves)
    return BoundsReport(
        A=A, B=B, sys=sys, L=L, r0=r0,
        n_max=n_max,
        leaves_max=leaves,
        ball_area_max=ball_area,
        strip_max=strip,
        betaL_max=beta_l,
        lambda_max=lam,
        upper_stepwise_log10=math.log10(n_max) + beta_l * math.log10(lam),
        upper_coarse_log10=upper_coarse(A, B, sys, L),
        entropy_upper=entropy_upper(A, B, sys),
    )


def upper_stepwise(A, B, sys, L):
    return stepwise_report(A, B, sys, L).upper_stepwise_log10


def _coarse_parts(A, B, sys):
    r0 = r0_of(sys)
    exponent_rate = 25.0 * A * B / (math.pi * r0 * r0)
    base = 15.0 + 3.0 * A * B / (4.0 * math.pi * r0)
    return r0, exponent_rate, base


def upper_coarse(A, B, sys, L):
    """log10 of (4A/(pi r0^2)) (15 + 3AB/(4 pi r0))^((25AB/(pi r0^2))(L + r0))."""
    _check_inputs(A, B, sys, L)
    r0, rate, base = _coarse_parts(A, B, sys)
    return math.log10(4.0 * A / (math.pi * r0 * r0)) + rate * (L + r0) * math.log10(base)


def entropy_upper(A, B, sys):
    """(25AB/(pi r0^2)) log(15 + 3AB/(4 pi r0)), natural log."""
    _check_inputs(A, B, sys, None)
    _, rate, base = _coarse_parts(A, B, sys)
    return rate * math.log(base)


# ---- lower-bound formulas ----------------------------------------------------


def c_beta(ell_beta, g):
    """l(beta) / (2 pi^2 (g - 1))."""
    if int(g) != g or g < 2:
        raise DomainError(f"genus must be an integer >= 2, got {g!r}")
    if not (ell_beta > 0):
        raise DomainError(f"ell_beta must be positive, got {ell_beta!r}")
    return ell_beta / (2.0 * math.pi ** 2 * (g - 1))


def c_beta_unit_tangent(ell_beta, g):
    """The same constant as 4 l(beta) / vol(T^1 S), vol(T^1 S) = 2 pi * 4 pi (g - 1)."""
    if int(g) != g or g < 2:
        raise DomainError(f"genus must be an integer >= 2, got {g!r}")
    return 4.0 * ell_beta / (2.0 * math.pi * 4.0 * math.pi * (g - 1))


@dataclass(frozen=True)
class FormulaValue:
    """A lower-bound formula evaluated in log space.

    `log2` is the base-2 logarithm of the value. `preconditions_met` is
    False when the inputs lie outside the range where the bound is proven,
    in which case `note` names the failing inequality.
    """

    log2: float
    preconditions_met: bool = True
    note: str = ""

    @property
    def log10(self):
        return self.log2 * LOG10_2

    @property
    def value(self):
        return 2.0 ** self.log2 if self.log2 < 1000 else math.inf


def longbeta_lower(ell_beta, g, C, L):
    """e^(C L); proven only for L beyond an unspecified threshold."""
    cb = c_beta(ell_beta, g)
    if not (0 < C < math.log(2.0) * cb):
        raise PreconditionError(f"need 0 < C < log(2) c_beta = {math.log(2.0) * cb:.6g}, got C = {C!r}")
    if L < 0:
        raise PreconditionError(f"L must be >= 0, got {L!r}")
    return FormulaValue(C * L / math.log(2.0), True, "asymptotic: valid for L large enough, threshold unverified")


def xb_exponent(B, L):
    return 1.0 + (math.exp(B / 2.0) / B) * L / 96.0


def xb_lower(B, L, strict=True):
    """2^(1 + (1/96)(e^(B/2)/B) L), the count lower bound for X_B.

    With strict=False an out-of-range query returns the formula value
    labelled with the failing precondition instead of raising.
    """
    if not (B > 0):
        raise DomainError(f"B must be positive, got {B!r}")
    failed = []
    if B < 2.0 * math.log(24.0) - 1e-12:
        failed.append(f"B = {B:.6g} < 2 log 24 = {2 * math.log(24.0):.6g}")
    if L < 2.0 * B + 5.0 - 1e-12:
        failed.append(f"L = {L:.6g} < 2B + 5 = {2 * B + 5:.6g}")
    if failed and strict:
        raise PreconditionError("; ".join(failed))
    note = "formula value, preconditions unmet: " + "; ".join(failed) if failed else ""
    return FormulaValue(xb_exponent(B, L), not failed, note)


def xb_entropy_lower(B):
    """(log 2 / 96) e^(B/2) / B."""
    return LOG2_OVER_96 * math.exp(B / 2.0) / B


# ---- the X_{b,s,k} chain ------------------------------------------------------


@dataclass(frozen=True)
class ChainReport:
    s: float
    u: float
    k: int
    B: float
    L: float
    kprime: int
    margins: dict

    @property
    def ok(self):
        return all(m > 0 for m in self.margins.values())

    @property
    def failures(self):
        return sorted(k for k, m in self.margins.items() if m <= 0)


def kprime_of(s, u, L):
    """max{m >= 0 : m u + s <= L}."""
    if L < s:
        return 0
    return int(math.floor((L - s) / u + 1e-12))


def chain_check(s, L=None):
    """Margins of the length and twist-count inequalities of the X_{b,s,k} chain."""
    from .amalgam import xb_chain

    c = xb_chain(s)
    if L is None:
        L = 2.0 * c.B + 5.0
    elif L < 2.0 * c.B + 5.0:
        raise PreconditionError(f"L = {L:g} < 2B + 5 = {2 * c.B + 5:g}")
    kp = kprime_of(s, c.u, L)
    margins = {
        "u_lower": c.u - 2.0 * math.log(2.0 / s),
        "u_upper": 2.0 * math.log(7.0 / s) - c.u,
        "B_lower": c.B - 2.0 * math.log(2.0 / s),
        "B_upper": 2.0 * math.log(12.0 / s) - c.B,
        "k_lower": c.k - (math.exp(c.B / 2.0) / 12.0 - 1.0),
        "kprime_lower": kp - ((L - 1.0) / c.B - 1.0),
    }
    return ChainReport(s=s, u=c.u, k=c.k, B=c.B, L=L, kprime=kp, margins=margins)


# ---- rendering ---------------------------------------------------------------


def format_log10(lg, digits=10):
    """Decimal string for 10**lg; scientific notation from the log when it would overflow."""
    if lg < 15:
        return f"{10.0 ** lg:.{digits}g}"
    e = math.floor(lg)
    mant = 10.0 ** (lg - e)
    if mant >= 10.0 - 0.5 * 10.0 ** (1 - digits):
        mant, e = 1.0, e + 1
    return f"{mant:.{digits - 1}f}e+{e}"


def format_int(n, max_digits=30):
    """Exact decimal for integers up to `max_digits` digits, scientific beyond."""
    s = str(n)
    if len(s) <= max_digits:
        return s
    return format_log10(math.log10(n) if n < 10 ** 300 else _int_log10(n))


def _int_log10(n):
    s = str(n)
    return len(s) - 1 + math.log10(int(s[:17]) / 10 ** 16)


def parse_log10(text):
    """log10 of a number written by `format_log10`, `format_int` or plain decimal."""
    text = text.strip()
    if "e+" in text:
        mant, exp = text.split("e+")
        if int(exp) >= 300:
            return math.log10(float(mant)) + int(exp)
    v = float(text)
    if v <= 0:
        raise ValueError(f"cannot take the log of {text!r}")
    return math.log10(v)
