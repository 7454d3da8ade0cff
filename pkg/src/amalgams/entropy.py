"""Entropy estimates from closed-geodesic count series."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, PreconditionError

HUBER_WINDOW = (0.5, 1.3)  # wide on purpose: convergence is slow at desk scale


@dataclass(frozen=True)
class CountSeries:
    L: tuple
    counts: tuple
    lower_only: bool = False  # True when counts are lower bounds, not exact counts

    def __post_init__(self):
        if len(self.L) != len(self.counts):
            raise PreconditionError("L and counts differ in length")
        if any(b <= a for a, b in zip(self.L, self.L[1:])):
            raise PreconditionError("L must be strictly increasing")
        if any(c < 1 for c in self.counts):
            raise PreconditionError("counts must be >= 1")
        if any(b < a for a, b in zip(self.counts, self.counts[1:])):
            raise PreconditionError("counts must be nondecreasing in L")

    @classmethod
    def from_rows(cls, rows, lower_only=False):
        rows = sorted(rows)
        return cls(tuple(float(r[0]) for r in rows), tuple(r[1] for r in rows), lower_only)

    @classmethod
    def from_records(cls, records, use="enumerated"):
        """From CountRecords; `use` is "enumerated" or "lower"."""
        rows = [(r.L, getattr(r, use)) for r in records if getattr(r, use)]
        return cls.from_rows(rows, lower_only=(use == "lower"))

    def log_counts(self):
        # exact ints may exceed float range
        return np.array([_log_int(c) for c in self.counts])

    def every_other(self, offset=0):
        return CountSeries(self.L[offset::2], self.counts[offset::2], self.lower_only)


def _log_int(c):
    if isinstance(c, int) and c > 2 ** 1000:
        s = str(c)
        return (len(s) - 1 + math.log10(int(s[:17]) / 10 ** 16)) * math.log(10.0)
    return math.log(c)


@dataclass(frozen=True)
class EntropyEstimate:
    h: float
    mode: str
    residuals: tuple
    tail: float  # log(count_max) / L_max
    slope: float
    lower_only: bool = False
    extra: dict = field(default_factory=dict)


def _plain_slope(L, y):
    A = np.vstack([L, np.ones_like(L)]).T
    (slope, icept), *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(slope), float(icept)


def estimate_entropy(series, mode="plain"):
    """h from a count series.

    plain: least-squares slope of log(count) against L.
    ricks: the h minimising sum (log count - (h L - log(h L)))^2, found by
    bounded golden-section search on (0, 2 slope].
    """
    if len(series.L) < 3:
        raise PreconditionError(f"need at least 3 rows, got {len(series.L)}")
    L = np.asarray(series.L, dtype=float)
    y = series.log_counts()
    if np.ptp(y) == 0:
        raise DomainError("no growth: counts are constant")
    slope, icept = _plain_slope(L, y)
    if slope <= 0:
        raise DomainError(f"no growth: fitted slope {slope:g}")
    tail = float(y[-1] / L[-1])
    if mode == "plain":
        res = y - (slope * L + icept)
        return EntropyEstimate(slope, mode, tuple(res), tail, slope, series.lower_only)
    if mode != "ricks":
        raise DomainError(f"unknown mode {mode!r}")

    def loss(h):
        return float(np.sum((y - (h * L - np.log(h * L))) ** 2))

    hi = 2.0 * slope
    # h L - log(h L) needs h L > 0; keep the bracket off zero
    lo = min(1e-9, hi / 1e3)
    opt = minimize_scalar(loss, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    h = float(opt.x)
    res = y - (h * L - np.log(h * L))
    return EntropyEstimate(h, mode, tuple(res), tail, slope, series.lower_only,
                           {"loss": float(opt.fun), "at_bracket_edge": hi - h < 1e-6 * hi})


@dataclass(frozen=True)
class HuberVerdict:
    ratio: float
    L_max: float
    window: tuple
    passed: bool


def huber_check(series, window=HUBER_WINDOW):
    """log(count(L_max))/L_max against a window around the limit 1."""
    ratio = float(series.log_counts()[-1] / series.L[-1])
    return HuberVerdict(ratio, series.L[-1], window, window[0] <= ratio <= window[1])
