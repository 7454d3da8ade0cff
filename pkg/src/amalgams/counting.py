"""Lower bounds on closed-geodesic counts of amalgams via their base surface.

A closed geodesic gamma on the base crossing the distinguished gluing i
times lifts to at least 2^(i-1) closed geodesics of the amalgam, exactly
that many when there are two copies. A geodesic missing the gluing exists
once per copy, except the gluing curve itself, which all copies share.
"""

import csv
import math
import warnings
from dataclasses import dataclass

from .amalgam import SEPARATING, base_rep, copies, enumerate_base, metrics, xb_chain
from .bounds import c_beta, format_int, format_log10, kprime_of, parse_log10, upper_stepwise
from .config import Deadline
from .errors import DomainError, PreconditionError
from .fuchsian.genus2 import covering_radius, dirichlet_generators, syllable_intersection
from .fuchsian.intersect import geometric_intersection_cocompact
from .fuchsian.words import algebraic_intersection, canonical, cyclic_reduce, homology_class, twist_word
from .hypkernel import collar_width, twisted_length

LEDGER_COLUMNS = ("class_word", "length", "i_beta", "lifts_exact", "lifts_lower")
RECORD_COLUMNS = ("L", "lower", "enumerated", "upper", "family")


@dataclass(frozen=True)
class CountRecord:
    """One row of a count table. `upper_log10` is log10 of the upper bound."""

    L: float
    lower: int
    enumerated: int = None
    upper_log10: float = None
    family: str = ""
    single_term: int = None  # the single-term bound, for the X_{b,s,k} family

    def row(self):
        return [
            f"{self.L:.10g}",
            format_int(self.lower),
            "" if self.enumerated is None else format_int(self.enumerated),
            "" if self.upper_log10 is None else format_log10(self.upper_log10),
            self.family,
        ]


@dataclass(frozen=True)
class LedgerRow:
    class_word: str
    length: float
    i_beta: int
    lifts_exact: int
    lifts_lower: int

    def row(self):
        return [self.class_word, f"{self.length:.12g}", str(self.i_beta),
                "" if self.lifts_exact is None else str(self.lifts_exact), str(self.lifts_lower)]


def lift_count(i, m):
    """(exact or None, lower) number of lifts of a base geodesic crossing beta i times."""
    if int(i) != i or i < 0:
        raise DomainError(f"i must be a nonnegative integer, got {i!r}")
    if int(m) != m or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    i, m = int(i), int(m)
    if i == 0:
        return m, m
    lower = 2 ** (i - 1)
    return (lower if m == 2 else None), lower


# ---- X_{S,beta,m} ----------------------------------------------------------------


class IntersectionOracle:
    """i(gamma, beta) on the genus-2 base for a fixed beta.

    The separating curve is handled combinatorially through the syllable
    normal form; the factor generators go through the geometric counter,
    which needs the covering radius and the Dirichlet generators once.
    """

    def __init__(self, rep, beta_word, deadline=None):
        self.rep = rep
        self.beta = beta_word
        self.deadline = deadline
        self.separating = beta_word in SEPARATING
        self._geo = None

    def _geometry(self):
        if self._geo is None:
            rho = covering_radius(self.rep)
            self._geo = (rho, dirichlet_generators(self.rep, rho), self.rep.matrix(self.beta))
        return self._geo

    def is_beta(self, word):
        target = "abAB" if self.separating else self.beta
        return canonical(cyclic_reduce(word)) == canonical(target)

    def __call__(self, word):
        if self.is_beta(word):
            return 0
        if self.separating:
            return syllable_intersection(word)
        rho, gens, beta = self._geometry()
        return geometric_intersection_cocompact(gens, rho, self.rep.matrix(word), beta,
                                                deadline=self.deadline)


def xsbm_ledger(spec, L, classes=None, include_disjoint=True, deadline=None):
    """Per-class audit rows for an X_{S,beta,m} spec on base classes of length <= L."""
    deadline = deadline or Deadline()
    rep = base_rep(spec)
    m = copies(spec)
    beta = spec.gluing(spec.distinguished).word
    if classes is None:
        classes = enumerate_base(rep, L, deadline=deadline)
    oracle = IntersectionOracle(rep, beta, deadline)
    rows = []
    for c in classes:
        if c.length > L + 1e-9:
            continue
        i = oracle(c.word)
        if oracle.is_beta(c.word):
            exact, lower = 1, 1  # beta is shared by every copy
        elif i == 0 and not include_disjoint:
            exact, lower = 0, 0
        else:
            exact, lower = lift_count(i, m)
        rows.append(LedgerRow(c.word, c.length, i, exact, lower))
    return rows


def _record_from_ledger(rows, L, spec, family, m_metrics):
    lower = sum(r.lifts_lower for r in rows)
    exacts = [r.lifts_exact for r in rows]
    enumerated = sum(exacts) if all(e is not None for e in exacts) else None
    upper = None
    if m_metrics is not None:
        upper = upper_stepwise(m_metrics.A, m_metrics.B, m_metrics.sys, L)
    return CountRecord(L=L, lower=lower, enumerated=enumerated, upper_log10=upper, family=family)


def count_lower_XSbm(spec, L, classes=None, include_disjoint=True, deadline=None, with_ledger=False):
    """CountRecord for X_{S,beta,m}; optionally with the per-class ledger."""
    rows = xsbm_ledger(spec, L, classes, include_disjoint, deadline)
    met = metrics(spec)
    rec = _record_from_ledger(rows, L, spec, "sbm", met)
    return (rec, rows) if with_ledger else rec


def count_series_XSbm(spec, L_grid, include_disjoint=True, deadline=None):
    """Records on an L-grid, enumerating the base once at the largest L."""
    deadline = deadline or Deadline()
    L_grid = sorted(L_grid)
    rep = base_rep(spec)
    classes = enumerate_base(rep, L_grid[-1], deadline=deadline)
    rows = xsbm_ledger(spec, L_grid[-1], classes, include_disjoint, deadline)
    met = metrics(spec)
    return [
        _record_from_ledger([r for r in rows if r.length <= L + 1e-9], L, spec, "sbm", met)
        for L in L_grid
    ]


# ---- X_{b,s,k} -------------------------------------------------------------------


def alpha_family(s, L):
    """The curves alpha_j = a B^j, j = 1..k', that fit under length L, with checks.

    Each alpha_j has homology (1, -j), so they are pairwise distinct classes,
    and crosses beta_k = b a^k exactly jk + 1 times.
    """
    c = xb_chain(s)
    kp = kprime_of(s, c.u, L)
    beta = twist_word("b", "a", c.k)
    out = []
    seen = set()
    for j in range(1, kp + 1):
        word = twist_word("a", "b", j)
        h = homology_class(word)
        if h in seen:
            raise PreconditionError(f"alpha_{j} repeats homology class {h}")
        seen.add(h)
        i = abs(algebraic_intersection(h, homology_class(beta)))
        if i != j * c.k + 1:
            raise PreconditionError(f"|<alpha_{j}, beta_k>| = {i}, expected {j * c.k + 1}")
        ell = twisted_length(j, c.u, s)
        if not ell < j * c.u + s:
            raise PreconditionError(f"l(alpha_{j}) = {ell:g} is not below j u + s")
        out.append((j, word, ell, i))
    return c, kp, out


def count_lower_Xbsk(spec, L):
    """Certified lower bound for X_{b,s,k}: the sum over alpha_j of 2^(jk+1)."""
    s = spec.base.s
    if L < s:
        return CountRecord(L=L, lower=0, family="xb", single_term=None)
    c, kp, fam = alpha_family(s, L)
    lower = sum(2 ** (j * c.k + 1) for j, *_ in fam)
    single = 2 ** (c.k * kp + 1) if kp >= 1 else None
    upper = upper_stepwise(4.0 * math.pi, c.B, s, L)
    return CountRecord(L=L, lower=lower, enumerated=None, upper_log10=upper, family="xb",
                       single_term=single)


# ---- empirical intersection statistics --------------------------------------------


@dataclass(frozen=True)
class IntersectionStats:
    mean_ratio: float
    good_fraction: float
    c_beta_ref: float
    n: int
    collar_cap: float
    collar_ok: bool
    max_ratio: float

    def __iter__(self):
        return iter((self.mean_ratio, self.good_fraction, self.c_beta_ref))


def empirical_intersection_stats(S, beta, L, eps, band=None, classes=None, deadline=None):
    """Mean of i(beta, gamma)/L and the share with i >= (1 - eps) c_beta L.

    `band`, if given, restricts the sample to classes of length >= L - band.
    The collar cap i < L/(2 w(beta)) is checked on every enumerated class.
    """
    if not (0 < eps < 1):
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    beta = "abAB" if beta in SEPARATING else beta
    if classes is None:
        from .fuchsian.genus2 import enumerate_classes_genus2
        classes = enumerate_classes_genus2(S, L, deadline=deadline)
    classes = [c for c in classes if c.length <= L + 1e-9]
    oracle = IntersectionOracle(S, beta, deadline)
    ell_beta = S.bdry if beta == "abAB" else S.length(beta)
    cb = c_beta(ell_beta, 2)
    cap = L / (2.0 * collar_width(ell_beta))
    counts = [(c, oracle(c.word)) for c in classes]
    collar_ok = all(i < cap for _, i in counts)
    sample = [(c, i) for c, i in counts if band is None or c.length >= L - band]
    if len(sample) < 20:
        warnings.warn(f"only {len(sample)} classes in the sample", RuntimeWarning)
    if not sample:
        return IntersectionStats(math.nan, math.nan, cb, 0, cap, collar_ok, math.nan)
    ratios = [i / L for _, i in sample]
    good = sum(1 for _, i in sample if i >= (1 - eps) * cb * L)
    return IntersectionStats(
        mean_ratio=sum(ratios) / len(ratios),
        good_fraction=good / len(sample),
        c_beta_ref=cb,
        n=len(sample),
        collar_cap=cap,
        collar_ok=collar_ok,
        max_ratio=max(ratios),
    )


# ---- CSV ---------------------------------------------------------------------------


def write_records(records, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(RECORD_COLUMNS)
    for r in records:
        w.writerow(r.row())


def read_records(fh):
    out = []
    for row in csv.DictReader(fh):
        lower = row["lower"]
        out.append(CountRecord(
            L=float(row["L"]),
            lower=int(lower) if "e" not in lower else round(10 ** parse_log10(lower)),
            enumerated=int(row["enumerated"]) if row["enumerated"] else None,
            upper_log10=parse_log10(row["upper"]) if row["upper"] else None,
            family=row["family"],
        ))
    return out


def write_ledger(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(LEDGER_COLUMNS)
    for r in rows:
        w.writerow(r.row())


def read_ledger(fh):
    return [
        LedgerRow(r["class_word"], float(r["length"]), int(r["i_beta"]),
                  int(r["lifts_exact"]) if r["lifts_exact"] else None, int(r["lifts_lower"]))
        for r in csv.DictReader(fh)
    ]
