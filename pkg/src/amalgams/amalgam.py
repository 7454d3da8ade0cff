"""Surface amalgams: chambers glued along closed geodesics.

A spec is combinatorial (chambers with boundary slots, gluings with their
sides) plus an optional base surface on which every closed geodesic of the
amalgam projects with its length preserved, so that counts and the systole
can be read off the base.
"""

import json
import math
from dataclasses import dataclass, field

from .config import Deadline
from .errors import BudgetExceeded, DomainError, PreconditionError
from .fuchsian.genus2 import Genus2Rep, double_across_boundary, enumerate_classes_genus2
from .fuchsian.torus import build_one_holed_torus, enumerate_classes_free
from .fuchsian.words import twist_word
from .hypkernel import ASINH1, pentagon_beta_length, r0_of, twisted_length

B_FIXED = 2.0 * ASINH1  # boundary length of the one-holed tori in X_{b,s,k}
BASE_KINDS = ("torus", "genus2_double")


@dataclass(frozen=True)
class Slot:
    gluing: str
    length: float = None  # optional; must match the gluing when present


@dataclass(frozen=True)
class Chamber:
    genus: int
    slots: tuple

    @property
    def euler(self):
        return 2 - 2 * self.genus - len(self.slots)


@dataclass(frozen=True)
class Gluing:
    id: str
    length: float
    sides: tuple  # ((chamber, slot), ...)
    singular: bool
    word: str = None  # curve on the base surface, when known


@dataclass(frozen=True)
class BaseSurface:
    kind: str
    s: float
    u: float


@dataclass(frozen=True)
class AmalgamSpec:
    chambers: tuple
    gluings: tuple
    base: BaseSurface = None
    distinguished: str = None

    def gluing(self, gid):
        for g in self.gluings:
            if g.id == gid:
                return g
        raise KeyError(gid)


@dataclass(frozen=True)
class AmalgamMetrics:
    A: float
    B: float
    sys: float
    r0: float
    nmap: dict = field(default_factory=dict)


# ---- validation --------------------------------------------------------------


def validate(spec):
    """Violations of the amalgam assumptions, as readable strings (empty if valid)."""
    out = []
    ids = [g.id for g in spec.gluings]
    for gid in sorted({i for i in ids if ids.count(i) > 1}):
        out.append(f"gluing {gid}: duplicate id")
    by_id = {g.id: g for g in spec.gluings}
    for ci, ch in enumerate(spec.chambers):
        if ch.genus < 0:
            out.append(f"chamber {ci}: negative genus {ch.genus}")
        if ch.euler >= 0:
            out.append(f"chamber {ci}: non-hyperbolic chamber (euler characteristic {ch.euler})")
        for si, slot in enumerate(ch.slots):
            g = by_id.get(slot.gluing)
            if g is None:
                out.append(f"chamber {ci} slot {si}: unknown gluing {slot.gluing!r}")
            elif slot.length is not None and not math.isclose(slot.length, g.length, rel_tol=1e-9):
                out.append(
                    f"chamber {ci} slot {si}: length {slot.length:g} differs from gluing "
                    f"{g.id} length {g.length:g}"
                )
    used = {}
    for g in spec.gluings:
        n = len(g.sides)
        if not (g.length > 0):
            out.append(f"gluing {g.id}: length must be positive, got {g.length!r}")
        if g.singular and n < 3:
            out.append(f"gluing {g.id}: n(gamma) = {n} < 3 for a singular gluing")
        if not g.singular and n != 2:
            out.append(f"gluing {g.id}: nonsingular gluing has {n} sides, expected 2")
        for ci, si in g.sides:
            if not (0 <= ci < len(spec.chambers)) or not (0 <= si < len(spec.chambers[ci].slots)):
                out.append(f"gluing {g.id}: side ({ci}, {si}) does not exist")
                continue
            if spec.chambers[ci].slots[si].gluing != g.id:
                out.append(f"gluing {g.id}: side ({ci}, {si}) belongs to another gluing")
            if (ci, si) in used:
                out.append(f"gluing {g.id}: side ({ci}, {si}) already used by {used[(ci, si)]}")
            used[(ci, si)] = g.id
    for ci, ch in enumerate(spec.chambers):
        for si in range(len(ch.slots)):
            if (ci, si) not in used:
                out.append(f"chamber {ci} slot {si}: not attached to any gluing")
    if not any(g.singular for g in spec.gluings):
        out.append("no singular gluing: the space is a surface, not a proper amalgam")
    if spec.base is not None and spec.base.kind not in BASE_KINDS:
        out.append(f"base: unknown kind {spec.base.kind!r}")
    if spec.distinguished is not None and spec.distinguished not in by_id:
        out.append(f"distinguished: unknown gluing {spec.distinguished!r}")
    return out


def _require_valid(spec):
    bad = validate(spec)
    if bad:
        raise PreconditionError("invalid amalgam spec: " + "; ".join(bad))


# ---- base surface and metrics ------------------------------------------------


def base_rep(spec):
    """The TorusRep or Genus2Rep of the base surface."""
    if spec.base is None:
        raise PreconditionError("spec carries no base surface")
    tor = build_one_holed_torus(spec.base.s, spec.base.u)
    if spec.base.kind == "torus":
        return tor
    return double_across_boundary(tor)


def enumerate_base(rep, L, deadline=None):
    if isinstance(rep, Genus2Rep):
        return enumerate_classes_genus2(rep, L, deadline=deadline)
    return enumerate_classes_free(rep, L, deadline=deadline)


def systole(spec, L_max=64.0, deadline=None):
    """Systole of the amalgam, read off its base surface.

    The base curves a and b are closed geodesics, so the search starts at
    min(s, u) (and the boundary length, when the base is a closed double)
    and doubles until a class turns up.
    """
    rep = base_rep(spec)
    deadline = deadline or Deadline()
    L = min(spec.base.s, spec.base.u)
    if spec.base.kind == "genus2_double":
        L = min(L, rep.bdry)
    L *= 1 + 1e-9
    while L <= L_max:
        classes = enumerate_base(rep, L, deadline=deadline)
        if classes:
            return min(c.length for c in classes)
        L *= 2
    raise BudgetExceeded(f"no closed geodesic found up to length {L_max:g}", horizon=L_max)


def metrics(spec, sys=None):
    """Area, singular length, systole, packing radius and side counts."""
    _require_valid(spec)
    A = 2.0 * math.pi * sum(-ch.euler for ch in spec.chambers)
    B = sum(g.length for g in spec.gluings if g.singular)
    if sys is None:
        sys = systole(spec)
    return AmalgamMetrics(A=A, B=B, sys=sys, r0=r0_of(sys),
                          nmap={g.id: len(g.sides) for g in spec.gluings})


# ---- the two families ----------------------------------------------------------


@dataclass(frozen=True)
class XbChain:
    s: float
    u: float
    k: int
    B: float


def xb_chain(s):
    """u, k and B = l(beta_k) for the one-holed torus T_{b,s} with b = 2 arcsinh(1)."""
    if not (0 < s <= 0.5):
        raise DomainError(f"s must lie in (0, 1/2], got {s!r}")
    u = pentagon_beta_length(s, B_FIXED)
    k = math.floor(1.0 / s + 1e-12)
    return XbChain(s=s, u=u, k=k, B=twisted_length(k, s, u))


def make_Xbsk(s):
    """Two copies of T_{b,s} pasted along beta_k (4 sides) and along the boundary (2 sides).

    Cutting each torus along beta_k leaves a pair of pants with slots
    (beta_k, beta_k, boundary), so the spec has two pants chambers.
    """
    c = xb_chain(s)
    beta = Gluing("beta_k", c.B, ((0, 0), (0, 1), (1, 0), (1, 1)), True, twist_word("b", "a", c.k))
    bdry = Gluing("b", B_FIXED, ((0, 2), (1, 2)), False, "abAB")
    pants = Chamber(0, (Slot("beta_k", c.B), Slot("beta_k", c.B), Slot("b", B_FIXED)))
    return AmalgamSpec(
        chambers=(pants, pants),
        gluings=(beta, bdry),
        base=BaseSurface("torus", s, c.u),
        distinguished="beta_k",
    )


SEPARATING = ("separating", "abAB")


def make_XSbm(S, beta, m):
    """m copies of the genus-2 double S pasted along beta.

    beta is "separating" (the doubled boundary, word abAB) or one of the
    factor generators a, b, c, d. Each copy contributes two sides of beta.
    """
    if int(m) != m or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    m = int(m)
    if beta in SEPARATING:
        word = "abAB"
        length = S.bdry
        chambers = tuple(Chamber(1, (Slot("beta", length),)) for _ in range(2 * m))
        sides = tuple((i, 0) for i in range(2 * m))
    elif beta in ("a", "b", "c", "d"):
        word = beta
        length = S.length(beta)
        chambers = tuple(Chamber(1, (Slot("beta", length), Slot("beta", length))) for _ in range(m))
        sides = tuple((i, j) for i in range(m) for j in (0, 1))
    else:
        raise DomainError(f"beta must be 'separating' or a generator a, b, c, d; got {beta!r}")
    return AmalgamSpec(
        chambers=chambers,
        gluings=(Gluing("beta", length, sides, True, word),),
        base=BaseSurface("genus2_double", S.left.s, S.left.u),
        distinguished="beta",
    )


def copies(spec):
    """Number of base-surface copies m in an X_{S,beta,m} spec."""
    g = spec.gluing(spec.distinguished)
    return len(g.sides) // 2


# ---- JSON --------------------------------------------------------------------


def to_dict(spec):
    def slot(s):
        return s.gluing if s.length is None else {"gluing": s.gluing, "length": s.length}

    out = {
        "chambers": [{"genus": c.genus, "slots": [slot(s) for s in c.slots]} for c in spec.chambers],
        "gluings": [],
        "base": None,
        "distinguished": spec.distinguished,
    }
    for g in spec.gluings:
        d = {"id": g.id, "length": g.length, "sides": [list(x) for x in g.sides], "singular": g.singular}
        if g.word is not None:
            d["word"] = g.word
        out["gluings"].append(d)
    if spec.base is not None:
        out["base"] = {"kind": spec.base.kind, "s": spec.base.s, "u": spec.base.u}
    return out


def from_dict(d):
    try:
        chambers = []
        for c in d["chambers"]:
            slots = []
            for s in c["slots"]:
                slots.append(Slot(s) if isinstance(s, str) else Slot(s["gluing"], s.get("length")))
            chambers.append(Chamber(int(c["genus"]), tuple(slots)))
        gluings = tuple(
            Gluing(str(g["id"]), float(g["length"]), tuple(tuple(x) for x in g["sides"]),
                   bool(g["singular"]), g.get("word"))
            for g in d["gluings"]
        )
        base = d.get("base")
        if base is not None:
            base = BaseSurface(base["kind"], float(base["s"]), float(base["u"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed amalgam spec: {exc}") from exc
    return AmalgamSpec(tuple(chambers), gluings, base, d.get("distinguished"))


def dumps(spec):
    return json.dumps(to_dict(spec), indent=2, sort_keys=True)


def loads(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"amalgam spec is not valid JSON: {exc}") from exc
    return from_dict(d)


def load(path):
    with open(path) as fh:
        return loads(fh.read())
