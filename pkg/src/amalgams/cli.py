"""Command-line interface. Data goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 2 precondition violation, 3 budget exhausted.
"""

import argparse
import csv
import json
import math
import sys

from . import amalgam, bounds, counting, entropy
from .config import Deadline
from .errors import BudgetExceeded, PreconditionError
from .fuchsian.genus2 import double_across_boundary, enumerate_classes_genus2
from .fuchsian.intersect import geometric_intersection_axes
from .fuchsian.torus import build_one_holed_torus, enumerate_classes_free
from .fuchsian.words import algebraic_intersection, homology_class, twist_word
from .hypkernel import ASINH1, symmetric_torus_side

SURROGATE_SIDE = symmetric_torus_side(2.0 * ASINH1)


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _grid(text):
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise PreconditionError(f"L-grid must read a:b:step, got {text!r}")
    if step <= 0 or b < a:
        raise PreconditionError(f"L-grid needs step > 0 and b >= a, got {text!r}")
    n = int(math.floor((b - a) / step + 1e-9))
    return [round(a + i * step, 12) for i in range(n + 1)]


def cmd_validate(args, out):
    bad = amalgam.validate(amalgam.load(args.spec))
    _dump({"valid": not bad, "violations": bad}, out)
    return 0 if not bad else 2


def cmd_metrics(args, out):
    m = amalgam.metrics(amalgam.load(args.spec))
    _dump({"A": m.A, "B": m.B, "sys": m.sys, "r0": m.r0, "nmap": m.nmap}, out)
    return 0


def _chain_dict(rep):
    return {"s": rep.s, "u": rep.u, "k": rep.k, "B": rep.B, "L": rep.L, "kprime": rep.kprime,
            "margins": rep.margins, "ok": rep.ok}


def cmd_construct(args, out):
    if args.family == "xb":
        spec = amalgam.make_Xbsk(args.s)
        chain = bounds.chain_check(args.s)
        body = {"spec": amalgam.to_dict(spec), "chain": _chain_dict(chain),
                "k": chain.k, "B": chain.B}
    else:
        S = double_across_boundary(build_one_holed_torus(args.s, args.u))
        spec = amalgam.make_XSbm(S, args.beta, args.m)
        body = {"spec": amalgam.to_dict(spec)}
    if args.emit:
        with open(args.emit, "w") as fh:
            fh.write(amalgam.dumps(spec) + "\n")
    _dump(body, out)
    return 0


def cmd_enumerate(args, out):
    rep = build_one_holed_torus(args.s, args.u)
    if args.base == "torus":
        classes = enumerate_classes_free(rep, args.L, deadline=Deadline())
    else:
        classes = enumerate_classes_genus2(double_across_boundary(rep), args.L, deadline=Deadline())
    fh = open(args.ledger, "w", newline="") if args.ledger else out
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["word", "length", "trace", "homology"])
        for c in classes:
            w.writerow([c.word, f"{c.length:.12g}", f"{c.trace:.12g}", " ".join(map(str, c.homology))])
    finally:
        if args.ledger:
            fh.close()
    return 0


def cmd_count(args, out):
    grid = _grid(args.L_grid)
    if args.family == "xb":
        spec = amalgam.make_Xbsk(args.s)
        records = [counting.count_lower_Xbsk(spec, L) for L in grid]
    else:
        s = args.s if args.s is not None else SURROGATE_SIDE
        u = args.u if args.u is not None else s
        S = double_across_boundary(build_one_holed_torus(s, u))
        spec = amalgam.make_XSbm(S, args.beta, args.m)
        records = counting.count_series_XSbm(spec, grid, deadline=Deadline())
    counting.write_records(records, out)
    return 0


def cmd_bounds(args, out):
    r = bounds.stepwise_report(args.A, args.B, args.sys, args.L)
    d = r.to_dict()
    if not args.stepwise:
        keep = ("A", "B", "sys", "L", "r0", "upper_stepwise_log10", "upper_coarse_log10", "entropy_upper")
        d = {k: d[k] for k in keep}
    _dump(d, out)
    return 0


def cmd_intersect(args, out):
    alpha = twist_word("a", "b", args.kprime)
    beta = twist_word("b", "a", args.k)
    if args.oracle == "homology":
        n = abs(algebraic_intersection(homology_class(alpha), homology_class(beta)))
    else:
        rep = build_one_holed_torus(args.s, args.u)
        n = geometric_intersection_axes(rep, alpha, beta, deadline=Deadline())
    out.write(f"{n}\n")
    return 0


def cmd_entropy(args, out):
    with open(args.counts) as fh:
        records = counting.read_records(fh)
    series = entropy.CountSeries.from_records(records, use=args.use)
    est = entropy.estimate_entropy(series, args.mode)
    body = {"h": est.h, "mode": est.mode, "slope": est.slope, "tail": est.tail,
            "residuals": list(est.residuals), "lower_only": est.lower_only}
    if est.lower_only:
        body["note"] = "counts are lower bounds; h is a lower estimate"
    _dump(body, out)
    return 0


def cmd_stats(args, out):
    side = symmetric_torus_side(args.beta_length)
    S = double_across_boundary(build_one_holed_torus(side, side))
    st = counting.empirical_intersection_stats(S, "separating", args.L, args.eps, band=args.band,
                                               deadline=Deadline())
    _dump({"mean_ratio": st.mean_ratio, "good_fraction": st.good_fraction,
           "c_beta_ref": st.c_beta_ref, "n": st.n, "collar_cap": st.collar_cap,
           "collar_ok": st.collar_ok, "max_ratio": st.max_ratio}, out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="amalgams", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("validate", help="list violations of an amalgam spec")
    q.add_argument("spec")
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("metrics", help="area, singular length, systole")
    q.add_argument("spec")
    q.set_defaults(func=cmd_metrics)

    q = sub.add_parser("construct", help="build an X_{b,s,k} or X_{S,beta,m} spec")
    q.add_argument("family", choices=["xb", "sbm"])
    q.add_argument("--s", type=float, required=True)
    q.add_argument("--u", type=float)
    q.add_argument("--m", type=int, default=2)
    q.add_argument("--beta", default="separating")
    q.add_argument("--emit", help="also write the spec JSON here")
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("enumerate", help="closed geodesic classes of length <= L")
    q.add_argument("--base", choices=["torus", "genus2"], default="torus")
    q.add_argument("--s", type=float, required=True)
    q.add_argument("--u", type=float, required=True)
    q.add_argument("--L", type=float, required=True)
    q.add_argument("--ledger", help="write the CSV here instead of stdout")
    q.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("count", help="count lower bounds on an L-grid")
    q.add_argument("--family", choices=["xb", "sbm"], required=True)
    q.add_argument("--L-grid", dest="L_grid", required=True, help="a:b:step")
    q.add_argument("--s", type=float)
    q.add_argument("--u", type=float)
    q.add_argument("--m", type=int, default=2)
    q.add_argument("--beta", default="separating")
    q.set_defaults(func=cmd_count)

    q = sub.add_parser("bounds", help="upper bounds and entropy bound")
    for name in ("A", "B", "sys", "L"):
        q.add_argument(f"--{name}", type=float, required=True)
    q.add_argument("--stepwise", action="store_true", help="include every intermediate quantity")
    q.set_defaults(func=cmd_bounds)

    q = sub.add_parser("intersect", help="i(alpha_k', beta_k) on the one-holed torus")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--kprime", type=int, required=True)
    q.add_argument("--oracle", choices=["homology", "geometric"], default="geometric")
    q.add_argument("--s", type=float, default=SURROGATE_SIDE)
    q.add_argument("--u", type=float, default=SURROGATE_SIDE)
    q.set_defaults(func=cmd_intersect)

    q = sub.add_parser("entropy", help="entropy estimate from a count CSV")
    q.add_argument("--counts", required=True)
    q.add_argument("--mode", choices=["plain", "ricks"], default="plain")
    q.add_argument("--use", choices=["enumerated", "lower"], default="lower")
    q.set_defaults(func=cmd_entropy)

    q = sub.add_parser("stats", help="intersection statistics with the separating curve")
    q.add_argument("--beta-length", dest="beta_length", type=float, default=2.0 * ASINH1)
    q.add_argument("--L", type=float, required=True)
    q.add_argument("--eps", type=float, default=0.5)
    q.add_argument("--band", type=float, default=1.0)
    q.set_defaults(func=cmd_stats)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "construct" and args.family == "sbm" and args.u is None:
        args.u = args.s
    try:
        return args.func(args, out)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
