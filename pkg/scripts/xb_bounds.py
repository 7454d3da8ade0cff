"""The X_{b,s,k} chain, its inequality margins and the bounds it feeds, over a grid of s."""

import argparse
import csv
import math
import sys

import numpy as np

from amalgams import amalgam, bounds, counting


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s-min", type=float, default=1e-3)
    ap.add_argument("--n", type=int, default=20)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["s", "u", "k", "B", "L", "kprime", "min_margin", "log2_lower", "log2_closed_form",
                "entropy_lower", "entropy_upper", "log10_upper_stepwise"])
    for s in np.geomspace(args.s_min, 0.5, args.n):
        s = float(s)
        chain = bounds.chain_check(s)
        L = chain.L
        rec = counting.count_lower_Xbsk(amalgam.make_Xbsk(s), L)
        thm = bounds.xb_lower(chain.B, L, strict=False)
        w.writerow([
            f"{s:.6g}", f"{chain.u:.6f}", chain.k, f"{chain.B:.6f}", f"{L:.6f}", chain.kprime,
            f"{min(chain.margins.values()):.4f}",
            f"{math.log2(rec.lower):.4f}" if rec.lower else "",
            f"{thm.log2:.4f}" + ("" if thm.preconditions_met else "*"),
            f"{bounds.xb_entropy_lower(chain.B):.6g}",
            f"{bounds.entropy_upper(4 * math.pi, chain.B, s):.6g}",
            bounds.format_log10(bounds.upper_stepwise(4 * math.pi, chain.B, s, L)),
        ])
    print("# * marks closed-form values whose preconditions fail", file=sys.stderr)


if __name__ == "__main__":
    main()
