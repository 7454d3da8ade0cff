"""Mean crossings with the separating curve per unit length, against c_beta, as L grows."""

import argparse
import csv
import sys

from amalgams import counting
from amalgams.fuchsian.genus2 import double_across_boundary, enumerate_classes_genus2
from amalgams.fuchsian.torus import build_one_holed_torus
from amalgams.hypkernel import ASINH1, symmetric_torus_side


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--L-max", type=float, default=11.0)
    ap.add_argument("--band", type=float, default=1.0)
    ap.add_argument("--eps", type=float, default=0.5)
    args = ap.parse_args()

    side = symmetric_torus_side(2 * ASINH1)
    S = double_across_boundary(build_one_holed_torus(side, side))
    classes = enumerate_classes_genus2(S, args.L_max)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["L", "n", "mean_ratio", "c_beta", "ratio_to_c_beta", "good_fraction", "max_ratio",
                "collar_cap", "collar_ok"])
    L = 6.0
    while L <= args.L_max + 1e-9:
        st = counting.empirical_intersection_stats(S, "separating", L, args.eps, band=args.band,
                                                   classes=classes)
        w.writerow([f"{L:g}", st.n, f"{st.mean_ratio:.5f}", f"{st.c_beta_ref:.5f}",
                    f"{st.mean_ratio / st.c_beta_ref:.4f}", f"{st.good_fraction:.4f}",
                    f"{st.max_ratio:.4f}", f"{st.collar_cap:.3f}", st.collar_ok])
        L += 1.0


if __name__ == "__main__":
    main()
