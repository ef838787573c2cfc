"""Print the three design tables: V1 roots, V2 distances, V3 sizes.

Each row pairs the closed-form distance expression with a brute-force
scan over all codeword pairs, so any geometry regression shows up as a
mismatch column.

Run:  python3 demos/reference_tables.py
"""

import numpy as np

from gpsk import (build_v1, build_v2, build_v3, diversity_product,
                  v1_analytic_dp, v1_dp_terms, v2_analytic_dp, v2_dp_terms,
                  v3_analytic_dp, v1_root, v2_r)


def v1_table():
    print("V1: three shells, root r from the fixed-point equation")
    print("  n      r    within   cross    dp(analytic)  dp(brute)")
    for n in range(4, 14, 2):
        r, within, cross = v1_dp_terms(n)
        brute = diversity_product(build_v1(n)).value
        print(f" {n:2d}  {r:.4f}  {within:.4f}  {cross:.4f}   "
              f"{v1_analytic_dp(n):.6f}     {brute:.6f}")


def v2_table():
    print("\nV2: four offset shells, closed-form r")
    print("  n      r    r*sin(2pi/n)  sin(pi/n)  dp(analytic)  dp(brute)")
    for n in range(4, 16, 2):
        r, term1, term2 = v2_dp_terms(n)
        brute = diversity_product(build_v2(n)).value
        print(f" {n:2d}  {r:.4f}     {term1:.4f}      {term2:.4f}    "
              f"{v2_analytic_dp(n):.6f}     {brute:.6f}")
    # for large n the within-shell chord takes over and dp -> sin(pi/n)
    print(f" 64  {v2_r(64):.4f}  dp(analytic) = {v2_analytic_dp(64):.6f}"
          f"  = sin(pi/64) = {np.sin(np.pi / 64):.6f}")


def v3_table():
    print("\nV3: sphere-packed shells, dp = sin(pi/4n) by construction")
    print("  n   size   rate    dp(analytic)  dp(brute, n<=8)")
    for n in range(3, 14):
        v = build_v3(n)
        brute = (f"{diversity_product(v).value:.6f}" if n <= 8
                 else "  (skipped)")
        bits = np.log2(v.size) / 2
        print(f" {n:2d}  {v.size:5d}  {bits:.4f}    "
              f"{v3_analytic_dp(n):.6f}      {brute}")


def main():
    v1_table()
    v2_table()
    v3_table()


if __name__ == "__main__":
    main()
