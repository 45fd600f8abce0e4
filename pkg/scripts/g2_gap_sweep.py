"""f(G2) stays at 2 while alpha - delta + 1 grows with k."""

import argparse

from pseudofactor import instances
from pseudofactor.deficiency import compute_f
from pseudofactor.driver import solve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=8)
    args = ap.parse_args()
    print(f"{'k':>3} {'n':>4} {'alpha':>6} {'delta':>6} {'f':>3} {'classical':>10} {'solver':>7}")
    for k in range(1, args.kmax + 1):
        g = instances.gen_g2(k, 2 * k)
        b = compute_f(g)
        count = solve(g).non_cycle_count
        print(f"{k:>3} {g.n:>4} {b.alpha:>6} {b.delta:>6} {b.f_value:>3} "
              f"{b.classical_bound:>10} {count:>7}")


if __name__ == "__main__":
    main()
