"""Minimum pseudo 2-factors of the 22-vertex example never contain a maximum
2-regular subgraph: print both optima and the range of cycle coverage."""

import time

from pseudofactor import instances
from pseudofactor.driver import (optimal_cycle_cover_range, oracle_max_two_regular,
                                 oracle_min_non_cycle, solve)


def main():
    g = instances.gen_fig3()
    name = g.labels.__getitem__
    t0 = time.perf_counter()
    size, packing = oracle_max_two_regular(g, budget_n=24)
    count, pf = oracle_min_non_cycle(g, budget_n=24)
    lo, hi = optimal_cycle_cover_range(g, budget_n=24)
    dt = time.perf_counter() - t0
    print(f"n={g.n} m={g.m}")
    print(f"max 2-regular subgraph covers {size} vertices:")
    for cyc in packing.cycles:
        print("   ", " ".join(map(name, cyc)))
    print(f"min non-cycle components: {count}; cycle coverage among optima: {lo}..{hi}")
    for c in pf.components:
        print(f"    {c.kind:6s}", " ".join(map(name, c.vertices)))
    r = solve(g)
    print(f"solver: {r.non_cycle_count} non-cycle components, f = {r.bound}")
    print(f"oracles took {dt:.2f}s")


if __name__ == "__main__":
    main()
