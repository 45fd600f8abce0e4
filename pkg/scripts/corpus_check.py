"""Run the seeded random corpus through the solver and the exact oracles and
tally bound violations, move kinds and the solver/oracle gap."""

import argparse
import time
from collections import Counter

from pseudofactor import instances
from pseudofactor.deficiency import verify_certificate
from pseudofactor.driver import oracle_exact_f, oracle_min_non_cycle, solve, validate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=10_000)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--gap", action="store_true", help="also run the min non-cycle oracle")
    args = ap.parse_args()

    t0 = time.perf_counter()
    violations, moves, gaps = [], Counter(), Counter()
    for spec, g in instances.random_corpus(args.count, args.max_n, args.seed):
        r = solve(g)
        f = oracle_exact_f(g)
        cert_ok = r.certificate is None or verify_certificate(g, r.certificate)
        if not validate(g, r.factor) or r.non_cycle_count > max(0, f) or not cert_ok:
            violations.append(spec)
        moves.update(m.kind for m in r.pack.moves)
        if args.gap:
            gaps[r.non_cycle_count - oracle_min_non_cycle(g)[0]] += 1
    print(f"{args.count} graphs in {time.perf_counter() - t0:.1f}s")
    print(f"violations: {len(violations)}", *violations[:10])
    print("moves:", dict(sorted(moves.items())))
    if args.gap:
        print("solver - optimum:", dict(sorted(gaps.items())))


if __name__ == "__main__":
    main()
