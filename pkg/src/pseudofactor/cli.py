"""Command line entry point: ``pseudofactor {solve,verify,f,oracle,gen,sweep}``.

Exit codes: 0 success, 1 verification rejected, 2 input error, 3 budget
exceeded, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import driver, instances
from .deficiency import (DEFAULT_BUDGET_N, BudgetExceeded, DeficiencyCertificate,
                         compute_f, verify_certificate)
from .graph import Graph, GraphInputError, format_edge_list, read_edge_list
from .packer import SurgeryError

EXIT_OK, EXIT_REJECTED, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _with_seed(spec: str, seed: int | None) -> instances.GeneratorSpec:
    parsed = instances.parse_spec(spec)
    if seed is not None and parsed.family in ("random", "forest") and "seed" not in parsed.params:
        parsed = instances.GeneratorSpec(parsed.family, {**parsed.params, "seed": str(seed)})
    return parsed


def _load_one(path: str | None, gen: str | None, seed: int | None) -> tuple[str, Graph]:
    if (path is None) == (gen is None):
        raise InputError("give exactly one of --input or --gen")
    try:
        if path is not None:
            return path, read_edge_list(Path(path).read_text())
        spec = _with_seed(gen, seed)
        return str(spec), instances.build(spec)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _inputs(args) -> list[tuple[str, Graph]]:
    gens = args.gen or []
    paths = args.input or []
    if not gens and not paths:
        raise InputError("give --input or --gen")
    if len(gens) + len(paths) > 1 and not getattr(args, "multi", False):
        raise InputError("exactly one input source expected")
    out = [_load_one(p, None, args.seed) for p in paths]
    out += [_load_one(None, s, args.seed) for s in gens]
    return out


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False)


# -- subcommands ------------------------------------------------------------------

def cmd_solve(args) -> int:
    _, g = _inputs(args)[0]
    report = driver.solve(g, args.mode, args.budget_n, trace=args.trace,
                          allow_fallback=not args.no_fallback)
    if args.trace:
        for event in report.pack.events:
            print(_dumps(event), file=sys.stderr)
    _emit(args, _dumps(report.to_json()) + "\n")
    return EXIT_OK if report.satisfied else EXIT_INTERNAL


def cmd_verify(args) -> int:
    _, g = _inputs(args)[0]
    try:
        data = json.loads(Path(args.factor).read_text())
        pf = driver.PseudoTwoFactor.from_json(data["components"], data.get("non_cycle_count"))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read factor: {exc}") from exc
    violations = driver.validation_errors(g, pf)
    cert_ok = None
    if data.get("witness"):
        cert = DeficiencyCertificate.of(g, data["witness"]) if all(
            isinstance(v, int) and 0 <= v < g.n for v in data["witness"]) else None
        cert_ok = cert is not None and verify_certificate(g, cert) and (
            "bound" not in data or cert.value == data["bound"])
    ok = not violations and cert_ok is not False
    _emit(args, _dumps({"valid": not violations, "violations": violations,
                        "non_cycle_count": pf.non_cycle_count, "certificate_ok": cert_ok}) + "\n")
    return EXIT_OK if ok else EXIT_REJECTED


def cmd_f(args) -> int:
    _, g = _inputs(args)[0]
    _emit(args, _dumps(compute_f(g, args.budget_n).to_json()) + "\n")
    return EXIT_OK


def oracle_row(name: str, g: Graph, budget_n: int, oracle_budget: int) -> dict:
    report = driver.solve(g, driver.EXACT_F, budget_n, allow_fallback=False)
    oracle_min, _ = driver.oracle_min_non_cycle(g, oracle_budget)
    max2reg, _ = driver.oracle_max_two_regular(g, oracle_budget)
    b = report.bound_report
    return {"instance": name, "n": g.n, "solver": report.non_cycle_count,
            "oracle_min": oracle_min, "f": b.f_value, "classical_bound": b.classical_bound,
            "max_two_regular": max2reg}


def cmd_oracle(args) -> int:
    rows = [oracle_row(name, g, args.budget_n, args.oracle_budget) for name, g in _inputs(args)]
    _emit(args, "".join(_dumps(r) + "\n" for r in rows))
    bad = any(r["oracle_min"] > r["solver"] or r["oracle_min"] > max(0, r["f"]) for r in rows)
    return EXIT_INTERNAL if bad else EXIT_OK


def cmd_gen(args) -> int:
    try:
        spec = _with_seed(args.spec, args.seed)
        g = instances.build(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(args, format_edge_list(g, comment=f"generated by: {spec}"))
    return EXIT_OK


def _sweep_specs(args) -> list[str]:
    lo, hi = args.start, args.stop
    fam = args.family
    seed = args.seed if args.seed is not None else 0
    if fam == "g2":
        return [f"g2:k={k},l={2 * k}" for k in range(lo, hi + 1)]
    if fam == "g1":
        return [f"g1:h={args.h},p={p}" for p in range(lo, hi + 1)]
    if fam == "forest":
        return [f"forest:n={n},seed={seed + n}" for n in range(lo, hi + 1)]
    if fam == "random":
        return [f"random:n={n},p={args.p},seed={seed + n}" for n in range(lo, hi + 1)]
    raise InputError(f"unknown sweep family {fam!r}")


def cmd_sweep(args) -> int:
    buf = []
    for spec in _sweep_specs(args):
        try:
            g = instances.build(spec)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        report = driver.solve(g, driver.EXACT_F, args.budget_n, allow_fallback=False)
        try:
            oracle = driver.oracle_min_non_cycle(g, args.oracle_budget)[0]
        except BudgetExceeded:
            oracle = ""
        b = report.bound_report
        buf.append([args.family, spec.partition(":")[2], g.n, b.f_value, b.classical_bound,
                    report.non_cycle_count, oracle])
    out = Path(args.out).open("w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["family", "params", "n", "f", "classical_bound", "solver_count", "oracle_count"])
        writer.writerows(buf)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pseudofactor", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, multi=False):
        p.add_argument("--input", action="append", help="edge-list file")
        p.add_argument("--gen", action="append", help="generator spec, e.g. g2:k=2,l=4")
        p.add_argument("--seed", type=int, help="seed for random/forest specs lacking one")
        p.add_argument("--budget-n", type=int, default=DEFAULT_BUDGET_N,
                       help="largest n for exact f(G)")
        p.add_argument("--out", help="write output here instead of stdout")
        p.set_defaults(multi=multi)

    p = sub.add_parser("solve", help="build a pseudo 2-factor within the f(G) bound")
    common(p)
    p.add_argument("--mode", choices=[driver.EXACT_F, driver.CERTIFICATE], default=driver.EXACT_F)
    p.add_argument("--no-fallback", action="store_true",
                   help="fail with exit 3 instead of falling back to certificate mode")
    p.add_argument("--trace", action="store_true", help="JSON-lines move log on stderr")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solve report against its graph")
    common(p)
    p.add_argument("--factor", required=True, help="JSON report written by solve")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("f", help="exact f(G) with witness")
    common(p)
    p.set_defaults(func=cmd_f)

    p = sub.add_parser("oracle", help="compare the solver with exact oracles")
    common(p, multi=True)
    p.add_argument("--oracle-budget", type=int, default=driver.ORACLE_MAX2REG_BUDGET)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("spec")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", help="CSV over a parameter range of one family")
    p.add_argument("--family", choices=["g1", "g2", "forest", "random"], required=True)
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.add_argument("--h", default="K1", help="base graph for g1 (K<n>, P<n>, C<n>)")
    p.add_argument("--p", default="1/2", help="edge probability for random")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget-n", type=int, default=DEFAULT_BUDGET_N)
    p.add_argument("--oracle-budget", type=int, default=driver.ORACLE_MIN_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, GraphInputError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SurgeryError, AssertionError) as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
