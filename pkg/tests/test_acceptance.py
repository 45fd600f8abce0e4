"""Acceptance gate. Every test prints one verdict line; the terminal summary
aggregates them per criterion.

Corpus-wide criteria (4, 5, 7, 8) share one session fixture so each graph is
solved once.
"""

from dataclasses import dataclass, field

import pytest

from conftest import brute_alpha
from pseudofactor import instances
from pseudofactor.deficiency import (all_independent_satisfy_2factor_condition,
                                     classical_bound, compute_f, verify_certificate)
from pseudofactor.driver import (ORACLE_F_BUDGET, SolveReport, oracle_alpha, oracle_exact_f,
                                 oracle_max_two_regular, oracle_min_non_cycle, solve, validate)
from pseudofactor.forest import forest_alpha

CORPUS_SIZE = 10_000
FOREST_COUNT = 1_000


@dataclass
class Solved:
    spec: str
    g: object
    report: SolveReport
    exact_f: int | None = None
    extra: dict = field(default_factory=dict)


def _solve_family(pairs, oracle=True):
    out = []
    for spec, g in pairs:
        report = solve(g)
        exact = oracle_exact_f(g) if oracle and g.n <= ORACLE_F_BUDGET else None
        out.append(Solved(spec, g, report, exact))
    return out


@pytest.fixture(scope="session")
def corpus():
    return _solve_family(instances.random_corpus(CORPUS_SIZE, max_n=12))


@pytest.fixture(scope="session")
def forest_runs():
    return _solve_family(instances.forest_corpus(FOREST_COUNT, max_n=14))


@pytest.fixture(scope="session")
def named_runs():
    specs = ["fig3"] + [f"g2:k={k},l={2 * k}" for k in range(1, 6)]
    for h, size in (("K1", 1), ("K2", 2), ("P3", 3)):
        specs += [f"g1:h={h},p={p}" for p in range(size + 1, size + 4)]
    return _solve_family((s, instances.build(s)) for s in specs)


def _show(bad, limit=3):
    return ", ".join(bad[:limit]) + (" ..." if len(bad) > limit else "")


# -- 1 --------------------------------------------------------------------------

def test_fig3_reproduction(acceptance):
    g = instances.gen_fig3()
    max2reg, packing = oracle_max_two_regular(g, budget_n=24)
    min_nc, pf = oracle_min_non_cycle(g, budget_n=24)
    ok = (g.n, max2reg, min_nc, pf.cycle_vertices) == (22, 19, 2, 18) and validate(g, pf)
    assert acceptance(1, ok, f"fig3: max 2-regular={max2reg} (19), min non-cycle={min_nc} (2), "
                             f"cycle-covered in witness={pf.cycle_vertices} (18)")


# -- 2 ----------------------------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_g2_gap(acceptance, k):
    g = instances.gen_g2(k, 2 * k)
    f, cb = compute_f(g).f_value, classical_bound(g)
    assert acceptance(2, (f, cb) == (2, k + 1),
                      f"G2 k={k}: f={f} (2), classical bound={cb} ({k + 1})")


# -- 3 ----------------------------------------------------------------------------

G1_CASES = [(h, size, p) for h, size in (("K1", 1), ("K2", 2), ("P3", 3))
            for p in range(size + 1, size + 4)]


@pytest.mark.parametrize("h,size,p", G1_CASES)
def test_g1_tightness(acceptance, h, size, p):
    g = instances.build(f"g1:h={h},p={p}")
    assert g.n <= 16
    oracle, _ = oracle_min_non_cycle(g, budget_n=16)
    report = solve(g)
    f = report.bound
    ok = oracle == p - size and report.non_cycle_count <= max(0, f) and validate(g, report.factor)
    assert acceptance(3, ok, f"G1 h={h} p={p}: oracle min={oracle} ({p - size}), "
                             f"solver={report.non_cycle_count} <= max(0, f={f})")


# -- 4 ----------------------------------------------------------------------------

def test_main_bound_on_random_corpus(acceptance, corpus):
    bad = [r.spec for r in corpus
           if not validate(r.g, r.report.factor)
           or r.report.non_cycle_count > max(0, r.exact_f)]
    densities = {r.spec.split("p=")[1].split(",")[0] for r in corpus}
    ok = len(corpus) >= 10_000 and max(r.g.n for r in corpus) <= 12 and len(densities) == 9 and not bad
    assert acceptance(4, ok, f"{len(corpus)} random graphs, n<=12, densities 0.1..0.9: "
                             f"{len(bad)} violations {_show(bad)}")


# -- 5 ----------------------------------------------------------------------------

def test_corollaries_on_random_corpus(acceptance, corpus):
    bad, premises = [], [0, 0, 0]
    for r in corpus:
        count = r.report.non_cycle_count
        alpha = oracle_alpha(r.g)
        delta = r.g.min_degree()
        if alpha >= delta:
            premises[0] += 1
            if count > alpha - delta + 1:
                bad.append(f"{r.spec} (alpha-delta+1)")
        if delta >= alpha + 1:
            premises[1] += 1
            if count:
                bad.append(f"{r.spec} (delta>alpha)")
        if all_independent_satisfy_2factor_condition(r.g):
            premises[2] += 1
            if count:
                bad.append(f"{r.spec} (independent sets)")
    ok = not bad and all(premises)
    assert acceptance(5, ok, f"premise counts {premises}: {len(bad)} violations {_show(bad)}")


# -- 6 ----------------------------------------------------------------------------

def test_forest_exactness(acceptance, forest_runs):
    bad = []
    for r in forest_runs:
        kinds = {c.kind for c in r.report.factor.components}
        alpha = forest_alpha(r.g)
        if r.report.non_cycle_count != alpha or not kinds <= {"vertex", "edge"} \
                or alpha != brute_alpha(r.g) or not validate(r.g, r.report.factor):
            bad.append(r.spec)
    ok = len(forest_runs) >= 1000 and not bad
    assert acceptance(6, ok, f"{len(forest_runs)} forests, n<=14: {len(bad)} violations {_show(bad)}")


# -- 7 ----------------------------------------------------------------------------

def test_surgery_audit(acceptance, corpus, forest_runs, named_runs):
    moves, bad, kinds = 0, [], {}
    for r in corpus + forest_runs + named_runs:
        pack = r.report.pack
        if pack.packing.audit(r.g):
            bad.append(f"{r.spec} (final packing)")
        for m in pack.moves:
            moves += 1
            kinds[m.kind] = kinds.get(m.kind, 0) + 1
            if not m.audit_ok or not m.after < m.before:
                bad.append(f"{r.spec} ({m.kind})")
    ok = not bad and {"insert", "case1", "case2"} <= set(kinds)
    assert acceptance(7, ok, f"{moves} moves {dict(sorted(kinds.items()))}: "
                             f"{len(bad)} audit/potential failures {_show(bad)}")


# -- 8 ----------------------------------------------------------------------------

def test_certificate_soundness(acceptance, corpus, forest_runs, named_runs):
    emitted, compared, bad = 0, 0, []
    for r in corpus + forest_runs + named_runs:
        certs = [r.report.certificate]
        if r.report.bound_report is not None:
            certs.append(r.report.bound_report.certificate)
        for c in certs:
            if c is None:
                continue
            emitted += 1
            if not verify_certificate(r.g, c):
                bad.append(f"{r.spec} (verify)")
            if r.exact_f is not None:
                compared += 1
                if c.value > r.exact_f:
                    bad.append(f"{r.spec} (value {c.value} > f {r.exact_f})")
    assert acceptance(8, not bad, f"{emitted} certificates, {compared} compared with the oracle: "
                                  f"{len(bad)} violations {_show(bad)}")
