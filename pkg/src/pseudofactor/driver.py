"""End-to-end pseudo 2-factor construction, validation, and exact oracles."""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .deficiency import (DEFAULT_BUDGET_N, BoundReport, BudgetExceeded,
                         DeficiencyCertificate, compute_f)
from .forest import forest_pseudo_factor
from .graph import Graph
from .packer import OrientedCyclePacking, PackResult, pack_to_optimum

log = logging.getLogger(__name__)

EXACT_F = "exact-f"
CERTIFICATE = "certificate"
KINDS = ("vertex", "edge", "cycle")

ORACLE_MIN_BUDGET = 16
ORACLE_MAX2REG_BUDGET = 24
ORACLE_F_BUDGET = 20


@dataclass(frozen=True)
class Component:
    kind: str  # "vertex" | "edge" | "cycle"
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class PseudoTwoFactor:
    components: tuple[Component, ...]
    non_cycle_count: int

    @classmethod
    def of(cls, components) -> PseudoTwoFactor:
        comps = tuple(components)
        return cls(comps, sum(1 for c in comps if c.kind != "cycle"))

    @property
    def cycle_vertices(self) -> int:
        return sum(len(c.vertices) for c in self.components if c.kind == "cycle")

    def to_json(self) -> list[dict]:
        return [{"kind": c.kind, "vertices": list(c.vertices)} for c in self.components]

    @classmethod
    def from_json(cls, rows: list[dict], non_cycle_count: int | None = None) -> PseudoTwoFactor:
        comps = tuple(Component(r["kind"], tuple(r["vertices"])) for r in rows)
        pf = cls.of(comps)
        if non_cycle_count is not None:
            pf = cls(comps, non_cycle_count)
        return pf


def factor_from_parts(packing: OrientedCyclePacking, matched, singletons) -> PseudoTwoFactor:
    comps = [Component("cycle", c) for c in packing.cycles]
    comps += [Component("edge", tuple(e)) for e in matched]
    comps += [Component("vertex", (v,)) for v in sorted(singletons)]
    return PseudoTwoFactor.of(comps)


def validation_errors(g: Graph, pf: PseudoTwoFactor) -> list[str]:
    errors = []
    seen: dict[int, int] = {}
    for i, comp in enumerate(pf.components):
        vs = comp.vertices
        if comp.kind not in KINDS:
            errors.append(f"component {i}: unknown kind {comp.kind!r}")
            continue
        want = {"vertex": 1, "edge": 2}.get(comp.kind)
        if want is not None and len(vs) != want:
            errors.append(f"component {i}: {comp.kind} with {len(vs)} vertices")
        if comp.kind == "cycle" and len(vs) < 3:
            errors.append(f"component {i}: cycle of length {len(vs)}")
        for v in vs:
            if not isinstance(v, int) or not 0 <= v < g.n:
                errors.append(f"component {i}: vertex {v!r} out of range")
            elif v in seen:
                errors.append(f"vertex {v} in components {seen[v]} and {i}")
            else:
                seen[v] = i
        if comp.kind == "edge" and len(vs) == 2 and not g.has_edge(*vs):
            errors.append(f"component {i}: {vs[0]}-{vs[1]} is not an edge")
        if comp.kind == "cycle" and len(vs) >= 3:
            for a, b in zip(vs, vs[1:] + vs[:1]):
                if not (0 <= a < g.n and 0 <= b < g.n and g.has_edge(a, b)):
                    errors.append(f"component {i}: {a}-{b} is not an edge")
    missing = sorted(set(range(g.n)) - set(seen))
    if missing:
        errors.append(f"vertices {missing} not covered")
    expected = sum(1 for c in pf.components if c.kind != "cycle")
    if pf.non_cycle_count != expected:
        errors.append(f"non_cycle_count {pf.non_cycle_count} != {expected}")
    return errors


def validate(g: Graph, pf: PseudoTwoFactor) -> bool:
    return not validation_errors(g, pf)


# -- solve ----------------------------------------------------------------------

@dataclass
class SolveReport:
    factor: PseudoTwoFactor
    mode: str
    bound: int
    witness: tuple[int, ...]
    satisfied: bool
    bound_report: BoundReport | None = None
    certificate: DeficiencyCertificate | None = None
    fell_back: bool = False
    pack: PackResult | None = field(default=None, repr=False)

    @property
    def non_cycle_count(self) -> int:
        return self.factor.non_cycle_count

    def to_json(self) -> dict:
        out = {"components": self.factor.to_json(),
               "non_cycle_count": self.factor.non_cycle_count,
               "mode": self.mode, "bound": self.bound,
               "witness": list(self.witness), "satisfied": self.satisfied}
        if self.fell_back:
            out["fell_back"] = True
        return out


def solve(g: Graph, mode: str = EXACT_F, budget_n: int = DEFAULT_BUDGET_N,
          trace: bool = False, allow_fallback: bool = True) -> SolveReport:
    """Pseudo 2-factor with at most max(0, f(G)) non-cycle components.

    ``exact-f`` also computes f(G) exactly (exponential); ``certificate``
    relies on the independent set found by the packer, whose value is a
    lower bound on f(G) and an upper bound on the non-cycle count.
    """
    if g.n == 0:
        raise ValueError("graph must be nonempty")
    if mode not in (EXACT_F, CERTIFICATE):
        raise ValueError(f"unknown mode {mode!r}")
    pack = pack_to_optimum(g, trace=trace)
    ff = forest_pseudo_factor(g, pack.uncovered)
    pf = factor_from_parts(pack.packing, ff.matched_edges, ff.singletons)
    count = pf.non_cycle_count
    cert = pack.certificate.certificate if pack.certificate else None
    if cert is not None and count != pack.certificate.alpha_h:
        raise AssertionError("non-cycle count differs from alpha(H)")

    fell_back = False
    if mode == EXACT_F:
        try:
            report = compute_f(g, budget_n)
        except BudgetExceeded:
            if not allow_fallback:
                raise
            log.warning("n=%d over budget %d, falling back to certificate mode", g.n, budget_n)
            fell_back, mode = True, CERTIFICATE
        else:
            return SolveReport(pf, EXACT_F, report.f_value, report.certificate.witness,
                               count <= max(0, report.f_value), report, cert, pack=pack)
    bound = cert.value if cert else 0
    witness = cert.witness if cert else ()
    return SolveReport(pf, CERTIFICATE, bound, witness, count <= max(0, bound),
                       None, cert, fell_back, pack)


def check_theorem_consequences(g: Graph, report: SolveReport | None = None,
                               budget_n: int = DEFAULT_BUDGET_N) -> dict:
    """Classical corollaries, each as True/False, or None when the premise fails."""
    if report is None:
        report = solve(g, EXACT_F, budget_n)
    bounds = report.bound_report or compute_f(g, budget_n)
    count = report.non_cycle_count
    alpha, delta = bounds.alpha, bounds.delta
    return {
        "non_cycle_count": count,
        "alpha": alpha, "delta": delta, "f": bounds.f_value,
        "classical": count <= alpha - delta + 1 if alpha >= delta else None,
        "min_degree_2factor": count == 0 if delta >= alpha + 1 else None,
        "independent_set_2factor": count == 0 if bounds.f_value <= 0 else None,
    }


# -- oracles ---------------------------------------------------------------------

def _check_budget(g: Graph, budget: int, what: str) -> None:
    if g.n > budget:
        raise BudgetExceeded(f"{what}: n={g.n} exceeds oracle budget {budget}")


def oracle_exact_f(g: Graph, budget_n: int = ORACLE_F_BUDGET) -> int:
    """max |I| - delta_G(I) + 1 by scanning every subset (vectorised)."""
    _check_budget(g, budget_n, "oracle_exact_f")
    if g.n == 0:
        raise ValueError("graph must be nonempty")
    n = g.n
    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    indep = np.ones(size, dtype=bool)
    mindeg = np.full(size, n + 1, dtype=np.int64)
    popcnt = np.zeros(size, dtype=np.int64)
    for v in range(n):
        lo, hi = 1 << v, 1 << (v + 1)
        low = idx[:lo]
        indep[lo:hi] = indep[:lo] & ((low & g.masks[v]) == 0)
        mindeg[lo:hi] = np.minimum(mindeg[:lo], g.degree(v))
        popcnt[lo:hi] = popcnt[:lo] + 1
    vals = (popcnt - mindeg + 1)[1:][indep[1:]]
    return int(vals.max())


def oracle_alpha(g: Graph, budget_n: int = ORACLE_F_BUDGET) -> int:
    _check_budget(g, budget_n, "oracle_alpha")
    best = 0
    n = g.n
    indep = [True] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        indep[mask] = indep[rest] and not (g.masks[v] & rest)
        if indep[mask]:
            best = max(best, bin(mask).count("1"))
    return best


_INF = float("inf")


def _factor_dp(g: Graph, w_noncycle: int, w_cover: int):
    """Minimise w_noncycle * (#K1 + #K2) - w_cover * (#cycle vertices).

    The lowest remaining vertex v is a singleton, an edge vu, or the start
    of a cycle grown one vertex at a time through ``open_`` states.
    Returns (value, PseudoTwoFactor).
    """
    masks = g.masks
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * g.n + 1000))

    def bits(m):
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    @lru_cache(maxsize=None)
    def free(mask):
        if not mask:
            return 0
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        best = w_noncycle + free(rest)
        for u in bits(masks[v] & rest):
            best = min(best, w_noncycle + free(rest ^ (1 << u)),
                       open_(rest ^ (1 << u), v, u, False) - 2 * w_cover)
        return best

    @lru_cache(maxsize=None)
    def open_(mask, s, c, long_enough):
        best = free(mask) if long_enough and masks[c] >> s & 1 else _INF
        for u in bits(masks[c] & mask):
            best = min(best, open_(mask ^ (1 << u), s, u, True) - w_cover)
        return best

    full = (1 << g.n) - 1
    value = free(full)

    # walk the optimal choices back out
    comps = []
    mask = full
    while mask:
        target = free(mask)
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if w_noncycle + free(rest) == target:
            comps.append(Component("vertex", (v,)))
            mask = rest
            continue
        for u in bits(masks[v] & rest):
            if w_noncycle + free(rest ^ (1 << u)) == target:
                comps.append(Component("edge", (v, u)))
                mask = rest ^ (1 << u)
                break
            if open_(rest ^ (1 << u), v, u, False) - 2 * w_cover == target:
                cyc, mask = _trace_cycle(masks, open_, free, w_cover, rest ^ (1 << u), v, u)
                comps.append(Component("cycle", tuple(cyc)))
                break
        else:
            raise AssertionError("oracle reconstruction failed")
    free.cache_clear()
    open_.cache_clear()
    return value, PseudoTwoFactor.of(comps)


def _trace_cycle(masks, open_, free, w_cover, mask, s, c):
    cyc = [s, c]
    long_enough = False
    while True:
        target = open_(mask, s, c, long_enough)
        if long_enough and masks[c] >> s & 1 and free(mask) == target:
            return cyc, mask
        for u in range(len(masks)):
            if masks[c] >> u & 1 and mask >> u & 1 \
                    and open_(mask ^ (1 << u), s, u, True) - w_cover == target:
                cyc.append(u)
                mask ^= 1 << u
                c, long_enough = u, True
                break
        else:
            raise AssertionError("oracle cycle reconstruction failed")


def oracle_min_non_cycle(g: Graph, budget_n: int = ORACLE_MIN_BUDGET) -> tuple[int, PseudoTwoFactor]:
    """Minimum number of K1/K2 components over all pseudo 2-factors.

    Among optimal factors the witness covers as many vertices by cycles as
    possible.
    """
    _check_budget(g, budget_n, "oracle_min_non_cycle")
    _, pf = _factor_dp(g, g.n + 1, 1)
    return pf.non_cycle_count, pf


def optimal_cycle_cover_range(g: Graph, budget_n: int = ORACLE_MIN_BUDGET) -> tuple[int, int]:
    """(fewest, most) cycle-covered vertices over all minimum pseudo 2-factors."""
    _check_budget(g, budget_n, "optimal_cycle_cover_range")
    _, most = _factor_dp(g, g.n + 1, 1)
    _, fewest = _factor_dp(g, g.n + 1, -1)
    assert most.non_cycle_count == fewest.non_cycle_count
    return fewest.cycle_vertices, most.cycle_vertices


def oracle_max_two_regular(g: Graph, budget_n: int = ORACLE_MAX2REG_BUDGET) -> tuple[int, OrientedCyclePacking]:
    """Largest number of vertices covered by vertex-disjoint cycles."""
    _check_budget(g, budget_n, "oracle_max_two_regular")
    value, pf = _factor_dp(g, 0, 1)
    packing = OrientedCyclePacking(tuple(c.vertices for c in pf.components if c.kind == "cycle"))
    assert len(packing) == -value
    return len(packing), packing
