"""Exact f(G) = max over nonempty independent I of |I| - delta_G(I) + 1.

The search anchors on the minimum-degree member v of I: every maximizer has
one, and given v the best I is v plus a maximum independent set among the
non-neighbours u of v with d(u) >= d(v). Each anchor is a branch-and-bound
maximum independent set problem with a greedy clique-cover bound.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .graph import Graph, is_independent, min_degree_of_set

DEFAULT_BUDGET_N = 40


class BudgetExceeded(RuntimeError):
    """Instance is larger than the configured exact-search budget."""


@dataclass(frozen=True)
class DeficiencyCertificate:
    witness: tuple[int, ...]
    value: int

    @classmethod
    def of(cls, g: Graph, witness: Iterable[int]) -> DeficiencyCertificate:
        w = tuple(sorted(witness))
        return cls(w, len(w) - min_degree_of_set(g, w) + 1)


@dataclass(frozen=True)
class BoundReport:
    f_value: int
    alpha: int
    delta: int
    classical_bound: int
    certificate: DeficiencyCertificate

    def to_json(self) -> dict:
        return {"f": self.f_value, "alpha": self.alpha, "delta": self.delta,
                "classical_bound": self.classical_bound,
                "witness": list(self.certificate.witness)}


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _clique_cover_bound(masks: tuple[int, ...], cand: int) -> int:
    """Number of cliques in a greedy clique cover of ``cand`` (>= alpha)."""
    count = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        clique_common = masks[v] & cand
        cand ^= low
        while clique_common:
            w_low = clique_common & -clique_common
            w = w_low.bit_length() - 1
            cand ^= w_low
            clique_common &= masks[w]
        count += 1
    return count


def max_independent_set(masks: tuple[int, ...], cand: int, at_least: int = 0) -> int | None:
    """Bitmask of a maximum independent set inside ``cand``.

    Returns None when no independent set of size >= ``at_least`` exists.
    """
    best_size = at_least - 1
    best_set: int | None = None

    def expand(size: int, chosen: int, cand: int) -> None:
        nonlocal best_size, best_set
        # vertices with no candidate neighbours always go in
        while True:
            free = 0
            rest = cand
            while rest:
                low = rest & -rest
                if not masks[low.bit_length() - 1] & cand:
                    free |= low
                rest ^= low
            if not free:
                break
            chosen |= free
            size += bin(free).count("1")
            cand &= ~free
        if not cand:
            if size > best_size:
                best_size, best_set = size, chosen
            return
        if size + _clique_cover_bound(masks, cand) <= best_size:
            return
        # branch on N[v] for a minimum-degree v: some member of N[v] is in
        # every maximal independent set of cand
        v = min(_bits(cand), key=lambda x: (bin(masks[x] & cand).count("1"), x))
        closed = (masks[v] & cand) | (1 << v)
        excluded = 0
        for w in _bits(closed):
            wbit = 1 << w
            expand(size + 1, chosen | wbit, cand & ~masks[w] & ~wbit & ~excluded)
            excluded |= wbit
            if size + _clique_cover_bound(masks, cand & ~excluded) <= best_size:
                return

    expand(0, 0, cand)
    return best_set


def _budget(g: Graph, budget_n: int) -> None:
    if g.n == 0:
        raise ValueError("graph must be nonempty")
    if g.n > budget_n:
        raise BudgetExceeded(f"n={g.n} exceeds exact-search budget {budget_n}")


def independence_number(g: Graph, budget_n: int = DEFAULT_BUDGET_N) -> int:
    _budget(g, budget_n)
    return len(_bits(max_independent_set(g.masks, (1 << g.n) - 1)))


def compute_f(g: Graph, budget_n: int = DEFAULT_BUDGET_N) -> BoundReport:
    _budget(g, budget_n)
    masks = g.masks
    best_value: int | None = None
    best_witness: tuple[int, ...] = ()
    for v in sorted(g.vertices(), key=lambda x: (g.degree(x), x)):
        d = g.degree(v)
        cand = 0
        for u in g.vertices():
            if u != v and g.degree(u) >= d and not masks[v] >> u & 1:
                cand |= 1 << u
        if best_value is not None and 2 + bin(cand).count("1") - d < best_value:
            continue
        # ties count, so ask for |I \ {v}| >= best - 2 + d
        need = 0 if best_value is None else max(0, best_value - 2 + d)
        found = max_independent_set(masks, cand, need)
        if found is None:
            continue
        witness = tuple(sorted(_bits(found) + [v]))
        value = len(witness) - d + 1
        if best_value is None or value > best_value or (value == best_value and witness < best_witness):
            best_value, best_witness = value, witness
    alpha = independence_number(g, budget_n)
    delta = g.min_degree()
    return BoundReport(best_value, alpha, delta, alpha - delta + 1,
                       DeficiencyCertificate(best_witness, best_value))


def classical_bound(g: Graph, budget_n: int = DEFAULT_BUDGET_N) -> int:
    return independence_number(g, budget_n) - g.min_degree() + 1


def verify_certificate(g: Graph, c: DeficiencyCertificate) -> bool:
    w = c.witness
    if not w or len(set(w)) != len(w) or any(not 0 <= v < g.n for v in w):
        return False
    if not is_independent(g, w):
        return False
    return c.value == len(w) - min_degree_of_set(g, w) + 1


def all_independent_satisfy_2factor_condition(g: Graph, budget_n: int = DEFAULT_BUDGET_N) -> bool:
    """True iff every nonempty independent I has delta_G(I) >= |I| + 1, i.e. f(G) <= 0."""
    return compute_f(g, budget_n).f_value <= 0
