"""Exact algorithms on induced forests.

A forest has a pseudo 2-factor made of a maximum matching plus the
unmatched vertices, and by Koenig's theorem the component count of that
factor equals the independence number.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .graph import Graph, connected_components, induced_degree, is_forest


class NotAForestError(ValueError):
    pass


@dataclass(frozen=True)
class ForestFactor:
    matched_edges: tuple[tuple[int, int], ...]
    singletons: frozenset[int]

    @property
    def component_count(self) -> int:
        return len(self.matched_edges) + len(self.singletons)


def _check(g: Graph, within) -> frozenset[int]:
    within = frozenset(g.vertices() if within is None else within)
    if not is_forest(g, within):
        raise NotAForestError("induced subgraph contains a cycle")
    return within


def _rooted_order(g: Graph, within: frozenset[int], root: int) -> tuple[list[int], dict[int, int]]:
    """BFS order of the tree containing ``root`` and the parent map."""
    parent = {root: -1}
    order = [root]
    for v in order:
        for u in g.adj[v]:
            if u in within and u not in parent:
                parent[u] = v
                order.append(u)
    return order, parent


def _tree_mis(g: Graph, within: frozenset[int], root: int) -> set[int]:
    # include/exclude DP; ties resolved toward including the vertex
    order, parent = _rooted_order(g, within, root)
    inc = {v: 1 for v in order}
    exc = {v: 0 for v in order}
    for v in reversed(order):
        p = parent[v]
        if p != -1:
            inc[p] += exc[v]
            exc[p] += max(inc[v], exc[v])
    chosen: set[int] = set()
    take = {root: inc[root] >= exc[root]}
    for v in order:
        if take[v]:
            chosen.add(v)
        for u in g.adj[v]:
            if u in within and parent.get(u) == v:
                take[u] = False if take[v] else inc[u] >= exc[u]
    return chosen


def forest_mis(g: Graph, within: Iterable[int] | None = None) -> frozenset[int]:
    """A maximum independent set of the forest ``g[within]``."""
    within = _check(g, within)
    out: set[int] = set()
    for comp in connected_components(g, within):
        out |= _tree_mis(g, within, min(comp))
    return frozenset(out)


def forest_alpha(g: Graph, within: Iterable[int] | None = None) -> int:
    return len(forest_mis(g, within))


def max_independent_set_containing(g: Graph, within: Iterable[int] | None, u: int) -> frozenset[int]:
    """Maximum independent set of the forest ``g[within]`` that contains ``u``.

    ``u`` must be a leaf or an isolated vertex of the forest. Rooting the DP at
    ``u`` and preferring inclusion on ties yields such a set, since some
    maximum independent set of a tree always contains a given leaf.
    """
    within = _check(g, within)
    if u not in within:
        raise ValueError(f"vertex {u} is not in the forest")
    if induced_degree(g, within, u) > 1:
        raise ValueError(f"vertex {u} has induced degree >= 2; only leaves are covered")
    out: set[int] = set()
    for comp in connected_components(g, within):
        out |= _tree_mis(g, within, u if u in comp else min(comp))
    assert u in out
    return frozenset(out)


def forest_max_matching(g: Graph, within: Iterable[int] | None = None) -> list[tuple[int, int]]:
    """Maximum matching by repeatedly matching a leaf to its unique neighbour."""
    within = _check(g, within)
    alive = set(within)
    deg = {v: induced_degree(g, within, v) for v in within}
    matching = []
    leaves = sorted(v for v in alive if deg[v] == 1)
    while leaves:
        stack = leaves
        leaves = []
        for v in stack:
            if v not in alive or deg[v] != 1:
                continue
            (p,) = [u for u in g.adj[v] if u in alive]
            matching.append((min(v, p), max(v, p)))
            for w in (v, p):
                alive.discard(w)
                for x in g.adj[w]:
                    if x in alive:
                        deg[x] -= 1
        leaves = sorted(v for v in alive if deg[v] == 1)
    return sorted(matching)


def forest_pseudo_factor(g: Graph, within: Iterable[int] | None = None) -> ForestFactor:
    within = _check(g, within)
    matching = forest_max_matching(g, within)
    matched = {v for e in matching for v in e}
    ff = ForestFactor(tuple(matching), frozenset(within - matched))
    # Koenig: |M| + (n - 2|M|) = n - |M| = alpha
    assert ff.component_count == forest_alpha(g, within)
    return ff
