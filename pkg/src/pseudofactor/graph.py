"""Immutable simple undirected graphs on vertices 0..n-1.

Vertex sets are passed around as ``frozenset[int]``; the bitmask view
(``Graph.masks``) is there for the exponential routines.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import TextIO

VertexSet = frozenset


class GraphInputError(ValueError):
    """Malformed graph input (bad endpoint, self-loop, unparsable text)."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[Hashable, ...] | None = field(default=None, compare=False)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u in a) for a in self.adj)

    @cached_property
    def _adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj_sets[v]

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def min_degree(self) -> int:
        if self.n == 0:
            raise ValueError("minimum degree of the empty graph")
        return min(len(a) for a in self.adj)

    def label(self, v: int) -> Hashable:
        return v if self.labels is None else self.labels[v]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def from_edge_list(n: int, edges: Iterable[Sequence[int]],
                   labels: Sequence[Hashable] | None = None) -> Graph:
    """Build a graph on ``0..n-1``. Duplicate edges are merged; loops are rejected."""
    if n < 0:
        raise GraphInputError(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphInputError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    if labels is not None and len(labels) != n:
        raise GraphInputError("label table length does not match n")
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs),
                 tuple(labels) if labels is not None else None)


def from_labeled_edges(edges: Iterable[tuple[Hashable, Hashable]],
                       isolated: Iterable[Hashable] = ()) -> Graph:
    """Remap arbitrary vertex labels to dense integers in first-seen order."""
    index: dict[Hashable, int] = {}
    pairs = []
    for a, b in edges:
        for x in (a, b):
            index.setdefault(x, len(index))
        pairs.append((index[a], index[b]))
    for x in isolated:
        index.setdefault(x, len(index))
    return from_edge_list(len(index), pairs, labels=list(index))


def neighborhood_of_set(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``s`` with at least one neighbour in ``s``."""
    s = frozenset(s)
    out: set[int] = set()
    for v in s:
        out.update(g.adj[v])
    return frozenset(out - s)


def min_degree_of_set(g: Graph, s: Iterable[int]) -> int:
    """Minimum degree in ``g`` (not in the induced subgraph) over ``s``."""
    degs = [g.degree(v) for v in s]
    if not degs:
        raise ValueError("minimum degree of an empty vertex set is undefined")
    return min(degs)


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    s = frozenset(s)
    return all(s.isdisjoint(g.adj[v]) for v in s)


def induced_degree(g: Graph, within: frozenset[int], v: int) -> int:
    return sum(1 for u in g.adj[v] if u in within)


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Components of the subgraph induced on ``within``, ordered by smallest vertex."""
    within = frozenset(g.vertices() if within is None else within)
    seen: set[int] = set()
    comps = []
    for root in sorted(within):
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if u in within and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    queue.append(u)
        comps.append(frozenset(comp))
    return comps


def is_forest(g: Graph, within: Iterable[int] | None = None) -> bool:
    within = frozenset(g.vertices() if within is None else within)
    edges = sum(induced_degree(g, within, v) for v in within) // 2
    return edges == len(within) - len(connected_components(g, within))


def tree_path(g: Graph, within: frozenset[int], a: int, b: int) -> list[int]:
    """The unique a-b path inside a tree component of ``g[within]``."""
    parent = {a: a}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for u in g.adj[v]:
            if u in within and u not in parent:
                parent[u] = v
                queue.append(u)
    if b not in parent:
        raise ValueError(f"{a} and {b} are not connected inside the given set")
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def shortest_cycle(g: Graph, within: Iterable[int] | None = None) -> list[int] | None:
    """A shortest cycle of ``g[within]`` as a vertex sequence, or None if acyclic.

    BFS from every root; the minimum candidate over all roots is a simple
    cycle because any non-simple closed walk contains a shorter cycle.
    """
    within = frozenset(g.vertices() if within is None else within)
    best: list[int] | None = None
    for root in sorted(within):
        if best is not None and len(best) == 3:
            break
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if best is not None and 2 * dist[v] >= len(best):
                break
            for u in g.adj[v]:
                if u not in within:
                    continue
                if u not in dist:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif u != parent[v]:
                    length = dist[u] + dist[v] + 1
                    if best is not None and length >= len(best):
                        continue
                    left = _walk_to_root(parent, v)
                    right = _walk_to_root(parent, u)
                    if set(left[:-1]) & set(right[:-1]):
                        continue
                    # root..v, then u back down to the root's other child
                    best = left[::-1] + right[:-1]
    return best


def _walk_to_root(parent: dict[int, int], v: int) -> list[int]:
    out = [v]
    while parent[out[-1]] != -1:
        out.append(parent[out[-1]])
    return out


# -- edge-list text format ---------------------------------------------------

def read_edge_list(stream: TextIO | str) -> Graph:
    """Parse ``n m`` then ``m`` lines of ``u v``; ``#`` lines are comments."""
    text = stream if isinstance(stream, str) else stream.read()
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphInputError(f"line {lineno}: expected integers, got {raw!r}") from None
        if len(nums) != 2:
            raise GraphInputError(f"line {lineno}: expected two integers, got {raw!r}")
        rows.append(nums)
    if not rows:
        raise GraphInputError("missing header line 'n m'")
    (n, m), body = rows[0], rows[1:]
    if len(body) != m:
        raise GraphInputError(f"header declares {m} edges but {len(body)} follow")
    return from_edge_list(n, body)


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    edges = g.edges()
    lines.append(f"{g.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in sorted(edges))
    return "\n".join(lines) + "\n"
