"""Augmenting-walk improvement of a vertex-disjoint cycle packing.

The packing F is grown by local moves until one of two independent-set
arguments fires. At that point the uncovered part H = G - V(F) is a forest
and an independent set I' of G is in hand with |I'| - delta_G(I') + 1 >=
alpha(H). Covering H by a maximum matching plus singletons then gives a
pseudo 2-factor with alpha(H) <= f(G) non-cycle components.

Moves, each strictly improving (-|V(F)|, #isolated vertices of H):

* absorb   -- a cycle inside H is added to F.
* insert   -- x in H with F-neighbours y1, y2 such that y1+ y2+ is an edge:
              swap y1y1+, y2y2+ for y1x, xy2, y1+y2+.
* case1/2  -- the walk-chaining surgery built from a trace
              (D_i, x_i, y_i, z_i), see ``build_trace``.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from itertools import combinations

from .deficiency import DeficiencyCertificate
from .forest import forest_alpha, forest_mis, max_independent_set_containing
from .graph import (Graph, connected_components, induced_degree, is_forest,
                    is_independent, neighborhood_of_set, shortest_cycle, tree_path)

log = logging.getLogger(__name__)


class SurgeryError(RuntimeError):
    """A move produced something that is not a valid improvement (a bug)."""


# -- packings ----------------------------------------------------------------

@dataclass(frozen=True)
class OrientedCyclePacking:
    cycles: tuple[tuple[int, ...], ...]
    successor: dict[int, int] = field(init=False, repr=False, compare=False)
    predecessor: dict[int, int] = field(init=False, repr=False, compare=False)
    covered: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        succ, pred = {}, {}
        for cyc in self.cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                succ[a] = b
                pred[b] = a
        object.__setattr__(self, "successor", succ)
        object.__setattr__(self, "predecessor", pred)
        object.__setattr__(self, "covered", frozenset(succ))

    @classmethod
    def empty(cls) -> OrientedCyclePacking:
        return cls(())

    def edges(self) -> set[frozenset[int]]:
        return {frozenset((a, b)) for a, b in self.successor.items()}

    def __len__(self) -> int:
        return len(self.covered)

    def audit(self, g: Graph) -> list[str]:
        """Violations of the packing invariants (empty list when sound)."""
        problems = []
        seen: set[int] = set()
        for cyc in self.cycles:
            if len(cyc) < 3:
                problems.append(f"cycle {cyc} shorter than 3")
            if len(set(cyc)) != len(cyc) or seen & set(cyc):
                problems.append(f"cycle {cyc} repeats a vertex")
            seen |= set(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if not g.has_edge(a, b):
                    problems.append(f"cycle {cyc} uses non-edge {a}-{b}")
        for v, s in self.successor.items():
            if self.predecessor.get(s) != v:
                problems.append(f"successor/predecessor disagree at {v}")
        deg = Counter(v for e in self.edges() for v in e)
        bad = sorted(v for v in self.covered if deg[v] != 2)
        if bad:
            problems.append(f"vertices {bad} do not have degree 2")
        return problems


def packing_from_edges(edges: Iterable[frozenset[int] | tuple[int, int]]) -> OrientedCyclePacking:
    """Split a 2-regular edge set into oriented cycles.

    Each cycle starts at its smallest vertex and heads to its smaller neighbour.
    Raises SurgeryError if some vertex does not have degree exactly 2.
    """
    nbrs: dict[int, list[int]] = {}
    for e in edges:
        a, b = tuple(e)
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    bad = sorted(v for v, ns in nbrs.items() if len(ns) != 2 or ns[0] == ns[1])
    if bad:
        raise SurgeryError(f"edge set is not 2-regular at {bad}")
    seen: set[int] = set()
    cycles = []
    for start in sorted(nbrs):
        if start in seen:
            continue
        cyc = [start, min(nbrs[start])]
        while True:
            a, b = nbrs[cyc[-1]]
            nxt = a if a != cyc[-2] else b
            if nxt == start:
                break
            cyc.append(nxt)
        seen |= set(cyc)
        cycles.append(tuple(cyc))
    return OrientedCyclePacking(tuple(cycles))


def _edge(a: int, b: int) -> frozenset[int]:
    return frozenset((a, b))


def _rebuild(g: Graph, f: OrientedCyclePacking, remove: list[tuple[int, int]],
             add: list[tuple[int, int]]) -> OrientedCyclePacking:
    """Remove then add edges (multiset semantics), audit, and re-extract cycles."""
    count = Counter(f.edges())
    for a, b in remove:
        e = _edge(a, b)
        if count[e] <= 0:
            raise SurgeryError(f"removing {a}-{b}, which is not in the packing")
        count[e] -= 1
    for a, b in add:
        if not g.has_edge(a, b):
            raise SurgeryError(f"adding non-edge {a}-{b}")
        count[_edge(a, b)] += 1
    if any(c > 1 for c in count.values()):
        raise SurgeryError("surgery doubled an edge")
    new = packing_from_edges(e for e, c in count.items() if c == 1)
    problems = new.audit(g)
    if problems:
        raise SurgeryError("; ".join(problems))
    return new


def isolated_count(g: Graph, f: OrientedCyclePacking) -> int:
    h = frozenset(g.vertices()) - f.covered
    return sum(1 for v in h if induced_degree(g, h, v) == 0)


def potential(g: Graph, f: OrientedCyclePacking) -> tuple[int, int]:
    """Lexicographic potential; every move must strictly decrease it."""
    return (-len(f), isolated_count(g, f))


# -- starting packing ----------------------------------------------------------

def initial_packing(g: Graph) -> OrientedCyclePacking:
    """Greedy packing: repeatedly take a shortest cycle among uncovered vertices."""
    free = set(g.vertices())
    cycles = []
    while (cyc := shortest_cycle(g, free)) is not None:
        cycles.append(tuple(cyc))
        free -= set(cyc)
    return OrientedCyclePacking(tuple(cycles))


def absorb_cycle(f: OrientedCyclePacking, cycle: Iterable[int]) -> OrientedCyclePacking:
    return OrientedCyclePacking(f.cycles + (tuple(cycle),))


# -- local insertion -----------------------------------------------------------

def _f_neighbors(g: Graph, f: OrientedCyclePacking, x: int) -> list[int]:
    return [y for y in g.adj[x] if y in f.covered]


def insert_vertex(g: Graph, f: OrientedCyclePacking, x: int) -> OrientedCyclePacking | None:
    """Insert uncovered ``x`` via some F-neighbour pair y1, y2 with y1+ ~ y2+.

    Returns None when no pair works; then {y+ : y in N(x) & V(F)} is independent.
    """
    if x in f.covered:
        raise ValueError(f"vertex {x} is already covered")
    succ = f.successor
    for y1, y2 in combinations(_f_neighbors(g, f, x), 2):
        if not g.has_edge(succ[y1], succ[y2]):
            continue
        try:
            return _rebuild(g, f, remove=[(y1, succ[y1]), (y2, succ[y2])],
                            add=[(y1, x), (x, y2), (succ[y1], succ[y2])])
        except SurgeryError:
            continue
    return None


# -- the y-finding steps ---------------------------------------------------------

@dataclass(frozen=True)
class CertificateFound:
    """An independent set whose deficiency value is at least alpha(H)."""
    certificate: DeficiencyCertificate
    alpha_h: int
    source: str
    x: int


def _sees_h(g: Graph, v: int, h: frozenset[int]) -> bool:
    return any(w in h for w in g.adj[v])


def _certificate(g: Graph, h: frozenset[int], witness: set[int], source: str, x: int) -> CertificateFound:
    if not is_independent(g, witness):
        raise SurgeryError(f"{source} witness is not independent (missed insertion?)")
    cert = DeficiencyCertificate.of(g, witness)
    alpha_h = forest_alpha(g, h)
    if cert.value < alpha_h:
        raise SurgeryError(f"{source} certificate value {cert.value} < alpha(H) = {alpha_h}")
    return CertificateFound(cert, alpha_h, source, x)


def find_y_for_isolated(g: Graph, f: OrientedCyclePacking, h: frozenset[int], x: int,
                        avoid: int | None = None) -> int | CertificateFound:
    """F-neighbour y != avoid of an isolated x of H whose successor sees H.

    If none exists then at most one y+ sees H, and I + (Y+ - N(H)) with I a
    maximum independent set of H is returned as a certificate.
    """
    if induced_degree(g, h, x) != 0:
        raise ValueError(f"vertex {x} is not isolated in H")
    ys = _f_neighbors(g, f, x)
    for y in ys:
        if y != avoid and _sees_h(g, f.successor[y], h):
            return y
    y_plus = {f.successor[y] for y in ys}
    witness = set(forest_mis(g, h)) | (y_plus - neighborhood_of_set(g, h))
    return _certificate(g, h, witness, "isolated", x)


def find_y_for_leaf(g: Graph, f: OrientedCyclePacking, h: frozenset[int], x: int) -> int | CertificateFound:
    """F-neighbour y of a leaf x of H whose successor sees H, else I + Y+."""
    if induced_degree(g, h, x) != 1:
        raise ValueError(f"vertex {x} is not a leaf of H")
    ys = _f_neighbors(g, f, x)
    for y in ys:
        if _sees_h(g, f.successor[y], h):
            return y
    witness = set(max_independent_set_containing(g, h, x)) | {f.successor[y] for y in ys}
    return _certificate(g, h, witness, "leaf", x)


# -- traces -------------------------------------------------------------------

@dataclass(frozen=True)
class TraceStep:
    component: frozenset[int]
    x: int
    y: int
    z: int


@dataclass(frozen=True)
class AugmentationTrace:
    steps: tuple[TraceStep, ...]
    case: int  # 1 iff y_r = y_0^-

    @property
    def r(self) -> int:
        return len(self.steps) - 1


@dataclass(frozen=True)
class InsertionDone:
    packing: OrientedCyclePacking
    x: int


def _pick_leaf(g: Graph, comp: frozenset[int], avoid: int | None) -> int:
    return min(v for v in comp if induced_degree(g, comp, v) <= 1 and v != avoid)


def build_trace(g: Graph, f: OrientedCyclePacking, h: Iterable[int],
                events: list | None = None) -> AugmentationTrace | CertificateFound | InsertionDone:
    """Chain components of H through F until the chain returns to itself.

    Step i picks x_i in D_i (the component of z_{i-1}; x_i = z_{i-1} if D_i is
    a single vertex, otherwise another leaf), a y_i in N(x_i) & V(F) whose
    successor sees H, and z_i in N(y_i+) & H, preferring the most recently
    visited component already in the chain. When z_i lands in a visited
    component D_j the steps before j are dropped, so z_r lies in D_0.
    """
    h = frozenset(h)
    if not h:
        raise ValueError("H is empty")
    if not is_forest(g, h):
        raise ValueError("H is not a forest")
    comps = connected_components(g, h)
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    succ, pred = f.successor, f.predecessor

    steps: list[TraceStep] = []
    chain: list[int] = []  # component ids D_0..D_i
    d = 0
    x = _pick_leaf(g, comps[0], None)
    avoid = None
    while True:
        comp = comps[d]
        chain.append(d)
        inserted = insert_vertex(g, f, x)
        if inserted is not None:
            return InsertionDone(inserted, x)
        if len(comp) == 1:
            found = find_y_for_isolated(g, f, h, x, avoid)
        else:
            found = find_y_for_leaf(g, f, h, x)
        if isinstance(found, CertificateFound):
            return found
        y = found
        seen_h = sorted(w for w in g.adj[succ[y]] if w in h)
        hits = [j for j, cid in enumerate(chain) if any(comp_of[w] == cid for w in seen_h)]
        if hits:
            j = max(hits)
            z = min(w for w in seen_h if comp_of[w] == chain[j])
        else:
            j = None
            z = seen_h[0]
        steps.append(TraceStep(comp, x, y, z))
        if events is not None:
            events.append({"event": "step", "i": len(steps) - 1, "D": sorted(comp),
                           "x": x, "y": y, "z": z})
        if j is not None:
            steps = steps[j:]
            break
        d = comp_of[z]
        if len(comps[d]) == 1:
            x, avoid = z, succ[y]
        else:
            x, avoid = _pick_leaf(g, comps[d], z), None

    case = 1 if steps[-1].y == pred[steps[0].y] else 2
    return AugmentationTrace(tuple(steps), case)


def walks(g: Graph, f: OrientedCyclePacking, t: AugmentationTrace) -> Iterator[list[int]]:
    """W_1..W_r, then W_0 for case 2. W_i = y_{i-1}+ z_{i-1} P_i x_i y_i."""
    succ = f.successor
    s = t.steps
    pairs = [(s[i - 1], s[i]) for i in range(1, len(s))]
    if t.case == 2:
        pairs.append((s[-1], s[0]))
    for prev, cur in pairs:
        path = tree_path(g, cur.component, prev.z, cur.x)
        yield [succ[prev.y]] + path + [cur.y]


def _apply(g: Graph, f: OrientedCyclePacking, t: AugmentationTrace) -> OrientedCyclePacking:
    succ = f.successor
    remove = [(st.y, succ[st.y]) for st in t.steps]
    add = []
    interiors: list[set[int]] = []
    for w in walks(g, f, t):
        interiors.append(set(w[1:-1]))
        add.extend(zip(w, w[1:]))
    for a, b in combinations(interiors, 2):
        if a & b:
            raise SurgeryError("walk interiors overlap")
    return _rebuild(g, f, remove, add)


def apply_case1(g: Graph, f: OrientedCyclePacking, t: AugmentationTrace) -> OrientedCyclePacking:
    """Drop every y_i y_i+, add W_1..W_r; y_0 falls out of the packing."""
    if t.case != 1:
        raise ValueError("trace is not case 1")
    new = _apply(g, f, t)
    if t.steps[0].y in new.covered:
        raise SurgeryError("case 1 left y_0 covered")
    return new


def apply_case2(g: Graph, f: OrientedCyclePacking, t: AugmentationTrace) -> OrientedCyclePacking:
    """Drop every y_i y_i+, add W_0..W_r; the cover grows by at least r + 1."""
    if t.case != 2:
        raise ValueError("trace is not case 2")
    new = _apply(g, f, t)
    if len(new) < len(f) + t.r + 1:
        raise SurgeryError("case 2 did not grow the cover by r + 1")
    return new


# -- driver loop --------------------------------------------------------------

@dataclass
class Move:
    kind: str
    before: tuple[int, int]
    after: tuple[int, int]
    audit_ok: bool

    @property
    def improved(self) -> bool:
        return self.after < self.before


@dataclass
class PackResult:
    packing: OrientedCyclePacking
    certificate: CertificateFound | None
    moves: list[Move]
    events: list[dict]
    uncovered: frozenset[int]


def pack_to_optimum(g: Graph, start: OrientedCyclePacking | None = None,
                    trace: bool = False) -> PackResult:
    """Improve a packing until it is a 2-factor or a certificate is found."""
    f = initial_packing(g) if start is None else start
    if f.audit(g):
        raise SurgeryError("starting packing is invalid: " + "; ".join(f.audit(g)))
    everything = frozenset(g.vertices())
    moves: list[Move] = []
    events: list[dict] = []
    certificate = None
    for _ in range(g.n * g.n + 2):
        h = everything - f.covered
        if not h:
            break
        before = potential(g, f)
        cyc = shortest_cycle(g, h)
        if cyc is not None:
            kind, new = "absorb", absorb_cycle(f, cyc)
        else:
            res = build_trace(g, f, h, events if trace else None)
            if isinstance(res, CertificateFound):
                certificate = res
                if trace:
                    events.append({"event": "certificate", "source": res.source, "x": res.x,
                                   "witness": list(res.certificate.witness),
                                   "value": res.certificate.value, "alpha_h": res.alpha_h})
                break
            if isinstance(res, InsertionDone):
                kind, new = "insert", res.packing
            elif res.case == 1:
                kind, new = "case1", apply_case1(g, f, res)
            else:
                kind, new = "case2", apply_case2(g, f, res)
        ok = not new.audit(g)
        move = Move(kind, before, potential(g, new), ok)
        moves.append(move)
        if trace:
            events.append({"event": "move", "kind": kind, "before": list(move.before),
                           "after": list(move.after)})
        log.debug("%s: %s -> %s", kind, move.before, move.after)
        if not ok or not move.improved:
            raise SurgeryError(f"{kind} move failed audit or did not improve: {move}")
        f = new
    else:
        raise SurgeryError("improvement loop did not terminate within n^2 rounds")
    return PackResult(f, certificate, moves, events, everything - f.covered)
