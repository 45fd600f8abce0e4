import itertools

import pytest
from hypothesis import strategies as st

from pseudofactor.graph import Graph, from_edge_list


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edge_list(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def forests(draw, min_n=1, max_n=14):
    n = draw(st.integers(min_n, max_n))
    edges = []
    for v in range(1, n):
        parent = draw(st.integers(-1, v - 1))
        if parent >= 0:
            edges.append((parent, v))
    return from_edge_list(n, edges)


# -- brute force, deliberately naive ----------------------------------------------

def subsets(items):
    items = list(items)
    return itertools.chain.from_iterable(
        itertools.combinations(items, r) for r in range(len(items) + 1))


def brute_independent(g: Graph, s) -> bool:
    return all(not g.has_edge(a, b) for a, b in itertools.combinations(s, 2))


def brute_alpha(g: Graph, within=None) -> int:
    within = range(g.n) if within is None else sorted(within)
    return max(len(s) for s in subsets(within) if brute_independent(g, s))


def brute_f(g: Graph) -> int:
    return max(len(s) - min(g.degree(v) for v in s) + 1
               for s in subsets(range(g.n)) if s and brute_independent(g, s))


def brute_matching(g: Graph, within) -> int:
    within = set(within)
    edges = [e for e in g.edges() if set(e) <= within]
    for r in range(len(edges), -1, -1):
        for sub in itertools.combinations(edges, r):
            if len({v for e in sub for v in e}) == 2 * r:
                return r
    return 0


def pseudo_factor_stats(g: Graph):
    """(non-cycle count, cycle-covered vertices) for every pseudo 2-factor,
    found by enumerating all edge subsets."""
    out = []
    edges = g.edges()
    for sub in subsets(edges):
        deg = [0] * g.n
        adj = {v: [] for v in range(g.n)}
        for a, b in sub:
            deg[a] += 1
            deg[b] += 1
            adj[a].append(b)
            adj[b].append(a)
        if max(deg, default=0) > 2:
            continue
        seen, noncycle, covered, ok = set(), 0, 0, True
        for v in range(g.n):
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            degs = [deg[x] for x in comp]
            if all(d == 2 for d in degs):
                covered += len(comp)
            elif len(comp) <= 2:
                noncycle += 1
            else:
                ok = False
        if ok:
            out.append((noncycle, covered))
    return out


def cycle_coverable(g: Graph, s) -> bool:
    s = set(s)
    if not s:
        return True
    edges = [e for e in g.edges() if set(e) <= s]
    for sub in itertools.combinations(edges, len(s)):
        deg = dict.fromkeys(s, 0)
        for a, b in sub:
            deg[a] += 1
            deg[b] += 1
        if all(d == 2 for d in deg.values()):
            return True
    return False


def identity_min_non_cycle(g: Graph) -> int:
    """min over cycle-coverable S of (n - |S|) - nu(G - S)."""
    best = g.n
    for s in subsets(range(g.n)):
        if cycle_coverable(g, s):
            rest = set(range(g.n)) - set(s)
            best = min(best, len(rest) - brute_matching(g, rest))
    return best


# -- acceptance reporting ------------------------------------------------------------

_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request, capsys):
    """record(criterion, ok, detail): print a verdict line now, aggregate at the end."""
    store = request.config.stash.setdefault(_ACCEPTANCE, {})

    def record(criterion: int, ok: bool, detail: str) -> bool:
        store.setdefault(criterion, []).append((ok, detail))
        with capsys.disabled():
            print(f"\n[acceptance {criterion}] {'PASS' if ok else 'FAIL'}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_ACCEPTANCE, None)
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(store):
        rows = store[crit]
        failed = [d for ok, d in rows if not ok]
        verdict = "PASS" if not failed else "FAIL"
        tail = f" ({len(failed)}/{len(rows)} checks failed: {'; '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {crit}: {verdict}{tail}")
