"""Deterministic graph constructions and seeded random generators.

Random graphs use xorshift64* seeded through splitmix64, so a given
(n, p, seed) gives the same graph on every platform and in any language:

    splitmix64:  z = (state += 0x9E3779B97F4A7C15)
                 z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
                 z = (z ^ z>>27) * 0x94D049BB133111EB
                 seed_state = z ^ z>>31            (replaced by 1 if zero)
    xorshift64*: x ^= x>>12; x ^= x<<25; x ^= x>>27
                 out = x * 0x2545F4914F6CDD1D      (all mod 2**64)

An edge {u, v}, visited in lexicographic order u < v, is kept iff
(out >> 11) * p_den < p_num * 2**53.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, from_edge_list

MASK64 = (1 << 64) - 1


class XorShift64Star:
    def __init__(self, seed: int):
        z = (seed + 0x9E3779B97F4A7C15) & MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        self.state = (z ^ (z >> 31)) or 1

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def bernoulli(self, p_num: int, p_den: int) -> bool:
        return (self.next() >> 11) * p_den < p_num << 53

    def below(self, k: int) -> int:
        """Integer in [0, k) by multiply-shift on the top 32 bits."""
        return ((self.next() >> 32) * k) >> 32


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return from_edge_list(n, combinations(range(n), 2))


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def gen_g1(h: Graph, p: int) -> Graph:
    """``h`` joined to p disjoint copies of K2; copy i is {|h| + 2i, |h| + 2i + 1}."""
    if p < 1:
        raise ValueError("p must be positive")
    k = h.n
    edges = list(h.edges())
    for i in range(p):
        a, b = k + 2 * i, k + 2 * i + 1
        edges.append((a, b))
        edges.extend((v, c) for v in range(k) for c in (a, b))
    return from_edge_list(k + 2 * p, edges)


def gen_g2(k: int, ell: int) -> Graph:
    """v1=0, v2=1, A1 = 2..k+1, A2 = k+2..2k+1, B (a clique on ell) last.

    Each A_i is independent and joined completely to B and to v_i.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if ell < 2 * k:
        raise ValueError(f"ell must be at least 2k = {2 * k}")
    a1 = range(2, 2 + k)
    a2 = range(2 + k, 2 + 2 * k)
    b = range(2 + 2 * k, 2 + 2 * k + ell)
    edges = list(combinations(b, 2))
    for v, part in ((0, a1), (1, a2)):
        for a in part:
            edges.append((v, a))
            edges.extend((a, c) for c in b)
    labels = ["v1", "v2"] + [f"a1_{i}" for i in range(k)] + [f"a2_{i}" for i in range(k)] \
        + [f"b{i}" for i in range(ell)]
    return from_edge_list(2 + 2 * k + ell, edges, labels)


FIG3_LABELS = tuple([f"v{i}" for i in range(1, 7)] + [f"u{i}" for i in range(1, 8)]
                    + [f"w{i}" for i in range(1, 10)])


def gen_fig3() -> Graph:
    """The 22-vertex, 26-edge graph where no minimum pseudo 2-factor holds a
    maximum 2-regular subgraph. Vertices v1..v6 = 0..5, u1..u7 = 6..12,
    w1..w9 = 13..21."""
    idx = {name: i for i, name in enumerate(FIG3_LABELS)}
    chains = [
        ["v1", "v2", "v3", "v4", "v5", "v6"],
        ["v1"] + [f"w{i}" for i in range(1, 10)] + ["v6"],
        ["v1"] + [f"u{i}" for i in range(1, 8)] + ["v6"],
    ]
    edges = [(idx[a], idx[b]) for ch in chains for a, b in zip(ch, ch[1:])]
    edges += [(idx[a], idx[b]) for a, b in (("w2", "w4"), ("w6", "w8"), ("u3", "u5"))]
    return from_edge_list(22, edges, FIG3_LABELS)


def gen_random(n: int, p_num: int, p_den: int, seed: int) -> Graph:
    if p_den <= 0 or not 0 <= p_num <= p_den:
        raise ValueError("need 0 <= p_num <= p_den and p_den > 0")
    rng = XorShift64Star(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.bernoulli(p_num, p_den)]
    return from_edge_list(n, edges)


def gen_random_forest(n: int, seed: int, p_num: int = 3, p_den: int = 4) -> Graph:
    """Vertex v > 0 attaches to a uniform earlier vertex with probability p."""
    rng = XorShift64Star(seed)
    edges = []
    for v in range(1, n):
        if rng.bernoulli(p_num, p_den):
            edges.append((rng.below(v), v))
    return from_edge_list(n, edges)


# -- inline generator specs ("g2:k=2,l=4", "cycle:5", "fig3") ------------------

@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict = field(default_factory=dict)

    def __str__(self) -> str:
        if not self.params:
            return self.family
        parts = [v if k.startswith("_") else f"{k}={v}" for k, v in self.params.items()]
        return self.family + ":" + ",".join(parts)


_SMALL = {"K": complete, "P": path, "C": cycle}


def _small_graph(name: str) -> Graph:
    m = re.fullmatch(r"([KPC])(\d+)", name)
    if not m:
        raise ValueError(f"unknown graph name {name!r} (use K<n>, P<n> or C<n>)")
    return _SMALL[m.group(1)](int(m.group(2)))


def parse_spec(text: str) -> GeneratorSpec:
    family, _, rest = text.partition(":")
    family = family.strip().lower()
    params: dict = {}
    if rest:
        for i, part in enumerate(rest.split(",")):
            key, eq, value = part.partition("=")
            if not eq:
                key, value = f"_{i}", key
            params[key.strip()] = value.strip()
    return GeneratorSpec(family, params)


def _int(params: dict, *names: str, default=None) -> int:
    for name in names:
        if name in params:
            return int(params[name])
    if default is None:
        raise ValueError(f"missing parameter {names[0]!r}")
    return default


def _prob(params: dict) -> tuple[int, int]:
    raw = params.get("p", "1/2")
    num, _, den = raw.partition("/")
    return int(num), int(den or 1)


def build(spec: GeneratorSpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    p = spec.params
    fam = spec.family
    if fam == "fig3":
        return gen_fig3()
    if fam == "g1":
        return gen_g1(_small_graph(p.get("h", "K1")), _int(p, "p"))
    if fam == "g2":
        k = _int(p, "k", "_0")
        return gen_g2(k, _int(p, "l", "ell", default=2 * k))
    if fam == "cycle":
        return cycle(_int(p, "n", "_0"))
    if fam == "path":
        return path(_int(p, "n", "_0"))
    if fam == "complete":
        return complete(_int(p, "n", "_0"))
    if fam == "star":
        return star(_int(p, "leaves", "_0"))
    if fam == "random":
        num, den = _prob(p)
        return gen_random(_int(p, "n", "_0"), num, den, _int(p, "seed", default=0))
    if fam == "forest":
        return gen_random_forest(_int(p, "n", "_0"), _int(p, "seed", default=0))
    raise ValueError(f"unknown generator family {spec.family!r}")


# -- seeded corpora ---------------------------------------------------------------

def random_corpus(count: int, max_n: int = 12, seed: int = 0):
    """Yield (spec, graph) for ``count`` random graphs, cycling n over 3..max_n
    and density over 1/10..9/10; the i-th graph uses seed ``seed + i``."""
    sizes = range(3, max_n + 1)
    for i in range(count):
        n = sizes[i % len(sizes)]
        num = 1 + (i // len(sizes)) % 9
        spec = f"random:n={n},p={num}/10,seed={seed + i}"
        yield spec, gen_random(n, num, 10, seed + i)


def forest_corpus(count: int, max_n: int = 14, seed: int = 0):
    """Yield (spec, forest) with n cycling over 1..max_n."""
    for i in range(count):
        n = 1 + i % max_n
        spec = f"forest:n={n},seed={seed + i}"
        yield spec, gen_random_forest(n, seed + i)
