"""Random instance generators shared by the tests."""

import random
from itertools import combinations

from qlambda.graph import LabeledGraph


def random_graph(rng: random.Random, n: int, p: float = 0.5, loops: float = 0.0, prefix: str = "v") -> LabeledGraph:
    verts = [f"{prefix}{i}" for i in range(n)]
    edges = [(a, b) for a, b in combinations(verts, 2) if rng.random() < p]
    looped = [v for v in verts if rng.random() < loops]
    return LabeledGraph.from_edges(verts, edges, looped)


def all_graphs(n: int):
    """Every simple graph on vertices v0..v{n-1} (labeled, not up to isomorphism)."""
    verts = [f"v{i}" for i in range(n)]
    pairs = list(combinations(verts, 2))
    for mask in range(1 << len(pairs)):
        yield LabeledGraph.from_edges(verts, [e for k, e in enumerate(pairs) if (mask >> k) & 1])


def join_graph(rng: random.Random, n: int, block: int = 4) -> LabeledGraph:
    """Iterated joins (H, S) * (K, T) with |H| <= ``block``.

    T is {x}, N(x) or N[x] for one existing x, so once H is reduced the new
    vertex is pendant on or a twin of x and the split width stays small.
    """
    verts, edges = [], []
    nbrs = {}
    while len(verts) < n:
        size = min(rng.randint(1, block), n - len(verts))
        new = [f"v{len(verts) + i}" for i in range(size)]
        edges += [(a, b) for a, b in combinations(new, 2) if rng.random() < 0.5]
        if verts:
            s = [v for v in new if rng.random() < 0.6] or new[:1]
            x = rng.choice(verts)
            mode = rng.randrange(3)
            t = {x} if mode == 0 else set(nbrs[x]) | ({x} if mode == 2 else set())
            edges += [(a, b) for a in s for b in sorted(t)]
        verts += new
        nbrs = {v: set() for v in verts}
        for a, b in edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
    return LabeledGraph.from_edges(verts, edges)


def normal_words(letters):
    """Double occurrence words over ``letters`` in first-occurrence order (one per renaming class)."""
    k = len(letters)

    def rec(word, used, counts):
        if len(word) == 2 * k:
            yield tuple(word)
            return
        for i in range(used):
            if counts[i] == 1:
                counts[i] = 2
                yield from rec(word + [letters[i]], used, counts)
                counts[i] = 1
        if used < k:
            counts[used] = 1
            yield from rec(word + [letters[used]], used + 1, counts)
            counts[used] = 0

    yield from rec([], 0, [0] * k)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def all_systems(n: int, oriented: bool = False):
    """Every Euler system on vertices a, b, ... (n of them), up to renaming within components, deduplicated."""
    from itertools import product

    from qlambda.fourreg import from_dow

    letters = "abcdefghij"[:n]
    seen = set()
    for blocks in _set_partitions(list(letters)):
        choices = [list(normal_words(sorted(b))) for b in blocks]
        for words in product(*choices):
            c = from_dow(words, oriented=oriented)
            if c not in seen:
                seen.add(c)
                yield c


def random_system(rng: random.Random, n: int, components: int = 0, oriented: bool = False):
    from qlambda.fourreg import from_dow

    letters = [f"v{i}" for i in range(n)]
    k = components or rng.randint(1, max(1, n // 2))
    groups = [[] for _ in range(k)]
    for v in letters:
        groups[rng.randrange(k)].append(v)
    words = []
    for grp in groups:
        if grp:
            w = grp * 2
            rng.shuffle(w)
            words.append(w)
    return from_dow(words, oriented=oriented)


def is_unlooped(c, v) -> bool:
    return not c.is_looped(v)


def random_join(rng: random.Random, h_max: int = 4, k_max: int = 4):
    """(H, S) * (K, T) with random H, K and nonempty S, T; returns (graph, H vertex ids, S, T)."""
    h = random_graph(rng, rng.randint(1, h_max), prefix="h")
    k = random_graph(rng, rng.randint(1, k_max), prefix="k")
    s = [v for v in h.vertices if rng.random() < 0.5] or [h.vertices[0]]
    t = [v for v in k.vertices if rng.random() < 0.5] or [k.vertices[-1]]
    g = LabeledGraph.from_edges(h.vertices + k.vertices, h.edges() + k.edges() + [(a, b) for a in s for b in t])
    return g, list(h.vertices), s, t


def random_numeric_labels(rng: random.Random, g: LabeledGraph, lo: int = -3, hi: int = 3) -> LabeledGraph:
    return g.with_labels([tuple(rng.randint(lo, hi) for _ in range(3)) for _ in g.vertices])
