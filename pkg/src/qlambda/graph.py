"""Labeled simple graphs (with optional loops) and the transforms on them.

Vertices are opaque string ids mapped to dense indices; adjacency is kept
as one bitmask per vertex so local complementation is a row XOR.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from . import poly
from .gf2 import Gf2Matrix
from .poly import MPoly

PHI, CHI, PSI = "phi", "chi", "psi"
CLASSES = (PHI, CHI, PSI)

Labels = Tuple[Any, Any, Any]
LabeledPartition = Dict[str, str]

_ID = re.compile(r"^[A-Za-z0-9.]+(?:_[A-Za-z0-9.]+)*$")


def natural_labels(v: str) -> Labels:
    return (MPoly.var(poly.phi(v)), MPoly.var(poly.chi(v)), MPoly.var(poly.psi(v)))


def _drop_bit(mask: int, i: int) -> int:
    low = mask & ((1 << i) - 1)
    return low | ((mask >> (i + 1)) << i)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class LabeledGraph:
    vertices: Tuple[str, ...]
    adj: Tuple[int, ...]
    loops: int = 0
    labels: Tuple[Labels, ...] = ()
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("duplicate vertex ids")
        for v in self.vertices:
            if not isinstance(v, str) or not _ID.match(v):
                raise ValueError(f"invalid vertex id {v!r}")
        if len(self.adj) != n:
            raise ValueError("adjacency size mismatch")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(natural_labels(v) for v in self.vertices))
        elif len(self.labels) != n:
            raise ValueError("every vertex needs exactly one label triple")
        for i, row in enumerate(self.adj):
            if (row >> i) & 1:
                raise ValueError(f"adjacency must be irreflexive (vertex {self.vertices[i]})")
            if row >> n:
                raise ValueError("adjacency has bits outside the vertex set")
            for j in _bits(row):
                if not (self.adj[j] >> i) & 1:
                    raise ValueError("adjacency is not symmetric")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    # -- construction ---------------------------------------------------
    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[Tuple[str, str]] = (),
                   loops: Iterable[str] = (), labels: Mapping[str, Labels] | None = None) -> "LabeledGraph":
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        adj = [0] * len(vertices)
        for a, b in edges:
            if a not in index or b not in index:
                raise KeyError(f"edge ({a}, {b}) names an unknown vertex")
            if a == b:
                raise ValueError(f"self-edge on {a}: declare loops separately")
            adj[index[a]] |= 1 << index[b]
            adj[index[b]] |= 1 << index[a]
        lmask = 0
        for v in loops:
            lmask |= 1 << index[v]
        labs = ()
        if labels is not None:
            labs = tuple(tuple(labels[v]) if v in labels else natural_labels(v) for v in vertices)
        return cls(vertices, tuple(adj), lmask, labs)

    # -- queries ----------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def neighbors(self, v: str) -> List[str]:
        return [self.vertices[j] for j in _bits(self.adj[self.index(v)])]

    def has_edge(self, a: str, b: str) -> bool:
        return bool((self.adj[self.index(a)] >> self.index(b)) & 1)

    def is_looped(self, v: str) -> bool:
        return bool((self.loops >> self.index(v)) & 1)

    def label(self, v: str) -> Labels:
        return self.labels[self.index(v)]

    def edges(self) -> List[Tuple[str, str]]:
        return [(self.vertices[i], self.vertices[j])
                for i, row in enumerate(self.adj) for j in _bits(row) if i < j]

    def looped_vertices(self) -> List[str]:
        return [self.vertices[i] for i in _bits(self.loops)]

    def is_simple(self) -> bool:
        return self.loops == 0

    def components(self) -> List[List[int]]:
        """Connected components as sorted index lists."""
        seen = 0
        comps = []
        for start in range(self.n):
            if (seen >> start) & 1:
                continue
            comp = 1 << start
            frontier = comp
            while frontier:
                nxt = 0
                for i in _bits(frontier):
                    nxt |= self.adj[i]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(_bits(comp)))
        return comps

    # -- small structural edits -----------------------------------------
    def with_labels(self, labels: Mapping[str, Labels] | Sequence[Labels]) -> "LabeledGraph":
        if isinstance(labels, Mapping):
            labs = tuple(tuple(labels.get(v, self.labels[i])) for i, v in enumerate(self.vertices))
        else:
            labs = tuple(tuple(t) for t in labels)
        return LabeledGraph(self.vertices, self.adj, self.loops, labs)

    def set_label(self, v: str, triple: Labels) -> "LabeledGraph":
        i = self.index(v)
        labs = list(self.labels)
        labs[i] = tuple(triple)
        return LabeledGraph(self.vertices, self.adj, self.loops, tuple(labs))

    def remove(self, v: str) -> "LabeledGraph":
        """G - v."""
        i = self.index(v)
        verts = self.vertices[:i] + self.vertices[i + 1:]
        adj = tuple(_drop_bit(r, i) for k, r in enumerate(self.adj) if k != i)
        labels = self.labels[:i] + self.labels[i + 1:]
        return LabeledGraph(verts, adj, _drop_bit(self.loops, i), labels)

    def reordered(self, order: Sequence[str]) -> "LabeledGraph":
        """Same graph with vertices listed in ``order``."""
        if sorted(order) != sorted(self.vertices):
            raise ValueError("order must be a permutation of the vertices")
        idx = [self.index(v) for v in order]
        pos = {old: new for new, old in enumerate(idx)}
        adj = []
        for old in idx:
            row = 0
            for j in _bits(self.adj[old]):
                row |= 1 << pos[j]
            adj.append(row)
        loops = 0
        for j in _bits(self.loops):
            loops |= 1 << pos[j]
        return LabeledGraph(tuple(order), tuple(adj), loops, tuple(self.labels[k] for k in idx))

    def __repr__(self):
        return (f"LabeledGraph(vertices={list(self.vertices)}, edges={self.edges()}, "
                f"loops={self.looped_vertices()})")


def _swap(triple: Labels, a: int, b: int) -> Labels:
    t = list(triple)
    t[a], t[b] = t[b], t[a]
    return tuple(t)


def local_complement_simple(g: LabeledGraph, v: str) -> LabeledGraph:
    """Toggle adjacency between every pair of distinct neighbors of ``v``; labels unchanged."""
    i = g.index(v)
    if (g.loops >> i) & 1:
        raise ValueError(f"vertex {v} is looped")
    nb = g.adj[i]
    adj = list(g.adj)
    for j in _bits(nb):
        adj[j] ^= nb & ~(1 << j)
    return LabeledGraph(g.vertices, tuple(adj), g.loops, g.labels)


def labeled_local_complement(g: LabeledGraph, v: str) -> LabeledGraph:
    """G_lambda^v: simple local complement, phi<->psi at v, chi<->psi at each neighbor."""
    if g.loops:
        raise ValueError("labeled local complementation needs a simple graph; simplify first")
    i = g.index(v)
    nb = g.adj[i]
    adj = list(g.adj)
    labels = list(g.labels)
    for j in _bits(nb):
        adj[j] ^= nb & ~(1 << j)
        labels[j] = _swap(labels[j], 1, 2)
    labels[i] = _swap(labels[i], 0, 2)
    return LabeledGraph(g.vertices, tuple(adj), 0, tuple(labels))


def labeled_pivot(g: LabeledGraph, v: str, w: str) -> LabeledGraph:
    """G_lambda^{vw} in closed form (equals complementing at w, v, w)."""
    if g.loops:
        raise ValueError("labeled pivot needs a simple graph; simplify first")
    i, k = g.index(v), g.index(w)
    if not (g.adj[i] >> k) & 1:
        raise ValueError(f"{v} and {w} are not adjacent")
    vk = (1 << i) | (1 << k)
    nv = g.adj[i] & ~vk
    nw = g.adj[k] & ~vk
    common = nv & nw
    only_v = nv & ~nw
    only_w = nw & ~nv
    adj = list(g.adj)
    # toggle between the three classes, never within one
    for a, b in ((only_v, only_w), (only_v, common), (only_w, common)):
        for j in _bits(a):
            adj[j] ^= b
        for j in _bits(b):
            adj[j] ^= a
    # exchange the neighborhoods of v and w
    for j in _bits(nv | nw):
        row = adj[j] & ~vk
        if (nw >> j) & 1:
            row |= 1 << i
        if (nv >> j) & 1:
            row |= 1 << k
        adj[j] = row
    adj[i] = nw | (1 << k)
    adj[k] = nv | (1 << i)
    labels = list(g.labels)
    labels[i] = _swap(labels[i], 0, 1)
    labels[k] = _swap(labels[k], 0, 1)
    return LabeledGraph(g.vertices, tuple(adj), 0, tuple(labels))


def abs_local_complement(g: LabeledGraph, v: str) -> LabeledGraph:
    """Local complementation with loop toggling at the neighbors of ``v`` (labels untouched).

    Provided for reference only; no polynomial identity in this package uses it.
    """
    i = g.index(v)
    nb = g.adj[i]
    adj = list(g.adj)
    for j in _bits(nb):
        adj[j] ^= nb & ~(1 << j)
    return LabeledGraph(g.vertices, tuple(adj), g.loops ^ nb, g.labels)


def check_partition(g: LabeledGraph, p: Mapping[str, str]) -> None:
    if set(p) != set(g.vertices):
        missing = set(g.vertices) - set(p)
        extra = set(p) - set(g.vertices)
        raise ValueError(f"partition is not total (missing {sorted(missing)}, unknown {sorted(extra)})")
    for v, c in p.items():
        if c not in CLASSES:
            raise ValueError(f"vertex {v} has unknown class {c!r}")


def partition_masks(g: LabeledGraph, p: Mapping[str, str]) -> Tuple[int, int]:
    """(kept mask, psi mask) of a labeled partition."""
    keep = psi_mask = 0
    for i, v in enumerate(g.vertices):
        c = p[v]
        if c != PHI:
            keep |= 1 << i
            if c == PSI:
                psi_mask |= 1 << i
    return keep, psi_mask


def masked_rows(adj: Sequence[int], keep: int, psi_mask: int) -> List[int]:
    """Rows of G_P, still indexed by the original bit positions."""
    return [(adj[i] & keep) | ((psi_mask >> i) & 1) << i for i in _bits(keep)]


def partition_subgraph(g: LabeledGraph, p: Mapping[str, str]) -> Gf2Matrix:
    """Adjacency matrix of G_P: phi-class removed, psi-class looped."""
    if g.loops:
        raise ValueError("partition_subgraph needs a simple graph; simplify first")
    check_partition(g, p)
    keep, psi_mask = partition_masks(g, p)
    kept = list(_bits(keep))
    pos = {old: new for new, old in enumerate(kept)}
    rows = []
    for i in kept:
        row = 0
        for j in _bits(g.adj[i] & keep):
            row |= 1 << pos[j]
        if (psi_mask >> i) & 1:
            row |= 1 << pos[i]
        rows.append(row)
    return Gf2Matrix(rows, check=False)


_LC_SWAP_V = {PHI: PSI, PSI: PHI, CHI: CHI}
_LC_SWAP_NB = {CHI: PSI, PSI: CHI, PHI: PHI}


def partition_local_complement(p: Mapping[str, str], g: LabeledGraph, v: str) -> LabeledPartition:
    """P_lambda^v: phi<->psi membership at v, chi<->psi at the neighbors of v."""
    if g.loops:
        raise ValueError("needs a simple graph")
    check_partition(g, p)
    out = dict(p)
    out[v] = _LC_SWAP_V[p[v]]
    for w in g.neighbors(v):
        out[w] = _LC_SWAP_NB[p[w]]
    return out


def partition_monomial(g: LabeledGraph, p: Mapping[str, str]):
    """Product of the labels selected by ``p``."""
    acc = 1
    for i, v in enumerate(g.vertices):
        acc = acc * g.labels[i][CLASSES.index(p[v])]
    return acc


def simplify(g: LabeledGraph) -> LabeledGraph:
    """Swap chi and psi at every looped vertex, then drop all loops."""
    if not g.loops:
        return g
    labels = list(g.labels)
    for i in _bits(g.loops):
        labels[i] = _swap(labels[i], 1, 2)
    return LabeledGraph(g.vertices, g.adj, 0, tuple(labels))


def strip_loops(g: LabeledGraph) -> LabeledGraph:
    return LabeledGraph(g.vertices, g.adj, 0, g.labels)


def induced(g: LabeledGraph, s: Iterable[str]) -> LabeledGraph:
    """Full subgraph G[S] with inherited labels and loops (vertex order preserved)."""
    s = set(s)
    for v in s:
        g.index(v)
    keep = 0
    for v in s:
        keep |= 1 << g.index(v)
    kept = list(_bits(keep))
    pos = {old: new for new, old in enumerate(kept)}
    adj = []
    for i in kept:
        row = 0
        for j in _bits(g.adj[i] & keep):
            row |= 1 << pos[j]
        adj.append(row)
    loops = 0
    for i in _bits(g.loops & keep):
        loops |= 1 << pos[i]
    return LabeledGraph(tuple(g.vertices[i] for i in kept), tuple(adj), loops,
                        tuple(g.labels[i] for i in kept))


def toggle_loops(g: LabeledGraph, b: Iterable[str]) -> LabeledGraph:
    """G nabla B: flip the loop status of exactly the vertices in ``b``."""
    mask = 0
    for v in b:
        mask |= 1 << g.index(v)
    return LabeledGraph(g.vertices, g.adj, g.loops ^ mask, g.labels)


def disjoint_union(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    shift = g1.n
    adj = g1.adj + tuple(r << shift for r in g2.adj)
    return LabeledGraph(g1.vertices + g2.vertices, adj, g1.loops | (g2.loops << shift),
                        g1.labels + g2.labels)


def adjacency_matrix(g: LabeledGraph) -> Gf2Matrix:
    """Adjacency matrix with loops on the diagonal."""
    return Gf2Matrix([r | (((g.loops >> i) & 1) << i) for i, r in enumerate(g.adj)], check=False)
