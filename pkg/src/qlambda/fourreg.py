"""Euler systems of 4-regular multigraphs encoded as double occurrence words.

Each component of F is one cyclic word in which every vertex of that
component occurs twice; consecutive letters (cyclically) are the edges.
Occurrence ``i`` of a word owns two half-edges: ``in`` (from the edge
arriving at it) and ``out`` (the edge leaving it). At a vertex with
occurrences ``p < q``:

* phi pairs ``in_p/out_p`` and ``in_q/out_q`` (follow the word),
* chi pairs ``in_p/out_q`` and ``in_q/out_p`` (the other direction-consistent pairing),
* psi pairs ``in_p/in_q`` and ``out_p/out_q``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .caps import QLAMBDA_CAP, CapExceeded, check_cap
from .graph import CHI, CLASSES, PHI, PSI, LabeledGraph, natural_labels
from .poly import MPoly, Y

Word = Tuple[str, ...]


def _canon_word(word: Word, oriented: bool) -> Word:
    n = len(word)
    cands = [word[i:] + word[:i] for i in range(n)]
    if not oriented:
        rev = word[::-1]
        cands += [rev[i:] + rev[:i] for i in range(n)]
    return min(cands)


@dataclass(frozen=True)
class EulerSystem:
    """Labeled Euler system; always stored in canonical form.

    ``labels`` is a sorted tuple of ``(vertex, (phi, chi, psi))``; ``oriented``
    flags components whose reading direction is a fixed digraph orientation.
    """

    words: Tuple[Word, ...]
    labels: Tuple[Tuple[str, Tuple], ...]
    oriented: Tuple[bool, ...]

    @property
    def vertices(self) -> List[str]:
        return sorted(v for v, _ in self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def components(self) -> int:
        return len(self.words)

    def label(self, v: str) -> Tuple:
        for u, t in self.labels:
            if u == v:
                return t
        raise KeyError(f"unknown vertex {v!r}")

    def label_map(self) -> Dict[str, Tuple]:
        return dict(self.labels)

    def component_of(self, v: str) -> int:
        for k, w in enumerate(self.words):
            if v in w:
                return k
        raise KeyError(f"unknown vertex {v!r}")

    def is_looped(self, v: str) -> bool:
        """True when the two occurrences of ``v`` are cyclically adjacent (a loop in F)."""
        w = self.words[self.component_of(v)]
        p, q = [i for i, u in enumerate(w) if u == v]
        return q - p == 1 or (p == 0 and q == len(w) - 1)

    def with_labels(self, labels: Mapping[str, Tuple]) -> "EulerSystem":
        cur = self.label_map()
        cur.update({v: tuple(t) for v, t in labels.items()})
        return build(self.words, cur, self.oriented)

    def to_text(self) -> str:
        lines = []
        for w, o in zip(self.words, self.oriented):
            body = "".join(w) if all(len(v) == 1 for v in w) else ",".join(w)
            lines.append(body + (" +" if o else ""))
        return "\n".join(lines) + ("\n" if lines else "")


def build(words: Iterable[Sequence[str]], labels: Mapping[str, Tuple],
          oriented: Iterable[bool] | None = None) -> EulerSystem:
    """Canonicalize without validation; empty words are dropped."""
    words = [tuple(w) for w in words]
    flags = list(oriented) if oriented is not None else [False] * len(words)
    pairs = sorted((_canon_word(w, o), o) for w, o in zip(words, flags) if w)
    present = {v for w, _ in pairs for v in w}
    labs = tuple(sorted((v, tuple(labels[v])) for v in present))
    return EulerSystem(tuple(w for w, _ in pairs), labs, tuple(o for _, o in pairs))


def from_dow(words: Iterable[Sequence[str] | str], labels: Mapping[str, Tuple] | None = None,
             oriented: bool | Iterable[bool] = False) -> EulerSystem:
    """Build a system from double occurrence words (strings are split per character)."""
    words = [tuple(w) for w in words]
    if isinstance(oriented, bool):
        flags = [oriented] * len(words)
    else:
        flags = list(oriented)
        if len(flags) != len(words):
            raise ValueError("one orientation flag per component")
    seen: Dict[str, int] = {}
    for k, w in enumerate(words):
        if not w:
            raise ValueError(f"component {k} is empty")
        counts: Dict[str, int] = {}
        for v in w:
            counts[v] = counts.get(v, 0) + 1
        for v, c in counts.items():
            if c != 2:
                raise ValueError(f"vertex {v!r} occurs {c} times in component {k} (expected 2)")
            if v in seen:
                raise ValueError(f"vertex {v!r} occurs in components {seen[v]} and {k}")
            seen[v] = k
    labs = {v: natural_labels(v) for v in seen}
    if labels:
        for v, t in labels.items():
            if v not in labs:
                raise KeyError(f"label for unknown vertex {v!r}")
            labs[v] = tuple(t)
    return build(words, labs, flags)


def _positions(word: Word, v: str) -> Tuple[int, int]:
    p = word.index(v)
    return p, word.index(v, p + 1)


def _interlaced_with(word: Word, v: str) -> List[str]:
    p, q = _positions(word, v)
    inside: Dict[str, int] = {}
    for u in word[p + 1:q]:
        inside[u] = inside.get(u, 0) + 1
    return sorted(u for u, c in inside.items() if c == 1)


def interlaced(c: EulerSystem, v: str) -> List[str]:
    return _interlaced_with(c.words[c.component_of(v)], v)


def interlacement(c: EulerSystem) -> LabeledGraph:
    """Interlacement graph on the sorted vertex ids, labels copied from ``c``."""
    verts = c.vertices
    edges = []
    for w in c.words:
        for v in set(w):
            edges.extend((v, u) for u in _interlaced_with(w, v) if v < u)
    return LabeledGraph.from_edges(verts, edges, labels=c.label_map())


def _swap(t: Tuple, a: int, b: int) -> Tuple:
    t = list(t)
    t[a], t[b] = t[b], t[a]
    return tuple(t)


def kappa_transform(c: EulerSystem, v: str, walk: int = 0) -> EulerSystem:
    """C*v: reverse one v-to-v walk of the canonical word (``walk`` 0 = the first).

    phi<->psi at v and chi<->psi at every vertex interlaced with v.
    The reversed component loses its orientation flag.
    """
    k = c.component_of(v)
    word = c.words[k]
    p, q = _positions(word, v)
    if walk == 0:
        new = word[:p + 1] + word[p + 1:q][::-1] + word[q:]
    elif walk == 1:
        rot = word[q:] + word[:q]  # starts at the second occurrence
        m = len(word) - q + p
        new = rot[:1] + rot[1:m][::-1] + rot[m:]
    else:
        raise ValueError("walk must be 0 or 1")
    labels = c.label_map()
    labels[v] = _swap(labels[v], 0, 2)
    for u in _interlaced_with(word, v):
        labels[u] = _swap(labels[u], 1, 2)
    words = list(c.words)
    words[k] = new
    flags = list(c.oriented)
    flags[k] = False
    return build(words, labels, flags)


def transpose(c: EulerSystem, v: str, w: str) -> EulerSystem:
    """C*v*w*v: exchange the two v-to-w walks; phi<->chi at v and at w.

    Edge directions are preserved, so orientation flags survive.
    """
    k = c.component_of(v)
    word = c.words[k]
    if w not in _interlaced_with(word, v):
        raise ValueError(f"{v} and {w} are not interlaced")
    p, _ = _positions(word, v)
    r = word[p:] + word[:p]
    j1, j2 = _positions(r, w)
    mid = r.index(v, 1)
    a, b, cc, d = r[1:j1], r[j1 + 1:mid], r[mid + 1:j2], r[j2 + 1:]
    new = (v,) + cc + (w,) + b + (v,) + a + (w,) + d
    labels = c.label_map()
    labels[v] = _swap(labels[v], 0, 1)
    labels[w] = _swap(labels[w], 0, 1)
    words = list(c.words)
    words[k] = new
    return build(words, labels, c.oriented)


def _half_edges(c: EulerSystem):
    """Edge partner of every half-edge, and per vertex the three transition pairings.

    Occurrence i owns half-edges 2i (arriving) and 2i+1 (leaving).
    """
    total = sum(len(w) for w in c.words)
    edge = [0] * (2 * total)
    occ: Dict[str, List[int]] = {}
    offset = 0
    for word in c.words:
        m = len(word)
        for i, v in enumerate(word):
            occ.setdefault(v, []).append(offset + i)
            out_half = 2 * (offset + i) + 1
            in_half = 2 * (offset + (i + 1) % m)
            edge[out_half] = in_half
            edge[in_half] = out_half
        offset += m
    pairings = {}
    for v, (p, q) in occ.items():
        ip, op, iq, oq = 2 * p, 2 * p + 1, 2 * q, 2 * q + 1
        pairings[v] = (
            ((ip, op), (iq, oq)),  # phi: follow the circuit
            ((ip, oq), (iq, op)),  # chi: the other orientation-consistent pairing
            ((ip, iq), (op, oq)),  # psi: orientation-inconsistent
        )
    return edge, pairings


def _count_cycles(edge: List[int], trans: List[int]) -> int:
    seen = bytearray(len(edge))
    count = 0
    for s in range(len(edge)):
        if seen[s]:
            continue
        count += 1
        x = s
        while True:
            seen[x] = 1
            z = edge[x]
            seen[z] = 1
            x = trans[z]
            if x == s:
                break
    return count


def _set_pairs(trans: List[int], pairs) -> None:
    for a, b in pairs:
        trans[a] = b
        trans[b] = a


def trace_partition(c: EulerSystem, t: Mapping[str, str]) -> int:
    """Number of circuits in the circuit partition chosen by ``t``."""
    edge, pairings = _half_edges(c)
    trans = [0] * len(edge)
    for v, pr in pairings.items():
        tr = t[v]
        if tr not in CLASSES:
            raise ValueError(f"unknown transition {tr!r} at {v}")
        _set_pairs(trans, pr[CLASSES.index(tr)])
    return _count_cycles(edge, trans)


def transition_choices(c: EulerSystem, classes=CLASSES):
    verts = c.vertices
    for combo in product(classes, repeat=len(verts)):
        yield dict(zip(verts, combo))


def _generating_function(c: EulerSystem, y, classes, cap):
    from .interlace import _Acc, distinct_label_vars

    check_cap("pi_generating_function", c.n, QLAMBDA_CAP, cap)
    y = MPoly.var(Y) if y is None else y
    verts = c.vertices
    labels = c.label_map()
    edge, pairings = _half_edges(c)
    trans = [0] * len(edge)
    idx = [CLASSES.index(k) for k in classes]
    buckets: Dict[int, _Acc] = {}
    n = len(verts)

    def walk(i, prod):
        if i == n:
            k = _count_cycles(edge, trans) - c.components
            buckets.setdefault(k, _Acc()).add(prod)
            return
        v = verts[i]
        lab = labels[v]
        for ci in idx:
            x = lab[ci]
            if isinstance(x, (int, Fraction)) and not x:
                continue
            _set_pairs(trans, pairings[v][ci])
            walk(i + 1, x if prod is None else prod * x)

    vars_ = distinct_label_vars([labels[v] for v in verts], y) if n else None
    if vars_ is not None:
        terms = {}

        def walk_distinct(i, chosen):
            if i == n:
                k = _count_cycles(edge, trans) - c.components
                mono = chosen + [(Y, k)] if k else chosen
                terms[tuple(sorted(mono))] = 1
                return
            for ci in idx:
                _set_pairs(trans, pairings[verts[i]][ci])
                walk_distinct(i + 1, chosen + [vars_[i][ci]])

        walk_distinct(0, [])
        return MPoly._raw(terms)

    walk(0, None if n else 1)
    total = 0
    for k in sorted(buckets):
        total = total + buckets[k].value() * y ** k
    return total


def pi_generating_function(c: EulerSystem, y=None, cap: int | None = None):
    """Labeled circuit partition generating function over all 3^n transition choices."""
    return _generating_function(c, y, CLASSES, cap)


def pi_directed(c: EulerSystem, y=None, cap: int | None = None):
    """Directed version: phi/chi choices only (2^n). Needs every component oriented."""
    if not all(c.oriented):
        raise ValueError("pi_directed needs an orientation on every component")
    return _generating_function(c, y, (PHI, CHI), cap)


def remove_vertex(c: EulerSystem, v: str) -> EulerSystem:
    labels = c.label_map()
    del labels[v]
    words = [tuple(u for u in w if u != v) for w in c.words]
    return build(words, labels, c.oriented)


def detach(c: EulerSystem, v: str, kind: str) -> EulerSystem:
    """Detachment at ``v`` along the ``kind`` transition, as a word operation."""
    c.component_of(v)
    if kind == PHI:
        return remove_vertex(c, v)
    if kind == PSI:
        return remove_vertex(kappa_transform(c, v), v)
    if kind == CHI:
        partners = interlaced(c, v)
        if partners:
            return remove_vertex(transpose(c, v, partners[0]), v)
        k = c.component_of(v)
        word = c.words[k]
        p, q = _positions(word, v)
        labels = c.label_map()
        del labels[v]
        words = list(c.words[:k]) + [word[p + 1:q], word[q + 1:] + word[:p]] + list(c.words[k + 1:])
        flags = list(c.oriented[:k]) + [c.oriented[k]] * 2 + list(c.oriented[k + 1:])
        return build(words, labels, flags)
    raise ValueError(f"unknown detachment kind {kind!r}")


def euler_closure(c: EulerSystem, max_states: int = 200000, cap: int | None = None) -> set:
    """All systems reachable from ``c`` by kappa-transforms (canonical forms)."""
    check_cap("euler_closure", c.n, QLAMBDA_CAP, cap)
    seen = {c}
    queue = deque([c])
    verts = c.vertices
    while queue:
        cur = queue.popleft()
        for v in verts:
            nxt = kappa_transform(cur, v)
            if nxt not in seen:
                if len(seen) >= max_states:
                    raise CapExceeded("euler_closure states", len(seen) + 1, max_states)
                seen.add(nxt)
                queue.append(nxt)
    return seen


def zero_for_digraph(c: EulerSystem) -> EulerSystem:
    """D-consistent labels: psi (the direction-inconsistent transition) set to 0 everywhere."""
    return c.with_labels({v: (t[0], t[1], 0) for v, t in c.labels})


def zero_for_T(c: EulerSystem, T: Mapping[str, str]) -> EulerSystem:
    """T-compatible labels: zero the label of the one transition T names at each vertex."""
    labels = c.label_map()
    for v, tr in T.items():
        if v not in labels:
            raise ValueError(f"T names unknown vertex {v!r}")
        if tr not in CLASSES:
            raise ValueError(f"T names unknown transition {tr!r} at {v}")
        t = list(labels[v])
        t[CLASSES.index(tr)] = 0
        labels[v] = tuple(t)
    return c.with_labels(labels)


# -- text format -------------------------------------------------------

def parse_dow(text: str) -> Tuple[List[Word], List[bool]]:
    """One component per line; ``a,b,a,b`` or shorthand ``abab``; trailing ``+`` marks orientation."""
    from .io import ParseError

    words, flags = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        oriented = False
        if line.endswith("+"):
            oriented = True
            line = line[:-1].rstrip()
        if not line:
            raise ParseError("empty component", lineno, 1)
        if "," in line:
            toks = [s.strip() for s in line.split(",")]
            for col, tok in enumerate(toks):
                if not tok or any(ch.isspace() for ch in tok):
                    raise ParseError(f"bad vertex token {tok!r}", lineno, raw.find(tok) + 1 if tok else col + 1)
        else:
            if any(ch.isspace() for ch in line):
                col = next(i for i, ch in enumerate(raw) if ch.isspace() and raw[:i].strip()) + 1
                raise ParseError("whitespace inside a shorthand word", lineno, col)
            toks = list(line)
        words.append(tuple(toks))
        flags.append(oriented)
    return words, flags
