"""Pendant/twin reductions, split reductions and split-width evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from . import poly
from .caps import QLAMBDA_CAP, CapExceeded, vertex_cap
from .gf2 import rank_rows
from .graph import LabeledGraph, _bits, induced, simplify
from .interlace import _Acc, qlambda_recursive, specialized_labels
from .poly import MPoly, U, V, X, Y


def _y(y):
    return MPoly.var(Y) if y is None else y


def _merge(g: LabeledGraph, v: str, w: str, triple) -> LabeledGraph:
    return g.set_label(v, triple).remove(w)


def reduce_nonadjacent_twins(g: LabeledGraph, v: str, w: str, y=None) -> LabeledGraph:
    if g.loops:
        raise ValueError("simplify the graph first")
    i, k = g.index(v), g.index(w)
    if v == w or (g.adj[i] >> k) & 1 or g.adj[i] != g.adj[k]:
        raise ValueError(f"{v} and {w} are not nonadjacent twins")
    y = _y(y)
    a, b, c = g.labels[i]
    d, e, f = g.labels[k]
    return _merge(g, v, w, (a * d + c * f,
                            a * e + b * d + b * e * y + b * f + c * e,
                            a * f + c * d))


def reduce_adjacent_twins(g: LabeledGraph, v: str, w: str, y=None) -> LabeledGraph:
    if g.loops:
        raise ValueError("simplify the graph first")
    i, k = g.index(v), g.index(w)
    if v == w or not (g.adj[i] >> k) & 1 or g.adj[i] & ~(1 << k) != g.adj[k] & ~(1 << i):
        raise ValueError(f"{v} and {w} are not adjacent twins")
    y = _y(y)
    a, b, c = g.labels[i]
    d, e, f = g.labels[k]
    return _merge(g, v, w, (a * d + b * e,
                            a * e + b * d,
                            a * f + b * f + c * d + c * e + c * f * y))


def reduce_pendant(g: LabeledGraph, v: str, w: str, y=None) -> LabeledGraph:
    """Absorb the pendant vertex ``w`` (sole neighbor ``v``) into ``v``."""
    if g.loops:
        raise ValueError("simplify the graph first")
    i, k = g.index(v), g.index(w)
    if g.adj[k] != 1 << i:
        raise ValueError(f"{w} is not a pendant vertex on {v}")
    y = _y(y)
    # the formula reads with the pendant's labels unsubscripted
    a, b, c = g.labels[k]
    d, e, f = g.labels[i]
    return _merge(g, v, w, (a * d + b * d * y + b * e + b * f + c * d,
                            a * e + c * f,
                            a * f + c * e))


def reduce_isolated(g: LabeledGraph, w: str, v: str, y=None) -> LabeledGraph:
    """Remove the isolated vertex ``w``, scaling every label of ``v`` by Q_lambda({w})."""
    if g.loops:
        raise ValueError("simplify the graph first")
    k = g.index(w)
    if g.adj[k]:
        raise ValueError(f"{w} is not isolated")
    if v == w:
        raise ValueError("v must differ from w")
    g.index(v)
    d, e, f = g.labels[k]
    q = d + e * _y(y) + f
    a, b, c = g.label(v)
    return _merge(g, v, w, (a * q, b * q, c * q))


@dataclass(frozen=True)
class Split:
    """H side of a split: S are the H-vertices with outside neighbors, T their common outside neighborhood."""

    h_vertices: frozenset
    s: frozenset
    t: frozenset


def validate_split(g: LabeledGraph, split: Split) -> None:
    h = set(split.h_vertices)
    if not h:
        raise ValueError("H must be nonempty")
    if not split.s <= h:
        raise ValueError("S must lie inside H")
    if split.t & h:
        raise ValueError("T must lie outside H")
    for v in h:
        outside = {u for u in g.neighbors(v) if u not in h}
        if v in split.s:
            if outside != set(split.t):
                raise ValueError(f"{v} in S has outside neighbors {sorted(outside)} != T")
        elif outside:
            raise ValueError(f"{v} outside S has neighbors outside H")


def split_labels(h: LabeledGraph, s: Sequence[str], y=None) -> Tuple:
    """(phi(H,S), chi(H,S), psi(H,S)) by enumerating all labeled partitions of H."""
    if h.loops:
        raise ValueError("simplify the graph first")
    cap = vertex_cap(QLAMBDA_CAP)
    if h.n > cap:
        raise CapExceeded("split_labels", h.n, cap)
    y = _y(y)
    n = h.n
    smask = 0
    for v in s:
        smask |= 1 << h.index(v)
    border = 1 << n
    accs = [_Acc(), _Acc(), _Acc()]
    ypow = [1]
    for _ in range(n + 1):
        ypow.append(ypow[-1] * y)
    adj = h.adj
    labels = h.labels

    def walk(i, keep, psi, prod):
        if i == n:
            rows = [(adj[j] & keep) | (((psi >> j) & 1) << j) for j in _bits(keep)]
            size = len(rows)
            sk = smask & keep
            brows = [r | border if (sk >> j) & 1 else r for r, j in zip(rows, _bits(keep))]
            nu_h = size - rank_rows(rows)
            nu_s = size + 1 - rank_rows(brows + [sk])
            nu_sl = size + 1 - rank_rows(brows + [sk | border])
            triple = (nu_s, nu_h, nu_sl)
            hi = max(triple)
            if triple.count(hi) != 1 or hi - min(triple) != 1:
                raise AssertionError(f"nullity triple {triple} breaks the two-equal-one-larger pattern")
            kind = triple.index(hi)
            accs[kind].add(prod * ypow[nu_h - 1 if kind == 1 else nu_h])
            return
        bit = 1 << i
        a, b, c = labels[i]
        walk(i + 1, keep, psi, a if prod is None else prod * a)
        walk(i + 1, keep | bit, psi, b if prod is None else prod * b)
        walk(i + 1, keep | bit, psi | bit, c if prod is None else prod * c)

    walk(0, 0, 0, None if n else 1)
    return tuple(acc.value() for acc in accs)


def split_reduce(g: LabeledGraph, split: Split, y=None) -> LabeledGraph:
    """Replace H by one vertex h_S (keeping the id of H's first vertex) adjacent to T."""
    g = simplify(g)
    validate_split(g, split)
    hv = [v for v in g.vertices if v in split.h_vertices]
    keep_id = hv[0]
    h = induced(g, hv)
    triple = split_labels(h, [v for v in hv if v in split.s], y)
    t = split.t if split.s else frozenset()
    verts = [v for v in g.vertices if v not in split.h_vertices or v == keep_id]
    edges = [(a, b) for a, b in g.edges() if a not in split.h_vertices and b not in split.h_vertices]
    edges += [(keep_id, u) for u in t]
    labels = {v: g.label(v) for v in verts}
    labels[keep_id] = triple
    return LabeledGraph.from_edges(verts, edges, labels=labels)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _search(adj: Sequence[int], n: int, k: int) -> Optional[List[int]]:
    """Lexicographically least valid H of size ``k`` (as sorted indices), or None."""
    full = (1 << n) - 1

    def check(hs, hmask, r):
        last = hs[-1]
        future = full & ~((1 << (last + 1)) - 1)
        outs = [adj[h] & ~hmask for h in hs]
        if r == 0:
            ref = 0
            for o in outs:
                if o:
                    if ref and o != ref:
                        return False
                    ref = o
            return True
        ref = None
        forced = 0
        for o in outs:
            if (o & ~future) or _popcount(o) > r:
                if ref is None:
                    ref = o
                else:
                    d = o ^ ref
                    if d & ~future:
                        return False
                    forced |= d
        if _popcount(forced) > r:
            return False
        return forced if forced else True

    def dfs(hs, hmask):
        r = k - len(hs)
        res = check(hs, hmask, r)
        if res is False:
            return None
        if r == 0:
            return hs
        upper = n - r
        if res is not True:
            upper = min(upper, (res & -res).bit_length() - 1)
        for x in range(hs[-1] + 1, upper + 1):
            found = dfs(hs + [x], hmask | (1 << x))
            if found is not None:
                return found
        return None

    for a in range(0, n - k + 1):
        found = dfs([a], 1 << a)
        if found is not None:
            return found
    return None


def find_split(g: LabeledGraph, s_max: int = 4) -> Optional[Split]:
    """Smallest, then lexicographically least (in vertex order), split side H with 2 <= |H| <= s_max."""
    if s_max < 2:
        raise ValueError("s_max must be at least 2")
    g = simplify(g) if g.loops else g
    for k in range(2, s_max + 1):
        if g.n - k < 1:
            break
        hs = _search(g.adj, g.n, k)
        if hs is None:
            continue
        hmask = 0
        for i in hs:
            hmask |= 1 << i
        s = [i for i in hs if g.adj[i] & ~hmask]
        t = g.adj[s[0]] & ~hmask if s else 0
        return Split(frozenset(g.vertices[i] for i in hs),
                     frozenset(g.vertices[i] for i in s),
                     frozenset(g.vertices[i] for i in _bits(t)))
    return None


def reduction_plan(g: LabeledGraph, s_max: int = 4, order: str = "forward") -> Tuple[List[Split], LabeledGraph]:
    """Splits to apply in sequence, and the residual graph structure (labels irrelevant).

    The sequence depends only on adjacency, so it can be replayed for many label/y values.
    """
    cur = LabeledGraph(g.vertices, g.adj, 0, tuple((0, 0, 0) for _ in g.vertices))
    if order == "reverse":
        cur = cur.reordered(list(reversed(cur.vertices)))
    elif order != "forward":
        raise ValueError(f"unknown order {order!r}")
    plan = []
    while True:
        sp = find_split(cur, s_max)
        if sp is None:
            return plan, cur
        plan.append(sp)
        hv = [v for v in cur.vertices if v in sp.h_vertices]
        t = sp.t if sp.s else frozenset()
        verts = [v for v in cur.vertices if v not in sp.h_vertices or v == hv[0]]
        edges = [(a, b) for a, b in cur.edges() if a not in sp.h_vertices and b not in sp.h_vertices]
        edges += [(hv[0], u) for u in t]
        cur = LabeledGraph.from_edges(verts, edges, labels={v: (0, 0, 0) for v in verts})


def apply_plan(g: LabeledGraph, plan: Sequence[Split], y, residual_cap: int | None = None):
    """Q_lambda(g) at ``y`` by replaying ``plan`` and finishing the residual per component."""
    cur = simplify(g)
    for sp in plan:
        cur = split_reduce(cur, sp, y)
    cap = vertex_cap(QLAMBDA_CAP) if residual_cap is None else residual_cap
    total = 1
    for comp in cur.components():
        part = induced(cur, [cur.vertices[i] for i in comp])
        if part.n > cap:
            err = CapExceeded("evaluate_fpt residual", part.n, cap, residual=part)
            raise err
        total = total * qlambda_recursive(part, y, cap=cap)
    return total


def _bind(label, bindings):
    if isinstance(label, MPoly):
        if not bindings:
            return label
        val = poly.substitute(label, {k: v for k, v in bindings.items() if k in label.variables()})
        if isinstance(val, MPoly) and val.is_constant():
            return val.constant_value()
        if isinstance(val, Fraction) and val.denominator == 1:
            return int(val)
        return val
    return label


def _normalize_bindings(bindings) -> dict:
    out = {}
    for k, v in (bindings or {}).items():
        key = poly.var_from_name(k) if isinstance(k, str) else k
        out[key] = v
    return out


def evaluate_fpt(g: LabeledGraph, kind: str = "qlambda", bindings: Mapping | None = None,
                 s_max: int = 4, order: str = "forward", residual_cap: int | None = None):
    """Evaluate a polynomial kind by split reductions.

    Returns a scalar when every needed value is bound; univariate targets
    (qn, Qahv, q with x bound) without a y binding are recovered by
    interpolating evaluations at y = 0..n.
    """
    b = _normalize_bindings(bindings)
    n = g.n
    if order == "reverse":
        g = g.reordered(list(reversed(g.vertices)))
    elif order != "forward":
        raise ValueError(f"unknown order {order!r}")
    plan, _ = reduction_plan(g, s_max)
    yval = b.get(Y)

    def run(graph, y):
        return apply_plan(graph, plan, y, residual_cap)

    def interpolate(fn):
        pts = [(t, fn(t)) for t in range(n + 1)]
        return poly.interpolate_univariate(pts, n, Y, integral=False)

    if kind in ("qlambda", "q2"):
        base = simplify(g)
        labs = [tuple(_bind(x, b) for x in t) for t in base.labels]
        if kind == "q2":
            labs = [(t[0], t[1], 0) for t in labs]
        return run(base.with_labels(labs), MPoly.var(Y) if yval is None else yval)
    if kind == "Qahv":
        lab = specialized_labels(g, "Qahv")
        if yval is not None:
            return run(lab, yval)
        return interpolate(lambda t: run(lab, t))
    if kind == "qn":
        lab = specialized_labels(g, "qn")
        if yval is not None:
            return run(lab, yval - 1)
        return interpolate(lambda t: run(lab, t - 1))
    if kind == "q":
        if X not in b:
            raise ValueError("q via reductions needs a numeric binding for x")
        xm1 = Fraction(b[X]) - 1
        if xm1 == 0:
            raise ValueError("q via reductions needs x != 1")
        lab = specialized_labels(g, "q", x=xm1)
        if yval is not None:
            return run(lab, (Fraction(yval) - 1) / xm1)
        return interpolate(lambda t: run(lab, Fraction(t - 1) / xm1))
    if kind == "courcelle":
        if U not in b or V not in b:
            raise ValueError("courcelle via reductions needs bindings for u and v")
        uval = Fraction(b[U])
        if uval == 0:
            raise ValueError("courcelle via reductions needs u != 0")
        lab = specialized_labels(g, "courcelle", x=uval)
        labs = [tuple(_bind(x, b) for x in t) for t in lab.labels]
        for t in labs:
            if any(isinstance(x, MPoly) for x in t):
                raise ValueError("courcelle via reductions needs every x_a and y_a bound")
        return run(lab.with_labels(labs), Fraction(b[V]) / uval)
    raise ValueError(f"unknown kind {kind!r}")
