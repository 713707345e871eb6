"""The labeled interlace polynomial Q_lambda, its 2-label restriction and the
classical specializations q_N, q, Q and Courcelle's C.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping

from . import poly
from .caps import QLAMBDA_CAP, SUBSET_CAP, check_cap
from .gf2 import rank_rows
from .graph import (
    LabeledGraph, _bits, induced, labeled_local_complement, labeled_pivot, simplify, strip_loops,
)
from .poly import MPoly, U, V, X, Y

KINDS = ("qlambda", "q2", "qn", "q", "Qahv", "courcelle")


class _Acc:
    """In-place accumulator for a mix of scalars and MPoly values."""

    __slots__ = ("scalar", "terms")

    def __init__(self):
        self.scalar = 0
        self.terms: Dict = {}

    def add(self, x):
        if isinstance(x, MPoly):
            t = self.terms
            for m, c in x.terms.items():
                s = t.get(m, 0) + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        else:
            self.scalar += x

    def value(self):
        if not self.terms:
            return self.scalar
        return MPoly(self.terms) + self.scalar


def _ypows(y, n):
    out = [1]
    for _ in range(n):
        out.append(out[-1] * y)
    return out


def distinct_label_vars(label_rows, y=None):
    """Per-vertex VarId triples when every label is its own variable (and y is symbolic), else None.

    Then every labeled partition contributes a different monomial, so sums can
    be assembled from exponent tuples without polynomial multiplication.
    """
    if y is not None and not (isinstance(y, MPoly) and y == MPoly.var(Y)):
        return None
    out = []
    seen = {Y}
    for lab in label_rows:
        row = []
        for x in lab:
            if not isinstance(x, MPoly) or len(x.terms) != 1:
                return None
            (mono, c), = x.terms.items()
            if c != 1 or len(mono) != 1 or mono[0][1] != 1 or mono[0][0] in seen:
                return None
            seen.add(mono[0][0])
            row.append((mono[0][0], 1))
        out.append(tuple(row))
    return out


def _labeled_sum_distinct(g: LabeledGraph, classes, vars_):
    n = g.n
    adj = g.adj
    terms = {}

    def walk(i, keep, psi, chosen):
        if i == n:
            rows = [(adj[j] & keep) | (((psi >> j) & 1) << j) for j in _bits(keep)]
            nu = len(rows) - rank_rows(rows)
            mono = chosen + [(Y, nu)] if nu else chosen
            terms[tuple(sorted(mono))] = 1
            return
        bit = 1 << i
        for c in classes:
            nxt = chosen + [vars_[i][c]]
            if c == 0:
                walk(i + 1, keep, psi, nxt)
            elif c == 1:
                walk(i + 1, keep | bit, psi, nxt)
            else:
                walk(i + 1, keep | bit, psi | bit, nxt)

    walk(0, 0, 0, [])
    return MPoly._raw(terms)


def _labeled_sum(g: LabeledGraph, y, classes):
    """Sum over labeled partitions using only ``classes`` (0=phi, 1=chi, 2=psi)."""
    n = g.n
    vars_ = distinct_label_vars(g.labels, y) if n else None
    if vars_ is not None:
        return _labeled_sum_distinct(g, classes, vars_)
    adj = g.adj
    labels = g.labels
    buckets = [_Acc() for _ in range(n + 1)]

    def walk(i, keep, psi, prod):
        if i == n:
            rows = [(adj[j] & keep) | (((psi >> j) & 1) << j) for j in _bits(keep)]
            buckets[len(rows) - rank_rows(rows)].add(prod)
            return
        lab = labels[i]
        bit = 1 << i
        for c in classes:
            x = lab[c]
            if isinstance(x, (int, Fraction)) and not x:
                continue
            p = x if prod is None else prod * x
            if c == 0:
                walk(i + 1, keep, psi, p)
            elif c == 1:
                walk(i + 1, keep | bit, psi, p)
            else:
                walk(i + 1, keep | bit, psi | bit, p)

    walk(0, 0, 0, None if n else 1)
    if n == 0:
        return 1
    ypow = _ypows(y, n)
    total = 0
    for k, b in enumerate(buckets):
        val = b.value()
        if isinstance(val, MPoly) or val:
            total = total + val * ypow[k]
    return total


def _ydefault(y):
    return MPoly.var(Y) if y is None else y


def qlambda_bruteforce(g: LabeledGraph, y=None, cap: int | None = None):
    """Sum over all 3^n labeled partitions of label products times y^nullity(G_P)."""
    g = simplify(g)
    check_cap("qlambda_bruteforce", g.n, QLAMBDA_CAP, cap)
    return _labeled_sum(g, _ydefault(y), (0, 1, 2))


def q2_bruteforce(g: LabeledGraph, y=None, cap: int | None = None):
    g = simplify(g)
    check_cap("q2_bruteforce", g.n, QLAMBDA_CAP, cap)
    return _labeled_sum(g, _ydefault(y), (0, 1))


def _by_components(g: LabeledGraph, rec):
    comps = g.components()
    if len(comps) == 1:
        return None
    acc = 1
    for comp in comps:
        acc = acc * rec(induced(g, [g.vertices[i] for i in comp]))
    return acc


def qlambda_recursive(g: LabeledGraph, y=None, use_pivot: bool = False, cap: int | None = None):
    """Three-term recursion; ``use_pivot`` replaces the double complement by a pivot."""
    if y is None or isinstance(y, MPoly):
        check_cap("qlambda_recursive", g.n, QLAMBDA_CAP, cap)
    y = _ydefault(y)

    def rec(h: LabeledGraph):
        if h.n == 0:
            return 1
        if h.n == 1:
            a, b, c = h.labels[0]
            return a + b * y + c
        split = _by_components(h, rec)
        if split is not None:
            return split
        # connected with n >= 2: vertex 0 has a neighbor
        v = h.vertices[0]
        w = h.vertices[(h.adj[0] & -h.adj[0]).bit_length() - 1]
        a, b, c = h.labels[0]
        if use_pivot:
            middle = labeled_pivot(h, w, v)
        else:
            middle = labeled_local_complement(labeled_local_complement(h, w), v)
        return (a * rec(h.remove(v))
                + b * rec(middle.remove(v))
                + c * rec(labeled_local_complement(h, v).remove(v)))

    return rec(simplify(g))


def q2_recursive(g: LabeledGraph, y=None, cap: int | None = None):
    """Two-term pivot recursion for the 2-label polynomial."""
    if y is None or isinstance(y, MPoly):
        check_cap("q2_recursive", g.n, QLAMBDA_CAP, cap)
    y = _ydefault(y)

    def rec(h: LabeledGraph):
        if h.n == 0:
            return 1
        if h.n == 1:
            a, b, _ = h.labels[0]
            return a + b * y
        split = _by_components(h, rec)
        if split is not None:
            return split
        v = h.vertices[0]
        w = h.vertices[(h.adj[0] & -h.adj[0]).bit_length() - 1]
        a, b, _ = h.labels[0]
        return a * rec(h.remove(v)) + b * rec(labeled_pivot(h, v, w).remove(v))

    return rec(simplify(g))


def qlambda(g: LabeledGraph, y=None, method: str = "recursive"):
    if method == "bruteforce":
        return qlambda_bruteforce(g, y)
    if method == "recursive":
        return qlambda_recursive(g, y)
    raise ValueError(f"unknown method {method!r}")


def q2(g: LabeledGraph, y=None, method: str = "recursive"):
    if method == "bruteforce":
        return q2_bruteforce(g, y)
    if method == "recursive":
        return q2_recursive(g, y)
    raise ValueError(f"unknown method {method!r}")


# -- subset-based definitions (loops read from the diagonal) -------------

def _loop_rows(g: LabeledGraph, keep: int, diag: int):
    return [(g.adj[j] & keep) | (((diag >> j) & 1) << j) for j in _bits(keep)]


def _subset_nullity_counts(g: LabeledGraph):
    """counts[(|S|, nullity(G[S]))] over all vertex subsets S."""
    counts: Dict = {}
    for keep in range(1 << g.n):
        rows = _loop_rows(g, keep, g.loops)
        key = (len(rows), len(rows) - rank_rows(rows))
        counts[key] = counts.get(key, 0) + 1
    return counts


def qn(g: LabeledGraph, cap: int | None = None) -> MPoly:
    """Vertex-nullity interlace polynomial: sum over S of (y-1)^nullity(G[S])."""
    check_cap("qn", g.n, SUBSET_CAP, cap)
    ym1 = MPoly.var(Y) - 1
    by_null: Dict[int, int] = {}
    for (_, k), c in _subset_nullity_counts(g).items():
        by_null[k] = by_null.get(k, 0) + c
    return sum((ym1 ** k * c for k, c in by_null.items()), MPoly())


def q_two_variable(g: LabeledGraph, cap: int | None = None) -> MPoly:
    """Two-variable interlace polynomial: sum over S of (x-1)^(|S|-nu) (y-1)^nu."""
    check_cap("q_two_variable", g.n, SUBSET_CAP, cap)
    xm1 = MPoly.var(X) - 1
    ym1 = MPoly.var(Y) - 1
    return sum((xm1 ** (s - k) * ym1 ** k * c for (s, k), c in _subset_nullity_counts(g).items()), MPoly())


def courcelle(g: LabeledGraph, cap: int | None = None) -> MPoly:
    """Courcelle's multivariate interlace polynomial in x_a, y_b, u, v."""
    check_cap("courcelle", g.n, QLAMBDA_CAP, cap)
    n = g.n
    xs = [MPoly.var(poly.xv(v)) for v in g.vertices]
    ys = [MPoly.var(poly.yv(v)) for v in g.vertices]
    buckets: Dict = {}

    def walk(i, keep, bset, mono):
        if i == n:
            rows = _loop_rows(g, keep, g.loops ^ bset)
            size = len(rows)
            k = size - rank_rows(rows)
            acc = buckets.setdefault((size - k, k), _Acc())
            acc.add(mono)
            return
        bit = 1 << i
        walk(i + 1, keep, bset, mono)
        walk(i + 1, keep | bit, bset, mono * xs[i])
        walk(i + 1, keep | bit, bset | bit, mono * ys[i])

    walk(0, 0, 0, MPoly.const(1))
    u, v = MPoly.var(U), MPoly.var(V)
    total = MPoly()
    for (a, b), acc in buckets.items():
        total = total + acc.value() * u ** a * v ** b
    return total


# -- specializations of Q_lambda ------------------------------------------

def specialized_labels(g: LabeledGraph, kind: str, x=None, placeholder=None):
    """Label triples realizing ``kind`` on the loop-stripped graph.

    Looped vertices select the psi label where the definition keeps a loop.
    ``x`` is the value standing in for ``x - 1`` (q) or for ``u`` (courcelle).
    """
    out = []
    for i, v in enumerate(g.vertices):
        looped = (g.loops >> i) & 1
        if kind == "qn":
            out.append((1, 0, 1) if looped else (1, 1, 0))
        elif kind == "q":
            t = x
            out.append((1, 0, t) if looped else (1, t, 0))
        elif kind == "Qahv":
            out.append((1, 1, 1))
        elif kind == "courcelle":
            xa = MPoly.var(poly.xv(v)) * x
            yb = MPoly.var(poly.yv(v)) * x
            out.append((1, yb, xa) if looped else (1, xa, yb))
        else:
            raise ValueError(f"no fixed specialization for kind {kind!r}")
    return strip_loops(g).with_labels(out)


def qn_via_qlambda(g: LabeledGraph, method: str = "recursive") -> MPoly:
    p = poly.as_poly(qlambda(specialized_labels(g, "qn"), method=method))
    return poly.substitute(p, {Y: MPoly.var(Y) - 1})


def q_via_qlambda(g: LabeledGraph, method: str = "recursive") -> MPoly:
    # X marks a factor (x-1); Y marks a factor (y-1)/(x-1)
    p = poly.as_poly(qlambda(specialized_labels(g, "q", x=MPoly.var(X)), method=method))
    xm1 = MPoly.var(X) - 1
    ym1 = MPoly.var(Y) - 1

    def rebuild(exps):
        a, b = exps.get(X, 0), exps.get(Y, 0)
        if a < b:
            raise ArithmeticError("negative power of (x-1) in q specialization")
        return xm1 ** (a - b) * ym1 ** b

    return poly.monomial_map(p, rebuild)


def avdh(g: LabeledGraph, method: str = "recursive") -> MPoly:
    """Aigner-van der Holst Q: all labels 1."""
    return poly.as_poly(qlambda(specialized_labels(g, "Qahv"), method=method))


q_avdh = avdh


def courcelle_via_qlambda(g: LabeledGraph, method: str = "recursive") -> MPoly:
    # U marks one vertex of A or B; Y marks one unit of nullity
    p = poly.as_poly(qlambda(specialized_labels(g, "courcelle", x=MPoly.var(U)), method=method))

    def rebuild(exps):
        a, b = exps.pop(U, 0), exps.pop(Y, 0)
        if a < b:
            raise ArithmeticError("nullity exceeds subset size")
        rest = MPoly._raw({tuple(sorted(exps.items())): 1})
        return rest * MPoly.var(U, a - b) * MPoly.var(V, b)

    return poly.monomial_map(p, rebuild)


def compute(g: LabeledGraph, kind: str, method: str = "recursive"):
    """Dispatch used by the CLI. ``bruteforce`` means the defining sum."""
    if kind == "qlambda":
        return qlambda(g, method=method)
    if kind == "q2":
        return q2(g, method=method)
    if kind == "qn":
        return qn(g) if method == "bruteforce" else qn_via_qlambda(g, method)
    if kind == "q":
        return q_two_variable(g) if method == "bruteforce" else q_via_qlambda(g, method)
    if kind == "Qahv":
        return avdh(g, method)
    if kind == "courcelle":
        return courcelle(g) if method == "bruteforce" else courcelle_via_qlambda(g, method)
    raise ValueError(f"unknown kind {kind!r}")


# -- looped circle graphs ------------------------------------------------

@dataclass
class CircleReport:
    graph: LabeledGraph
    looped: frozenset
    qn_graph: MPoly
    qn_circuits: MPoly
    q_graph_cleared: MPoly
    q_circuits_cleared: MPoly

    @property
    def agree(self) -> bool:
        return self.qn_graph == self.qn_circuits and self.q_graph_cleared == self.q_circuits_cleared


def circle_interpretations(c, looped) -> CircleReport:
    """Compare q_N and q of the looped interlacement graph with circuit-partition sums.

    The circuit side sums over transition choices with no chi in ``looped``
    and psi only inside ``looped``; both q values are multiplied by (x-1)^n
    so that every power is nonnegative.
    """
    from itertools import product

    from .fourreg import interlacement, trace_partition

    looped = frozenset(looped)
    base = interlacement(c)
    g = LabeledGraph(base.vertices, base.adj,
                     sum(1 << base.index(v) for v in looped), base.labels)
    n = g.n
    comps = len(c.words)
    ym1 = MPoly.var(Y) - 1
    xm1 = MPoly.var(X) - 1
    qn_side = MPoly()
    q_side = MPoly()
    verts = list(g.vertices)
    for choice in product(("phi", "chi", "psi"), repeat=n):
        t = dict(zip(verts, choice))
        if any(t[v] == "chi" for v in looped) or any(t[v] == "psi" and v not in looped for v in verts):
            continue
        k = trace_partition(c, t) - comps
        n_phi = sum(1 for s in choice if s == "phi")
        qn_side = qn_side + ym1 ** k
        q_side = q_side + ym1 ** k * xm1 ** (2 * n - n_phi - k)
    return CircleReport(g, looped, qn(g), qn_side, q_two_variable(g) * xm1 ** n, q_side)
