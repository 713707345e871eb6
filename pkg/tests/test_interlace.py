import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from gen import all_graphs, random_graph
from qlambda import poly
from qlambda.caps import CapExceeded
from qlambda.fourreg import from_dow
from qlambda.graph import LabeledGraph, disjoint_union, natural_labels, simplify
from qlambda.interlace import (
    avdh, circle_interpretations, compute, courcelle, courcelle_via_qlambda, q2, q2_bruteforce, q2_recursive,
    q_two_variable, q_via_qlambda, qlambda, qlambda_bruteforce, qlambda_recursive, qn, qn_via_qlambda,
    specialized_labels,
)
from qlambda.poly import MPoly, U, V, X, Y, chi, phi, psi, xv, yv

y = MPoly.var(Y)
x = MPoly.var(X)


def labs(v):
    return [MPoly.var(f(v)) for f in (phi, chi, psi)]


def G(*pairs, verts=None, loops=()):
    verts = verts or sorted({v for e in pairs for v in e})
    return LabeledGraph.from_edges(verts, pairs, loops)


def test_single_vertex():
    f, c, s = labs("v")
    assert qlambda_bruteforce(G(verts=["v"])) == f + c * y + s
    assert qlambda_recursive(G(verts=["v"])) == f + c * y + s
    assert q2_bruteforce(G(verts=["v"])) == f + c * y


def test_k2():
    f, c, s = labs("a")
    f2, c2, s2 = labs("b")
    want = f * f2 + (f * c2 + c * f2 + s * s2) * y + (f * s2 + s * f2 + c * c2 + c * s2 + s * c2)
    k2 = G(("a", "b"))
    assert qlambda_bruteforce(k2) == want
    assert qlambda_recursive(k2) == want
    assert qlambda_recursive(k2, use_pivot=True) == want
    assert q2_bruteforce(k2) == f * f2 + (f * c2 + c * f2) * y + c * c2


def test_edgeless_is_product():
    g = G(verts=["a", "b", "c"])
    want = poly.product(labs(v)[0] + labs(v)[1] * y + labs(v)[2] for v in "abc")
    assert qlambda_recursive(g) == want == qlambda_bruteforce(g)


def test_empty_graph():
    e = LabeledGraph((), ())
    assert qlambda_bruteforce(e) == 1
    assert qlambda_recursive(e) == 1
    assert qn(e) == 1
    assert courcelle(e) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31), st.integers(1, 6))
def test_recursions_match_bruteforce(seed, n):
    g = random_graph(random.Random(seed), n, loops=0.3)
    assert qlambda_recursive(g) == qlambda_bruteforce(g)
    assert qlambda_recursive(g, use_pivot=True) == qlambda_bruteforce(g)
    assert q2_recursive(g) == q2_bruteforce(g)


def test_q2_is_psi_free_restriction():
    rng = random.Random(5)
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 6))
        zero = {psi(v): 0 for v in g.vertices}
        assert q2(g) == poly.substitute(poly.as_poly(qlambda_bruteforce(g)), zero)


def test_disjoint_union_multiplies():
    a = random_graph(random.Random(1), 3, prefix="a")
    b = random_graph(random.Random(2), 3, prefix="b")
    assert qlambda_bruteforce(disjoint_union(a, b)) == qlambda_bruteforce(a) * qlambda_bruteforce(b)


def test_numeric_y_and_labels():
    g = G(("a", "b"), ("b", "c"))
    ones = specialized_labels(g, "Qahv")
    assert qlambda_bruteforce(ones, 2) == poly.substitute(avdh(g), {Y: 2})
    assert isinstance(qlambda_recursive(ones, 2), int)


def test_qn_examples():
    assert qn(G(("a", "b"))) == 2 * y
    assert qn(G(verts=["a", "b", "c", "d"])) == y ** 4
    assert qn(G(("a", "b"), ("b", "c"))) == y ** 2 + 2 * y


def test_q_examples():
    assert q_two_variable(G(verts=["v"])) == y
    assert q_two_variable(G(verts=["v"], loops=["v"])) == x
    assert q_two_variable(G(("a", "b"))) == 1 + 2 * (y - 1) + (x - 1) ** 2


def test_avdh_examples():
    assert avdh(G(verts=["v"])) == 2 + y
    assert avdh(G(verts=["a", "b", "c"])) == (2 + y) ** 3
    assert avdh(G(("a", "b"))) == 6 + 3 * y


def test_courcelle_examples():
    u, v = MPoly.var(U), MPoly.var(V)
    xw, yw = MPoly.var(xv("w")), MPoly.var(yv("w"))
    assert courcelle(G(verts=["w"])) == 1 + xw * v + yw * u
    assert courcelle(G(verts=["w"], loops=["w"])) == 1 + xw * u + yw * v


def test_specializations_agree_on_small_graphs():
    rng = random.Random(11)
    for _ in range(25):
        g = random_graph(rng, rng.randint(1, 5), loops=0.4)
        assert qn_via_qlambda(g) == qn(g)
        assert q_via_qlambda(g) == q_two_variable(g)
        assert courcelle_via_qlambda(g) == courcelle(g)
        ones = {v: 1 for w in g.vertices for v in (phi(w), chi(w), psi(w))}
        assert avdh(g) == poly.substitute(poly.as_poly(qlambda_bruteforce(g)), ones)


def test_qn_matches_interpolated_definition_with_loops():
    g = G(("a", "b"), ("b", "c"), loops=["a", "c"])
    assert qn(g) == compute(g, "qn", "bruteforce") == compute(g, "qn", "recursive")


def test_compute_dispatch():
    g = G(("a", "b"))
    for kind in ("qlambda", "q2", "qn", "q", "Qahv", "courcelle"):
        assert compute(g, kind, "bruteforce") == compute(g, kind, "recursive")
    with pytest.raises(ValueError):
        compute(g, "tutte")
    with pytest.raises(ValueError):
        qlambda(g, method="magic")


def test_caps(monkeypatch):
    big = random_graph(random.Random(0), 15)
    with pytest.raises(CapExceeded):
        qlambda_bruteforce(big)
    with pytest.raises(CapExceeded):
        qlambda_recursive(big)
    monkeypatch.setenv("INTERLACE_VERTEX_CAP", "3")
    with pytest.raises(CapExceeded):
        qlambda_bruteforce(G(("a", "b"), ("c", "d")))
    assert qlambda_bruteforce(G(("a", "b")), cap=2) is not None


def test_circle_interpretations():
    r = circle_interpretations(from_dow(["abab"]), [])
    assert r.qn_graph == r.qn_circuits == 2 * y
    for word in ("abab", "abcabc", "abacbc", "abcbdadc", "abcdabdc"):
        c = from_dow([word])
        vs = c.vertices
        for k in range(len(vs) + 1):
            for looped in combinations(vs, k):
                assert circle_interpretations(c, looped).agree, (word, looped)
