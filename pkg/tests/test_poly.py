import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qlambda import poly
from qlambda.poly import MPoly, X, Y, chi, interpolate_univariate, parse, phi, psi, substitute, substitute_cleared

y = MPoly.var(Y)
x = MPoly.var(X)


def test_canonical_text_examples():
    assert (2 * y).canonical_text() == "2*y"
    assert MPoly().canonical_text() == "0"
    assert (y ** 2 + 2 * y).canonical_text() == "y^2 + 2*y"
    assert (x ** 2 - 2 * x + 2 * y).canonical_text() == "x^2 + 2*y - 2*x"
    assert (MPoly.var(phi("a")) * MPoly.var(chi("b"))).canonical_text() == "phi_a*chi_b"
    assert (-y + 1).canonical_text() == "-y + 1"
    assert MPoly.const(Fraction(1, 2)).canonical_text() == "1/2"


def test_variable_names_round_trip():
    for v in (Y, X, poly.U, poly.V, phi("a_1"), psi("b.2"), poly.xv("c"), poly.yv("c")):
        assert poly.var_from_name(v.name) == v
    with pytest.raises(ValueError):
        poly.var_from_name("zeta")


def test_arithmetic_and_scalars():
    p = (y + 1) * (y - 1)
    assert p == y ** 2 - 1
    assert p - p == 0
    assert MPoly.const(3) == 3
    assert (y ** 0) == 1
    assert (y * Fraction(1, 2)).terms[((Y, 1),)] == Fraction(1, 2)
    assert (2 * y * Fraction(1, 2)).terms[((Y, 1),)] == 1
    assert isinstance((2 * y * Fraction(1, 2)).terms[((Y, 1),)], int)


def test_degree_and_variables():
    p = parse("phi_a*y^2 + chi_b")
    assert p.degree() == 3
    assert p.degree(Y) == 2
    assert p.variables() == {phi("a"), Y, chi("b")}
    assert MPoly().degree() == -1


def test_parse_examples():
    assert parse("2*y") == 2 * y
    assert parse("(y - 1)^2") == y ** 2 - 2 * y + 1
    assert parse("1/2*x") == x * Fraction(1, 2)
    assert parse("-x + 3") == 3 - x
    with pytest.raises(ValueError):
        parse("y +")
    with pytest.raises(ValueError):
        parse("y ^ x")


monomials = st.dictionaries(st.sampled_from([Y, X, phi("a"), chi("b")]), st.integers(1, 3), max_size=3)
coefs = st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4))
polys = st.lists(st.tuples(coefs, monomials), max_size=5).map(
    lambda items: sum((MPoly._raw({tuple(sorted(m.items())): 1}) * c for c, m in items), MPoly()))


@given(polys)
def test_text_round_trip(p):
    assert parse(p.canonical_text()) == p


@given(polys)
def test_json_round_trip(p):
    assert poly.from_json(json.loads(p.dumps())) == p
    assert poly.from_json(p.to_json()) == p


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)


def test_hash_consistent_with_eq():
    assert hash(parse("y + 1")) == hash(y + 1)
    assert len({parse("y*x"), x * y}) == 1


def test_substitute():
    p = parse("y^2 + phi_a*y")
    assert substitute(p, {Y: 2, phi("a"): 3}) == 10
    assert substitute(p, {Y: y - 1}) == (y - 1) ** 2 + MPoly.var(phi("a")) * (y - 1)
    assert substitute(p, {Y: Fraction(1, 2), phi("a"): 0}) == Fraction(1, 4)
    with pytest.raises(ValueError):
        substitute(p, {Y: Fraction(1, 2)})


def test_substitute_cleared():
    # y -> (y-1)/(x-1) on y^2 + y gives (y-1)^2 + (y-1)(x-1) over (x-1)^2
    n, d = substitute_cleared(y ** 2 + y, Y, y - 1, x - 1)
    assert d == 2
    assert n == (y - 1) ** 2 + (y - 1) * (x - 1)


def test_interpolation():
    target = parse("3*y^3 - y + 7")
    pts = [(t, poly.substitute(target, {Y: t})) for t in range(6)]
    assert interpolate_univariate(pts, 5) == target
    with pytest.raises(ValueError):
        interpolate_univariate(pts[:3], 5)
    with pytest.raises(ValueError):
        interpolate_univariate([(0, 1), (0, 2)], 1)
    half = [(t, Fraction(t, 2)) for t in range(3)]
    assert interpolate_univariate(half, 2, integral=False) == y * Fraction(1, 2)
    with pytest.raises(ValueError):
        interpolate_univariate(half, 2)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=7))
def test_interpolation_recovers_integer_polys(cs):
    target = sum((c * y ** k for k, c in enumerate(cs)), MPoly())
    pts = [(t, substitute(target, {Y: t})) for t in range(len(cs) + 2)]
    assert interpolate_univariate(pts, len(cs) + 1) == target


def test_monomial_map_and_product():
    p = parse("x^2*y + y")
    q = poly.monomial_map(p, lambda e: MPoly.var(Y, e.get(Y, 0)))
    assert q == 2 * y
    assert poly.product([y, y + 1, 2]) == 2 * y ** 2 + 2 * y
    assert poly.product([]) == 1
