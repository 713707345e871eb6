"""Sparse multivariate polynomials with exact integer (occasionally rational) coefficients.

A monomial is a tuple of ``(VarId, exponent)`` pairs sorted by variable.
Polynomials are immutable values; arithmetic mixes freely with ``int`` and
``Fraction`` scalars.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, NamedTuple, Sequence, Tuple, Union

__all__ = [
    "VarId", "MPoly", "Y", "X", "U", "V",
    "phi", "chi", "psi", "xv", "yv",
    "parse", "from_json", "substitute", "substitute_cleared",
    "interpolate_univariate", "as_poly",
]

# per-vertex kinds, in their ordering
_VERTEX_KINDS = ("phi", "chi", "psi", "x", "y")
_GLOBAL_NAMES = ("y", "x", "u", "v")


class VarId(NamedTuple):
    """Variable identifier.

    ``group`` 0..3 are the global variables y, x, u, v; group 4 holds the
    per-vertex variables, ordered by ``(vertex, kind)``.
    """

    group: int
    vertex: str = ""
    kind: int = 0

    @property
    def name(self) -> str:
        if self.group < 4:
            return _GLOBAL_NAMES[self.group]
        return f"{_VERTEX_KINDS[self.kind]}_{self.vertex}"

    def __repr__(self) -> str:
        return self.name


Y = VarId(0)
X = VarId(1)
U = VarId(2)
V = VarId(3)


def phi(v: str) -> VarId:
    return VarId(4, v, 0)


def chi(v: str) -> VarId:
    return VarId(4, v, 1)


def psi(v: str) -> VarId:
    return VarId(4, v, 2)


def xv(v: str) -> VarId:
    return VarId(4, v, 3)


def yv(v: str) -> VarId:
    return VarId(4, v, 4)


def var_from_name(name: str) -> VarId:
    if name in _GLOBAL_NAMES:
        return VarId(_GLOBAL_NAMES.index(name))
    prefix, sep, vertex = name.partition("_")
    if not sep or not vertex or prefix not in _VERTEX_KINDS:
        raise ValueError(f"unknown variable name {name!r}")
    return VarId(4, vertex, _VERTEX_KINDS.index(prefix))


Monomial = Tuple[Tuple[VarId, int], ...]
Scalar = Union[int, Fraction]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class MPoly:
    """Immutable sparse polynomial. ``terms`` maps monomials to nonzero coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = _norm(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Scalar]) -> "MPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "MPoly":
        return cls._raw({(): _norm(c)} if c else {})

    @classmethod
    def var(cls, v: VarId, exp: int = 1) -> "MPoly":
        return cls._raw({((v, exp),): 1} if exp else {(): 1})

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), 0)

    def variables(self) -> set:
        return {v for mono in self.terms for v, _ in mono}

    def degree(self, v: VarId | None = None) -> int:
        if not self.terms:
            return -1
        if v is None:
            return max(sum(e for _, e in mono) for mono in self.terms)
        return max(dict(mono).get(v, 0) for mono in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly._raw({})
            return MPoly._raw({m: _norm(c * other) for m, c in self.terms.items()})
        other = as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other.terms) < len(self.terms):
            small, big = other, self
        else:
            small, big = self, other
        out: Dict[Monomial, Scalar] = {}
        for ma, ca in small.terms.items():
            for mb, cb in big.terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.terms.get((), 0))
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- text / JSON ----------------------------------------------------
    def sorted_terms(self):
        def key(item):
            mono = item[0]
            return (-sum(e for _, e in mono), tuple((v, -e) for v, e in mono))

        return sorted(self.terms.items(), key=key)

    def canonical_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            mag = -c if neg else c
            factors = [v.name if e == 1 else f"{v.name}^{e}" for v, e in mono]
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    __str__ = canonical_text

    def __repr__(self) -> str:
        return f"MPoly({self.canonical_text()!r})"

    def to_json(self) -> dict:
        terms = []
        for mono, c in self.sorted_terms():
            coef = c if isinstance(c, int) else str(c)
            terms.append({"coef": coef, "pows": {v.name: e for v, e in mono}})
        return {"terms": terms}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def as_poly(x) -> MPoly:
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MPoly.const(x)
    return NotImplemented


def from_json(obj: Mapping | str) -> MPoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    terms: Dict[Monomial, Scalar] = {}
    for t in obj["terms"]:
        coef = t["coef"]
        coef = Fraction(coef) if isinstance(coef, str) else coef
        mono = tuple(sorted((var_from_name(n), int(e)) for n, e in t.get("pows", {}).items() if e))
        terms[mono] = terms.get(mono, 0) + coef
    return MPoly(terms)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_.]*)|(?P<op>[-+*^()]))")


def parse(text: str) -> MPoly:
    """Parse polynomial text (the canonical form, or any +,-,*,^,() expression)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at column {pos + 1}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if not tokens:
        raise ValueError("empty polynomial text")
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None, len(text))

    def take(expected=None):
        nonlocal i
        tok = peek()
        if expected is not None and tok[1] != expected:
            raise ValueError(f"expected {expected!r} at column {tok[2] + 1}")
        i += 1
        return tok

    def expr():
        sign = 1
        if peek()[1] in ("+", "-"):
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek()[1] in ("+", "-"):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek()[1] == "*":
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek()[1] == "^":
            take()
            kind, val, col = take()
            if kind != "num" or "/" in val:
                raise ValueError(f"bad exponent at column {col + 1}")
            base = base ** int(val)
        return base

    def atom():
        kind, val, col = peek()
        if kind == "num":
            take()
            return MPoly.const(Fraction(val))
        if kind == "name":
            take()
            try:
                return MPoly.var(var_from_name(val))
            except ValueError as exc:
                raise ValueError(f"{exc} at column {col + 1}") from None
        if val == "(":
            take()
            inner = expr()
            take(")")
            return inner
        if val == "-":
            take()
            return -atom()
        raise ValueError(f"unexpected token at column {col + 1}")

    result = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input at column {tokens[i][2] + 1}")
    return result


def substitute(p: MPoly, bindings: Mapping[VarId, object]):
    """Substitute variables by polynomials or scalars.

    Returns a scalar when every variable of ``p`` is bound to a scalar.
    A non-integral rational may only be used when the result is fully
    evaluated; otherwise use :func:`substitute_cleared`.
    """
    unbound = p.variables() - set(bindings)
    scalar_only = all(isinstance(bindings[v], (int, Fraction)) for v in p.variables() & set(bindings))
    if not unbound and scalar_only:
        total: Scalar = 0
        for mono, c in p.terms.items():
            val = c
            for v, e in mono:
                val = val * bindings[v] ** e
            total += val
        return Fraction(total)
    for v in p.variables() & set(bindings):
        b = bindings[v]
        if isinstance(b, Fraction) and b.denominator != 1:
            raise ValueError(f"rational binding for {v.name} needs full evaluation or cleared form")
    cache: Dict[Tuple[VarId, int], MPoly] = {}

    def power(v, e):
        key = (v, e)
        if key not in cache:
            cache[key] = as_poly(bindings[v]) ** e
        return cache[key]

    out = MPoly()
    for mono, c in p.terms.items():
        kept = []
        factor = MPoly.const(c)
        for v, e in mono:
            if v in bindings:
                factor = factor * power(v, e)
            else:
                kept.append((v, e))
        out = out + factor * MPoly._raw({tuple(kept): 1})
    return out


def substitute_cleared(p: MPoly, var: VarId, numerator, denominator) -> Tuple[MPoly, int]:
    """Substitute ``var -> numerator/denominator`` and clear denominators.

    Returns ``(N, D)`` with ``D = deg_var(p)`` and ``N = p(var -> num/den) * den**D``.
    """
    num = as_poly(numerator)
    den = as_poly(denominator)
    top = max(p.degree(var), 0)
    num_pows = [MPoly.const(1)]
    den_pows = [MPoly.const(1)]
    for _ in range(top):
        num_pows.append(num_pows[-1] * num)
        den_pows.append(den_pows[-1] * den)
    out = MPoly()
    for mono, c in p.terms.items():
        e = 0
        rest = []
        for v, k in mono:
            if v == var:
                e = k
            else:
                rest.append((v, k))
        out = out + MPoly._raw({tuple(rest): c}) * num_pows[e] * den_pows[top - e]
    return out, top


def interpolate_univariate(points: Sequence[Tuple[Scalar, Scalar]], degree_bound: int,
                           var: VarId = Y, integral: bool = True) -> MPoly:
    """Unique polynomial of degree <= ``degree_bound`` through ``points`` (Newton form).

    Extra points beyond ``degree_bound + 1`` are checked for consistency.
    """
    pts = [(Fraction(a), Fraction(b)) for a, b in points]
    xs = [a for a, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae")
    if len(pts) < degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} points, got {len(pts)}")
    used = pts[:degree_bound + 1]
    xs = [a for a, _ in used]
    coef = [b for _, b in used]
    m = len(used)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form into monomial coefficients
    dense = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        # dense = dense * (t - xs[i]) + coef[i]
        shifted = [Fraction(0)] + dense[:-1]
        dense = [shifted[k] - xs[i] * dense[k] for k in range(m)]
        dense[0] += coef[i]
    for a, b in pts[degree_bound + 1:]:
        val = sum(c * a ** k for k, c in enumerate(dense))
        if val != b:
            raise ValueError(f"point ({a}, {b}) inconsistent with degree bound {degree_bound}")
    if integral:
        bad = [c for c in dense if c.denominator != 1]
        if bad:
            raise ValueError(f"interpolated coefficient {bad[0]} is not an integer")
    terms = {}
    for k, c in enumerate(dense):
        if c:
            terms[((var, k),) if k else ()] = c
    return MPoly(terms)


def monomial_map(p: MPoly, fn) -> MPoly:
    """Rebuild ``p`` term by term: ``fn(exponents_dict)`` returns the polynomial replacing each monomial."""
    out = MPoly()
    for mono, c in p.terms.items():
        out = out + fn(dict(mono)) * c
    return out


def product(items: Iterable):
    acc = 1
    for it in items:
        acc = acc * it
    return acc
