"""Readers and writers for the graph, label and DOW file formats."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from . import poly
from .graph import CLASSES, LabeledGraph, natural_labels


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def parse_label_value(value, line: int = 0, column: int = 0):
    """A label is an integer, a ``"p/q"`` rational, or polynomial text."""
    if isinstance(value, bool):
        raise ParseError("boolean is not a label value", line, column)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator() if not value.is_integer() else int(value)
    if isinstance(value, str):
        try:
            p = poly.parse(value)
        except ValueError as exc:
            raise ParseError(f"bad label {value!r}: {exc}", line, column) from None
        return p.constant_value() if p.is_constant() else p
    raise ParseError(f"unsupported label value {value!r}", line, column)


def parse_edgelist(text: str) -> LabeledGraph:
    """Lines ``u v`` (edge), ``loop u`` (loop) or ``u`` (isolated vertex); ``#`` starts a comment."""
    order: Dict[str, None] = {}
    edges = []
    loops = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = line.split()
        if not toks:
            continue
        cols = []
        pos = 0
        for tok in toks:
            pos = raw.index(tok, pos)
            cols.append(pos + 1)
            pos += len(tok)
        if toks[0] == "loop":
            if len(toks) != 2:
                raise ParseError("expected 'loop <vertex>'", lineno, cols[0])
            order.setdefault(toks[1])
            loops.append(toks[1])
        elif len(toks) == 1:
            order.setdefault(toks[0])
        elif len(toks) == 2:
            a, b = toks
            if a == b:
                raise ParseError(f"self-edge {a} {b}; use 'loop {a}'", lineno, cols[1])
            order.setdefault(a)
            order.setdefault(b)
            edges.append((a, b))
        else:
            raise ParseError(f"unexpected token {toks[2]!r}", lineno, cols[2])
    try:
        return LabeledGraph.from_edges(list(order), edges, loops)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _labels_from_obj(obj, where: str) -> Tuple:
    if not isinstance(obj, Mapping):
        raise ParseError(f"{where}: labels must be an object with phi/chi/psi")
    unknown = set(obj) - set(CLASSES)
    if unknown:
        raise ParseError(f"{where}: unknown label keys {sorted(unknown)}")
    return tuple(obj[k] if k in obj else None for k in CLASSES)


def parse_graph_json(text: str) -> LabeledGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, Mapping) or "vertices" not in obj:
        raise ParseError("graph JSON needs a 'vertices' list")
    verts = []
    loops = []
    labels = {}
    for k, entry in enumerate(obj["vertices"]):
        if isinstance(entry, str):
            entry = {"id": entry}
        if not isinstance(entry, Mapping) or "id" not in entry:
            raise ParseError(f"vertex entry {k} needs an 'id'")
        v = str(entry["id"])
        verts.append(v)
        if entry.get("loop", False):
            loops.append(v)
        if "labels" in entry:
            raw = _labels_from_obj(entry["labels"], f"vertex {v}")
            nat = natural_labels(v)
            labels[v] = tuple(nat[i] if r is None else parse_label_value(r) for i, r in enumerate(raw))
    edges = []
    for k, e in enumerate(obj.get("edges", [])):
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise ParseError(f"edge entry {k} must be a pair")
        edges.append((str(e[0]), str(e[1])))
    try:
        return LabeledGraph.from_edges(verts, edges, loops, labels or None)
    except (KeyError, ValueError) as exc:
        raise ParseError(str(exc)) from None


def parse_label_file(text: str) -> Dict[str, Tuple]:
    """Either ``{"a": {"phi": ..., "chi": ..., "psi": ...}}`` or a graph-JSON ``vertices`` list.

    Missing keys fall back to the vertex's natural indeterminate.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if isinstance(obj, Mapping) and "vertices" in obj:
        obj = {str(e["id"]): e.get("labels", {}) for e in obj["vertices"] if isinstance(e, Mapping)}
    if not isinstance(obj, Mapping):
        raise ParseError("label file must be a JSON object")
    out = {}
    for v, raw in obj.items():
        triple = _labels_from_obj(raw, f"vertex {v}")
        nat = natural_labels(v)
        out[v] = tuple(nat[i] if r is None else parse_label_value(r) for i, r in enumerate(triple))
    return out


def _label_to_json(x):
    if isinstance(x, poly.MPoly):
        return x.canonical_text()
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def graph_to_json(g: LabeledGraph) -> dict:
    return {
        "vertices": [
            {"id": v, "loop": g.is_looped(v),
             "labels": dict(zip(CLASSES, (_label_to_json(x) for x in g.labels[i])))}
            for i, v in enumerate(g.vertices)
        ],
        "edges": [list(e) for e in g.edges()],
    }


def graph_to_edgelist(g: LabeledGraph) -> str:
    lines = []
    touched = set()
    for a, b in g.edges():
        lines.append(f"{a} {b}")
        touched.update((a, b))
    for v in g.vertices:
        if v not in touched:
            lines.append(v)
    for v in g.looped_vertices():
        lines.append(f"loop {v}")
    return "\n".join(lines) + "\n"
