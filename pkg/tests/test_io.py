import json

import pytest

from qlambda.graph import natural_labels
from qlambda.io import ParseError, graph_to_edgelist, graph_to_json, parse_edgelist, parse_graph_json, parse_label_file
from qlambda.poly import MPoly, Y
from fractions import Fraction


def test_edgelist_basic():
    g = parse_edgelist("# a path\na b\nb c  # trailing\n\nloop c\nd\n")
    assert g.vertices == ("a", "b", "c", "d")
    assert g.edges() == [("a", "b"), ("b", "c")]
    assert g.looped_vertices() == ["c"]


@pytest.mark.parametrize("text,line,col", [
    ("a b\nb c c\n", 2, 5),
    ("a a\n", 1, 3),
    ("loop\n", 1, 1),
])
def test_edgelist_errors_name_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_edgelist(text)
    assert exc.value.line == line and exc.value.column == col
    assert f"line {line}, column {col}" in str(exc.value)


def test_edgelist_bad_id():
    with pytest.raises(ParseError):
        parse_edgelist("a b-c\n")


def test_graph_json_and_round_trip():
    doc = {"vertices": [{"id": "a", "loop": True, "labels": {"phi": 1, "chi": "y+1", "psi": "1/2"}}, "b"],
           "edges": [["a", "b"]]}
    g = parse_graph_json(json.dumps(doc))
    assert g.label("a") == (1, MPoly.var(Y) + 1, Fraction(1, 2))
    assert g.label("b") == natural_labels("b")
    assert g.looped_vertices() == ["a"]
    assert parse_graph_json(json.dumps(graph_to_json(g))) == g
    assert parse_edgelist(graph_to_edgelist(g)).edges() == g.edges()


def test_graph_json_errors():
    with pytest.raises(ParseError) as exc:
        parse_graph_json('{"vertices": [')
    assert exc.value.line == 1
    with pytest.raises(ParseError):
        parse_graph_json('{"vertices": [{"id": "a", "labels": {"rho": 1}}]}')
    with pytest.raises(ParseError):
        parse_graph_json('{"vertices": ["a"], "edges": [["a", "z"]]}')
    with pytest.raises(ParseError):
        parse_graph_json('{"vertices": [{"id": "a", "labels": {"phi": true}}]}')


def test_label_file_forms():
    a = parse_label_file('{"a": {"chi": 0}}')
    assert a["a"] == (natural_labels("a")[0], 0, natural_labels("a")[2])
    b = parse_label_file('{"vertices": [{"id": "a", "labels": {"psi": 2}}]}')
    assert b["a"][2] == 2
