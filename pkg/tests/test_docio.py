"""The text document format, matrix and graph files, and DOT export."""

import pathlib

import pytest

from fixtures import ug1, ug6
from ugkit import (ParseError, VertexSet, core_vertex, edge_matrix,
                   format_document, format_dot, format_matrix, named_edge,
                   parse_document, parse_graph, parse_matrix, printable,
                   ray_vertex, validate)

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


# ---------------------------------------------------------------------------
# documents


def test_round_trip_is_byte_identical():
    for path in sorted(CORPUS.glob("*.ug")):
        text = path.read_text()
        g = parse_document(text)
        validate(g)
        assert format_document(g) == text, path.name


def test_parse_then_format_fixture():
    g = ug1()
    text = format_document(g)
    again = parse_document(text)
    assert again.name == "UG1"
    assert edge_matrix(again).rows == edge_matrix(g).rows


def test_ray_sets_parse():
    g = parse_document(
        "ultragraph X\nvertices: u\nray: t\n"
        "edge h: u -> ray(t) \\ { t1 t3 }\n")
    r = g.range_of(named_edge("h"))
    assert not r.contains(ray_vertex("t", 1))
    assert not r.contains(ray_vertex("t", 3))
    assert r.contains(ray_vertex("t", 2))


def test_set_union_syntax():
    g = parse_document(
        "ultragraph X\nvertices: u w\nray: t\n"
        "edge h: u -> { w } + ray(t)\n")
    r = g.range_of(named_edge("h"))
    assert r.contains(core_vertex("w"))
    assert r.contains(ray_vertex("t", 99))
    assert not r.contains(core_vertex("u"))


def test_family_syntax_round_trip():
    text = (
        "ultragraph F\n"
        "vertices: a b\n"
        "family G at a: prefix [ { b } ] cycle [ { a } { a b } ]\n"
    )
    g = parse_document(text)
    fam = g.families[0]
    assert fam.range_of(1).vertices() == (core_vertex("b"),)
    assert fam.range_of(2).vertices() == (core_vertex("a"),)
    assert fam.range_of(4).vertices() == (core_vertex("a"),)   # period 2
    assert format_document(g) == text


def test_comments_and_blank_lines_are_ignored():
    g = parse_document(
        "# a comment\nultragraph X\n\nvertices: v\n"
        "edge e: v -> { v }   # trailing comment\n")
    assert g.name == "X"
    assert g.edge_ids() == (named_edge("e"),)


def test_parse_errors_carry_a_line():
    with pytest.raises(ParseError) as exc:
        parse_document("ultragraph X\nvertices: v\nedge e: v ->\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_document("vertices: v\n")
    with pytest.raises(ParseError):
        parse_document("ultragraph X\nvertices: v\nedge e: q -> { v }\n")


def test_ray_names_must_not_end_in_digits():
    with pytest.raises(ParseError):
        parse_document("ultragraph X\nvertices: v\nray: t1\n")


# ---------------------------------------------------------------------------
# matrices and graphs


def test_matrix_round_trip():
    text = (CORPUS / "UG2.mat").read_text()
    m = parse_matrix(text)
    assert m.rows == ((1, 1), (1, 0))
    assert m.labels == ("e1", "e2")
    assert format_matrix(m) == text


def test_graph_file():
    text = (CORPUS / "GR.graph").read_text()
    _, h = parse_graph(text)
    assert set(h.vertices) == {"a", "b"}
    assert {lbl for lbl, _, _ in h.edges} == {"x", "y"}


def test_matrix_rejects_bad_entries():
    with pytest.raises(ParseError):
        parse_matrix("1\nlabels: e\n2\n")


# ---------------------------------------------------------------------------
# printable form and DOT


def test_printable_renames_tail_vertices():
    from ugkit import desingularize, truncate
    from fixtures import ug3
    t = truncate(desingularize(ug3()).result, 2)
    p = printable(t)
    text = format_document(p)
    assert "segment" not in text        # everything became core vertices
    again = parse_document(text)
    assert len(again.universe.vertices()) == len(t.universe.vertices())


def test_dot_output():
    g = ug1()
    dot = format_dot(g)
    assert dot.startswith("digraph")
    # one arrow per (edge, range vertex): e has three
    assert dot.count('label="e"') == 3
    g = ug6()
    dot = format_dot(g)
    assert "ray(t)" in dot
    assert "\\\\" in dot or "t1" in dot   # the excluded point is shown
