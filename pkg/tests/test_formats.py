import json

import pytest
from hypothesis import given

from conftest import graphs, specs
from homcyl.catalog import apex_path_spec, looped_point_spec
from homcyl.cylinder import pushout
from homcyl.formats import (
    FormatError,
    graph_from_dict,
    graph_to_dict,
    graph_to_dot,
    graph_to_text,
    parse_dimacs,
    parse_graph,
    read_graph,
    read_spec,
    spec_from_dict,
    spec_to_dict,
)
from homcyl.graphs import are_isomorphic, cycle_graph


def test_parse_graph_with_loop_and_comments():
    g = parse_graph("graph P  # point\nv a\ne a a\n")
    assert g.name == "P" and g.n == 1 and g.has_loop(0)


@given(graphs(max_n=7, loops=True))
def test_text_round_trip(g):
    h = parse_graph(graph_to_text(g))
    assert h.labels == g.labels and h.nbr == g.nbr


@given(graphs(max_n=7, loops=True))
def test_dict_round_trip(g):
    h = graph_from_dict(json.loads(json.dumps(graph_to_dict(g))))
    assert h.labels == g.labels and h.nbr == g.nbr


@pytest.mark.parametrize(
    "text,line",
    [("v a\nq b\n", 2), ("v a\n\ne a\n", 3), ("v\n", 1)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError, match=f"line {line}"):
        parse_graph(text)


def test_header_vertex_count():
    assert graph_to_text(cycle_graph(3)).startswith("graph C3 3\n")
    assert parse_graph("graph T 2\nv a\nv b\ne a b\n").n == 2
    with pytest.raises(FormatError, match="declares 3"):
        parse_graph("graph T 3\nv a\nv b\n")
    with pytest.raises(FormatError, match="line 1"):
        parse_graph("graph T two\nv a\n")


def test_dimacs():
    g = parse_dimacs("c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
    assert are_isomorphic(g, cycle_graph(5))
    with pytest.raises(FormatError, match="line 2"):
        parse_dimacs("p edge 2 1\ne 1 3\n")
    with pytest.raises(FormatError):
        parse_dimacs("e 1 2\n")


def test_read_graph_by_suffix(tmp_path):
    g = cycle_graph(5)
    (tmp_path / "g.txt").write_text(graph_to_text(g))
    (tmp_path / "g.json").write_text(json.dumps(graph_to_dict(g)))
    (tmp_path / "g.col").write_text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert read_graph(tmp_path / "g.txt").nbr == g.nbr
    assert read_graph(tmp_path / "g.json").nbr == g.nbr
    assert read_graph(tmp_path / "g.col").num_edges == 3
    with pytest.raises(FormatError):
        read_graph(tmp_path / "missing.txt")
    (tmp_path / "bad.json").write_text("{\n  oops")
    with pytest.raises(FormatError, match="line 2"):
        read_graph(tmp_path / "bad.json")


def test_dot_lists_edges():
    dot = graph_to_dot(cycle_graph(4))
    assert dot.count("--") == 4 and dot.startswith("graph")


@pytest.mark.parametrize("make", [looped_point_spec, apex_path_spec])
def test_spec_round_trip(make, tmp_path):
    spec = make()
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(spec_to_dict(spec)))
    back = read_spec(p)
    assert back.n == spec.n
    assert are_isomorphic(pushout(back).graph, pushout(spec).graph)


@given(specs(n=3))
def test_spec_dict_round_trip(spec):
    back = spec_from_dict(json.loads(json.dumps(spec_to_dict(spec))))
    assert back.f.assignment == spec.f.assignment and back.g.assignment == spec.g.assignment


def test_spec_with_file_references(tmp_path):
    d = spec_to_dict(looped_point_spec())
    for key in "ABC":
        (tmp_path / f"{key}.txt").write_text(graph_to_text(graph_from_dict(d[key])))
        d[key] = f"{key}.txt"
    (tmp_path / "spec.json").write_text(json.dumps(d))
    assert read_spec(tmp_path / "spec.json").A.n == 2


def test_spec_errors():
    d = spec_to_dict(looped_point_spec())
    del d["g"]
    with pytest.raises(FormatError, match="missing"):
        spec_from_dict(d)
    d = spec_to_dict(looped_point_spec())
    d["f"] = [0, 7]
    with pytest.raises(FormatError):
        spec_from_dict(d)
