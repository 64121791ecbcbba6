import numpy as np
import pytest

from homcyl.catalog import k4_wedge_k3
from homcyl.chromatic import chromatic_number
from homcyl.cylinder import pushout
from homcyl.graphs import (
    GraphError,
    are_isomorphic,
    build_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    stiff_core,
)
from homcyl.pipeline import reduce_pipeline
from homcyl.randomgen import random_nonbipartite_graph


def test_c5_reduces_to_path():
    tr = reduce_pipeline(cycle_graph(5))
    assert len(tr.stages) == 1 and tr.terminal_kind == "bipartite"
    assert are_isomorphic(tr.terminal, path_graph(4))
    assert tr.chi_claim == 3


def test_k4_has_empty_trace():
    tr = reduce_pipeline(complete_graph(4))
    assert tr.stages == [] and tr.terminal_kind == "no-degree2-cycle-vertex"
    assert tr.chi_claim == 4 and tr.pipeline_lower is None


def test_k4_wedge_k3_removes_one_triangle_vertex():
    g = k4_wedge_k3()
    tr = reduce_pipeline(g)
    # the other triangle vertex becomes a pendant, off every cycle
    assert len(tr.stages) == 1 and tr.terminal.n == 5
    assert tr.terminal_kind == "no-degree2-cycle-vertex"
    assert all(g.degree(g.index(lab)) == 2 for lab in tr.removed)
    assert are_isomorphic(stiff_core(tr.terminal).core, complete_graph(4))
    assert tr.chi_claim == 4


def test_bipartite_input():
    tr = reduce_pipeline(cycle_graph(6))
    assert tr.stages == [] and tr.chi_claim == 2
    assert reduce_pipeline(build_graph(["a"], [])).chi_claim == 1


def test_disconnected_input_rejected():
    with pytest.raises(GraphError):
        reduce_pipeline(build_graph(["a", "b"], []))


def test_each_stage_is_a_split_of_its_graph():
    rng = np.random.default_rng(3)
    for _ in range(15):
        g = random_nonbipartite_graph(int(rng.integers(4, 10)), 0.35, rng)
        tr = reduce_pipeline(g)
        for st in tr.stages:
            assert are_isomorphic(pushout(st.spec).graph, st.graph)
        assert tr.chi_claim == chromatic_number(g)[0]


def test_trace_serialises():
    d = reduce_pipeline(cycle_graph(7)).to_dict()
    assert d["chi_claim"] == 3 and len(d["removed"]) == len(d["stages"])
