import numpy as np
import pytest
from hypothesis import given, settings

from conftest import specs
from homcyl.appendix import (
    AppendixError,
    CylinderParts,
    audit_appendix,
    classify_cell,
    delta_hom,
    faulty_tail,
    has_pure_face,
    lemma_obs_audit,
    pure_faces,
    strata,
)
from homcyl.catalog import complete_pair_spec, looped_point_spec
from homcyl.complexes import hom_complex, make_cell
from homcyl.cylinder import double_mapping_cylinder
from homcyl.graphs import complete_graph, cycle_graph
from homcyl.suite import tail_specs
from homcyl.topology import homology_of

K2 = complete_graph(2)


def test_strata_looped_point():
    cyl = double_mapping_cylinder(looped_point_spec())
    s = strata(cyl).labels(cyl.d)
    assert s == {"X": [], "Y": ["a"], "Z": ["x_1", "y_1"], "Zprime": ["b", "c"]}


def test_strata_complete_pair_sizes():
    cyl = double_mapping_cylinder(complete_pair_spec(6, 5, 3))
    s = strata(cyl)
    sizes = [bin(m).count("1") for m in (s.X, s.Y, s.Z, s.Zprime)]
    # X = K6 minus the two images of A; Z is the level below the B end
    assert sizes == [4, 2, 2, 7]


@given(specs(n=2) | specs(n=3))
def test_strata_partition_vertices(spec):
    cyl = double_mapping_cylinder(spec)
    s = strata(cyl)
    masks = [s.X, s.Y, s.Z, s.Zprime]
    assert sum(masks) == cyl.d.all_mask
    for i in range(4):
        for j in range(i + 1, 4):
            assert masks[i] & masks[j] == 0


def test_classify_non_maximal_cells():
    cyl = double_mapping_cylinder(looped_point_spec())
    aa = make_cell(K2, cyl.d, [["a"], ["a"]])
    bc = make_cell(K2, cyl.d, [["b"], ["c"]])
    assert classify_cell(aa, cyl, check=False).kind == "pure-B"
    assert classify_cell(bc, cyl, check=False).kind == "pure-C"
    assert pure_faces(bc, cyl) == {"AxI", "C"}
    with pytest.raises(AppendixError):
        classify_cell(bc, cyl)


def test_near_b_audit_on_catalog_specs():
    for spec in (looped_point_spec(), complete_pair_spec(4, 3, 3), complete_pair_spec(6, 5, 3)):
        assert lemma_obs_audit(double_mapping_cylinder(spec), K2)["ok"]


def test_delta_hom_complete_pair():
    cyl = double_mapping_cylinder(complete_pair_spec(4, 3, 3))
    P = hom_complex(K2, cyl.d)
    D = delta_hom(K2, cyl, P)
    assert D.num_cells < P.num_cells
    assert tuple(b for b, _ in homology_of(D).key()) == (1, 2, 1)


def test_audit_complete_pair_histogram():
    cyl = double_mapping_cylinder(complete_pair_spec(4, 3, 3))
    a = audit_appendix(K2, cyl)
    assert a.histogram["mixed-6"] == 0 and a.histogram["unclassified"] == 0
    assert a.violations == [] and a.betti_match
    # K2 admits no faulty cells
    assert a.faulty == 0


def test_delta_hom_rejects_low_height():
    cyl = double_mapping_cylinder(complete_pair_spec(4, 3, 1))
    with pytest.raises(AppendixError):
        delta_hom(cycle_graph(6), cyl)


@pytest.mark.parametrize("k", range(len(tail_specs())))
def test_faulty_tails(k):
    T, spec = tail_specs()[k]
    cyl = double_mapping_cylinder(spec)
    P = hom_complex(T, cyl.d)
    parts = CylinderParts(cyl)
    faulty = [c for c in P.maximal_cells if classify_cell(c, cyl, parts).faulty]
    assert faulty
    for cell in faulty[:12]:
        tail = faulty_tail(cell, cyl, P)
        assert tail.complete and tail.consecutive_meet()
        assert all(c.is_valid() for c in tail.cells)


def test_faulty_tail_refuses_k2():
    cyl = double_mapping_cylinder(complete_pair_spec(4, 3, 3))
    P = hom_complex(K2, cyl.d)
    with pytest.raises(AppendixError):
        faulty_tail(P.maximal_cells[0], cyl, P)


@settings(max_examples=15)
@given(specs(n=2, max_a=2, max_b=3, max_c=3))
def test_every_maximal_cell_has_pure_face(spec):
    cyl = double_mapping_cylinder(spec)
    P = hom_complex(K2, cyl.d)
    parts = CylinderParts(cyl)
    assert all(has_pure_face(c, cyl, parts) for c in P.maximal_cells)


def test_audit_json():
    import json

    a = audit_appendix(K2, double_mapping_cylinder(looped_point_spec()))
    d = json.loads(a.to_json())
    assert d["betti_match"] and np.sum(list(d["histogram"].values())) > 0
