import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st
from networkx.utils import UnionFind

from conftest import graphs, specs
from homcyl.catalog import (
    apex_path_spec,
    complete_pair_spec,
    k4_triangle_spec,
    k4_wedge_k3,
    looped_point_reference,
    looped_point_spec,
)
from homcyl.cylinder import (
    CylinderError,
    CylinderSpec,
    abc_split,
    double_mapping_cylinder,
    homotopy_from_levels,
    map_F,
    map_Fprime,
    pushout,
    search_x_homotopy,
    shrink_map,
    universal_alpha,
    x_homotopic,
)
from homcyl.graphs import (
    GraphMap,
    are_isomorphic,
    build_graph,
    categorical_product,
    complete_graph,
    constant_map,
    cycle_graph,
    degree2_vertex_on_cycle,
    find_fold,
    identity_map,
    is_homomorphism,
    looped_interval,
    looped_vertex,
    path_graph,
)
from homcyl.randomgen import random_connected_graph


def quotient_oracle(spec):
    """Cylinder graph via networkx: glue B, A x I_n and C with a union-find."""
    A, B, C, n = spec.A, spec.B, spec.C, spec.n
    nodes = [("B", b) for b in range(B.n)] + [("C", c) for c in range(C.n)]
    nodes += [("A", a, i) for a in range(A.n) for i in range(n + 1)]
    uf = UnionFind(nodes)
    for a in range(A.n):
        uf.union(("B", spec.f(a)), ("A", a, n))
        uf.union(("C", spec.g(a)), ("A", a, 0))
    rep = {x: uf[x] for x in nodes}
    h = nx.Graph()
    h.add_nodes_from(set(rep.values()))
    for u, v in B.edges():
        h.add_edge(rep[("B", u)], rep[("B", v)])
    for u, v in C.edges():
        h.add_edge(rep[("C", u)], rep[("C", v)])
    I = looped_interval(n)
    for a, a2 in A.edges():
        for i in range(n + 1):
            for j in range(n + 1):
                if I.has_edge(i, j):
                    h.add_edge(rep[("A", a, i)], rep[("A", a2, j)])
                    h.add_edge(rep[("A", a2, i)], rep[("A", a, j)])
    return h


def nx_to_graph(h):
    idx = {v: str(k) for k, v in enumerate(h.nodes)}
    return build_graph(list(idx.values()), [(idx[u], idx[v]) for u, v in h.edges()], "O")


def test_looped_point_cylinder_is_reference():
    cyl = double_mapping_cylinder(looped_point_spec())
    assert cyl.d.n == 5
    assert are_isomorphic(cyl.d, looped_point_reference())
    assert set(cyl.d.labels) == {"a", "b", "c", "x_1", "y_1"}


def test_identity_spec_height_one():
    k2 = complete_graph(2)
    ident = identity_map(k2)
    cyl = double_mapping_cylinder(CylinderSpec(k2, k2, k2, ident, ident, 1))
    assert cyl.d.n == 4


@pytest.mark.parametrize("p,r,n", [(4, 3, 2), (4, 3, 3), (6, 5, 2), (6, 5, 4), (3, 3, 1)])
def test_complete_pair_vertex_count(p, r, n):
    cyl = double_mapping_cylinder(complete_pair_spec(p, r, n))
    assert cyl.d.n == p + r + 2 * (n - 1)


@given(specs(n=2) | specs(n=3) | specs(n=1))
def test_cylinder_matches_quotient_oracle(spec):
    cyl = double_mapping_cylinder(spec)
    assert are_isomorphic(cyl.d, nx_to_graph(quotient_oracle(spec)))
    assert is_homomorphism(cyl.j1) and is_homomorphism(cyl.j2)
    # the ends of the cylinder are glued to B and C
    for a in range(spec.A.n):
        assert cyl.vertex_of(a, spec.n) == cyl.j1(spec.f(a))
        assert cyl.vertex_of(a, 0) == cyl.j2(spec.g(a))


def test_spec_rejects_non_homomorphism():
    k2 = complete_graph(2)
    with pytest.raises(CylinderError):
        CylinderSpec(k2, k2, k2, constant_map(k2, k2, 0), identity_map(k2))


def test_spec_rejects_zero_height():
    k2 = complete_graph(2)
    with pytest.raises(CylinderError):
        CylinderSpec(k2, k2, k2, identity_map(k2), identity_map(k2), 0)


def test_pushout_examples():
    po = pushout(apex_path_spec())
    # a, b, c, d plus the two apexes
    assert po.graph.n == 6 and po.simple
    k2 = complete_graph(3)
    ident = identity_map(k2)
    assert are_isomorphic(pushout(CylinderSpec(k2, k2, k2, ident, ident)).graph, k2)
    assert are_isomorphic(pushout(k4_triangle_spec()).graph, k4_wedge_k3())


def test_abc_split_c5():
    spec = abc_split(cycle_graph(5), 0)
    A = spec.A
    assert A.degree(0) == 0
    assert are_isomorphic(A.induced_subgraph(range(1, 5)), path_graph(4))
    assert spec.B.num_edges == spec.C.num_edges == 4
    assert spec.B.has_edge(0, 1) and spec.C.has_edge(0, 4)


def test_abc_split_k4_wedge_k3_matches_catalog():
    g = k4_wedge_k3()
    c = degree2_vertex_on_cycle(g)
    spec = abc_split(g, c)
    ref = k4_triangle_spec()
    assert are_isomorphic(spec.A, ref.A)
    assert are_isomorphic(spec.B, ref.B) or are_isomorphic(spec.B, ref.C)
    assert are_isomorphic(spec.C, ref.B) or are_isomorphic(spec.C, ref.C)


def test_abc_split_rejects_bad_vertex():
    with pytest.raises(CylinderError):
        abc_split(complete_graph(4), 0)
    with pytest.raises(CylinderError):
        abc_split(path_graph(3), 1)


@given(st.integers(0, 10_000))
def test_pushout_of_split_recovers_graph(seed):
    rng = np.random.default_rng(seed)
    g = random_connected_graph(int(rng.integers(3, 9)), 0.35, rng)
    c = degree2_vertex_on_cycle(g)
    if c is None:
        return
    assert are_isomorphic(pushout(abc_split(g, c)).graph, g)


def test_alpha_with_constant_homotopy():
    spec = complete_pair_spec(4, 3, 2)
    cyl = double_mapping_cylinder(spec)
    po = pushout(spec)
    k1, k2 = po.j1, po.j2
    K = homotopy_from_levels([k1.compose(spec.f)] * 3)
    alpha = universal_alpha(cyl, k1, k2, K)
    assert alpha.compose(cyl.j1).assignment == k1.assignment
    assert alpha.compose(cyl.j2).assignment == k2.assignment


def test_alpha_into_looped_point_is_constant():
    spec = looped_point_spec()
    cyl = double_mapping_cylinder(spec)
    pt = looped_vertex()
    k1, k2 = constant_map(spec.B, pt, 0), constant_map(spec.C, pt, 0)
    K = homotopy_from_levels([constant_map(spec.A, pt, 0)] * 3)
    alpha = universal_alpha(cyl, k1, k2, K)
    assert set(alpha.assignment) == {0}


@given(specs(n=2))
def test_alpha_restricts_to_k1_k2(spec):
    po = pushout(spec)
    if not po.simple:
        return
    cyl = double_mapping_cylinder(spec)
    K = homotopy_from_levels([po.j1.compose(spec.f)] * (spec.n + 1))
    alpha = universal_alpha(cyl, po.j1, po.j2, K)
    assert alpha.compose(cyl.j1).assignment == po.j1.assignment
    assert alpha.compose(cyl.j2).assignment == po.j2.assignment


def test_shrink_identity():
    big = double_mapping_cylinder(complete_pair_spec(4, 3, 2))
    m, small = shrink_map(big, 0, 0)
    assert are_isomorphic(small.d, big.d)
    assert m.assignment == tuple(big.d.vertices)


def test_shrink_levels():
    big = double_mapping_cylinder(complete_pair_spec(4, 3, 3))
    m, small = shrink_map(big, 1, 1)
    for a in range(big.spec.A.n):
        assert m(big.vertex_of(a, 1)) == small.vertex_of(a, 0)
        assert m(big.vertex_of(a, 2)) == small.vertex_of(a, 1)


@given(specs(n=1), st.integers(0, 2), st.integers(0, 2))
def test_shrink_is_homomorphism(spec, m, k):
    big = double_mapping_cylinder(spec.with_height(spec.n + m + k))
    f, _ = shrink_map(big, m, k)
    assert is_homomorphism(f)


@given(specs(n=2))
def test_map_f_identity_and_naturality(spec):
    cyl = double_mapping_cylinder(spec)
    F = map_F(cyl, cyl, identity_map(spec.A), identity_map(spec.B), identity_map(spec.C))
    assert F.assignment == tuple(cyl.d.vertices)


def test_map_f_with_folds():
    # fold the extra vertices of K4 ∪ pendant onto K4 inside B
    spec = complete_pair_spec(4, 3, 2)
    B = spec.B
    B2 = build_graph(list(B.labels) + ["t"], B.label_edges() + [("b0", "t"), ("b1", "t")], "B2")
    f2 = GraphMap(spec.A, B2, spec.f.assignment)
    spec2 = CylinderSpec(spec.A, B2, spec.C, f2, spec.g, spec.n)
    cyl2, cyl = double_mapping_cylinder(spec2), double_mapping_cylinder(spec)
    hB = GraphMap(B2, B, tuple(range(B.n)) + (B.index("b2"),))
    F = map_F(cyl2, cyl, identity_map(spec.A), hB, identity_map(spec.C))
    assert F.compose(cyl2.j1).assignment == cyl.j1.compose(hB).assignment
    for a in range(spec.A.n):
        for i in range(spec.n + 1):
            assert F(cyl2.vertex_of(a, i)) == cyl.vertex_of(a, i)


@given(specs(n=1), st.integers(0, 2))
def test_fprime_identities_is_shrink(spec, l):
    cyl = double_mapping_cylinder(spec)
    big = double_mapping_cylinder(spec.with_height(spec.n + 2 * l))
    HB = homotopy_from_levels([spec.f])
    HC = homotopy_from_levels([spec.g])
    ident = identity_map
    Fp = map_Fprime(big, cyl, ident(spec.A), ident(spec.B), ident(spec.C), HB, HC, l)
    sm, small = shrink_map(big, l, l)
    assert are_isomorphic(small.d, cyl.d)
    assert Fp.assignment == sm.assignment
    assert is_homomorphism(Fp)
    for a in range(spec.A.n):
        for s in range(l, l + spec.n + 1):
            assert Fp(big.vertex_of(a, s)) == cyl.vertex_of(a, s - l)


def test_x_homotopic_equal_maps():
    m = identity_map(cycle_graph(5))
    K = x_homotopic(m, m)
    assert K is not None and K.r == 0


def test_x_homotopic_adjacent_constants():
    k2, I1 = complete_graph(2), looped_interval(1)
    K = x_homotopic(constant_map(k2, I1, 0), constant_map(k2, I1, 1))
    assert K is not None and K.r == 1


@given(graphs(min_n=2, max_n=6, connected=True))
def test_fold_map_homotopic_to_identity(g):
    fold = find_fold(g)
    if fold is None:
        return
    u, v = fold
    retract = GraphMap(g, g, tuple(v if x == u else x for x in g.vertices))
    K = x_homotopic(identity_map(g), retract, budget=3)
    assert K is not None
    assert K.level_map(0).assignment == tuple(g.vertices)
    assert K.level_map(K.r).assignment == retract.assignment


def test_search_proves_non_homotopic_on_small_target():
    # the two maps K2 -> K2 are not x-homotopic
    k2 = complete_graph(2)
    swap = GraphMap(k2, k2, (1, 0))
    K, status = search_x_homotopy(identity_map(k2), swap, 5, exhaustive=True)
    assert K is None and status == "not-homotopic"


def test_homotopy_levels_must_be_compatible():
    k2 = complete_graph(2)
    with pytest.raises(CylinderError):
        homotopy_from_levels([identity_map(k2), GraphMap(k2, k2, (1, 0))])


def test_product_with_interval_is_glued_cylinder_middle():
    # A x I_n embeds in the cylinder when f and g are identities
    a = cycle_graph(5)
    ident = identity_map(a)
    cyl = double_mapping_cylinder(CylinderSpec(a, a, a, ident, ident, 3))
    assert are_isomorphic(cyl.d, categorical_product(a, looped_interval(3)))
