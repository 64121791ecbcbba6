from itertools import combinations
from math import gcd

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, strategies as st

from conftest import graphs
from homcyl.complexes import SimplicialComplex, hom_complex, neighbourhood_complex, order_complex
from homcyl.graphs import complete_graph, cycle_graph
from homcyl.topology import (
    Presentation,
    TopologyError,
    cellular_chain_complex,
    chain_complex,
    connectivity_report,
    dump_triplets,
    homology,
    homology_of,
    load_triplets,
    pi1_presentation,
    smith_normal_form,
    tietze_simplify,
)

# six-vertex projective plane
RP2 = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
]


def complex_of(facets, n=None):
    n = n if n is not None else 1 + max(v for f in facets for v in f)
    return SimplicialComplex.from_facets([str(i) for i in range(n)], facets)


def bareiss_det(m):
    a = [row[:] for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinantal_factors(m):
    """Invariant factors as ratios of successive gcds of k x k minors."""
    rows, cols = len(m), len(m[0])
    d = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, bareiss_det([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        d.append(g)
    return [d[k] // d[k - 1] for k in range(1, len(d))]


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_snf_identity():
    assert smith_normal_form(np.eye(3, dtype=int)) == (3, [1, 1, 1])


def test_snf_small_examples():
    assert smith_normal_form([[2, 0], [0, 0]]) == (1, [2])
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == (3, [2, 6, 12])
    assert smith_normal_form([[0, 0], [0, 0]]) == (0, [])


@given(matrices)
def test_snf_matches_determinantal_divisors(m):
    rank, factors = smith_normal_form(m)
    want = determinantal_factors(m)
    assert factors == want
    assert rank == len(want)
    assert rank == np.linalg.matrix_rank(np.array(m, dtype=float))


@given(matrices)
def test_snf_accepts_sparse(m):
    assert smith_normal_form(sp.csc_matrix(np.array(m))) == smith_normal_form(m)


def test_boundary_of_edge():
    C = chain_complex(complex_of([(0, 1)]))
    assert C.boundary(1).toarray().ravel().tolist() == [-1, 1]


def test_hollow_triangle():
    K = complex_of([(0, 1), (1, 2), (0, 2)])
    C = chain_complex(K)
    assert smith_normal_form(C.boundary(1))[0] == 2
    assert homology(C).betti == [1, 1]


def test_projective_plane_torsion():
    h = homology_of(complex_of(RP2))
    assert h.betti == [1, 0, 0]
    assert h.torsion == [[], [2], []]


facet_lists = st.lists(st.lists(st.integers(0, 7), min_size=1, max_size=4, unique=True), min_size=1, max_size=8)


@given(facet_lists)
def test_boundary_squares_to_zero(facets):
    assert chain_complex(complex_of(facets, 8), verify=False).check()


@given(facet_lists)
def test_euler_characteristic(facets):
    K = complex_of(facets, 8)
    h = homology_of(K)
    assert sum((-1) ** k * b for k, b in enumerate(h.betti)) == K.euler_characteristic()


@given(facet_lists, st.randoms())
def test_homology_relabel_invariant(facets, rnd):
    K = complex_of(facets, 8)
    perm = list(range(8))
    rnd.shuffle(perm)
    assert homology_of(K.relabelled(perm)).key() == homology_of(K).key()


@given(facet_lists)
def test_reduced_homology_drops_one_component(facets):
    K = complex_of(facets, 8)
    full, red = homology_of(K), homology_of(K, reduced=True)
    assert red.betti[0] == full.betti[0] - 1
    assert red.betti[1:] == full.betti[1:]


@given(graphs(min_n=2, max_n=3, connected=True), graphs(min_n=2, max_n=5))
def test_cellular_matches_order_complex(T, G):
    P = hom_complex(T, G)
    if P.num_cells == 0:
        return
    C = cellular_chain_complex(P, verify=False)
    assert C.check()
    assert homology(C).key() == homology_of(order_complex(P)).key()


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cellular_sphere_ladder(n):
    h = homology_of(hom_complex(complete_graph(2), complete_graph(n)), reduced=True)
    assert h.key() == tuple([(0, ())] * (n - 2) + [(1, ())])


def test_triplet_round_trip():
    C = chain_complex(complex_of(RP2))
    M = C.boundary(2)
    back = load_triplets(dump_triplets(M))
    assert (back != M).nnz == 0 and back.shape == M.shape
    with pytest.raises(TopologyError):
        load_triplets("2 2 1\n0 x 1\n")


def test_pi1_hollow_and_solid_triangle():
    hollow = pi1_presentation(complex_of([(0, 1), (1, 2), (0, 2)]))
    assert len(hollow.generators) == 1 and hollow.relators == []
    solid = pi1_presentation(complex_of([(0, 1, 2)]))
    assert len(solid.generators) == 1 and len(solid.relators) == 1
    assert tietze_simplify(solid).is_trivial()


def test_pi1_neighbourhood_of_c5_is_free_rank_one():
    P = tietze_simplify(pi1_presentation(neighbourhood_complex(cycle_graph(5))))
    assert len(P.generators) == 1 and P.relators == []


def test_pi1_projective_plane_abelianises_to_z2():
    P = tietze_simplify(pi1_presentation(complex_of(RP2)))
    assert P.abelian_invariants() == (0, [2])


def test_cone_presentation_empties():
    cone = complex_of([(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1)])
    assert tietze_simplify(pi1_presentation(cone)).is_trivial()


@given(facet_lists)
def test_tietze_idempotent_and_preserves_abelianisation(facets):
    K = complex_of(facets, 8)
    if not K.is_connected():
        return
    P = pi1_presentation(K)
    Q = tietze_simplify(P)
    assert tietze_simplify(Q) == Q
    assert Q.abelian_invariants() == P.abelian_invariants()
    h = homology_of(K)
    assert P.abelian_invariants() == (h.betti[1] if len(h.betti) > 1 else 0, h.torsion[1] if len(h.torsion) > 1 else [])


def test_presentation_rejects_unknown_generator():
    with pytest.raises(TopologyError):
        Presentation(["a"], [(2,)])


def test_connectivity_two_points():
    rep = connectivity_report(complex_of([(0,), (1,)]))
    assert not rep.path_connected and rep.certified_conn == -1


def test_connectivity_of_sphere():
    rep = connectivity_report(order_complex(hom_complex(complete_graph(2), complete_graph(4))))
    assert rep.certified_conn == 1 and rep.certified_exact and rep.pi1_status == "trivial-certified"


def test_connectivity_of_disconnected_neighbourhood_complex():
    assert connectivity_report(neighbourhood_complex(complete_graph(2))).certified_conn == -1


def test_connectivity_of_circle():
    rep = connectivity_report(neighbourhood_complex(cycle_graph(5)))
    assert rep.certified_conn == 0 and rep.pi1_status == "nontrivial-certified"


def test_connectivity_of_empty_complex():
    assert connectivity_report(SimplicialComplex([], [])).certified_conn == -2


@given(graphs(min_n=2, max_n=3, connected=True), graphs(min_n=2, max_n=5))
def test_cellular_pi1_abelianises_to_h1(T, G):
    P = hom_complex(T, G)
    if P.num_cells == 0:
        return
    h = homology_of(P)
    if h.betti[0] != 1:
        return
    got = tietze_simplify(pi1_presentation(P)).abelian_invariants()
    want = (h.betti[1] if len(h.betti) > 1 else 0, h.torsion[1] if len(h.torsion) > 1 else [])
    assert got == want
    # same group as the subdivision, at least up to abelianisation
    assert pi1_presentation(order_complex(P)).abelian_invariants() == want


@pytest.mark.parametrize("n,conn", [(4, 1), (5, 2)])
def test_connectivity_of_hom_complex_cellular(n, conn):
    rep = connectivity_report(hom_complex(complete_graph(2), complete_graph(n)))
    assert rep.certified_conn == conn and rep.pi1_status == "trivial-certified"
