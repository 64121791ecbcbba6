"""Small named cylinder specs used throughout the tests and the CLI."""

from __future__ import annotations

from .cylinder import CylinderSpec
from .graphs import Graph, build_graph, complete_graph, graph_map, wedge


def looped_point_spec(n: int = 2) -> CylinderSpec:
    """K2 collapsed onto a looped vertex on one side, included as an edge on the other."""
    A = build_graph(["x", "y"], [("x", "y")], "A")
    B = build_graph(["a"], [("a", "a")], "B")
    C = build_graph(["b", "c"], [("b", "c")], "C")
    f = graph_map(A, B, {"x": "a", "y": "a"})
    g = graph_map(A, C, {"x": "b", "y": "c"})
    return CylinderSpec(A, B, C, f, g, n)


def looped_point_reference() -> Graph:
    """The five-vertex graph that the height-2 cylinder of :func:`looped_point_spec` is isomorphic to."""
    return build_graph(
        ["a", "b", "c", "p", "q"],
        [("a", "a"), ("a", "b"), ("a", "c"), ("b", "c"), ("b", "p"), ("p", "q"), ("q", "c")],
        "D",
    )


def complete_pair_spec(p: int, r: int, n: int = 2) -> CylinderSpec:
    """K_p <- K2 -> K_r with both maps inclusions of the edge {0, 1}."""
    if p < 2 or r < 2:
        raise ValueError("both complete graphs need at least two vertices")
    A = build_graph(["x", "y"], [("x", "y")], "A")
    B = complete_graph(p, prefix="b")
    C = complete_graph(r, prefix="c")
    f = graph_map(A, B, [0, 1])
    g = graph_map(A, C, [0, 1])
    return CylinderSpec(A, B, C, f, g, n)


def _k4_pendant_base() -> tuple[list[str], list[tuple[str, str]]]:
    labels = ["x", "y", "z", "u", "v", "a"]
    edges = [("x", "y"), ("x", "z"), ("x", "u"), ("y", "z"), ("y", "u"), ("z", "u"), ("u", "v")]
    return labels, edges


def k4_triangle_spec(n: int = 2) -> CylinderSpec:
    """Split of K4 wedge K3 at the triangle vertex a: B keeps va, C keeps ua."""
    labels, edges = _k4_pendant_base()
    A = build_graph(labels, edges, "A")
    B = build_graph(labels, edges + [("v", "a")], "B")
    C = build_graph(labels, edges + [("u", "a")], "C")
    ident = list(range(len(labels)))
    return CylinderSpec(A, B, C, graph_map(A, B, ident), graph_map(A, C, ident), n)


def k4_wedge_k3() -> Graph:
    labels, edges = _k4_pendant_base()
    return build_graph(labels, edges + [("v", "a"), ("u", "a")], "K4vK3")


def k4_wedge_k3_by_wedge() -> Graph:
    return wedge(complete_graph(4), complete_graph(3, prefix="t"), 3, 0, name="K4vK3")


def apex_path_spec(n: int = 2) -> CylinderSpec:
    """A 4-path glued into K4 with an apex x over a,b, and into itself with an apex y over all four.

    The pushout contains K5 while the cylinder graph is 4-colourable.
    """
    path = [("a", "d"), ("d", "c"), ("c", "b")]
    A = build_graph(["a", "b", "c", "d"], path, "A")
    k4 = [(u, v) for i, u in enumerate("abcd") for v in "abcd"[i + 1:]]
    B = build_graph(["a", "b", "c", "d", "x"], k4 + [("x", "a"), ("x", "b")], "B")
    C = build_graph(["a", "b", "c", "d", "y"], path + [("y", w) for w in "abcd"], "C")
    ident = [0, 1, 2, 3]
    return CylinderSpec(A, B, C, graph_map(A, B, ident), graph_map(A, C, ident), n)


NAMED_SPECS = {
    "looped-point": looped_point_spec,
    "k4-triangle": k4_triangle_spec,
    "apex-path": apex_path_spec,
}
