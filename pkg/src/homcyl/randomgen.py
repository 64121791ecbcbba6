"""Seeded random graphs and cylinder specs."""

from __future__ import annotations

import numpy as np

from .cylinder import CylinderSpec
from .graphs import Graph, GraphMap, build_graph, is_bipartite


def _rng(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def random_graph(n: int, p: float, rng, prefix: str = "v", name: str = "G") -> Graph:
    """Loopless G(n, p)."""
    rng = _rng(rng)
    labels = [f"{prefix}{i}" for i in range(n)]
    edges = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(labels, edges, name)


def random_connected_graph(n: int, p: float, rng, name: str = "G") -> Graph:
    """Random spanning tree plus independent extra edges; loopless and connected."""
    rng = _rng(rng)
    labels = [f"v{i}" for i in range(n)]
    edges = set()
    order = rng.permutation(n)
    for k in range(1, n):
        u = int(order[k])
        w = int(order[rng.integers(0, k)])
        edges.add((min(u, w), max(u, w)))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.add((i, j))
    return build_graph(labels, [(labels[i], labels[j]) for i, j in sorted(edges)], name)


def random_nonbipartite_graph(n: int, p: float, rng, name: str = "G", tries: int = 1000) -> Graph:
    rng = _rng(rng)
    for _ in range(tries):
        g = random_connected_graph(n, p, rng, name)
        if not is_bipartite(g)[0]:
            return g
    raise RuntimeError("could not draw a non-bipartite graph")


def _random_target(A: Graph, size: int, p: float, rng, prefix: str, name: str, tries: int = 200):
    """A loopless graph on ``size`` vertices with a homomorphism from A, or None."""
    for _ in range(tries):
        f = [int(x) for x in rng.integers(0, size, A.n)]
        if all(f[u] != f[v] for u, v in A.edges()):
            break
    else:
        return None
    edges = {(min(f[u], f[v]), max(f[u], f[v])) for u, v in A.edges()}
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < p:
                edges.add((i, j))
    labels = [f"{prefix}{i}" for i in range(size)]
    G = build_graph(labels, [(labels[i], labels[j]) for i, j in sorted(edges)], name)
    return G, GraphMap(A, G, tuple(f))


def random_spec(
    rng,
    max_a: int = 4,
    max_b: int = 5,
    max_c: int = 5,
    n: int = 2,
    p: float = 0.5,
    require_edge: bool = True,
) -> CylinderSpec:
    """Loopless A, B, C with random homomorphisms f: A -> B and g: A -> C."""
    rng = _rng(rng)
    while True:
        na = int(rng.integers(1, max_a + 1))
        A = random_graph(na, p, rng, prefix="a", name="A")
        if require_edge and A.num_edges == 0:
            continue
        # targets must admit a loopless image of A
        lo = 2 if A.num_edges else 1
        bf = _random_target(A, int(rng.integers(lo, max_b + 1)), p, rng, "b", "B")
        cg = _random_target(A, int(rng.integers(lo, max_c + 1)), p, rng, "c", "C")
        if bf is None or cg is None:
            continue
        return CylinderSpec(A, bf[0], cg[0], bf[1], cg[1], n)
