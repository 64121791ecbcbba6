"""Finite undirected graphs with loops, homomorphisms, products and folds.

Vertices are the integers ``0..n-1``; every vertex carries a unique string
label.  Neighbourhoods are stored as Python integer bitmasks, so a loop at
``v`` simply means bit ``v`` is set in ``nbr[v]``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np


class GraphError(ValueError):
    """Malformed graph or graph-map input."""


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    labels: tuple[str, ...]
    nbr: tuple[int, ...]
    name: str = "G"
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.labels) != len(self.nbr):
            raise GraphError("labels and adjacency differ in length")
        index = {lab: i for i, lab in enumerate(self.labels)}
        if len(index) != len(self.labels):
            raise GraphError(f"duplicate vertex labels in graph {self.name!r}")
        for u, mask in enumerate(self.nbr):
            if mask >> len(self.labels):
                raise GraphError("adjacency refers to a vertex out of range")
            for v in bits(mask):
                if not (self.nbr[v] >> u) & 1:
                    raise GraphError("adjacency is not symmetric")
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> range:
        return range(len(self.labels))

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label!r} in graph {self.name!r}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.nbr[u] >> v) & 1)

    def has_loop(self, v: int) -> bool:
        return self.has_edge(v, v)

    @property
    def has_loops(self) -> bool:
        return any(self.has_loop(v) for v in self.vertices)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.nbr[v]))

    def degree(self, v: int) -> int:
        return popcount(self.nbr[v])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as pairs ``u <= v`` (loops included), sorted."""
        return [(u, v) for u in self.vertices for v in bits(self.nbr[u]) if u <= v]

    @property
    def num_edges(self) -> int:
        return len(self.edges())

    def common_neighbours(self, mask: int) -> int:
        """Bitmask of vertices adjacent to every vertex in ``mask`` (all vertices if empty)."""
        out = self.all_mask
        for v in bits(mask):
            out &= self.nbr[v]
        return out

    def adjacency_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            mat[u, v] = mat[v, u] = True
        return mat

    def label_edges(self) -> list[tuple[str, str]]:
        return [(self.labels[u], self.labels[v]) for u, v in self.edges()]

    def induced_subgraph(self, keep: Iterable[int], name: str | None = None) -> "Graph":
        keep = sorted(set(keep))
        pos = {v: i for i, v in enumerate(keep)}
        nbr = []
        for v in keep:
            nbr.append(sum(1 << pos[w] for w in bits(self.nbr[v]) if w in pos))
        return Graph(tuple(self.labels[v] for v in keep), tuple(nbr), name or self.name)

    def delete_vertex(self, v: int, name: str | None = None) -> "Graph":
        return self.induced_subgraph((w for w in self.vertices if w != v), name)

    def delete_edges(self, pairs: Iterable[tuple[int, int]], name: str | None = None) -> "Graph":
        nbr = list(self.nbr)
        for u, v in pairs:
            nbr[u] &= ~(1 << v)
            nbr[v] &= ~(1 << u)
        return Graph(self.labels, tuple(nbr), name or self.name)

    def add_edges(self, pairs: Iterable[tuple[int, int]], name: str | None = None) -> "Graph":
        nbr = list(self.nbr)
        for u, v in pairs:
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        return Graph(self.labels, tuple(nbr), name or self.name)

    def renamed(self, name: str) -> "Graph":
        return Graph(self.labels, self.nbr, name)

    def __str__(self) -> str:
        return f"Graph({self.name}, n={self.n}, m={self.num_edges})"


def build_graph(labels: Sequence[str], edges: Iterable[tuple[str, str]], name: str = "G") -> Graph:
    """Build a graph from vertex labels and label pairs; repeated edges collapse."""
    labels = [str(lab) for lab in labels]
    if not labels:
        raise GraphError("a graph needs at least one vertex")
    index: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise GraphError(f"duplicate vertex label {lab!r}")
        index[lab] = i
    nbr = [0] * len(labels)
    for a, b in edges:
        try:
            u, v = index[str(a)], index[str(b)]
        except KeyError as exc:
            raise GraphError(f"edge endpoint {exc.args[0]!r} is not a listed vertex") from None
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    return Graph(tuple(labels), tuple(nbr), name)


def graph_from_masks(labels: Sequence[str], nbr: Sequence[int], name: str = "G") -> Graph:
    return Graph(tuple(labels), tuple(int(m) for m in nbr), name)


# --- standard families -------------------------------------------------------

def complete_graph(n: int, prefix: str = "") -> Graph:
    labels = [f"{prefix}{i}" for i in range(n)]
    full = (1 << n) - 1
    return Graph(tuple(labels), tuple(full & ~(1 << i) for i in range(n)), f"K{n}")


def cycle_graph(n: int, prefix: str = "") -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    edges = [(f"{prefix}{i}", f"{prefix}{(i + 1) % n}") for i in range(n)]
    return build_graph([f"{prefix}{i}" for i in range(n)], edges, f"C{n}")


def path_graph(n: int, prefix: str = "") -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges)."""
    edges = [(f"{prefix}{i}", f"{prefix}{i + 1}") for i in range(n - 1)]
    return build_graph([f"{prefix}{i}" for i in range(n)], edges, f"P{n}")


def looped_vertex(label: str = "o") -> Graph:
    return Graph((label,), (1,), "pt")


def looped_interval(n: int) -> Graph:
    """Reflexive path on ``0..n``: consecutive vertices adjacent, a loop everywhere."""
    if n < 1:
        raise GraphError("looped interval needs n >= 1")
    labels = [str(i) for i in range(n + 1)]
    nbr = []
    for i in range(n + 1):
        mask = 1 << i
        if i > 0:
            mask |= 1 << (i - 1)
        if i < n:
            mask |= 1 << (i + 1)
        nbr.append(mask)
    return Graph(tuple(labels), tuple(nbr), f"I{n}")


def disjoint_union(g: Graph, h: Graph, name: str | None = None) -> Graph:
    labels = [f"{g.name}.{x}" for x in g.labels] + [f"{h.name}.{x}" for x in h.labels]
    nbr = list(g.nbr) + [m << g.n for m in h.nbr]
    return Graph(tuple(labels), tuple(nbr), name or f"{g.name}+{h.name}")


def wedge(g: Graph, h: Graph, gv: int, hv: int, name: str | None = None) -> Graph:
    """Glue ``h`` onto ``g`` by identifying ``hv`` with ``gv``.

    Vertices of ``g`` keep their labels and indices; the remaining vertices of
    ``h`` follow, relabelled ``h.<label>`` when a label clashes.
    """
    rest = [v for v in h.vertices if v != hv]
    labels = list(g.labels)
    taken = set(labels)
    pos = {hv: gv}
    for v in rest:
        lab = h.labels[v]
        if lab in taken:
            lab = f"{h.name}.{lab}"
        taken.add(lab)
        pos[v] = len(labels)
        labels.append(lab)
    nbr = list(g.nbr) + [0] * len(rest)
    for u, v in h.edges():
        a, b = pos[u], pos[v]
        nbr[a] |= 1 << b
        nbr[b] |= 1 << a
    return Graph(tuple(labels), tuple(nbr), name or f"{g.name}v{h.name}")


# --- maps ----------------------------------------------------------------------

@dataclass(frozen=True)
class GraphMap:
    domain: Graph
    codomain: Graph
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.domain.n:
            raise GraphError("assignment must be total on the domain")
        for w in self.assignment:
            if not 0 <= w < self.codomain.n:
                raise GraphError("assignment refers to a vertex outside the codomain")

    def __call__(self, v: int) -> int:
        return self.assignment[v]

    def is_homomorphism(self) -> bool:
        return is_homomorphism(self)

    def compose(self, inner: "GraphMap") -> "GraphMap":
        """``self ∘ inner``."""
        return GraphMap(inner.domain, self.codomain, tuple(self.assignment[w] for w in inner.assignment))

    def image_mask(self) -> int:
        out = 0
        for w in self.assignment:
            out |= 1 << w
        return out

    def as_labels(self) -> dict[str, str]:
        return {self.domain.labels[v]: self.codomain.labels[w] for v, w in enumerate(self.assignment)}


def graph_map(domain: Graph, codomain: Graph, table: dict[str, str] | Sequence[int]) -> GraphMap:
    """Build a map from a label table or an index sequence."""
    if isinstance(table, dict):
        missing = [lab for lab in domain.labels if lab not in table]
        if missing:
            raise GraphError(f"map is not total: no image for {missing}")
        return GraphMap(domain, codomain, tuple(codomain.index(table[lab]) for lab in domain.labels))
    return GraphMap(domain, codomain, tuple(int(w) for w in table))


def identity_map(g: Graph) -> GraphMap:
    return GraphMap(g, g, tuple(g.vertices))


def constant_map(domain: Graph, codomain: Graph, w: int) -> GraphMap:
    return GraphMap(domain, codomain, (w,) * domain.n)


def is_homomorphism(m: GraphMap) -> bool:
    """True iff every edge of the domain, loops included, lands on an edge."""
    cod = m.codomain
    a = m.assignment
    return all(cod.has_edge(a[u], a[v]) for u, v in m.domain.edges())


# --- products ------------------------------------------------------------------

def categorical_product(g: Graph, h: Graph, name: str | None = None) -> Graph:
    """Tensor product: ``(u,v) ~ (u',v')`` iff ``u ~ u'`` in g and ``v ~ v'`` in h.

    Vertex ``(u, v)`` gets index ``u * h.n + v``.
    """
    labels = [f"({a},{b})" for a in g.labels for b in h.labels]
    nbr = []
    for u in g.vertices:
        for v in h.vertices:
            mask = 0
            for u2 in bits(g.nbr[u]):
                mask |= h.nbr[v] << (u2 * h.n)
            nbr.append(mask)
    return Graph(tuple(labels), tuple(nbr), name or f"{g.name}x{h.name}")


def product_projections(g: Graph, h: Graph, prod: Graph | None = None) -> tuple[GraphMap, GraphMap]:
    prod = prod or categorical_product(g, h)
    first = GraphMap(prod, g, tuple(u for u in g.vertices for _ in h.vertices))
    second = GraphMap(prod, h, tuple(v for _ in g.vertices for v in h.vertices))
    return first, second


# --- folds ---------------------------------------------------------------------

@dataclass(frozen=True)
class FoldSequence:
    start: Graph
    core: Graph
    steps: tuple[tuple[str, str], ...]
    retraction: GraphMap

    def __len__(self) -> int:
        return len(self.steps)


def find_fold(g: Graph) -> tuple[int, int] | None:
    """First pair ``(removed, absorbing)`` in lexicographic index order with N(removed) ⊆ N(absorbing)."""
    for u in g.vertices:
        nu = g.nbr[u]
        for v in g.vertices:
            if v != u and nu & ~g.nbr[v] == 0:
                return u, v
    return None


def stiff_core(g: Graph) -> FoldSequence:
    """Fold ``g`` until stiff, recording each step and the composite retraction."""
    current = g
    alive = list(g.vertices)
    image = list(g.vertices)
    steps = []
    while True:
        pair = find_fold(current)
        if pair is None:
            break
        u, v = pair
        ou, ov = alive[u], alive[v]
        steps.append((g.labels[ou], g.labels[ov]))
        image = [ov if w == ou else w for w in image]
        current = current.delete_vertex(u)
        del alive[u]
    pos = {w: i for i, w in enumerate(alive)}
    retraction = GraphMap(g, current, tuple(pos[w] for w in image))
    return FoldSequence(g, current.renamed(f"core({g.name})"), tuple(steps), retraction)


# --- structural predicates ----------------------------------------------------

def components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in g.vertices:
        if (seen >> s) & 1:
            continue
        comp_mask = 1 << s
        frontier = comp_mask
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.nbr[v]
            frontier = nxt & ~comp_mask
            comp_mask |= nxt
        seen |= comp_mask
        comps.append(list(bits(comp_mask)))
    return comps


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in bits(g.nbr[u]):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diameter(g: Graph) -> int:
    best = 0
    for s in g.vertices:
        dist = bfs_distances(g, s)
        if min(dist) < 0:
            raise GraphError(f"graph {g.name!r} is disconnected; diameter undefined")
        best = max(best, max(dist))
    return best


def is_bipartite(g: Graph) -> tuple[bool, list[int] | None]:
    """2-colouring test; on failure returns an odd cycle ``[v0, ..., vk]`` (edge vk-v0 implied)."""
    colour = [-1] * g.n
    parent = [-1] * g.n
    for root in g.vertices:
        if colour[root] >= 0:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in bits(g.nbr[u]):
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False, _odd_cycle(parent, u, w)
    return True, None


def _odd_cycle(parent: list[int], u: int, w: int) -> list[int]:
    if u == w:
        return [u]

    def to_root(v):
        path = [v]
        while parent[path[-1]] >= 0:
            path.append(parent[path[-1]])
        return path

    pu, pw = to_root(u), to_root(w)
    common = set(pu) & set(pw)
    pu = pu[: next(i for i, v in enumerate(pu) if v in common) + 1]
    pw = pw[: next(i for i, v in enumerate(pw) if v in common) + 1]
    # u .. lca .. w; the edge w-u closes the cycle
    return pu + pw[::-1][1:]


def is_p4_free(g: Graph) -> bool:
    """True iff no 4 vertices induce the path with three edges."""
    for quad in itertools.combinations(g.vertices, 4):
        degs = []
        m = 0
        for a in quad:
            d = sum(1 for b in quad if b != a and g.has_edge(a, b))
            degs.append(d)
            m += d
        if m == 6 and sorted(degs) == [1, 1, 2, 2]:
            sub = g.induced_subgraph(quad)
            if is_connected(sub):
                return False
    return True


def degree2_vertex_on_cycle(g: Graph) -> int | None:
    """Least-index loopless vertex of degree 2 whose two neighbours stay connected without it."""
    for c in g.vertices:
        if g.has_loop(c) or g.degree(c) != 2:
            continue
        a, b = g.neighbors(c)
        if connected_avoiding(g, a, b, avoid=c):
            return c
    return None


def connected_avoiding(g: Graph, s: int, t: int, avoid: int) -> bool:
    allowed = g.all_mask & ~(1 << avoid)
    reached = 1 << s
    frontier = reached
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.nbr[v]
        nxt &= allowed & ~reached
        reached |= nxt
        frontier = nxt
    return bool((reached >> t) & 1)


# --- isomorphism -----------------------------------------------------------------

def _signature(g: Graph, v: int) -> tuple[int, bool, tuple[int, ...]]:
    return (g.degree(v), g.has_loop(v), tuple(sorted(g.degree(w) for w in g.neighbors(v))))


def find_isomorphism(g: Graph, h: Graph) -> tuple[int, ...] | None:
    """Backtracking search for a loop-respecting isomorphism ``g -> h``; fine up to ~12 vertices."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return None
    sg = [_signature(g, v) for v in g.vertices]
    sh = [_signature(h, v) for v in h.vertices]
    if sorted(sg) != sorted(sh):
        return None
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    # grow the order along edges so adjacency checks bite early
    placed: list[int] = []
    rest = set(order)
    while rest:
        best = max(rest, key=lambda v: (sum(1 for p in placed if g.has_edge(v, p)), g.degree(v), -v))
        placed.append(best)
        rest.remove(best)
    image = [-1] * g.n
    used = [False] * h.n

    def extend(k: int) -> bool:
        if k == len(placed):
            return True
        v = placed[k]
        for w in h.vertices:
            if used[w] or sh[w] != sg[v]:
                continue
            if any(g.has_edge(v, p) != h.has_edge(w, image[p]) for p in placed[:k]):
                continue
            image[v] = w
            used[w] = True
            if extend(k + 1):
                return True
            used[w] = False
            image[v] = -1
        return False

    return tuple(image) if extend(0) else None


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None
