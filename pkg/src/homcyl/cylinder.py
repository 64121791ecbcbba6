"""Double mapping cylinders of graphs, honest pushouts and the maps between them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .graphs import (
    Graph,
    GraphError,
    GraphMap,
    bits,
    categorical_product,
    connected_avoiding,
    is_homomorphism,
    looped_interval,
)


class CylinderError(ValueError):
    """Inconsistent cylinder data: bad spec, gluing mismatch, non-homomorphic result."""


@dataclass(frozen=True)
class CylinderSpec:
    A: Graph
    B: Graph
    C: Graph
    f: GraphMap
    g: GraphMap
    n: int = 2

    def __post_init__(self):
        if self.f.domain is not self.A and self.f.domain != self.A:
            raise CylinderError("f must be defined on A")
        if self.g.domain is not self.A and self.g.domain != self.A:
            raise CylinderError("g must be defined on A")
        if self.f.codomain != self.B or self.g.codomain != self.C:
            raise CylinderError("f must land in B and g in C")
        if self.n < 1:
            raise CylinderError("cylinder height must be at least 1")
        if not is_homomorphism(self.f):
            raise CylinderError("f is not a graph homomorphism")
        if not is_homomorphism(self.g):
            raise CylinderError("g is not a graph homomorphism")

    def with_height(self, n: int) -> "CylinderSpec":
        return CylinderSpec(self.A, self.B, self.C, self.f, self.g, n)


@dataclass(frozen=True)
class Cylinder:
    spec: CylinderSpec
    d: Graph
    j1: GraphMap
    j2: GraphMap
    level: np.ndarray  # level[a, i] = vertex of d holding (a, i)

    @property
    def n(self) -> int:
        return self.spec.n

    def vertex_of(self, a: int, i: int) -> int:
        return int(self.level[a, i])

    def level_mask(self, i: int) -> int:
        """Vertices of d holding some ``(a, i)``."""
        out = 0
        for a in range(self.spec.A.n):
            out |= 1 << int(self.level[a, i])
        return out

    def levels_mask(self, lo: int, hi: int) -> int:
        out = 0
        for i in range(max(lo, 0), min(hi, self.n) + 1):
            out |= self.level_mask(i)
        return out

    @property
    def b_mask(self) -> int:
        return self.j1.image_mask()

    @property
    def c_mask(self) -> int:
        return self.j2.image_mask()


def _middle_label(a_label: str, i: int) -> str:
    return f"{a_label}_{i}"


def double_mapping_cylinder(spec: CylinderSpec) -> Cylinder:
    """Quotient of ``B ⊔ (A × I_n) ⊔ C`` by ``f(a) ~ (a, n)`` and ``g(a) ~ (a, 0)``.

    The disjoint union is ordered B, C, then ``A × I_n`` row by row; each class
    is represented by its least member, and the vertices of the quotient are
    numbered by representative.
    """
    A, B, C, n = spec.A, spec.B, spec.C, spec.n
    nb, nc, na = B.n, C.n, A.n
    base = nb + nc

    def mid(a: int, i: int) -> int:
        return base + a * (n + 1) + i

    total = base + na * (n + 1)
    ds = DisjointSet(range(total))
    for a in range(na):
        ds.merge(spec.f(a), mid(a, n))
        ds.merge(nb + spec.g(a), mid(a, 0))
    rep = {}
    for members in ds.subsets():
        low = min(members)
        for x in members:
            rep[x] = low
    reps = sorted(set(rep.values()))
    pos = {r: k for k, r in enumerate(reps)}
    cls = [pos[rep[x]] for x in range(total)]

    def raw_label(x: int) -> str:
        if x < nb:
            return B.labels[x]
        if x < base:
            return C.labels[x - nb]
        a, i = divmod(x - base, n + 1)
        return _middle_label(A.labels[a], i)

    labels = [raw_label(r) for r in reps]
    if len(set(labels)) != len(labels):
        prefixed = []
        for r in reps:
            tag = "B" if r < nb else "C" if r < base else "A"
            prefixed.append(f"{tag}:{raw_label(r)}")
        labels = prefixed

    nbr = [0] * len(reps)

    def link(x: int, y: int) -> None:
        u, v = cls[x], cls[y]
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    for u, v in B.edges():
        link(u, v)
    for u, v in C.edges():
        link(nb + u, nb + v)
    prod = categorical_product(A, looped_interval(n))
    for u, v in prod.edges():
        link(base + u, base + v)
    d = Graph(tuple(labels), tuple(nbr), f"D{n}")
    j1 = GraphMap(B, d, tuple(cls[b] for b in range(nb)))
    j2 = GraphMap(C, d, tuple(cls[nb + c] for c in range(nc)))
    level = np.array([[cls[mid(a, i)] for i in range(n + 1)] for a in range(na)], dtype=np.int64).reshape(na, n + 1)
    return Cylinder(spec, d, j1, j2, level)


@dataclass(frozen=True)
class Pushout:
    graph: Graph
    j1: GraphMap
    j2: GraphMap

    @property
    def simple(self) -> bool:
        return not self.graph.has_loops


def pushout(spec: CylinderSpec) -> Pushout:
    """Honest pushout ``(B ⊔ C) / f(a) ~ g(a)``; the height of the spec is ignored."""
    B, C = spec.B, spec.C
    nb = B.n
    ds = DisjointSet(range(nb + C.n))
    for a in range(spec.A.n):
        ds.merge(spec.f(a), nb + spec.g(a))
    rep = {}
    for members in ds.subsets():
        low = min(members)
        for x in members:
            rep[x] = low
    reps = sorted(set(rep.values()))
    pos = {r: k for k, r in enumerate(reps)}
    cls = [pos[rep[x]] for x in range(nb + C.n)]
    labels = [B.labels[r] if r < nb else C.labels[r - nb] for r in reps]
    if len(set(labels)) != len(labels):
        labels = [f"B:{B.labels[r]}" if r < nb else f"C:{C.labels[r - nb]}" for r in reps]
    nbr = [0] * len(reps)
    for u, v in B.edges():
        nbr[cls[u]] |= 1 << cls[v]
        nbr[cls[v]] |= 1 << cls[u]
    for u, v in C.edges():
        nbr[cls[nb + u]] |= 1 << cls[nb + v]
        nbr[cls[nb + v]] |= 1 << cls[nb + u]
    graph = Graph(tuple(labels), tuple(nbr), "P")
    return Pushout(
        graph,
        GraphMap(B, graph, tuple(cls[:nb])),
        GraphMap(C, graph, tuple(cls[nb:])),
    )


def abc_split(G: Graph, c: int, n: int = 2) -> CylinderSpec:
    """Split ``G`` at a degree-2 cycle vertex ``c`` with neighbours ``a < b``.

    A drops both edges at c, B keeps ``ac`` and C keeps ``cb``; f and g are the
    identity on vertices.
    """
    if G.has_loop(c) or G.degree(c) != 2:
        raise CylinderError(f"vertex {G.labels[c]!r} does not have degree 2")
    a, b = G.neighbors(c)
    if not connected_avoiding(G, a, b, avoid=c):
        raise CylinderError(f"vertex {G.labels[c]!r} does not lie on a cycle")
    A = G.delete_edges([(a, c), (c, b)], name="A")
    B = A.add_edges([(a, c)], name="B")
    C = A.add_edges([(c, b)], name="C")
    ident = tuple(G.vertices)
    return CylinderSpec(A, B, C, GraphMap(A, B, ident), GraphMap(A, C, ident), n)


# --- homotopies and the comparison maps -----------------------------------------


def _interval(r: int) -> Graph:
    if r == 0:
        return Graph(("0",), (1,), "I0")
    return looped_interval(r)


@dataclass(frozen=True)
class HomotopyK:
    """A homomorphism ``X × I_r -> Y``; level ``i`` is the map ``x -> K(x, i)``."""

    base: GraphMap
    r: int
    source: Graph

    def __call__(self, x: int, i: int) -> int:
        return self.base.assignment[x * (self.r + 1) + i]

    def level_map(self, i: int) -> GraphMap:
        dom = self.source
        return GraphMap(dom, self.base.codomain, tuple(self(x, i) for x in dom.vertices))

    def padded(self, length: int) -> "HomotopyK":
        """Extend to ``length`` by repeating the last level."""
        if length < self.r:
            raise CylinderError("cannot pad a homotopy to a shorter length")
        levels = [self.level_map(min(i, self.r)) for i in range(length + 1)]
        return homotopy_from_levels(levels)


def homotopy_from_levels(levels: list[GraphMap]) -> HomotopyK:
    """Stack maps ``X -> Y`` into a homotopy; raises unless the stack is a homomorphism."""
    if not levels:
        raise CylinderError("a homotopy needs at least one level")
    X, Y = levels[0].domain, levels[0].codomain
    r = len(levels) - 1
    prod = categorical_product(X, _interval(r))
    assignment = tuple(levels[i].assignment[x] for x in X.vertices for i in range(r + 1))
    base = GraphMap(prod, Y, assignment)
    if not is_homomorphism(base):
        raise CylinderError("levels do not form a x-homotopy")
    return HomotopyK(base, r, X)


def _compatible(X: Graph, Y: Graph, p: tuple[int, ...], q: tuple[int, ...]) -> bool:
    return all(Y.has_edge(p[u], q[v]) and Y.has_edge(p[v], q[u]) for u, v in X.edges())


def _check_hom(m: GraphMap, what: str) -> GraphMap:
    if not is_homomorphism(m):
        raise CylinderError(f"{what} is not a graph homomorphism")
    return m


def universal_alpha(cyl: Cylinder, k1: GraphMap, k2: GraphMap, K: HomotopyK) -> GraphMap:
    """The map ``D_n -> G`` equal to k1 on B, k2 on C and K on the cylinder levels."""
    spec = cyl.spec
    if K.r != cyl.n:
        raise CylinderError("homotopy length must equal the cylinder height")
    G = k1.codomain
    value: list[int | None] = [None] * cyl.d.n

    def put(v: int, w: int) -> None:
        if value[v] is None:
            value[v] = w
        elif value[v] != w:
            raise CylinderError("homotopy endpoints do not match k1∘f and k2∘g")

    for b in range(spec.B.n):
        put(cyl.j1(b), k1(b))
    for c in range(spec.C.n):
        put(cyl.j2(c), k2(c))
    for a in range(spec.A.n):
        for i in range(cyl.n + 1):
            put(cyl.vertex_of(a, i), K(a, i))
    return _check_hom(GraphMap(cyl.d, G, tuple(value)), "alpha")


def shrink_map(big: Cylinder, m: int, k: int) -> tuple[GraphMap, Cylinder]:
    """Collapse the lowest ``k`` and highest ``m`` levels of a height ``m+n+k`` cylinder.

    Returns the map together with the height-n target cylinder it lands in.
    """
    n = big.n - m - k
    if m < 0 or k < 0 or n < 1:
        raise CylinderError("need m, k >= 0 and a target height of at least 1")
    small = double_mapping_cylinder(big.spec.with_height(n))
    spec = big.spec
    value = [0] * big.d.n
    for b in range(spec.B.n):
        value[big.j1(b)] = small.j1(b)
    for c in range(spec.C.n):
        value[big.j2(c)] = small.j2(c)
    for a in range(spec.A.n):
        for s in range(big.n + 1):
            if s <= k:
                t = 0
            elif s <= k + n:
                t = s - k
            else:
                t = n
            value[big.vertex_of(a, s)] = small.vertex_of(a, t)
    return _check_hom(GraphMap(big.d, small.d, tuple(value)), "shrink map"), small


def map_F(cyl: Cylinder, cyl2: Cylinder, hA: GraphMap, hB: GraphMap, hC: GraphMap) -> GraphMap:
    """Level-preserving map ``b -> hB(b)``, ``(a, i) -> (hA(a), i)``, ``c -> hC(c)``."""
    if cyl.n != cyl2.n:
        raise CylinderError("both cylinders must have the same height")
    s, s2 = cyl.spec, cyl2.spec
    for a in range(s.A.n):
        if s2.f(hA(a)) != hB(s.f(a)) or s2.g(hA(a)) != hC(s.g(a)):
            raise CylinderError("hA, hB, hC are not compatible with the gluing maps")
    value: list[int | None] = [None] * cyl.d.n
    for b in range(s.B.n):
        value[cyl.j1(b)] = cyl2.j1(hB(b))
    for c in range(s.C.n):
        value[cyl.j2(c)] = cyl2.j2(hC(c))
    for a in range(s.A.n):
        for i in range(cyl.n + 1):
            v, w = cyl.vertex_of(a, i), cyl2.vertex_of(hA(a), i)
            if value[v] is not None and value[v] != w:
                raise CylinderError("F is not well defined on a glued class")
            value[v] = w
    return _check_hom(GraphMap(cyl.d, cyl2.d, tuple(value)), "F")


def map_Fprime(
    big2: Cylinder,
    cyl: Cylinder,
    hA2: GraphMap,
    hB2: GraphMap,
    hC2: GraphMap,
    HB: HomotopyK,
    HC: HomotopyK,
    l: int,
) -> GraphMap:
    """The map ``D'_{l+n+l} -> D_n`` built from the homotopies HB and HC.

    ``HB`` runs from ``f∘hA'`` to ``hB'∘f'`` and ``HC`` from ``hC'∘g'`` to
    ``g∘hA'``; both are padded to length ``l`` by repeating their last level.
    """
    n = cyl.n
    if big2.n != n + 2 * l:
        raise CylinderError("source cylinder must have height n + 2l")
    if HB.r > l or HC.r > l:
        raise CylinderError("homotopies are longer than l")
    HB, HC = HB.padded(l), HC.padded(l)
    s, s2 = cyl.spec, big2.spec
    for a in range(s2.A.n):
        if HB(a, 0) != s.f(hA2(a)) or HB(a, l) != hB2(s2.f(a)):
            raise CylinderError("HB does not run from f∘hA' to hB'∘f'")
        if HC(a, 0) != hC2(s2.g(a)) or HC(a, l) != s.g(hA2(a)):
            raise CylinderError("HC does not run from hC'∘g' to g∘hA'")
    value: list[int | None] = [None] * big2.d.n

    def put(v: int, w: int) -> None:
        if value[v] is not None and value[v] != w:
            raise CylinderError("F' is not well defined on a glued class")
        value[v] = w

    for b in range(s2.B.n):
        put(big2.j1(b), cyl.j1(hB2(b)))
    for c in range(s2.C.n):
        put(big2.j2(c), cyl.j2(hC2(c)))
    for a in range(s2.A.n):
        for t in range(big2.n + 1):
            if t <= l:
                w = cyl.j2(HC(a, t))
            elif t <= l + n:
                w = cyl.vertex_of(hA2(a), t - l)
            else:
                w = cyl.j1(HB(a, t - (n + l)))
            put(big2.vertex_of(a, t), w)
    return _check_hom(GraphMap(big2.d, cyl.d, tuple(value)), "F'")


def _one_step_maps(X: Graph, Y: Graph, p: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All homomorphisms q with ``(p, q)`` forming a homomorphism ``X × I_1 -> Y``."""
    cand = []
    for x in X.vertices:
        mask = Y.all_mask
        for x2 in bits(X.nbr[x]):
            mask &= Y.nbr[p[x2]]
        cand.append(list(bits(mask)))
    out: list[tuple[int, ...]] = []
    cur = [0] * X.n

    def rec(x: int) -> None:
        if x == X.n:
            out.append(tuple(cur))
            return
        for w in cand[x]:
            if all(Y.has_edge(w, cur[x2]) for x2 in bits(X.nbr[x]) if x2 < x):
                if X.has_loop(x) and not Y.has_edge(w, w):
                    continue
                cur[x] = w
                rec(x + 1)

    rec(0)
    return out


def search_x_homotopy(
    p: GraphMap, q: GraphMap, budget: int, exhaustive: bool = False, state_cap: int = 200_000
) -> tuple[HomotopyK | None, str]:
    """Breadth-first search for a x-homotopy from p to q.

    Returns ``(K, "homotopic")`` on success.  A miss is ``"unknown"`` unless
    ``exhaustive`` is set, the codomain has at most 5 vertices and the whole
    component of p was explored, in which case it is ``"not-homotopic"``.
    """
    if p.domain != q.domain or p.codomain != q.codomain:
        raise GraphError("maps must share domain and codomain")
    X, Y = p.domain, p.codomain
    start, goal = p.assignment, q.assignment
    parent = {start: None}
    depth = {start: 0}
    queue = deque([start])
    limit = None if exhaustive and Y.n <= 5 else budget
    complete = True
    while queue:
        cur = queue.popleft()
        if cur == goal:
            path = [cur]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            levels = [GraphMap(X, Y, t) for t in reversed(path)]
            return homotopy_from_levels(levels), "homotopic"
        if limit is not None and depth[cur] >= limit:
            complete = False
            continue
        for nxt in _one_step_maps(X, Y, cur):
            if nxt not in parent:
                if len(parent) >= state_cap:
                    complete = False
                    break
                parent[nxt] = cur
                depth[nxt] = depth[cur] + 1
                queue.append(nxt)
    if exhaustive and Y.n <= 5 and complete:
        return None, "not-homotopic"
    return None, "unknown"


def x_homotopic(p: GraphMap, q: GraphMap, budget: int = 3) -> HomotopyK | None:
    """A x-homotopy of height at most ``budget`` from p to q, or None (inconclusive)."""
    return search_x_homotopy(p, q, budget)[0]
