"""Exact colouring, the colouring lift to cylinders, and topological lower bounds."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .complexes import neighbourhood_complex
from .cylinder import Cylinder, CylinderError, Pushout, pushout
from .graphs import Graph, GraphError, GraphMap, bits, complete_graph, is_connected
from .topology import ConnectivityReport, connectivity_report

DESK_LIMIT = 40  # exact colouring is attempted up to this many vertices


class ChromaticError(ValueError):
    pass


@dataclass(frozen=True)
class Colouring:
    """A proper colouring, stored as a homomorphism into K_k."""

    graph: Graph
    k: int
    assignment: GraphMap

    def colour(self, v) -> int:
        i = v if isinstance(v, int) else self.graph.index(v)
        return self.assignment.assignment[i]

    def is_proper(self) -> bool:
        return self.assignment.is_homomorphism()

    def table(self) -> dict[str, int]:
        return {lab: c for lab, c in zip(self.graph.labels, self.assignment.assignment)}


def colouring_from_list(g: Graph, colours, k: int | None = None) -> Colouring:
    colours = tuple(int(c) for c in colours)
    k = (max(colours) + 1 if colours else 0) if k is None else k
    target = complete_graph(k, prefix="c")
    m = GraphMap(g, target, colours)
    col = Colouring(g, k, m)
    if not col.is_proper():
        raise ChromaticError("assignment is not a proper colouring")
    return col


def _require_loopless(g: Graph) -> None:
    if g.has_loops:
        raise ChromaticError(f"{g.name} has a loop and admits no proper colouring")


def greedy_clique(g: Graph) -> list[int]:
    """A large clique found greedily from every start vertex."""
    best: list[int] = []
    for start in range(g.n):
        clique = [start]
        cand = g.nbr[start] & ~(1 << start)
        while cand:
            v = max(bits(cand), key=lambda u: (bin(g.nbr[u] & cand).count("1"), -u))
            clique.append(v)
            cand &= g.nbr[v] & ~(1 << v)
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def _dsatur_search(g: Graph, k: int, pre: dict[int, int]) -> list[int] | None:
    n = g.n
    colour = [-1] * n
    forbidden = [0] * n  # bitmask of colours used by neighbours
    for v, c in pre.items():
        colour[v] = c
        for w in bits(g.nbr[v]):
            forbidden[w] |= 1 << c
    full = (1 << k) - 1
    for v, c in pre.items():
        if forbidden[v] >> c & 1:
            return None

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if colour[v] < 0:
                kv = (bin(forbidden[v]).count("1"), bin(g.nbr[v]).count("1"), -v)
                if key is None or kv > key:
                    best, key = v, kv
        return best

    def rec(left: int) -> bool:
        if left == 0:
            return True
        v = pick()
        free = full & ~forbidden[v]
        if not free:
            return False
        used = 0
        for c in colour:
            if c >= 0:
                used |= 1 << c
        # colours never used so far are interchangeable; try only the first one
        fresh_tried = False
        for c in range(k):
            if not free >> c & 1:
                continue
            if not used >> c & 1:
                if fresh_tried:
                    continue
                fresh_tried = True
            colour[v] = c
            saved = []
            for w in bits(g.nbr[v]):
                saved.append((w, forbidden[w]))
                forbidden[w] |= 1 << c
            if rec(left - 1):
                return True
            for w, old in saved:
                forbidden[w] = old
            colour[v] = -1
        return False

    if rec(n - len(pre)):
        return colour
    return None


def is_k_colourable(G: Graph, k: int) -> Colouring | None:
    """A proper k-colouring, or None when none exists (exhaustive search)."""
    _require_loopless(G)
    if G.n == 0:
        return colouring_from_list(G, [], k)
    if k <= 0:
        return None
    clique = greedy_clique(G)
    if len(clique) > k:
        return None
    pre = {v: i for i, v in enumerate(clique)}
    found = _dsatur_search(G, k, pre)
    return None if found is None else colouring_from_list(G, found, k)


def chromatic_number(G: Graph) -> tuple[int, Colouring]:
    """Exact chromatic number with a witness colouring."""
    _require_loopless(G)
    if G.n == 0:
        return 0, colouring_from_list(G, [], 0)
    k = max(1, len(greedy_clique(G)))
    while True:
        col = is_k_colourable(G, k)
        if col is not None:
            return k, col
        k += 1


def cylinder_colouring(cyl: Cylinder, c: Colouring, po: Pushout | None = None) -> Colouring:
    """Lift a colouring of the pushout to the cylinder graph.

    B and C keep their colours and every middle level copies the colouring that
    A inherits from the pushout.
    """
    po = po if po is not None else pushout(cyl.spec)
    if not po.simple:
        raise CylinderError("pushout has loops; no colouring to lift")
    if c.graph != po.graph:
        raise ChromaticError("colouring is not defined on the pushout")
    if not c.is_proper():
        raise ChromaticError("input colouring is not proper")
    spec = cyl.spec
    out = [-1] * cyl.d.n
    for b in range(spec.B.n):
        out[cyl.j1(b)] = c.assignment(po.j1(b))
    for x in range(spec.C.n):
        out[cyl.j2(x)] = c.assignment(po.j2(x))
    for a in range(spec.A.n):
        ca = c.assignment(po.j1(spec.f(a)))
        for i in range(1, spec.n):
            out[cyl.vertex_of(a, i)] = ca
    return colouring_from_list(cyl.d, out, c.k)


# --------------------------------------------------------------------------
# bounds


@dataclass
class BoundReport:
    graph: Graph
    chi_exact: int | None
    lovasz_lower: int
    pipeline_lower: int
    connectivity: ConnectivityReport
    trace: object | None = None
    colouring: Colouring | None = None
    notes: list[str] = field(default_factory=list)

    def sound(self) -> bool:
        if self.chi_exact is None:
            return True
        return self.lovasz_lower <= self.chi_exact and self.pipeline_lower <= self.chi_exact

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.name,
            "vertices": self.graph.n,
            "chi_exact": self.chi_exact,
            "lovasz_lower": self.lovasz_lower,
            "pipeline_lower": self.pipeline_lower,
            "connectivity": self.connectivity.to_dict(),
            "trace": self.trace.to_dict() if self.trace is not None else None,
            "colouring": self.colouring.table() if self.colouring is not None else None,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def lovasz_bound(G: Graph, exact_limit: int = DESK_LIMIT, tietze_budget: int = 10_000) -> BoundReport:
    """Certified connectivity of N(G) plus three, next to the reduction-pipeline bound."""
    from .pipeline import reduce_pipeline

    _require_loopless(G)
    if not is_connected(G):
        raise GraphError("lower bounds are reported for connected graphs only")
    rep = connectivity_report(neighbourhood_complex(G), tietze_budget)
    lovasz = rep.certified_conn + 3
    notes = []
    if not rep.certified_exact:
        notes.append(f"homological connectivity {rep.homological_conn} suggests a bound of {rep.homological_conn + 3}")
    trace = reduce_pipeline(G, tietze_budget=tietze_budget)
    if trace.stages:
        pipeline = trace.pipeline_lower
    else:
        pipeline = lovasz
        notes.append("no reduction step applies; pipeline bound falls back to the direct bound")
    chi = col = None
    if G.n <= exact_limit:
        chi, col = chromatic_number(G)
    else:
        notes.append(f"exact colouring skipped above {exact_limit} vertices")
    return BoundReport(G, chi, lovasz, pipeline, rep, trace, col, notes)
