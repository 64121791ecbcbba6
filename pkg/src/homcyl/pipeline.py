"""Repeated removal of degree-2 cycle vertices, with the bound it certifies."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .chromatic import chromatic_number
from .complexes import neighbourhood_complex
from .cylinder import Cylinder, CylinderSpec, abc_split, double_mapping_cylinder
from .graphs import Graph, GraphError, degree2_vertex_on_cycle, is_bipartite, is_connected
from .topology import ConnectivityReport, connectivity_report


@dataclass
class ReductionStage:
    graph: Graph
    removed: str
    spec: CylinderSpec

    @property
    def A(self) -> Graph:
        return self.spec.A

    @property
    def B(self) -> Graph:
        return self.spec.B

    @property
    def C(self) -> Graph:
        return self.spec.C

    def cylinder(self) -> Cylinder:
        return double_mapping_cylinder(self.spec)

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.graph.labels),
            "edges": [list(e) for e in self.graph.label_edges()],
            "removed": self.removed,
            "A_edges": len(self.spec.A.edges()),
            "height": self.spec.n,
        }


@dataclass
class ReductionTrace:
    graph: Graph
    stages: list[ReductionStage]
    terminal: Graph
    terminal_kind: str  # "bipartite" or "no-degree2-cycle-vertex"
    chi_claim: int | None
    chi_reason: str
    conn_report: ConnectivityReport | None = None
    pipeline_lower: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def removed(self) -> list[str]:
        return [s.removed for s in self.stages]

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.name,
            "stages": [s.to_dict() for s in self.stages],
            "removed": self.removed,
            "terminal_vertices": list(self.terminal.labels),
            "terminal_kind": self.terminal_kind,
            "chi_claim": self.chi_claim,
            "chi_reason": self.chi_reason,
            "pipeline_lower": self.pipeline_lower,
            "conn": self.conn_report.to_dict() if self.conn_report is not None else None,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def reduce_pipeline(G: Graph, n: int = 2, tietze_budget: int = 10_000, exact_chi: bool = True) -> ReductionTrace:
    """Delete degree-2 cycle vertices while the graph stays non-bipartite.

    Each step records the split of the current graph at the removed vertex.
    A bipartite terminal graph means the chromatic number is 3; otherwise it
    equals that of the terminal graph.  The bound attached is the certified
    connectivity of N(A) for the last split, plus three.
    """
    if not is_connected(G):
        raise GraphError("reduction pipeline needs a connected graph")
    if is_bipartite(G)[0]:
        chi = 2 if G.num_edges else 1
        return ReductionTrace(G, [], G, "bipartite", chi, "input is bipartite", notes=["bipartite input; nothing to reduce"])
    stages = []
    cur = G
    while True:
        if is_bipartite(cur)[0]:
            kind = "bipartite"
            break
        c = degree2_vertex_on_cycle(cur)
        if c is None:
            kind = "no-degree2-cycle-vertex"
            break
        spec = abc_split(cur, c, n)
        stages.append(ReductionStage(cur, cur.labels[c], spec))
        cur = cur.delete_vertex(c)
    if kind == "bipartite":
        chi, reason = 3, "terminal graph is bipartite and the input is not"
    elif exact_chi:
        chi, _ = chromatic_number(cur)
        reason = "equal to the chromatic number of the terminal graph"
    else:
        chi, reason = None, "terminal graph not coloured"
    trace = ReductionTrace(G, stages, cur, kind, chi, reason)
    if stages:
        rep = connectivity_report(neighbourhood_complex(stages[-1].A), tietze_budget)
        trace.conn_report = rep
        trace.pipeline_lower = rep.certified_conn + 3
    return trace
