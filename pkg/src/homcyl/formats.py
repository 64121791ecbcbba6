"""Text and JSON formats for graphs and cylinder specs.

Native graph text::

    graph NAME
    v x            # optional; vertices are also created by edges
    e x y          # an edge; "e x x" is a loop

DIMACS ``.col`` files (``p edge n m`` / ``e u v``) are read as well.
"""

from __future__ import annotations

import json
from pathlib import Path

from .cylinder import CylinderSpec
from .graphs import Graph, GraphError, build_graph, graph_map


class FormatError(ValueError):
    """Malformed input; messages carry line numbers when they apply."""


def parse_graph(text: str, name: str = "G") -> Graph:
    labels: list[str] = []
    seen: set[str] = set()
    edges = []
    declared = None

    def vertex(lab: str) -> None:
        if lab not in seen:
            seen.add(lab)
            labels.append(lab)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "graph":
            if len(parts) > 3:
                raise FormatError(f"line {lineno}: expected 'graph <name> <n>'")
            if len(parts) > 1:
                name = parts[1]
            if len(parts) == 3:
                try:
                    declared = int(parts[2])
                except ValueError:
                    raise FormatError(f"line {lineno}: vertex count {parts[2]!r} is not an integer") from None
        elif tag == "v":
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: expected 'v <label>'")
            vertex(parts[1])
        elif tag == "e":
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: expected 'e <label> <label>'")
            vertex(parts[1])
            vertex(parts[2])
            edges.append((parts[1], parts[2]))
        else:
            raise FormatError(f"line {lineno}: unknown record {tag!r}")
    if declared is not None and declared != len(labels):
        raise FormatError(f"header declares {declared} vertices, found {len(labels)}")
    try:
        return build_graph(labels, edges, name)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def parse_dimacs(text: str, name: str = "G") -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "p":
                n = int(parts[2])
            elif parts[0] == "e":
                u, v = int(parts[1]), int(parts[2])
                if n is None or not (1 <= u <= n and 1 <= v <= n):
                    raise ValueError("vertex out of range")
                edges.append((str(u), str(v)))
            else:
                raise ValueError(f"unknown record {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    if n is None:
        raise FormatError("missing 'p edge' line")
    try:
        return build_graph([str(i) for i in range(1, n + 1)], edges, name)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def graph_to_text(g: Graph) -> str:
    lines = [f"graph {g.name} {g.n}"]
    lines += [f"v {lab}" for lab in g.labels]
    lines += [f"e {u} {v}" for u, v in g.label_edges()]
    return "\n".join(lines) + "\n"


def graph_to_dot(g: Graph) -> str:
    lines = [f"graph {g.name} {{"]
    lines += [f'  "{lab}";' for lab in g.labels]
    lines += [f'  "{u}" -- "{v}";' for u, v in g.label_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(g: Graph) -> dict:
    return {"name": g.name, "vertices": list(g.labels), "edges": [list(e) for e in g.label_edges()]}


def graph_from_dict(d: dict) -> Graph:
    try:
        return build_graph(d["vertices"], [tuple(e) for e in d.get("edges", [])], d.get("name", "G"))
    except (KeyError, TypeError, GraphError) as exc:
        raise FormatError(f"bad inline graph: {exc}") from None


def read_graph(path: str | Path) -> Graph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    if path.suffix == ".col":
        return parse_dimacs(text, path.stem)
    if path.suffix == ".json":
        try:
            return graph_from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    return parse_graph(text, path.stem)


def _graph_ref(ref, base: Path | None) -> Graph:
    if isinstance(ref, dict):
        return graph_from_dict(ref)
    if isinstance(ref, str):
        p = Path(ref)
        if base is not None and not p.is_absolute():
            p = base / p
        return read_graph(p)
    raise FormatError(f"graph reference must be a path or an object, got {type(ref).__name__}")


def spec_from_dict(d: dict, base: Path | None = None) -> CylinderSpec:
    """Build a spec from ``{"A", "B", "C", "f", "g", "n"}``; maps are index lists or label tables."""
    try:
        A = _graph_ref(d["A"], base)
        B = _graph_ref(d["B"], base)
        C = _graph_ref(d["C"], base)
        f = graph_map(A, B, d["f"])
        g = graph_map(A, C, d["g"])
        return CylinderSpec(A, B, C, f, g, int(d.get("n", 2)))
    except KeyError as exc:
        raise FormatError(f"spec is missing field {exc}") from None
    except (GraphError, ValueError, TypeError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"invalid spec: {exc}") from None


def read_spec(path: str | Path) -> CylinderSpec:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    return spec_from_dict(data, path.parent)


def spec_to_dict(spec: CylinderSpec) -> dict:
    return {
        "A": graph_to_dict(spec.A),
        "B": graph_to_dict(spec.B),
        "C": graph_to_dict(spec.C),
        "f": list(spec.f.assignment),
        "g": list(spec.g.assignment),
        "n": spec.n,
    }
