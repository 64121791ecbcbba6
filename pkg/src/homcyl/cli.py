"""Command-line interface: ``homcyl <subcommand> ...``.

Graph arguments are files (native text, DIMACS ``.col`` or JSON), the
shorthands ``K<n>``, ``C<n>``, ``P<n>``, or ``cylinder:<spec>`` for a cylinder
graph.  Spec arguments are JSON files, catalog names (``looped-point``,
``k4-triangle``, ``apex-path``) or ``complete-pair:<p>,<r>``.  Exit codes: 0 ok, 2 bad input, 3 budget exceeded,
4 a checked property failed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import suite
from .appendix import AppendixError, audit_appendix, strata
from .catalog import NAMED_SPECS, complete_pair_spec
from .chromatic import ChromaticError, chromatic_number, lovasz_bound
from .complexes import (
    DEFAULT_CELL_CAP,
    BudgetExceeded,
    ComplexError,
    hom_complex,
    neighbourhood_complex,
    parse_complex,
)
from .cylinder import CylinderError, CylinderSpec, double_mapping_cylinder, pushout
from .formats import FormatError, graph_to_dict, graph_to_dot, graph_to_text, read_graph, read_spec
from .graphs import Graph, GraphError, complete_graph, cycle_graph, path_graph
from .pipeline import reduce_pipeline
from .topology import TopologyError, connectivity_report, homology_of

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_PROPERTY = 0, 2, 3, 4

_SHORTHAND = re.compile(r"^([KCP])(\d+)$")


class PropertyViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    cell_cap: int = DEFAULT_CELL_CAP
    homotopy_budget: int = 100_000
    tietze_budget: int = 10_000
    fmt: str = "json"
    seed: int = suite.SEED

    def __post_init__(self):
        for name in ("cell_cap", "homotopy_budget", "tietze_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.fmt not in ("json", "text"):
            raise ValueError(f"unknown format {self.fmt!r}")


def load_graph(arg: str) -> Graph:
    if arg.startswith("cylinder:") and not Path(arg).exists():
        return double_mapping_cylinder(load_spec(arg[len("cylinder:"):], None)).d
    m = _SHORTHAND.match(arg)
    if m and not Path(arg).exists():
        kind, k = m.group(1), int(m.group(2))
        try:
            return {"K": complete_graph, "C": cycle_graph, "P": path_graph}[kind](k)
        except GraphError as exc:
            raise FormatError(str(exc)) from None
    return read_graph(arg)


def load_spec(arg: str, n: int | None) -> CylinderSpec:
    if arg in NAMED_SPECS and not Path(arg).exists():
        spec = NAMED_SPECS[arg]()
    elif (m := re.match(r"^complete-pair:(\d+),(\d+)$", arg)) and not Path(arg).exists():
        spec = complete_pair_spec(int(m.group(1)), int(m.group(2)))
    else:
        spec = read_spec(arg)
    return spec.with_height(n) if n is not None else spec


def _load_complex_or_graph(arg: str):
    """A complex file (``complex`` header) or a graph, whose neighbourhood complex is used."""
    p = Path(arg)
    if p.exists():
        try:
            head = p.read_text().lstrip()
        except OSError as exc:
            raise FormatError(f"cannot read {p}: {exc}") from None
        if head.startswith("complex"):
            return parse_complex(head)
    return neighbourhood_complex(load_graph(arg))


def _subject(args, cfg: RunConfig):
    """The complex a homology-type command works on."""
    if getattr(args, "hom", None):
        return hom_complex(load_graph(args.hom), load_graph(args.input), cfg.cell_cap)
    return _load_complex_or_graph(args.input)


def _text_table(d: dict, indent: int = 0) -> str:
    pad = " " * indent
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text_table(v, indent + 2))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def _render(payload: dict, cfg: RunConfig) -> str:
    if cfg.fmt == "json":
        return json.dumps(payload, indent=2, default=str)
    return _text_table(payload)


# --------------------------------------------------------------------------
# subcommands; each returns (payload, extra_text_or_None, exit_code)


def cmd_cylinder(args, cfg):
    spec = load_spec(args.spec, args.n)
    cyl = double_mapping_cylinder(spec)
    d = cyl.d
    payload = {
        "height": cyl.n,
        "vertices": d.n,
        "edges": d.num_edges,
        "graph": graph_to_dict(d),
        "j1": {spec.B.labels[b]: d.labels[v] for b, v in enumerate(cyl.j1.assignment)},
        "j2": {spec.C.labels[c]: d.labels[v] for c, v in enumerate(cyl.j2.assignment)},
        "strata": strata(cyl).labels(d),
    }
    extra = {"text": graph_to_text, "dot": graph_to_dot}.get(args.emit)
    return payload, extra(d) if extra else None, EXIT_OK


def cmd_pushout(args, cfg):
    spec = load_spec(args.spec, None)
    po = pushout(spec)
    payload = {"vertices": po.graph.n, "edges": po.graph.num_edges, "simple": po.simple, "graph": graph_to_dict(po.graph)}
    return payload, None, EXIT_OK


def cmd_nbhd(args, cfg):
    g = load_graph(args.graph)
    K = neighbourhood_complex(g)
    if args.dot:
        return None, K.to_dot(f"N_{g.name}"), EXIT_OK
    payload = {
        "graph": g.name,
        "f_vector": K.f_vector(),
        "components": len(K.components()),
        "facets": [[K.vertex_labels[v] for v in f] for f in K.facets],
    }
    return payload, K.to_text() if args.complex_text else None, EXIT_OK


def cmd_hom(args, cfg):
    T, G = load_graph(args.source), load_graph(args.target)
    P = hom_complex(T, G, cfg.cell_cap)
    payload = {
        "source": T.name,
        "target": G.name,
        "cells": P.num_cells,
        "dim": P.dim,
        "f_vector": P.f_vector(),
        "maximal_cells": [c.label() for c in P.maximal_cells],
    }
    return payload, None, EXIT_OK


def cmd_homology(args, cfg):
    K = _subject(args, cfg)
    h = homology_of(K, reduced=args.reduced)
    payload = {"homology": h.to_dict()}
    if args.conn:
        payload["connectivity"] = connectivity_report(K, cfg.tietze_budget).to_dict()
    return payload, None, EXIT_OK


def cmd_conn(args, cfg):
    K = _subject(args, cfg)
    return connectivity_report(K, cfg.tietze_budget).to_dict(), None, EXIT_OK


def cmd_chromatic(args, cfg):
    g = load_graph(args.graph)
    chi, col = chromatic_number(g)
    if not col.is_proper():
        raise PropertyViolation("witness colouring is not proper")
    return {"graph": g.name, "chi": chi, "colouring": col.table()}, None, EXIT_OK


def cmd_bound(args, cfg):
    g = load_graph(args.graph)
    rep = lovasz_bound(g, tietze_budget=cfg.tietze_budget)
    code = EXIT_OK if rep.sound else EXIT_PROPERTY
    return rep.to_dict(), None, code


def cmd_reduce(args, cfg):
    g = load_graph(args.graph)
    n = args.n if args.n is not None else 2
    return reduce_pipeline(g, n, cfg.tietze_budget).to_dict(), None, EXIT_OK


def cmd_audit(args, cfg):
    spec = load_spec(args.spec, args.n)
    T = load_graph(args.source)
    cyl = double_mapping_cylinder(spec)
    P = hom_complex(T, cyl.d, cfg.cell_cap)
    audit = audit_appendix(T, cyl, P, tails=not args.no_tails)
    bad = audit.violations or not audit.betti_match or any(t["length"] != t["expected_length"] or not t["reaches_end"] for t in audit.tails)
    return audit.to_dict(), None, EXIT_PROPERTY if bad else EXIT_OK


def cmd_paper_examples(args, cfg):
    options = {"seed": cfg.seed}
    if args.expect_betti:
        options["expected_betti"] = tuple(int(x) for x in args.expect_betti.split(","))
    results = []
    for num in args.only or [c[0] for c in suite.CHECKS]:
        r = suite.run_check(num, **options)
        results.append(r)
        if cfg.fmt == "text":
            print(r.line(), flush=True)
    payload = {
        "seed": cfg.seed,
        "results": [
            {"number": r.number, "name": r.name, "passed": r.ok, "seconds": round(r.seconds, 3), "limit": r.limit, "details": r.details}
            for r in results
        ],
        "all_passed": all(r.ok for r in results),
    }
    code = EXIT_OK if payload["all_passed"] else EXIT_PROPERTY
    if cfg.fmt == "text":
        return None, f"{sum(r.ok for r in results)}/{len(results)} passed", code
    return payload, None, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="cylinder height")
    common.add_argument("--budget-cells", type=int, default=DEFAULT_CELL_CAP, help="cap on enumerated cells or chains")
    common.add_argument("--budget-homotopy", type=int, default=100_000)
    common.add_argument("--budget-tietze", type=int, default=10_000)
    common.add_argument("--seed", type=int, default=suite.SEED)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    ap = argparse.ArgumentParser(prog="homcyl", description="Double mapping cylinders of graphs and their Hom complexes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cylinder", parents=[common], help="build the double mapping cylinder of a spec")
    p.add_argument("spec")
    p.add_argument("--emit", choices=("text", "dot"), default=None, help="also emit the cylinder graph")
    p.set_defaults(func=cmd_cylinder)

    p = sub.add_parser("pushout", parents=[common], help="build the graph pushout of a spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_pushout)

    p = sub.add_parser("nbhd", parents=[common], help="neighbourhood complex of a graph")
    p.add_argument("graph")
    p.add_argument("--dot", action="store_true", help="emit the 1-skeleton as DOT")
    p.add_argument("--complex-text", action="store_true", help="emit the complex in native text")
    p.set_defaults(func=cmd_nbhd)

    p = sub.add_parser("hom", parents=[common], help="cells of Hom(T, G)")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(func=cmd_hom)

    for name, func, help_ in (("homology", cmd_homology, "integral homology"), ("conn", cmd_conn, "certified connectivity")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("input", help="complex file or graph; graphs use N(G) unless --hom is given")
        p.add_argument("--hom", metavar="T", default=None, help="use Hom(T, input) instead")
        if name == "homology":
            p.add_argument("--reduced", action="store_true")
            p.add_argument("--conn", action="store_true", help="add a connectivity report")
        p.set_defaults(func=func)

    for name, func, help_ in (
        ("chromatic", cmd_chromatic, "exact chromatic number"),
        ("bound", cmd_bound, "topological lower bounds"),
        ("reduce", cmd_reduce, "vertex-removal pipeline trace"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("graph")
        p.set_defaults(func=func)

    p = sub.add_parser("audit-appendix", parents=[common], help="classify maximal cells of Hom(T, D_n)")
    p.add_argument("spec")
    p.add_argument("source", help="the graph T")
    p.add_argument("--no-tails", action="store_true")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("paper-examples", parents=[common], help="run the reproduction suite")
    p.add_argument("--only", type=int, nargs="+", default=None, help="check numbers to run")
    p.add_argument("--expect-betti", default=None, help="override the expected Betti numbers of check 3, e.g. 1,2,2")
    p.set_defaults(func=cmd_paper_examples)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.budget_cells, args.budget_homotopy, args.budget_tietze, args.format, args.seed)
        if args.n is not None and args.n < 1:
            raise ValueError("--n must be at least 1")
        payload, text, code = args.func(args, cfg)
    except BudgetExceeded as exc:
        print(f"homcyl: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PropertyViolation as exc:
        print(f"homcyl: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (FormatError, GraphError, CylinderError, ComplexError, TopologyError, ChromaticError, AppendixError, ValueError) as exc:
        print(f"homcyl: {exc}", file=sys.stderr)
        return EXIT_INPUT
    summary = _render(payload, cfg) + "\n" if payload is not None else ""
    body = text.rstrip("\n") + "\n" if text is not None else ""
    if args.out and body and summary:
        # the emitted graph or complex goes to the file, the summary to stdout
        Path(args.out).write_text(body)
        sys.stdout.write(summary)
    elif args.out:
        Path(args.out).write_text(summary + body)
    else:
        sys.stdout.write(summary + body)
    return code


if __name__ == "__main__":
    sys.exit(main())
