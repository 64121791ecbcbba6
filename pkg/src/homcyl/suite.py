"""Reproduction suite for the worked examples and randomized invariants.

Each check returns a :class:`CheckResult`; :func:`run_all` runs them in order.
Random instances come from fixed seeds so reruns are identical.
"""

from __future__ import annotations

import inspect
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .appendix import audit_appendix, pure_cell_mask
from .catalog import apex_path_spec, complete_pair_spec, k4_triangle_spec, k4_wedge_k3, looped_point_reference, looped_point_spec
from .chromatic import chromatic_number, is_k_colourable, lovasz_bound
from .complexes import (
    hom_complex,
    hom_vertex_count,
    induced_cell_map,
    neighbourhood_complex,
    order_complex,
    simplicial_double_cylinder,
)
from .cylinder import CylinderSpec, double_mapping_cylinder, pushout
from .graphs import (
    Graph,
    are_isomorphic,
    categorical_product,
    complete_graph,
    cycle_graph,
    diameter,
    find_fold,
    is_bipartite,
    looped_interval,
    stiff_core,
)
from .pipeline import reduce_pipeline
from .randomgen import random_connected_graph, random_nonbipartite_graph, random_spec
from .topology import homology_of

SEED = 20240601


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    details: list[str] = field(default_factory=list)

    @property
    def in_time(self) -> bool:
        return self.seconds <= self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.in_time

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        timing = f"{self.seconds:.1f}s/{self.limit:.0f}s"
        extra = "" if self.ok else " | " + "; ".join(self.details[:4])
        if self.passed and not self.in_time:
            extra = " | over time limit"
        return f"[{status}] {self.number:2d} {self.name} ({timing}){extra}"


def _sphere_key(k: int) -> tuple:
    return tuple([(0, ())] * k + [(1, ())])


def _betti(key: tuple) -> tuple:
    return tuple(b for b, _ in key)


# --------------------------------------------------------------------------


def check_sphere_ladder() -> tuple[bool, list[str]]:
    details, ok = [], True
    for n in (3, 4, 5):
        key = homology_of(order_complex(hom_complex(complete_graph(2), complete_graph(n))), reduced=True).key()
        if key != _sphere_key(n - 2):
            ok = False
            details.append(f"K{n}: reduced homology {key}, expected sphere of dimension {n - 2}")
    return ok, details


def check_looped_point() -> tuple[bool, list[str]]:
    details = []
    spec = looped_point_spec()
    cyl = double_mapping_cylinder(spec)
    k2 = complete_graph(2)
    P = hom_complex(k2, cyl.d)
    full = homology_of(order_complex(P), reduced=True)
    delta = P.subcomplex(pure_cell_mask(P, cyl))
    dh = homology_of(order_complex(delta), reduced=True)
    core = stiff_core(cyl.d).core
    if not are_isomorphic(cyl.d, looped_point_reference()):
        details.append("cylinder graph differs from the reference graph")
    if not full.is_acyclic():
        details.append(f"full complex reduced homology {full.key()}")
    if not dh.is_acyclic():
        details.append(f"delta complex reduced homology {dh.key()}")
    if not (core.n == 1 and core.has_loop(0)):
        details.append(f"stiff core has {core.n} vertices")
    return not details, details


def check_complete_pair(expected_betti: tuple = (1, 2, 1)) -> tuple[bool, list[str]]:
    details = []
    p, r = 4, 3
    for n in (2, 3):
        cyl = double_mapping_cylinder(complete_pair_spec(p, r, n))
        P = hom_complex(complete_graph(2), cyl.d)
        betti = _betti(homology_of(order_complex(P)).key())
        if betti != tuple(expected_betti):
            details.append(f"n={n}: Betti {betti} != expected {tuple(expected_betti)}")
        vc = hom_vertex_count(cyl, p, r)
        if not vc.agrees:
            details.append(f"n={n}: {vc.counted} vertex cells, closed form gives {vc.closed_form}")
    return not details, details


def check_k4_triangle() -> tuple[bool, list[str]]:
    details = []
    cyl = double_mapping_cylinder(k4_triangle_spec())
    core = stiff_core(cyl.d).core
    if not are_isomorphic(core, complete_graph(4)):
        details.append(f"stiff core has {core.n} vertices and is not K4")
    betti = _betti(homology_of(hom_complex(complete_graph(2), cyl.d)).key())
    if betti != (1, 0, 1):
        details.append(f"Betti {betti} != (1, 0, 1)")
    h = homology_of(neighbourhood_complex(k4_wedge_k3()))
    if len(h.betti) < 2 or (h.betti[1] == 0 and not h.torsion[1]):
        details.append("H1 of the neighbourhood complex vanishes")
    return not details, details


def check_apex_path() -> tuple[bool, list[str]]:
    details = []
    spec = apex_path_spec(2)
    po = pushout(spec)
    chi_g, col_g = chromatic_number(po.graph)
    cyl = double_mapping_cylinder(spec)
    chi_d, col_d = chromatic_number(cyl.d)
    if chi_g != 5 or not col_g.is_proper() or is_k_colourable(po.graph, 4) is not None:
        details.append(f"pushout chromatic number {chi_g}")
    if chi_d != 4 or not col_d.is_proper() or is_k_colourable(cyl.d, 3) is not None:
        details.append(f"cylinder chromatic number {chi_d}")
    return not details, details


def random_specs(count: int = 20, seed: int = SEED) -> list[tuple[Graph, CylinderSpec]]:
    """Alternating K2 / K3 sources with cylinders of height diam(T) + 1."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        T = complete_graph(2) if k % 2 == 0 else complete_graph(3)
        out.append((T, random_spec(rng, max_a=4, max_b=5, max_c=5, n=diameter(T) + 1)))
    return out


def double_cylinder_of(T: Graph, spec: CylinderSpec):
    PA, PB, PC = (hom_complex(T, G) for G in (spec.A, spec.B, spec.C))
    fT = induced_cell_map(T, spec.f, PA, PB)
    gT = induced_cell_map(T, spec.g, PA, PC)
    return simplicial_double_cylinder(order_complex(PA), order_complex(PB), order_complex(PC), fT.table, gT.table)


def check_double_cylinder(count: int = 20, seed: int = SEED) -> tuple[bool, list[str]]:
    details = []
    for k, (T, spec) in enumerate(random_specs(count, seed)):
        lhs = homology_of(hom_complex(T, double_mapping_cylinder(spec).d)).key()
        rhs = homology_of(double_cylinder_of(T, spec)).key()
        if lhs != rhs:
            details.append(f"spec {k}: Hom complex {lhs} vs double cylinder {rhs}")
    return not details, details


def check_appendix(count: int = 20, seed: int = SEED) -> tuple[bool, list[str]]:
    details = []
    for k, (T, spec) in enumerate(random_specs(count, seed)):
        cyl = double_mapping_cylinder(spec)
        audit = audit_appendix(T, cyl, tails=False)
        for v in audit.violations:
            details.append(f"spec {k}: {v['cell']}: {v['issue']}")
        if audit.histogram["mixed-6"]:
            details.append(f"spec {k}: type-6 cells present")
        if not audit.betti_match:
            details.append(f"spec {k}: delta {audit.delta_homology} vs full {audit.full_homology}")
    return not details, details


def tail_specs() -> list[tuple[Graph, CylinderSpec]]:
    c6, c7 = cycle_graph(6), cycle_graph(7)
    n = 4  # diam(C6) = diam(C7) = 3
    return [
        (c6, complete_pair_spec(3, 3, n)),
        (c6, complete_pair_spec(4, 3, n)),
        (c7, complete_pair_spec(3, 3, n)),
    ]


def check_faulty_tails() -> tuple[bool, list[str]]:
    details = []
    with_faulty = 0
    for k, (T, spec) in enumerate(tail_specs()):
        cyl = double_mapping_cylinder(spec)
        audit = audit_appendix(T, cyl)
        if audit.faulty:
            with_faulty += 1
        for t in audit.tails:
            if t["length"] != t["expected_length"] or not t["reaches_end"]:
                details.append(f"spec {k}: tail of {t['cell']} has length {t['length']} of {t['expected_length']}")
    if with_faulty < 3:
        details.append(f"only {with_faulty} specs have faulty cells")
    return not details, details


def check_colouring_lift(count: int = 100, seed: int = SEED) -> tuple[bool, list[str]]:
    details = []
    rng = np.random.default_rng(seed + 9)
    done = 0
    while done < count:
        spec = random_spec(rng, n=2)
        po = pushout(spec)
        if not po.simple:
            continue
        done += 1
        chi_g, _ = chromatic_number(po.graph)
        chi_d, _ = chromatic_number(double_mapping_cylinder(spec).d)
        if chi_g < chi_d:
            details.append(f"instance {done}: pushout {chi_g} < cylinder {chi_d}")
    return not details, details


def check_bipartite(count: int = 100, seed: int = SEED) -> tuple[bool, list[str]]:
    details = []
    rng = np.random.default_rng(seed + 10)
    for k in range(count):
        n = int(rng.integers(2, 11))
        g = random_connected_graph(n, float(rng.uniform(0.1, 0.6)), rng)
        disconnected = not neighbourhood_complex(g).is_connected()
        if disconnected != is_bipartite(g)[0]:
            details.append(f"graph {k}: disconnected={disconnected}, bipartite={is_bipartite(g)[0]}")
    return not details, details


def fold_instances(count: int = 30, seed: int = SEED):
    """Half product-with-interval instances, half single-fold instances."""
    rng = np.random.default_rng(seed + 11)
    sources = [complete_graph(2), complete_graph(3)]
    out = []
    for k in range(count):
        if k % 2 == 0:
            G = sources[(k // 2) % len(sources)]
            H = random_connected_graph(int(rng.integers(3, 6)), 0.5, rng, name="H")
            out.append(("interval", G, H, int(rng.integers(1, 3))))
        else:
            while True:
                g = random_connected_graph(int(rng.integers(4, 8)), 0.4, rng)
                fold = find_fold(g)
                if fold is not None:
                    break
            out.append(("fold", g, fold, None))
    return out


def check_invariances(count: int = 30, seed: int = SEED) -> tuple[bool, list[str]]:
    details = []
    for k, (kind, a, b, n) in enumerate(fold_instances(count, seed)):
        if kind == "interval":
            big = categorical_product(b, looped_interval(n))
            lhs = homology_of(hom_complex(a, big)).key()
            rhs = homology_of(hom_complex(a, b)).key()
        else:
            u, _ = b
            lhs = homology_of(neighbourhood_complex(a)).key()
            rhs = homology_of(neighbourhood_complex(a.delete_vertex(u))).key()
        if lhs != rhs:
            details.append(f"instance {k} ({kind}): {lhs} vs {rhs}")
    return not details, details


def pipeline_graphs(count: int = 20, seed: int = SEED) -> list[Graph]:
    rng = np.random.default_rng(seed + 12)
    named = [cycle_graph(5), complete_graph(4), k4_wedge_k3()]
    rand = [random_nonbipartite_graph(int(rng.integers(4, 10)), 0.35, rng, name=f"R{k}") for k in range(count)]
    return named + rand


def check_pipeline(count: int = 20, seed: int = SEED) -> tuple[bool, list[str]]:
    details = []
    for g in pipeline_graphs(count, seed):
        rep = lovasz_bound(g)
        chi = rep.chi_exact
        if not rep.pipeline_lower <= rep.lovasz_lower <= chi:
            details.append(f"{g.name}: pipeline {rep.pipeline_lower}, direct {rep.lovasz_lower}, chi {chi}")
        if rep.pipeline_lower > chi:
            details.append(f"{g.name}: pipeline bound {rep.pipeline_lower} exceeds chi {chi}")
        trace = reduce_pipeline(g)
        if trace.chi_claim != chi:
            details.append(f"{g.name}: claimed chi {trace.chi_claim}, exact {chi}")
    return not details, details


CHECKS: list[tuple[int, str, float, Callable[[], tuple[bool, list[str]]]]] = [
    (1, "sphere ladder Hom(K2,Kn)", 60, check_sphere_ladder),
    (2, "looped-point cylinder contractible", 5, check_looped_point),
    (3, "complete-pair cylinder homology and vertex count", 60, check_complete_pair),
    (4, "K4 wedge K3 split", 60, check_k4_triangle),
    (5, "apex-path colouring gap", 10, check_apex_path),
    (6, "Hom of cylinder vs double cylinder of Homs", 600, check_double_cylinder),
    (7, "maximal-cell audit", 600, check_appendix),
    (8, "faulty-cell tails", 300, check_faulty_tails),
    (9, "pushout colours at least the cylinder", 300, check_colouring_lift),
    (10, "bipartite iff disconnected neighbourhood complex", 30, check_bipartite),
    (11, "interval product and fold invariance", 300, check_invariances),
    (12, "pipeline bound ordering and chi claims", 300, check_pipeline),
]


def run_check(number: int, **options) -> CheckResult:
    """Run one check; options the check does not take (e.g. ``seed``) are ignored."""
    for num, name, limit, fn in CHECKS:
        if num == number:
            accepted = inspect.signature(fn).parameters
            kw = {k: v for k, v in options.items() if k in accepted}
            t0 = time.perf_counter()
            passed, details = fn(**kw)
            return CheckResult(num, name, passed, time.perf_counter() - t0, limit, details)
    raise KeyError(number)


def run_all(numbers=None, **options) -> list[CheckResult]:
    nums = [c[0] for c in CHECKS] if numbers is None else list(numbers)
    return [run_check(k, **options) for k in nums]
