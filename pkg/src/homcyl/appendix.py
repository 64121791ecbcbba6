"""Strata of a cylinder graph and the classification of maximal Hom cells.

The cylinder part ``Q`` of D_n is the image of ``A x I_n``: its vertices are
all level classes (levels 0 and n included) and its edges are the images of
the product edges only.  A cell lies in one of three pure families when all
its values sit in B, in C, or in Q with every forced edge a Q-edge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .complexes import Cell, PolyhedralComplex, _maximal_flags, hom_complex
from .cylinder import Cylinder
from .graphs import (
    Graph,
    bits,
    categorical_product,
    complete_graph,
    diameter,
    find_fold,
    find_isomorphism,
    looped_interval,
)
from .topology import homology_of


class AppendixError(ValueError):
    pass


@dataclass(frozen=True)
class Strata:
    X: int
    Y: int
    Z: int
    Zprime: int

    def labels(self, g: Graph) -> dict[str, list[str]]:
        return {k: [g.labels[v] for v in bits(getattr(self, k))] for k in ("X", "Y", "Z", "Zprime")}


class CylinderParts:
    """Vertex masks and the cylinder-part adjacency of a cylinder graph."""

    def __init__(self, cyl: Cylinder):
        self.cyl = cyl
        n = cyl.n
        d = cyl.d
        self.B = cyl.b_mask
        self.C = cyl.c_mask
        self.fA = cyl.level_mask(n)
        self.gA = cyl.level_mask(0)
        self.X = self.B & ~self.fA
        self.Cx = self.C & ~self.gA
        self.Q = cyl.levels_mask(0, n)
        self.interior = cyl.levels_mask(1, n - 1) & ~(self.B | self.C)
        self.level_of = np.full(d.n, -1, dtype=np.int64)
        for i in range(n + 1):
            for v in bits(cyl.level_mask(i)):
                self.level_of[v] = i
        qnbr = [0] * d.n
        prod = categorical_product(cyl.spec.A, looped_interval(n))
        for u, v in prod.edges():
            a, i = divmod(u, n + 1)
            b, j = divmod(v, n + 1)
            x, y = cyl.vertex_of(a, i), cyl.vertex_of(b, j)
            qnbr[x] |= 1 << y
            qnbr[y] |= 1 << x
        self.qnbr = qnbr

    def level_range(self, lo: int, hi: int) -> int:
        out = 0
        for i in range(max(lo, 0), min(hi, self.cyl.n) + 1):
            out |= self.cyl.level_mask(i)
        return out

    def levels_touched(self, mask: int) -> list[int]:
        return sorted({int(self.level_of[v]) for v in bits(mask) if self.level_of[v] >= 0})


def strata(cyl: Cylinder) -> Strata:
    """X = B minus f(A), Y = f(A), Z = level n-1, Z' = everything else."""
    parts = CylinderParts(cyl)
    Y = parts.fA
    X = parts.X
    Z = cyl.level_mask(cyl.n - 1) & ~(X | Y)
    rest = cyl.d.all_mask & ~(X | Y | Z)
    return Strata(X, Y, Z, rest)


# --------------------------------------------------------------------------
# classification

KINDS = ("pure-AxI", "pure-B", "pure-C", "mixed-4", "mixed-5", "mixed-6")
_PRECEDENCE = (2, 3, 1, 6, 4, 5)


@dataclass(frozen=True)
class CellClass:
    kind: str
    faulty: bool
    conditions: frozenset
    low: int | None = None
    high: int | None = None

    @property
    def ambiguous(self) -> bool:
        return len(self.conditions) != 1


def _is_maximal(cell: Cell) -> bool:
    arr = np.asarray([cell.assignment], dtype=np.int64)
    return bool(_maximal_flags(arr, cell.source, cell.target)[0])


def cell_conditions(cell: Cell, parts: CylinderParts) -> set[int]:
    """Which of the six image conditions a cell satisfies."""
    im = cell.image()
    meets_x = bool(im & parts.X)
    meets_cx = bool(im & parts.Cx)
    meets_mid = bool(im & parts.interior)
    out = set()
    if im & ~parts.Q == 0:
        out.add(1)
    if im & ~parts.B == 0:
        out.add(2)
    if im & ~parts.C == 0:
        out.add(3)
    if meets_x and meets_mid and not meets_cx:
        out.add(4)
    if meets_cx and meets_mid and not meets_x:
        out.add(5)
    if meets_x and meets_mid and meets_cx:
        out.add(6)
    return out


def classify_cell(cell: Cell, cyl: Cylinder, parts: CylinderParts | None = None, check: bool = True) -> CellClass:
    """Class of a maximal cell of Hom(T, D_n).

    Mixed classes are read with the strict interior levels 1..n-1; faultiness
    means the cell reaches more than one level away from its glued end.
    """
    parts = parts or CylinderParts(cyl)
    if check and not _is_maximal(cell):
        raise AppendixError(f"{cell.label()} is not a maximal cell")
    conds = cell_conditions(cell, parts)
    kind_no = next((c for c in _PRECEDENCE if c in conds), None)
    if kind_no is None:
        return CellClass("unclassified", False, frozenset(conds))
    kind = {1: "pure-AxI", 2: "pure-B", 3: "pure-C", 4: "mixed-4", 5: "mixed-5", 6: "mixed-6"}[kind_no]
    mids = parts.levels_touched(cell.image() & parts.interior)
    low = mids[0] if mids else None
    high = mids[-1] if mids else None
    n = cyl.n
    faulty = False
    if kind == "mixed-4":
        faulty = low is not None and low <= n - 2
    elif kind == "mixed-5":
        faulty = high is not None and high >= 2
    return CellClass(kind, faulty, frozenset(conds), low, high)


def _vertex_hom_inside(cell: Cell, allowed: int, nbr: list[int]) -> bool:
    """Is there a homomorphism T -> (allowed, nbr) choosing h(t) in cell(t)?"""
    T = cell.source
    order = sorted(range(T.n), key=lambda t: bin(cell.assignment[t] & allowed).count("1"))
    choice = [-1] * T.n

    def rec(k: int) -> bool:
        if k == len(order):
            return True
        t = order[k]
        cand = cell.assignment[t] & allowed
        for w in bits(T.nbr[t]):
            if choice[w] >= 0:
                cand &= nbr[choice[w]]
        for v in bits(cand):
            if T.has_loop(t) and not nbr[v] >> v & 1:
                continue
            choice[t] = v
            if rec(k + 1):
                return True
            choice[t] = -1
        return False

    return rec(0)


def pure_faces(cell: Cell, cyl: Cylinder, parts: CylinderParts | None = None) -> set[str]:
    """Families ("B", "C", "AxI") containing some face of the cell."""
    parts = parts or CylinderParts(cyl)
    out = set()
    if all(m & parts.B for m in cell.assignment):
        out.add("B")
    if all(m & parts.C for m in cell.assignment):
        out.add("C")
    if all(m & parts.Q for m in cell.assignment) and _vertex_hom_inside(cell, parts.Q, parts.qnbr):
        out.add("AxI")
    return out


def has_pure_face(cell: Cell, cyl: Cylinder, parts: CylinderParts | None = None) -> bool:
    return bool(pure_faces(cell, cyl, parts))


def _in_family(row, source: Graph, allowed: int, nbr: list[int] | None) -> bool:
    if any(int(m) & ~allowed for m in row):
        return False
    if nbr is None:
        return True
    for x, y in source.edges():
        my = int(row[y])
        for u in bits(int(row[x])):
            if my & ~nbr[u]:
                return False
    return True


def pure_cell_mask(P: PolyhedralComplex, cyl: Cylinder, parts: CylinderParts | None = None) -> np.ndarray:
    """Boolean selector of the cells lying in Hom(T,B), Hom(T,C) or Hom(T,Q)."""
    parts = parts or CylinderParts(cyl)
    out = np.zeros(P.num_cells, dtype=bool)
    for i, row in enumerate(P.cells):
        out[i] = (
            _in_family(row, P.source, parts.B, None)
            or _in_family(row, P.source, parts.C, None)
            or _in_family(row, P.source, parts.Q, parts.qnbr)
        )
    return out


def _check_height(T: Graph, cyl: Cylinder) -> None:
    if cyl.n < diameter(T) + 1:
        raise AppendixError(f"cylinder height {cyl.n} is below diam(T) + 1 = {diameter(T) + 1}")


def delta_hom(T: Graph, cyl: Cylinder, P: PolyhedralComplex | None = None) -> PolyhedralComplex:
    """The subcomplex of Hom(T, D_n) formed by all cells of the three pure families."""
    _check_height(T, cyl)
    P = P if P is not None else hom_complex(T, cyl.d)
    return P.subcomplex(pure_cell_mask(P, cyl))


# --------------------------------------------------------------------------
# audits


def lemma_obs_audit(cyl: Cylinder, T: Graph, P: PolyhedralComplex | None = None) -> dict:
    """Check three implications about cells near the B end on every maximal cell.

    1. all values meet X u Y  =>  image inside X u Y u Z
    2. a value meeting X and Z also meets Y
    3. all values meet X u Y  =>  image avoids C
    """
    if any(T.degree(t) == 0 for t in range(T.n)):
        raise AppendixError("T has an isolated vertex")
    P = P if P is not None else hom_complex(T, cyl.d)
    st = strata(cyl)
    c_mask = cyl.c_mask
    xy = st.X | st.Y
    violations = []
    for cell in P.maximal_cells:
        im = cell.image()
        near = all(m & xy for m in cell.assignment)
        if near and im & ~(xy | st.Z):
            violations.append({"cell": cell.label(), "part": 1})
        for m in cell.assignment:
            if m & st.X and m & st.Z and not m & st.Y:
                violations.append({"cell": cell.label(), "part": 2})
                break
        if near and im & c_mask:
            violations.append({"cell": cell.label(), "part": 3})
    return {"maximal_cells": len(P.maximal), "violations": violations, "ok": not violations}


@dataclass
class FaultyTail:
    start: Cell
    kind: str
    expected_length: int
    cells: list[Cell]
    methods: list[str]
    reaches_end: bool

    @property
    def complete(self) -> bool:
        return len(self.cells) == self.expected_length and self.reaches_end

    def consecutive_meet(self) -> bool:
        chain = [self.start] + self.cells
        return all(a.meet(b) is not None for a, b in zip(chain, chain[1:]))


def _saturate_within(cell_masks: list[int], T: Graph, G: Graph, region: int) -> list[int]:
    """Greedily enlarge a cell inside ``region`` until no single vertex fits."""
    masks = list(cell_masks)
    full = region
    changed = True
    while changed:
        changed = False
        for t in range(T.n):
            room = full & ~masks[t]
            for w in bits(T.nbr[t]):
                if w == t:
                    continue
                for u in bits(masks[w]):
                    room &= G.nbr[u]
            if T.has_loop(t):
                for u in bits(masks[t]):
                    room &= G.nbr[u]
                room = sum(1 << v for v in bits(room) if G.nbr[v] >> v & 1)
            if room:
                v = (room & -room).bit_length() - 1
                masks[t] |= 1 << v
                changed = True
    return masks


def faulty_tail(cell: Cell, cyl: Cylinder, P: PolyhedralComplex | None = None) -> FaultyTail:
    """Walk a faulty cell to its glued end through maximal cells, one level at a time.

    For a mixed-4 cell with lowest interior level s, step i must land in a
    maximal cell inside V(B) u levels [s+i, n-1] sharing a face with the
    previous one; after n-s-1 steps the last cell must meet Hom(T, B).
    Mixed-5 is the mirror image.  Each step first tries the level shift (move
    the extreme level one step inward and saturate) and otherwise searches the
    maximal cells.
    """
    T = cell.source
    if find_fold(T) is not None:
        raise AppendixError("source graph is not stiff")
    if find_isomorphism(T, complete_graph(2)) is not None:
        raise AppendixError("source graph is K2")
    parts = CylinderParts(cyl)
    cls = classify_cell(cell, cyl, parts)
    if not cls.faulty:
        raise AppendixError(f"{cell.label()} is not faulty ({cls.kind})")
    P = P if P is not None else hom_complex(T, cyl.d)
    n = cyl.n
    if cls.kind == "mixed-4":
        s = cls.low
        length = n - s - 1
        end = parts.B

        def region(i: int) -> int:
            return parts.B | parts.level_range(s + i, n - 1)

        def shifted(v: int, lvl: int) -> int:
            return lvl + 1
    else:
        s = cls.high
        length = s - 1
        end = parts.C

        def region(i: int) -> int:
            return parts.C | parts.level_range(1, s - i)

        def shifted(v: int, lvl: int) -> int:
            return lvl - 1

    a_of = {}
    for a in range(cyl.spec.A.n):
        for i in range(n + 1):
            a_of.setdefault(cyl.vertex_of(a, i), a)
    maximal = [P.cell(int(i)) for i in P.maximal]
    cur = cell
    out: list[Cell] = []
    methods: list[str] = []
    for i in range(1, length + 1):
        reg = region(i)
        edge_level = s + i - 1 if cls.kind == "mixed-4" else s - i + 1
        moved = []
        for m in cur.assignment:
            new = 0
            for v in bits(m):
                if parts.level_of[v] == edge_level and not (1 << v) & (parts.B | parts.C):
                    new |= 1 << cyl.vertex_of(a_of[v], shifted(v, edge_level))
                else:
                    new |= 1 << v
            moved.append(new)
        nxt = None
        cand = Cell(T, cyl.d, tuple(m & reg for m in moved))
        if all(cand.assignment) and cand.is_valid():
            sat = Cell(T, cyl.d, tuple(_saturate_within(list(cand.assignment), T, cyl.d, reg)))
            if _is_maximal(sat) and sat.meet(cur) is not None:
                nxt = sat
                methods.append("shift")
        if nxt is None:
            best = None
            for mc in maximal:
                if mc.image() & ~reg:
                    continue
                common = mc.meet(cur)
                if common is None:
                    continue
                if best is None or common.dim > best[0]:
                    best = (common.dim, mc)
            if best is None:
                break
            nxt = best[1]
            methods.append("search")
        out.append(nxt)
        cur = nxt
    reaches = len(out) == length and all(m & end for m in cur.assignment)
    return FaultyTail(cell, cls.kind, length, out, methods, reaches)


@dataclass
class AppendixAudit:
    histogram: dict[str, int]
    violations: list[dict]
    ambiguous: int
    faulty: int
    tails: list[dict]
    delta_homology: tuple
    full_homology: tuple
    lemma: dict
    certification: str = "homology-certified"
    notes: list[str] = field(default_factory=list)

    @property
    def betti_match(self) -> bool:
        return self.delta_homology == self.full_homology

    def to_dict(self) -> dict:
        return {
            "histogram": self.histogram,
            "violations": self.violations,
            "ambiguous": self.ambiguous,
            "faulty": self.faulty,
            "tails": self.tails,
            "delta_homology": [list(x) for x in self.delta_homology],
            "full_homology": [list(x) for x in self.full_homology],
            "betti_match": self.betti_match,
            "lemma": self.lemma,
            "certification": self.certification,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=list)


def audit_appendix(T: Graph, cyl: Cylinder, P: PolyhedralComplex | None = None, tails: bool = True) -> AppendixAudit:
    """Classify every maximal cell and compare δHom with the full complex."""
    from .graphs import is_p4_free

    _check_height(T, cyl)
    P = P if P is not None else hom_complex(T, cyl.d)
    parts = CylinderParts(cyl)
    hist = {k: 0 for k in KINDS}
    hist["unclassified"] = 0
    violations = []
    ambiguous = 0
    faulty = []
    p4_free = is_p4_free(T)
    for cell in P.maximal_cells:
        cls = classify_cell(cell, cyl, parts, check=False)
        hist[cls.kind] += 1
        if cls.ambiguous:
            ambiguous += 1
        if cls.kind in ("mixed-6", "unclassified"):
            violations.append({"cell": cell.label(), "issue": cls.kind})
        faces = pure_faces(cell, cyl, parts)
        if not faces and p4_free:
            violations.append({"cell": cell.label(), "issue": "no pure face"})
        if "B" in faces and "C" in faces:
            violations.append({"cell": cell.label(), "issue": "pure faces from both B and C"})
        if cls.faulty:
            faulty.append(cell)
    lemma = lemma_obs_audit(cyl, T, P)
    for v in lemma["violations"]:
        violations.append({"cell": v["cell"], "issue": f"near-B implication {v['part']}"})
    tail_reports = []
    notes = []
    if tails and faulty:
        if find_fold(T) is None and find_isomorphism(T, complete_graph(2)) is None:
            for cell in faulty:
                tail = faulty_tail(cell, cyl, P)
                tail_reports.append(
                    {
                        "cell": cell.label(),
                        "kind": tail.kind,
                        "expected_length": tail.expected_length,
                        "length": len(tail.cells),
                        "reaches_end": tail.reaches_end,
                        "methods": tail.methods,
                    }
                )
        else:
            notes.append("faulty cells present but the source graph is not a stiff graph other than K2")
    delta = P.subcomplex(pure_cell_mask(P, cyl, parts))
    dh = homology_of(delta).key()
    fh = homology_of(P).key()
    return AppendixAudit(hist, violations, ambiguous, len(faulty), tail_reports, dh, fh, lemma, notes=notes)
