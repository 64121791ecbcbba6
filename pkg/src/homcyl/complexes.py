"""Neighbourhood complexes, Hom complexes and their order complexes.

A Hom complex Hom(T, G) is stored as an array of cells.  Row i holds one
bitmask per vertex of T (the value set of the cell at that vertex).  Rows are
sorted by dimension and then lexicographically, so every proper face of a cell
sits at a smaller row index.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .graphs import Graph, GraphError, GraphMap, bits, is_connected

DEFAULT_CELL_CAP = 2_000_000
DEFAULT_CHAIN_CAP = 2_000_000


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured size cap."""


class ComplexError(ValueError):
    pass


# --------------------------------------------------------------------------
# row lookup


class RowIndex:
    """Exact lookup of integer rows in a fixed 2-d array."""

    def __init__(self, rows: np.ndarray):
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        self.width = rows.shape[1] if rows.ndim == 2 else 0
        self._dtype = np.dtype((np.void, 8 * max(self.width, 1)))
        keys = rows.view(self._dtype).ravel() if len(rows) else np.zeros(0, self._dtype)
        self._order = np.argsort(keys, kind="stable")
        self._sorted = keys[self._order]

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Row indices, with -1 where a query row is absent."""
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        if len(rows) == 0:
            return np.zeros(0, dtype=np.int64)
        q = rows.view(self._dtype).ravel()
        pos = np.searchsorted(self._sorted, q)
        pos_c = np.minimum(pos, max(len(self._sorted) - 1, 0))
        if len(self._sorted) == 0:
            return -np.ones(len(rows), dtype=np.int64)
        hit = self._sorted[pos_c] == q
        return np.where(hit, self._order[pos_c], -1).astype(np.int64)


# --------------------------------------------------------------------------
# cells


def _mask_labels(g: Graph, mask: int) -> list[str]:
    return [g.labels[v] for v in bits(mask)]


@dataclass(frozen=True)
class Cell:
    """A multi-homomorphism: each vertex of ``source`` gets a nonempty vertex set of ``target``."""

    source: Graph
    target: Graph
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.source.n:
            raise ComplexError("assignment length does not match the source graph")

    @property
    def dim(self) -> int:
        return sum(bin(m).count("1") for m in self.assignment) - len(self.assignment)

    def is_valid(self) -> bool:
        if any(m == 0 for m in self.assignment):
            return False
        tgt = self.target
        for x, y in self.source.edges():
            for u in bits(self.assignment[x]):
                if self.assignment[y] & ~tgt.nbr[u]:
                    return False
        return True

    def image(self) -> int:
        out = 0
        for m in self.assignment:
            out |= m
        return out

    def values(self, t) -> list[str]:
        i = t if isinstance(t, int) else self.source.index(t)
        return _mask_labels(self.target, self.assignment[i])

    def is_face_of(self, other: "Cell") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.assignment, other.assignment))

    def meet(self, other: "Cell") -> "Cell | None":
        """Largest common face, or None when the cells share no face."""
        inter = tuple(a & b for a, b in zip(self.assignment, other.assignment))
        if any(m == 0 for m in inter):
            return None
        return Cell(self.source, self.target, inter)

    def restrict(self, mask: int) -> "Cell | None":
        inter = tuple(a & mask for a in self.assignment)
        if any(m == 0 for m in inter):
            return None
        return Cell(self.source, self.target, inter)

    def label(self) -> str:
        parts = [self.values(i) for i in range(self.source.n)]
        single = all(len(p) == 1 for p in parts)
        short = all(len(lab) == 1 for p in parts for lab in p)
        if single and short:
            return "".join(p[0] for p in parts)
        text = [p[0] if len(p) == 1 else "{" + ",".join(p) + "}" for p in parts]
        return "|".join(text)

    def as_dict(self) -> dict:
        return {self.source.labels[i]: self.values(i) for i in range(self.source.n)}

    def __repr__(self) -> str:
        return f"Cell({self.label()})"


def make_cell(source: Graph, target: Graph, values) -> Cell:
    """Build and validate a cell from ``{t_label: iterable of target labels}`` or a sequence."""
    if isinstance(values, dict):
        seq = [values[lab] for lab in source.labels]
    else:
        seq = list(values)
    masks = []
    for vs in seq:
        if isinstance(vs, str):
            vs = [vs]
        m = 0
        for lab in vs:
            m |= 1 << target.index(lab)
        masks.append(m)
    cell = Cell(source, target, tuple(masks))
    if not cell.is_valid():
        raise ComplexError(f"not a cell of Hom({source.name}, {target.name}): {values}")
    return cell


# --------------------------------------------------------------------------
# polyhedral complexes


def _sort_cells(cells: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    dims = kernels.cell_dims(cells) if len(cells) else np.zeros(0, np.int64)
    keys = [cells[:, j] for j in range(cells.shape[1] - 1, -1, -1)] + [dims]
    order = np.lexsort(keys) if len(cells) else np.zeros(0, np.int64)
    return cells[order], dims[order]


@dataclass
class PolyhedralComplex:
    """All cells of Hom(source, target), sorted by dimension."""

    source: Graph
    target: Graph
    cells: np.ndarray
    dims: np.ndarray
    maximal: np.ndarray
    _index: RowIndex | None = field(default=None, repr=False)
    _faces: tuple | None = field(default=None, repr=False)

    @property
    def num_cells(self) -> int:
        return int(len(self.cells))

    @property
    def dim(self) -> int:
        return int(self.dims.max()) if len(self.dims) else -1

    def cell(self, i: int) -> Cell:
        return Cell(self.source, self.target, tuple(int(m) for m in self.cells[i]))

    @property
    def maximal_cells(self) -> list[Cell]:
        return [self.cell(int(i)) for i in self.maximal]

    def vertex_cells(self) -> list[Cell]:
        return [self.cell(int(i)) for i in np.flatnonzero(self.dims == 0)]

    def f_vector(self) -> list[int]:
        if not len(self.dims):
            return []
        return np.bincount(self.dims).tolist()

    def euler_characteristic(self) -> int:
        return int(sum((-1) ** d * c for d, c in enumerate(self.f_vector())))

    def index_of(self, cell) -> int:
        """Row of a cell (a Cell or a mask tuple); -1 when absent."""
        masks = cell.assignment if isinstance(cell, Cell) else cell
        if self._index is None:
            self._index = RowIndex(self.cells)
        return int(self._index.lookup(np.asarray([masks], dtype=np.int64))[0])

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        if self._index is None:
            self._index = RowIndex(self.cells)
        return self._index.lookup(rows)

    def dim_starts(self) -> np.ndarray:
        top = self.dim
        return np.searchsorted(self.dims, np.arange(top + 2)).astype(np.int64)

    def face_lists(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR proper-face lists (faces of cell i at ``indices[indptr[i]:indptr[i+1]]``)."""
        if self._faces is None:
            self._faces = kernels.face_relation(self.cells, self.dim_starts())
        return self._faces

    def labels(self) -> list[str]:
        return [self.cell(i).label() for i in range(self.num_cells)]

    def subcomplex(self, keep: np.ndarray) -> "PolyhedralComplex":
        """Cells selected by a boolean mask.  The selection must be closed under faces."""
        cells = self.cells[keep]
        return _complex_from_cells(self.source, self.target, cells)


def _bfs_order(t: Graph) -> list[int]:
    seen = [False] * t.n
    order = []
    for root in range(t.n):
        if seen[root]:
            continue
        seen[root] = True
        dq = deque([root])
        while dq:
            u = dq.popleft()
            order.append(u)
            for w in bits(t.nbr[u]):
                if not seen[w]:
                    seen[w] = True
                    dq.append(w)
    return order


def _maximal_flags(cells: np.ndarray, source: Graph, target: Graph) -> np.ndarray:
    """A cell is maximal iff no single vertex can be added to any of its value sets."""
    full = (1 << target.n) - 1
    gn = target.nbr
    out = np.ones(len(cells), dtype=bool)
    cn_cache: dict[int, int] = {}

    def cn(mask: int) -> int:
        r = cn_cache.get(mask)
        if r is None:
            r = full
            for v in bits(mask):
                r &= gn[v]
            cn_cache[mask] = r
        return r

    nbrs = [list(bits(source.nbr[t] & ~(1 << t))) for t in range(source.n)]
    for i, row in enumerate(cells):
        masks = [int(m) for m in row]
        for t in range(source.n):
            room = full & ~masks[t]
            for w in nbrs[t]:
                room &= cn(masks[w])
            if source.has_loop(t):
                room &= cn(masks[t])
                # a new vertex must also be adjacent to itself
                room = sum(1 << v for v in bits(room) if gn[v] >> v & 1)
            if room:
                out[i] = False
                break
    return out


def _complex_from_cells(source: Graph, target: Graph, cells: np.ndarray) -> PolyhedralComplex:
    cells, dims = _sort_cells(np.asarray(cells, dtype=np.int64).reshape(-1, source.n))
    flags = _maximal_flags(cells, source, target)
    return PolyhedralComplex(source, target, cells, dims, np.flatnonzero(flags))


def hom_complex(T: Graph, G: Graph, cap: int = DEFAULT_CELL_CAP) -> PolyhedralComplex:
    """Every cell of Hom(T, G), enumerated exactly by backtracking over T's vertices."""
    if G.n > kernels.MAX_TARGET_VERTICES:
        raise BudgetExceeded(f"target has {G.n} vertices; at most {kernels.MAX_TARGET_VERTICES} supported")
    if T.n == 0:
        raise ComplexError("source graph is empty")
    if not is_connected(T):
        warnings.warn("source graph is disconnected", stacklevel=2)
    order = _bfs_order(T)
    depth_of = {v: d for d, v in enumerate(order)}
    back_start = [0]
    back_idx: list[int] = []
    for d, v in enumerate(order):
        back_idx.extend(sorted(depth_of[w] for w in bits(T.nbr[v]) if w != v and depth_of[w] < d))
        back_start.append(len(back_idx))
    back_start.append(len(back_idx))
    loops = np.array([T.has_loop(v) for v in order], dtype=np.bool_)
    rows, count = kernels.enumerate_cells(
        np.asarray(order, dtype=np.int64),
        np.asarray(back_start, dtype=np.int64),
        np.asarray(back_idx, dtype=np.int64),
        loops,
        np.asarray(G.nbr, dtype=np.int64),
        int(cap),
    )
    if count < 0:
        raise BudgetExceeded(f"Hom({T.name}, {G.name}) has more than {cap} cells")
    return _complex_from_cells(T, G, rows[:count])


# --------------------------------------------------------------------------
# induced maps


def _map_masks(masks: np.ndarray, h: GraphMap) -> np.ndarray:
    out = np.zeros_like(masks)
    for v in range(h.domain.n):
        hit = (masks >> v) & 1
        out |= hit * np.int64(1 << h.assignment[v])
    return out


@dataclass
class CellMap:
    """Map between Hom complexes induced by a graph homomorphism, as a row table."""

    source: PolyhedralComplex
    target: PolyhedralComplex
    table: np.ndarray

    def __call__(self, cell: Cell) -> Cell:
        return self.target.cell(int(self.table[self.source.index_of(cell)]))

    def is_order_preserving(self) -> bool:
        indptr, indices = self.source.face_lists()
        tgt = self.target.cells
        for i in range(self.source.num_cells):
            hi = tgt[self.table[i]]
            for j in indices[indptr[i]:indptr[i + 1]]:
                if np.any(tgt[self.table[j]] & ~hi):
                    return False
        return True


def induced_cell_map(
    T: Graph,
    h: GraphMap,
    src: PolyhedralComplex | None = None,
    dst: PolyhedralComplex | None = None,
    cap: int = DEFAULT_CELL_CAP,
) -> CellMap:
    """Push each cell forward pointwise along the homomorphism ``h``."""
    if not h.is_homomorphism():
        raise GraphError("induced maps need a homomorphism")
    src = src if src is not None else hom_complex(T, h.domain, cap)
    dst = dst if dst is not None else hom_complex(T, h.codomain, cap)
    images = _map_masks(src.cells, h)
    table = dst.lookup(images)
    if np.any(table < 0):
        raise ComplexError("image cell missing from the target complex")
    return CellMap(src, dst, table)


# --------------------------------------------------------------------------
# simplicial complexes


def _rows(simplices: Iterable[Sequence[int]], width: int) -> np.ndarray:
    arr = np.asarray(sorted(simplices), dtype=np.int64)
    return arr.reshape(-1, width)


class SimplicialComplex:
    """Finite abstract simplicial complex on vertices ``0..len(vertex_labels)-1``.

    ``by_dim[d]`` holds every d-simplex as a sorted row, rows in lexicographic
    order.  Vertices that lie in no simplex are not allowed.
    """

    def __init__(self, vertex_labels: Sequence, by_dim: list[np.ndarray]):
        self.vertex_labels = [str(v) for v in vertex_labels]
        self.by_dim = [np.asarray(a, dtype=np.int64) for a in by_dim]
        while self.by_dim and len(self.by_dim[-1]) == 0:
            self.by_dim.pop()
        self._facets: list[tuple[int, ...]] | None = None
        self._index: dict[int, RowIndex] = {}

    # construction
    @classmethod
    def from_facets(cls, vertex_labels: Sequence, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        by_size: dict[int, set[tuple[int, ...]]] = {}
        tops = {tuple(sorted(set(f))) for f in facets}
        tops.discard(())
        for f in tops:
            for r in range(1, len(f) + 1):
                by_size.setdefault(r, set()).update(itertools.combinations(f, r))
        top = max(by_size, default=0)
        by_dim = [_rows(by_size.get(r, ()), r) for r in range(1, top + 1)]
        return cls(vertex_labels, by_dim)

    @classmethod
    def from_chains(cls, vertex_labels: Sequence, chains: np.ndarray) -> "SimplicialComplex":
        """Simplices given as rows padded with -1 (every face already present)."""
        lengths = (chains >= 0).sum(axis=1) if len(chains) else np.zeros(0, np.int64)
        top = int(lengths.max()) if len(lengths) else 0
        by_dim = []
        for r in range(1, top + 1):
            rows = np.sort(chains[lengths == r, :r], axis=1)
            if len(rows):
                rows = rows[np.lexsort(rows.T[::-1])]
            by_dim.append(rows)
        return cls(vertex_labels, by_dim)

    # queries
    @property
    def n_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def dim(self) -> int:
        return len(self.by_dim) - 1

    def is_empty(self) -> bool:
        return not self.by_dim

    def simplices(self, d: int) -> np.ndarray:
        if 0 <= d < len(self.by_dim):
            return self.by_dim[d]
        return np.zeros((0, max(d + 1, 1)), dtype=np.int64)

    def num_simplices(self) -> int:
        return int(sum(len(a) for a in self.by_dim))

    def f_vector(self) -> list[int]:
        return [len(a) for a in self.by_dim]

    def euler_characteristic(self) -> int:
        return int(sum((-1) ** d * c for d, c in enumerate(self.f_vector())))

    def index(self, d: int) -> RowIndex:
        if d not in self._index:
            self._index[d] = RowIndex(self.simplices(d))
        return self._index[d]

    def contains(self, simplex: Iterable[int]) -> bool:
        s = sorted(set(simplex))
        if not s:
            return True
        return int(self.index(len(s) - 1).lookup(np.asarray([s]))[0]) >= 0

    @property
    def facets(self) -> list[tuple[int, ...]]:
        if self._facets is None:
            out = []
            for d, rows in enumerate(self.by_dim):
                covered = np.zeros(len(rows), dtype=bool)
                if d + 1 < len(self.by_dim):
                    up = self.by_dim[d + 1]
                    idx = self.index(d)
                    for j in range(d + 2):
                        hit = idx.lookup(np.delete(up, j, axis=1))
                        covered[hit[hit >= 0]] = True
                out.extend(tuple(int(x) for x in r) for r in rows[~covered])
            self._facets = sorted(out, key=lambda s: (len(s), s))
        return self._facets

    def edges(self) -> np.ndarray:
        return self.simplices(1)

    def components(self) -> list[list[int]]:
        from scipy.cluster.hierarchy import DisjointSet

        ds = DisjointSet(range(self.n_vertices))
        for u, v in self.edges():
            ds.merge(int(u), int(v))
        comps = [sorted(s) for s in ds.subsets()]
        return sorted(comps, key=lambda c: c[0])

    def is_connected(self) -> bool:
        return self.n_vertices > 0 and len(self.components()) == 1

    def relabelled(self, perm: Sequence[int]) -> "SimplicialComplex":
        """Same complex with vertex i renamed to ``perm[i]``."""
        p = np.asarray(perm, dtype=np.int64)
        labels = [""] * self.n_vertices
        for i, j in enumerate(p):
            labels[j] = self.vertex_labels[i]
        by_dim = []
        for rows in self.by_dim:
            r = np.sort(p[rows], axis=1)
            by_dim.append(r[np.lexsort(r.T[::-1])] if len(r) else r)
        return SimplicialComplex(labels, by_dim)

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={self.n_vertices}, f={self.f_vector()})"

    # text interfaces
    def to_text(self) -> str:
        lines = [f"complex {self.n_vertices} {len(self.facets)}"]
        lines += [f"v {i} {lab}" for i, lab in enumerate(self.vertex_labels)]
        lines += ["f " + " ".join(str(v) for v in f) for f in self.facets]
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "K") -> str:
        lines = [f"graph {name} {{"]
        for i, lab in enumerate(self.vertex_labels):
            lines.append(f'  v{i} [label="{lab}"];')
        for u, v in self.edges():
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def parse_complex(text: str) -> SimplicialComplex:
    """Inverse of :meth:`SimplicialComplex.to_text`.  Errors carry line numbers."""
    labels: dict[int, str] = {}
    facets = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "complex":
                declared = int(parts[1])
            elif parts[0] == "v":
                labels[int(parts[1])] = parts[2] if len(parts) > 2 else parts[1]
            elif parts[0] == "f":
                facets.append([int(x) for x in parts[1:]])
            else:
                raise ValueError(f"unknown record {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ComplexError(f"line {lineno}: {exc}") from None
    n = declared if declared is not None else (max(labels, default=-1) + 1)
    for f in facets:
        for v in f:
            if not 0 <= v < n:
                raise ComplexError(f"facet vertex {v} out of range")
    names = [labels.get(i, str(i)) for i in range(n)]
    used = sorted({v for f in facets for v in f})
    if len(used) != n:
        remap = {v: i for i, v in enumerate(used)}
        names = [names[v] for v in used]
        facets = [[remap[v] for v in f] for f in facets]
    return SimplicialComplex.from_facets(names, facets)


# --------------------------------------------------------------------------
# constructions


def neighbourhood_complex(G: Graph) -> SimplicialComplex:
    """Simplices are vertex sets with a common neighbour."""
    nbhds = {G.nbr[v] for v in range(G.n) if G.nbr[v]}
    maximal = [m for m in nbhds if not any(m != o and m & ~o == 0 for o in nbhds)]
    used = 0
    for m in maximal:
        used |= m
    verts = list(bits(used))
    pos = {v: i for i, v in enumerate(verts)}
    facets = [[pos[v] for v in bits(m)] for m in maximal]
    return SimplicialComplex.from_facets([G.labels[v] for v in verts], facets)


def _chains(indptr, indices, maxlen: int, cap: int) -> np.ndarray:
    below = kernels.count_chains(indptr, indices)
    total = int(below.sum())
    if total > cap:
        raise BudgetExceeded(f"order complex has {total} simplices (cap {cap})")
    return kernels.fill_chains(indptr, indices, below, maxlen)


def order_complex(P: PolyhedralComplex, cap: int = DEFAULT_CHAIN_CAP) -> SimplicialComplex:
    """Chains of nonempty cells under the face order."""
    if P.num_cells == 0:
        return SimplicialComplex([], [])
    indptr, indices = P.face_lists()
    chains = _chains(indptr, indices, P.dim + 1, cap)
    return SimplicialComplex.from_chains(P.labels(), chains)


def poset_order_complex(labels: Sequence, below: Sequence[Sequence[int]], cap: int = DEFAULT_CHAIN_CAP) -> SimplicialComplex:
    """Order complex of a finite poset given by its strict down-sets.

    Elements must be listed so that ``below[i]`` only contains indices < i.
    """
    indptr = np.zeros(len(below) + 1, dtype=np.int64)
    flat: list[int] = []
    height = np.zeros(len(below), dtype=np.int64)
    for i, lows in enumerate(below):
        lows = sorted(lows)
        if any(j >= i for j in lows):
            raise ComplexError("poset elements must be listed bottom-up")
        flat.extend(lows)
        indptr[i + 1] = len(flat)
        height[i] = 1 + max((height[j] for j in lows), default=0)
    maxlen = int(height.max()) if len(height) else 1
    chains = _chains(indptr, np.asarray(flat, dtype=np.int64), maxlen, cap)
    return SimplicialComplex.from_chains(labels, chains)


def _check_simplicial(K: SimplicialComplex, L: SimplicialComplex, phi: np.ndarray, what: str):
    if len(phi) != K.n_vertices:
        raise ComplexError(f"{what}: vertex map has the wrong length")
    if np.any((phi < 0) | (phi >= L.n_vertices)):
        raise ComplexError(f"{what}: vertex map leaves the target")
    for rows in K.by_dim:
        for img in {tuple(sorted(set(phi[r].tolist()))) for r in rows}:
            if not L.contains(img):
                raise ComplexError(f"{what}: image {img} is not a simplex")


def simplicial_double_cylinder(
    KA: SimplicialComplex,
    KB: SimplicialComplex,
    KC: SimplicialComplex,
    phi: Sequence[int],
    psi: Sequence[int],
) -> SimplicialComplex:
    """Union of the two mapping cylinders of ``phi: KA -> KB`` and ``psi: KA -> KC`` along KA.

    Each prism over a simplex v0 < ... < vk of KA (global vertex order) is cut
    into the staircase simplices {v0..vi, h(vi)..h(vk)}, and the far end is
    identified with the target through ``h``.  Vertices are numbered KB, then
    KC, then KA.
    """
    phi = np.asarray(phi, dtype=np.int64)
    psi = np.asarray(psi, dtype=np.int64)
    _check_simplicial(KA, KB, phi, "phi")
    _check_simplicial(KA, KC, psi, "psi")
    nb, nc = KB.n_vertices, KC.n_vertices
    off_a = nb + nc
    labels = (
        [f"B:{x}" for x in KB.vertex_labels]
        + [f"C:{x}" for x in KC.vertex_labels]
        + [f"A:{x}" for x in KA.vertex_labels]
    )
    facets: list[tuple[int, ...]] = list(KB.facets)
    facets += [tuple(v + nb for v in f) for f in KC.facets]
    for f in KA.facets:
        mid = [v + off_a for v in f]
        for i in range(len(f)):
            facets.append(tuple(mid[: i + 1]) + tuple(int(phi[v]) for v in f[i:]))
            facets.append(tuple(mid[: i + 1]) + tuple(int(psi[v]) + nb for v in f[i:]))
    return SimplicialComplex.from_facets(labels, facets)


def vertex_map_from_cell_map(cm: CellMap) -> np.ndarray:
    """The induced simplicial map of order complexes, as a vertex table."""
    return cm.table.copy()


# --------------------------------------------------------------------------
# vertex counts for complete-graph cylinders


@dataclass(frozen=True)
class VertexCount:
    counted: int
    closed_form: int
    agrees: bool


def hom_vertex_count(cyl, p: int | None = None, r: int | None = None) -> VertexCount:
    """Vertices of Hom(K2, D_n) for a cylinder K_p <- K2 -> K_r of injective maps.

    Returns the enumerated count next to the closed form p(p-1) + r(r-1) + 6n - 8.
    """
    from .graphs import complete_graph, find_isomorphism

    spec = cyl.spec
    p = spec.B.n if p is None else p
    r = spec.C.n if r is None else r
    shape_ok = (
        find_isomorphism(spec.A, complete_graph(2)) is not None
        and find_isomorphism(spec.B, complete_graph(p)) is not None
        and find_isomorphism(spec.C, complete_graph(r)) is not None
        and len(set(spec.f.assignment)) == 2
        and len(set(spec.g.assignment)) == 2
    )
    if not shape_ok:
        raise ComplexError("cylinder is not of the form K_p <- K2 -> K_r with injective maps")
    k2 = complete_graph(2)
    P = hom_complex(k2, cyl.d)
    counted = int(np.count_nonzero(P.dims == 0))
    closed = p * (p - 1) + r * (r - 1) + 6 * spec.n - 8
    return VertexCount(counted, closed, counted == closed)
