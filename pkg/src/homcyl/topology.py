"""Integer homology, edge-path group presentations and connectivity certificates."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import asdict, dataclass, field
from math import gcd

import numpy as np
import scipy.sparse as sp

from .complexes import PolyhedralComplex, SimplicialComplex


class TopologyError(ValueError):
    pass


# --------------------------------------------------------------------------
# chain complexes


@dataclass
class ChainComplex:
    """``boundaries[k-1]`` is the matrix of d_k: C_k -> C_{k-1} for k = 1..dim."""

    sizes: list[int]
    boundaries: list[sp.csc_matrix]

    @property
    def dim(self) -> int:
        return len(self.sizes) - 1

    def boundary(self, k: int) -> sp.csc_matrix:
        return self.boundaries[k - 1]

    def check(self) -> bool:
        """Whether every composite d_k d_{k+1} vanishes."""
        for k in range(1, len(self.boundaries)):
            prod = self.boundaries[k - 1] @ self.boundaries[k]
            if prod.count_nonzero():
                return False
        return True


def chain_complex(K: SimplicialComplex, verify: bool = True) -> ChainComplex:
    """Oriented simplicial chains; a simplex is oriented by increasing vertex index."""
    sizes = K.f_vector()
    mats = []
    for d in range(1, len(sizes)):
        rows = K.simplices(d)
        idx = K.index(d - 1)
        r_all, c_all, v_all = [], [], []
        cols = np.arange(len(rows), dtype=np.int64)
        for j in range(d + 1):
            faces = idx.lookup(np.delete(rows, j, axis=1))
            if np.any(faces < 0):
                raise TopologyError("complex is not closed under faces")
            r_all.append(faces)
            c_all.append(cols)
            v_all.append(np.full(len(rows), -1 if j % 2 else 1, dtype=np.int64))
        m = sp.coo_matrix(
            (np.concatenate(v_all), (np.concatenate(r_all), np.concatenate(c_all))),
            shape=(sizes[d - 1], sizes[d]),
        ).tocsc()
        mats.append(m)
    cc = ChainComplex(sizes, mats)
    if verify and not cc.check():
        raise TopologyError("boundary of a boundary is nonzero")
    return cc


def cellular_chain_complex(P: PolyhedralComplex, verify: bool = True) -> ChainComplex:
    """Cellular chains of a complex whose cells are products of simplices.

    The cell t -> S_t is the product of the simplices S_t (vertices in
    increasing order).  Its boundary follows the product rule: deleting the
    j-th vertex of S_t carries the sign (-1)^(j + dim S_0 + ... + dim S_{t-1}).
    """
    cells, dims = P.cells, P.dims
    top = P.dim
    starts = P.dim_starts()
    sizes = [int(starts[d + 1] - starts[d]) for d in range(top + 1)]
    local = np.arange(len(cells)) - starts[dims]
    sizes_dims = np.bitwise_count(cells).astype(np.int64) - 1
    prefix = np.cumsum(sizes_dims, axis=1) - sizes_dims
    mats = []
    for d in range(1, top + 1):
        rows = slice(starts[d], starts[d + 1])
        block = cells[rows]
        r_all, c_all, v_all = [], [], []
        for t in range(block.shape[1]):
            col = block[:, t]
            big = sizes_dims[rows, t] >= 1
            for v in range(P.target.n):
                bit = np.int64(1 << v)
                hit = np.flatnonzero(big & ((col & bit) != 0))
                if not len(hit):
                    continue
                faces = block[hit].copy()
                faces[:, t] &= ~bit
                idx = P.lookup(faces)
                if np.any(idx < 0):
                    raise TopologyError("cell complex is not closed under faces")
                pos = np.bitwise_count(col[hit] & np.int64(bit - 1)).astype(np.int64)
                sign = 1 - 2 * ((pos + prefix[rows][hit, t]) % 2)
                r_all.append(local[idx])
                c_all.append(hit)
                v_all.append(sign)
        m = sp.coo_matrix(
            (np.concatenate(v_all), (np.concatenate(r_all), np.concatenate(c_all))),
            shape=(sizes[d - 1], sizes[d]),
        ).tocsc()
        mats.append(m)
    cc = ChainComplex(sizes, mats)
    if verify and not cc.check():
        raise TopologyError("boundary of a boundary is nonzero")
    return cc


# --------------------------------------------------------------------------
# Smith normal form


def _normalise_diagonal(diag: list[int]) -> list[int]:
    d = [abs(x) for x in diag if x]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] // g * d[j]
    return d


def _dense_diagonal(a: list[list[int]]) -> list[int]:
    """Diagonal entries of an integer diagonalisation (min-absolute-value pivoting)."""
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, m):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                break
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, n):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(a[t][t])
        t += 1
    return diag


def _sparse_unit_elimination(cols: dict[int, dict[int, int]]) -> int:
    """Eliminate unit pivots in place; returns how many were removed.

    A pivot at (r, j) with value +-1 clears row r by column operations and then
    column j by row operations that touch nothing else, so row r and column j
    can simply be dropped.
    """
    rows: dict[int, set[int]] = {}
    for j, col in cols.items():
        for r in col:
            rows.setdefault(r, set()).add(j)
    rank = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda c: (len(cols[c]), c)):
            col = cols.get(j)
            if col is None:
                continue
            if not col:
                del cols[j]
                continue
            best = None
            for r, v in col.items():
                if v == 1 or v == -1:
                    cost = len(rows[r])
                    if best is None or cost < best[0]:
                        best = (cost, r)
            if best is None:
                continue
            r = best[1]
            v = col[r]
            for c in list(rows[r]):
                if c == j:
                    continue
                cc = cols[c]
                factor = cc[r] * v
                for rr, vv in col.items():
                    nv = cc.get(rr, 0) - factor * vv
                    if nv:
                        if rr not in cc:
                            rows[rr].add(c)
                        cc[rr] = nv
                    elif rr in cc:
                        del cc[rr]
                        rows[rr].discard(c)
            for rr in col:
                rows[rr].discard(j)
            del cols[j]
            rank += 1
            progress = True
    return rank


def _to_columns(M) -> tuple[dict[int, dict[int, int]], int]:
    if sp.issparse(M):
        m = sp.csc_matrix(M)
        m.eliminate_zeros()
        cols = {}
        for j in range(m.shape[1]):
            lo, hi = m.indptr[j], m.indptr[j + 1]
            if hi > lo:
                cols[j] = {int(r): int(v) for r, v in zip(m.indices[lo:hi], m.data[lo:hi])}
        return cols, m.shape[0]
    rows = [[int(x) for x in r] for r in M]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    cols = {}
    for j in range(ncols):
        col = {i: rows[i][j] for i in range(nrows) if rows[i][j]}
        if col:
            cols[j] = col
    return cols, nrows


def smith_normal_form(M) -> tuple[int, list[int]]:
    """Rank and invariant factors (each dividing the next) of an integer matrix.

    Accepts nested sequences, numpy arrays or scipy sparse matrices.  All
    arithmetic is on Python integers.
    """
    cols, _ = _to_columns(M)
    units = _sparse_unit_elimination(cols)
    rest = [c for c in cols.values() if c]
    if not rest:
        return units, [1] * units
    row_ids = sorted({r for c in rest for r in c})
    pos = {r: i for i, r in enumerate(row_ids)}
    dense = [[0] * len(rest) for _ in row_ids]
    for j, c in enumerate(rest):
        for r, v in c.items():
            dense[pos[r]][j] = v
    diag = _normalise_diagonal(_dense_diagonal(dense))
    return units + len(diag), [1] * units + diag


# --------------------------------------------------------------------------
# homology


@dataclass
class HomologyResult:
    betti: list[int]
    torsion: list[list[int]]
    reduced: bool = False

    def key(self) -> tuple:
        """Betti numbers and torsion with trailing zero degrees removed."""
        pairs = list(zip(self.betti, (tuple(t) for t in self.torsion)))
        while pairs and pairs[-1] == (0, ()):
            pairs.pop()
        return tuple(pairs)

    def same_as(self, other: "HomologyResult") -> bool:
        return self.reduced == other.reduced and self.key() == other.key()

    def is_acyclic(self) -> bool:
        """All reduced groups vanish (only meaningful for reduced results)."""
        return not self.key()

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def homology(C: ChainComplex, reduced: bool = False) -> HomologyResult:
    """Integer homology: Betti numbers and torsion coefficients per degree."""
    sizes = C.sizes
    if not sizes:
        return HomologyResult([], [], reduced)
    ranks = [0] * (len(sizes) + 1)
    factors: list[list[int]] = [[] for _ in range(len(sizes) + 1)]
    if reduced and sizes[0] > 0:
        ranks[0] = 1
    for k in range(1, len(sizes)):
        r, fac = smith_normal_form(C.boundary(k))
        ranks[k] = r
        factors[k] = [x for x in fac if x > 1]
    betti = [sizes[k] - ranks[k] - ranks[k + 1] for k in range(len(sizes))]
    torsion = [factors[k + 1] for k in range(len(sizes))]
    return HomologyResult(betti, torsion, reduced)


def homology_of(K: SimplicialComplex | PolyhedralComplex, reduced: bool = False) -> HomologyResult:
    """Homology of a simplicial complex, or cellular homology of a Hom complex."""
    if isinstance(K, PolyhedralComplex):
        return homology(cellular_chain_complex(K), reduced)
    return homology(chain_complex(K), reduced)


def dump_triplets(M) -> str:
    """Sparse matrix as text: a ``rows cols nnz`` header, then ``i j value`` lines."""
    m = sp.coo_matrix(M)
    lines = [f"{m.shape[0]} {m.shape[1]} {m.nnz}"]
    lines += [f"{i} {j} {v}" for i, j, v in zip(m.row, m.col, m.data)]
    return "\n".join(lines) + "\n"


def load_triplets(text: str) -> sp.csc_matrix:
    """Inverse of :func:`dump_triplets`; malformed lines raise with their line number."""
    numbered = [(k, ln.split()) for k, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not numbered:
        raise TopologyError("empty matrix file")
    rows = []
    for lineno, parts in numbered:
        try:
            if len(parts) != 3:
                raise ValueError(f"expected 3 fields, got {len(parts)}")
            rows.append(tuple(int(x) for x in parts))
        except ValueError as exc:
            raise TopologyError(f"line {lineno}: {exc}") from None
    (nr, nc, nnz), data = rows[0], rows[1:]
    if len(data) != nnz:
        raise TopologyError(f"header announces {nnz} entries, found {len(data)}")
    if any(not (0 <= i < nr and 0 <= j < nc) for i, j, _ in data):
        raise TopologyError("entry index out of range")
    if not data:
        return sp.csc_matrix((nr, nc), dtype=np.int64)
    i, j, v = zip(*data)
    return sp.coo_matrix((v, (i, j)), shape=(nr, nc), dtype=np.int64).tocsc()


# --------------------------------------------------------------------------
# fundamental group

Word = tuple[int, ...]  # letters are +-(generator index + 1)


@dataclass
class Presentation:
    generators: list[str]
    relators: list[Word]

    def __post_init__(self):
        ng = len(self.generators)
        for r in self.relators:
            if any(x == 0 or abs(x) > ng for x in r):
                raise TopologyError("relator uses an undeclared generator")

    def is_trivial(self) -> bool:
        return not self.generators

    def abelian_invariants(self) -> tuple[int, list[int]]:
        """Free rank and torsion of the abelianisation."""
        ng = len(self.generators)
        if not ng:
            return 0, []
        rows = []
        for r in self.relators:
            row = [0] * ng
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        if not rows:
            return ng, []
        rank, fac = smith_normal_form(rows)
        return ng - rank, [x for x in fac if x > 1]

    def to_dict(self) -> dict:
        return {"generators": self.generators, "relators": [list(r) for r in self.relators]}


def _edge_path_group(n: int, edges: list[tuple[int, int]], names: list[str], loops, base: int) -> Presentation:
    """Spanning tree at ``base``; one generator per non-tree edge, one relator per boundary loop.

    ``edges[i]`` is ``(u, v)`` with ``u < v``; each loop is a cyclic vertex sequence.
    """
    if n == 0 or not 0 <= base < n:
        raise TopologyError("base vertex out of range")
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    seen[base] = True
    tree = set()
    dq = deque([base])
    while dq:
        u = dq.popleft()
        for w in sorted(adj[u]):
            if not seen[w]:
                seen[w] = True
                tree.add((min(u, w), max(u, w)))
                dq.append(w)
    if not all(seen):
        raise TopologyError("complex is not path-connected")
    gen_of: dict[tuple[int, int], int] = {}
    gen_names = []
    for e, name in zip(edges, names):
        if e not in tree:
            gen_of[e] = len(gen_names) + 1
            gen_names.append(name)
    relators = []
    for loop in loops:
        word = []
        for x, y in zip(loop, loop[1:] + loop[:1]):
            g = gen_of.get((x, y) if x < y else (y, x))
            if g:
                word.append(g if x < y else -g)
        relators.append(tuple(word))
    return Presentation(gen_names, _normal_relators(relators))


def pi1_presentation(K: SimplicialComplex | PolyhedralComplex, base: int = 0) -> Presentation:
    """Edge-path group: spanning tree, one generator per other edge, one relator per 2-cell.

    Hom complexes are regular with triangles and squares as 2-cells, so their
    presentation is read off the cells without subdividing.
    """
    if isinstance(K, PolyhedralComplex):
        return _pi1_of_cells(K, base)
    edges = [(int(u), int(v)) for u, v in K.simplices(1)]
    names = [f"{K.vertex_labels[u]}~{K.vertex_labels[v]}" for u, v in edges]
    loops = [[int(a), int(b), int(c)] for a, b, c in K.simplices(2)]
    return _edge_path_group(K.n_vertices, edges, names, loops, base)


def _split_bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low)
        m ^= low
    return out


def _pi1_of_cells(P: PolyhedralComplex, base: int) -> Presentation:
    n = int(np.count_nonzero(P.dims == 0))
    # rows are sorted by dimension, so vertex cells are rows 0..n-1

    def vertex(masks) -> int:
        i = P.index_of(tuple(masks))
        if not 0 <= i < n:
            raise TopologyError("cell boundary leaves the complex")
        return i

    def ends(row, t):
        out = []
        for b in _split_bits(int(row[t])):
            m = [int(x) for x in row]
            m[t] = b
            out.append(m)
        return out

    edges, names = [], []
    for i in np.flatnonzero(P.dims == 1):
        row = P.cells[i]
        t = next(k for k in range(len(row)) if int(row[k]).bit_count() == 2)
        u, v = sorted(vertex(m) for m in ends(row, t))
        edges.append((u, v))
        names.append(P.cell(int(i)).label())
    loops = []
    for i in np.flatnonzero(P.dims == 2):
        row = [int(x) for x in P.cells[i]]
        wide = [k for k in range(len(row)) if row[k].bit_count() > 1]
        if len(wide) == 1:
            loops.append([vertex(m) for m in ends(row, wide[0])])
        else:
            s, t = wide
            a, b = _split_bits(row[s])
            c, d = _split_bits(row[t])
            corners = []
            for x, y in ((a, c), (b, c), (b, d), (a, d)):
                m = list(row)
                m[s], m[t] = x, y
                corners.append(vertex(m))
            loops.append(corners)
    return _edge_path_group(n, edges, names, loops, base)


def _free_reduce(w: list[int]) -> list[int]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    while len(out) > 1 and out[0] == -out[-1]:
        out = out[1:-1]
    return out


def _canonical(w: list[int]) -> Word:
    if not w:
        return ()
    inv = [-x for x in reversed(w)]
    cands = []
    for word in (w, inv):
        for i in range(len(word)):
            cands.append(tuple(word[i:] + word[:i]))
    return min(cands, key=lambda t: (len(t), t))


def _normal_relators(rels) -> list[Word]:
    out = set()
    for r in rels:
        red = _free_reduce(list(r))
        if red:
            out.add(_canonical(red))
    return sorted(out, key=lambda t: (len(t), t))


def tietze_simplify(P: Presentation, budget: int = 10_000, max_length: int = 200) -> Presentation:
    """Remove generators by Tietze moves; the presented group never changes.

    A generator that occurs exactly once in some relator is solved for and
    substituted away, provided no relator grows beyond ``max_length``.  The
    loop stops at a fixed point or when ``budget`` moves have been spent.
    """
    rels = [list(r) for r in _normal_relators(P.relators)]
    alive = set(range(1, len(P.generators) + 1))
    moves = 0
    while moves < budget:
        moves += 1
        choice = None
        for idx, r in enumerate(sorted(rels, key=len)):
            for x in set(abs(y) for y in r):
                if sum(1 for y in r if abs(y) == x) == 1:
                    choice = (r, x)
                    break
            if choice:
                break
        if choice is None:
            break
        r, x = choice
        i = next(k for k, y in enumerate(r) if abs(y) == x)
        rot = r[i:] + r[:i]
        # rot = x^e w  =>  x = w^-1 when e = +1, x = w when e = -1
        w = rot[1:]
        if rot[0] > 0:
            repl = [-y for y in reversed(w)]
        else:
            repl = list(w)
        inv_repl = [-y for y in reversed(repl)]
        new_rels = []
        too_long = False
        for other in rels:
            if other is r:
                continue
            sub: list[int] = []
            for y in other:
                if y == x:
                    sub.extend(repl)
                elif y == -x:
                    sub.extend(inv_repl)
                else:
                    sub.append(y)
            sub = _free_reduce(sub)
            if len(sub) > max_length:
                too_long = True
                break
            if sub:
                new_rels.append(sub)
        if too_long:
            break
        alive.discard(x)
        rels = [list(t) for t in _normal_relators(new_rels)]
    keep = sorted(alive)
    renum = {g: k + 1 for k, g in enumerate(keep)}
    names = [P.generators[g - 1] for g in keep]
    final = [tuple((1 if y > 0 else -1) * renum[abs(y)] for y in r) for r in rels]
    return Presentation(names, _normal_relators(final))


# --------------------------------------------------------------------------
# connectivity


@dataclass
class ConnectivityReport:
    path_connected: bool
    h1_trivial: bool
    pi1_status: str
    homological_conn: int
    certified_conn: int
    certified_exact: bool
    acyclic: bool
    homology: HomologyResult = field(repr=False)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["homology"] = self.homology.to_dict()
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


EMPTY_CONN = -2


def connectivity_report(K: SimplicialComplex | PolyhedralComplex, tietze_budget: int = 10_000) -> ConnectivityReport:
    """Connectivity certified by components, an emptied pi_1 presentation and homology.

    A Hom complex is handled cellularly, for homology and pi_1 alike.
    """
    empty = K.num_cells == 0 if isinstance(K, PolyhedralComplex) else K.is_empty()
    if empty:
        h = HomologyResult([], [], True)
        return ConnectivityReport(False, True, "trivial-certified", EMPTY_CONN, EMPTY_CONN, True, False, h, ["empty complex"])
    h = homology_of(K, reduced=True)
    vanish = []
    for k in range(len(h.betti)):
        vanish.append(h.betti[k] == 0 and not h.torsion[k])
    acyclic = all(vanish)
    hom_conn = -1
    while hom_conn + 1 < len(vanish) and vanish[hom_conn + 1]:
        hom_conn += 1
    notes = []
    if acyclic:
        notes.append("all reduced homology vanishes; connectivity reported up to the dimension only")
    path_connected = vanish[0]
    h1_trivial = len(vanish) < 2 or vanish[1]
    if not path_connected:
        return ConnectivityReport(False, h1_trivial, "unknown", hom_conn, -1, True, acyclic, h, notes)
    if not h1_trivial:
        notes.append("H1 is nonzero, so the fundamental group is nontrivial")
        return ConnectivityReport(True, False, "nontrivial-certified", hom_conn, 0, True, acyclic, h, notes)
    pres = tietze_simplify(pi1_presentation(K), tietze_budget)
    if pres.is_trivial():
        return ConnectivityReport(True, True, "trivial-certified", hom_conn, hom_conn, True, acyclic, h, notes)
    notes.append(
        f"presentation did not empty ({len(pres.generators)} generators left); "
        f"true connectivity may exceed 0 and is at most {hom_conn}"
    )
    return ConnectivityReport(True, True, "unknown", hom_conn, 0, False, acyclic, h, notes)
