"""Hot inner loops over bitmask-encoded cells.

Every kernel is plain Python over numpy arrays so that it runs unchanged
without numba; :func:`homcyl._accel.jit` compiles it when the numba backend is
active.  Vertex sets are ``int64`` bitmasks, which caps targets at 62 vertices.
"""

from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, jit

MAX_TARGET_VERTICES = 62


@jit
def _common_nbr(mask, gnbr, full):
    out = full
    m = mask
    while m != 0:
        low = m & -m
        v = 0
        while (low >> v) != 1:
            v += 1
        out &= gnbr[v]
        m ^= low
    return out


@jit
def enumerate_cells(order, back_start, back_idx, loops, gnbr, cap):
    """All cells of Hom(T, G) as rows of bitmasks, indexed by T-vertex.

    ``order`` is a processing order of the T-vertices; the T-neighbours of
    ``order[d]`` processed earlier are ``back_idx[back_start[d]:back_start[d+1]]``
    (given as depths).  Returns ``(rows, count)``; ``count == -1`` means more
    than ``cap`` cells exist.
    """
    k = order.shape[0]
    nv = gnbr.shape[0]
    full = np.int64((1 << nv) - 1)
    out = np.zeros((min(cap, 1024), k), dtype=np.int64)
    allowed = np.zeros(k, dtype=np.int64)
    cur = np.zeros(k, dtype=np.int64)
    cn = np.zeros(k, dtype=np.int64)
    count = 0
    allowed[0] = full
    for j in range(back_start[0], back_start[1]):
        allowed[0] &= cn[back_idx[j]]
    cur[0] = allowed[0]
    depth = 0
    while depth >= 0:
        s = cur[depth]
        if s == 0:
            depth -= 1
            if depth >= 0:
                cur[depth] = (cur[depth] - 1) & allowed[depth]
            continue
        c = _common_nbr(s, gnbr, full)
        ok = True
        if loops[depth] and (s & ~c) != 0:
            ok = False
        if ok:
            cn[depth] = c
            if depth == k - 1:
                if count >= cap:
                    return out, -1
                if count == out.shape[0]:
                    grown = np.zeros((min(cap, 2 * count), k), dtype=np.int64)
                    grown[:count] = out
                    out = grown
                for d in range(k):
                    out[count, order[d]] = cur[d]
                count += 1
            else:
                nxt = full
                for j in range(back_start[depth + 1], back_start[depth + 2]):
                    nxt &= cn[back_idx[j]]
                if nxt != 0:
                    depth += 1
                    allowed[depth] = nxt
                    cur[depth] = nxt
                    continue
        cur[depth] = (s - 1) & allowed[depth]
    return out, count


@jit
def _popcount(x):
    c = 0
    while x != 0:
        x &= x - 1
        c += 1
    return c


@jit
def _cell_dims_loop(cells):
    n, k = cells.shape
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        s = 0
        for t in range(k):
            s += _popcount(cells[i, t])
        out[i] = s - k
    return out


@jit
def _face_relation_loop(cells, dim_start):
    """CSR lists of proper faces.

    ``cells`` must be sorted by dimension with ``dim_start[d]`` the first row of
    dimension d.  Returns ``(indptr, indices)`` where the faces of cell i are
    ``indices[indptr[i]:indptr[i+1]]`` in increasing order.
    """
    n, k = cells.shape
    counts = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        lim = 0
        for d in range(dim_start.shape[0] - 1):
            if dim_start[d + 1] > i:
                lim = dim_start[d]
                break
        for j in range(lim):
            sub = True
            for t in range(k):
                if cells[j, t] & ~cells[i, t]:
                    sub = False
                    break
            if sub:
                counts[i + 1] += 1
    indptr = np.cumsum(counts)
    indices = np.zeros(indptr[n], dtype=np.int64)
    for i in range(n):
        lim = 0
        for d in range(dim_start.shape[0] - 1):
            if dim_start[d + 1] > i:
                lim = dim_start[d]
                break
        pos = indptr[i]
        for j in range(lim):
            sub = True
            for t in range(k):
                if cells[j, t] & ~cells[i, t]:
                    sub = False
                    break
            if sub:
                indices[pos] = j
                pos += 1
    return indptr, indices


@jit
def count_chains(indptr, indices):
    """Number of chains (with top element i) for every element, by dynamic programming."""
    n = indptr.shape[0] - 1
    below = np.zeros(n, dtype=np.int64)
    for i in range(n):
        s = 1
        for p in range(indptr[i], indptr[i + 1]):
            s += below[indices[p]]
        below[i] = s
    return below


@jit
def fill_chains(indptr, indices, below, maxlen):
    """Every chain of the face poset as a row, bottom element first, padded with -1."""
    n = indptr.shape[0] - 1
    total = 0
    for i in range(n):
        total += below[i]
    out = -np.ones((total, maxlen), dtype=np.int64)
    stack_el = np.zeros(maxlen, dtype=np.int64)
    stack_pos = np.zeros(maxlen, dtype=np.int64)
    row = 0
    for top in range(n):
        depth = 0
        stack_el[0] = top
        stack_pos[0] = indptr[top]
        # emit the chain consisting of top alone
        out[row, 0] = top
        row += 1
        while depth >= 0:
            el = stack_el[depth]
            p = stack_pos[depth]
            if p < indptr[el + 1]:
                stack_pos[depth] = p + 1
                nxt = indices[p]
                depth += 1
                stack_el[depth] = nxt
                stack_pos[depth] = indptr[nxt]
                for d in range(depth + 1):
                    out[row, d] = stack_el[depth - d]
                row += 1
            else:
                depth -= 1
    return out


def _cell_dims_numpy(cells):
    bits = np.unpackbits(np.ascontiguousarray(cells).view(np.uint8), axis=1)
    return bits.sum(axis=1).astype(np.int64) - cells.shape[1]


def _face_relation_numpy(cells, dim_start):
    n = cells.shape[0]
    indptr = np.zeros(n + 1, dtype=np.int64)
    chunks = []
    bounds = np.asarray(dim_start)
    for i in range(n):
        d = np.searchsorted(bounds, i, side="right") - 1
        lim = bounds[d]
        if lim:
            sub = np.all((cells[:lim] & ~cells[i]) == 0, axis=1)
            hits = np.flatnonzero(sub)
        else:
            hits = np.zeros(0, dtype=np.int64)
        chunks.append(hits)
        indptr[i + 1] = indptr[i] + hits.size
    indices = np.concatenate(chunks).astype(np.int64) if chunks else np.zeros(0, np.int64)
    return indptr, indices


if HAVE_NUMBA:
    cell_dims = _cell_dims_loop
    face_relation = _face_relation_loop
else:
    cell_dims = _cell_dims_numpy
    face_relation = _face_relation_numpy


def as_int64_masks(masks) -> np.ndarray:
    return np.asarray([int(m) for m in masks], dtype=np.int64)
