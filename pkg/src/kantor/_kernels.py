"""Bitmask kernels.

Each kernel has a numba implementation (``*_nb``) and a pure numpy one
(``*_np``). The public name is bound to the numba version unless numba is
missing or ``KANTOR_NO_NUMBA`` is set to a non-empty value other than ``0``.

Flat tables are ``uint64`` arrays in canonical order: sorted by rank, then by
numeric value. "First superset" in that order is therefore the closure.
"""

import os

import numpy as np

try:
    import numba as nb
except ImportError:  # pragma: no cover - numba is a declared dependency
    nb = None

_flag = os.environ.get("KANTOR_NO_NUMBA", "")
USE_NUMBA = nb is not None and _flag in ("", "0")

# queries x flats cells handled per numpy chunk
_CHUNK_CELLS = 1 << 22

NONE = -1
VAMOS = 1
ANTI_VAMOS = 2


def _njit(fn):
    if nb is None:
        return fn
    return nb.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------- closure


def closure_index_np(masks, queries):
    masks = np.asarray(masks, dtype=np.uint64)
    queries = np.asarray(queries, dtype=np.uint64)
    out = np.full(queries.shape[0], -1, dtype=np.int64)
    if masks.size == 0 or queries.size == 0:
        return out
    step = max(1, _CHUNK_CELLS // masks.shape[0])
    for lo in range(0, queries.shape[0], step):
        q = queries[lo:lo + step, None]
        hit = (masks[None, :] & q) == q
        first = hit.argmax(axis=1)
        found = hit[np.arange(hit.shape[0]), first]
        out[lo:lo + step] = np.where(found, first, -1)
    return out


@_njit
def closure_index_nb(masks, queries):
    out = np.empty(queries.shape[0], dtype=np.int64)
    for qi in range(queries.shape[0]):
        q = queries[qi]
        out[qi] = -1
        for i in range(masks.shape[0]):
            if (masks[i] & q) == q:
                out[qi] = i
                break
    return out


def join_table_np(masks):
    masks = np.asarray(masks, dtype=np.uint64)
    f = masks.shape[0]
    unions = (masks[:, None] | masks[None, :]).reshape(-1)
    return closure_index_np(masks, unions).reshape(f, f)


@_njit
def join_table_nb(masks):
    f = masks.shape[0]
    out = np.empty((f, f), dtype=np.int64)
    for i in range(f):
        out[i, i] = i
        for j in range(i + 1, f):
            u = masks[i] | masks[j]
            idx = -1
            # the join sits at or above both operands in canonical order
            for k in range(j, f):
                if (masks[k] & u) == u:
                    idx = k
                    break
            out[i, j] = idx
            out[j, i] = idx
    return out


def meet_table_np(masks):
    """Index of ``masks[i] & masks[j]`` when that set is itself a flat, else -1."""
    masks = np.asarray(masks, dtype=np.uint64)
    f = masks.shape[0]
    inter = (masks[:, None] & masks[None, :]).reshape(-1)
    order = np.argsort(masks, kind="stable")
    srt = masks[order]
    pos = np.searchsorted(srt, inter)
    pos_c = np.minimum(pos, f - 1)
    ok = srt[pos_c] == inter
    return np.where(ok, order[pos_c], -1).reshape(f, f)


@_njit
def meet_table_nb(masks):
    f = masks.shape[0]
    out = np.empty((f, f), dtype=np.int64)
    for i in range(f):
        out[i, i] = i
        for j in range(i + 1, f):
            x = masks[i] & masks[j]
            idx = -1
            # on a well-ranked table the meet sits at or below index i
            for k in range(i, -1, -1):
                if masks[k] == x:
                    idx = k
                    break
            if idx < 0:
                for k in range(i + 1, f):
                    if masks[k] == x:
                        idx = k
                        break
            out[i, j] = idx
            out[j, i] = idx
    return out


# ---------------------------------------------------------------- ranks


def bases_rank_np(bases, queries):
    bases = np.asarray(bases, dtype=np.uint64)
    queries = np.asarray(queries, dtype=np.uint64)
    out = np.zeros(queries.shape[0], dtype=np.int64)
    step = max(1, _CHUNK_CELLS // max(1, bases.shape[0]))
    for lo in range(0, queries.shape[0], step):
        q = queries[lo:lo + step, None]
        out[lo:lo + step] = np.bitwise_count(bases[None, :] & q).max(axis=1)
    return out


@_njit
def _popcount(x):
    c = 0
    one = np.uint64(1)
    while x:
        x &= x - one
        c += 1
    return c


@_njit
def bases_rank_nb(bases, queries):
    out = np.zeros(queries.shape[0], dtype=np.int64)
    for qi in range(queries.shape[0]):
        best = 0
        for b in range(bases.shape[0]):
            c = _popcount(bases[b] & queries[qi])
            if c > best:
                best = c
        out[qi] = best
    return out


def rank_table_np(masks, ranks, n):
    """Rank of every subset of an ``n``-element ground set, indexed by bitmask."""
    queries = np.arange(1 << n, dtype=np.uint64)
    idx = closure_index_np(masks, queries)
    return np.asarray(ranks, dtype=np.int64)[idx].astype(np.int8)


@_njit
def rank_table_nb(masks, ranks, n):
    size = 1 << n
    out = np.empty(size, dtype=np.int8)
    for x in range(size):
        q = np.uint64(x)
        for i in range(masks.shape[0]):
            if (masks[i] & q) == q:
                out[x] = ranks[i]
                break
    return out


def submodular_violation_np(table):
    """First pair ``(x, y)`` with r(x)+r(y) < r(x|y)+r(x&y), or (-1, -1)."""
    t = np.asarray(table, dtype=np.int64)
    ys = np.arange(t.shape[0], dtype=np.int64)
    for x in range(t.shape[0]):
        bad = t[x] + t < t[x | ys] + t[x & ys]
        if bad.any():
            return x, int(np.argmax(bad))
    return -1, -1


@_njit
def submodular_violation_nb(table):
    size = table.shape[0]
    for x in range(size):
        rx = np.int64(table[x])
        for y in range(x + 1, size):
            if rx + table[y] < np.int64(table[x | y]) + table[x & y]:
                return x, y
    return -1, -1


# ---------------------------------------------------------------- lines


def line_quadruples_np(apart, meets, join, line_masks, plane_masks):
    apart = np.asarray(apart, dtype=np.bool_)
    meets = np.asarray(meets, dtype=np.bool_)
    nl = apart.shape[0]
    found = []

    def concurrent(a, b, c):
        if not meets[a, b]:
            return False
        p = plane_masks[join[a, b]]
        return (line_masks[c] & p) == line_masks[c]

    for i in range(nl):
        js = np.nonzero(apart[i, i + 1:])[0] + i + 1
        for j in js:
            miss_ij = int(not meets[i, j])
            ks = np.nonzero(apart[i, j + 1:] & apart[j, j + 1:])[0] + j + 1
            if ks.size == 0:
                continue
            miss_k = miss_ij + (~meets[i, ks]).astype(np.int64) + (~meets[j, ks])
            for k in ks[miss_k <= 1]:
                if concurrent(i, j, k):
                    continue
                base = miss_ij + int(not meets[i, k]) + int(not meets[j, k])
                ls = np.nonzero(apart[i, k + 1:] & apart[j, k + 1:] & apart[k, k + 1:])[0] + k + 1
                if ls.size == 0:
                    continue
                miss_l = base + (~meets[i, ls]).astype(np.int64) + (~meets[j, ls]) + (~meets[k, ls])
                for l in ls[miss_l <= 1]:
                    if concurrent(i, j, l) or concurrent(i, k, l) or concurrent(j, k, l):
                        continue
                    miss = base + int(not meets[i, l]) + int(not meets[j, l]) + int(not meets[k, l])
                    found.append((i, j, k, l, VAMOS if miss == 1 else ANTI_VAMOS))
    if not found:
        return np.zeros((0, 5), dtype=np.int64)
    return np.array(found, dtype=np.int64)


@_njit
def _concurrent(meets, join, line_masks, plane_masks, a, b, c):
    if not meets[a, b]:
        return False
    p = plane_masks[join[a, b]]
    return (line_masks[c] & p) == line_masks[c]


@_njit
def line_quadruples_nb(apart, meets, join, line_masks, plane_masks):
    nl = apart.shape[0]
    cap = 64
    out = np.empty((cap, 5), dtype=np.int64)
    count = 0
    for i in range(nl):
        for j in range(i + 1, nl):
            if not apart[i, j]:
                continue
            m_ij = 0 if meets[i, j] else 1
            for k in range(j + 1, nl):
                if not (apart[i, k] and apart[j, k]):
                    continue
                m_k = m_ij + (0 if meets[i, k] else 1) + (0 if meets[j, k] else 1)
                if m_k > 1:
                    continue
                if _concurrent(meets, join, line_masks, plane_masks, i, j, k):
                    continue
                for l in range(k + 1, nl):
                    if not (apart[i, l] and apart[j, l] and apart[k, l]):
                        continue
                    miss = m_k + (0 if meets[i, l] else 1) + (0 if meets[j, l] else 1) + (0 if meets[k, l] else 1)
                    if miss > 1:
                        continue
                    if _concurrent(meets, join, line_masks, plane_masks, i, j, l):
                        continue
                    if _concurrent(meets, join, line_masks, plane_masks, i, k, l):
                        continue
                    if _concurrent(meets, join, line_masks, plane_masks, j, k, l):
                        continue
                    if count == cap:
                        grown = np.empty((cap * 2, 5), dtype=np.int64)
                        grown[:cap] = out
                        out = grown
                        cap *= 2
                    out[count, 0] = i
                    out[count, 1] = j
                    out[count, 2] = k
                    out[count, 3] = l
                    out[count, 4] = VAMOS if miss == 1 else ANTI_VAMOS
                    count += 1
    return out[:count].copy()


# ---------------------------------------------------------------- dispatch

if USE_NUMBA:
    closure_index = closure_index_nb
    join_table = join_table_nb
    meet_table = meet_table_nb
    bases_rank = bases_rank_nb
    rank_table = rank_table_nb
    submodular_violation = submodular_violation_nb
    line_quadruples = line_quadruples_nb
else:
    closure_index = closure_index_np
    join_table = join_table_np
    meet_table = meet_table_np
    bases_rank = bases_rank_np
    rank_table = rank_table_np
    submodular_violation = submodular_violation_np
    line_quadruples = line_quadruples_np


def backend():
    return "numba" if USE_NUMBA else "numpy"
