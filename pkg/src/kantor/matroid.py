"""Finite matroids stored as a canonical table of flats.

Subsets of the ground set ``{0, ..., n-1}`` are Python ints used as bitmasks.
A :class:`Matroid` keeps its flats grouped by rank, each rank level sorted by
numeric value, so every scan over flats has a fixed, reproducible order.
"""

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from . import _kernels as K
from .errors import (
    CircuitAxiomViolated,
    EmptyFamily,
    ExchangeAxiomViolated,
    F1Violated,
    F2PrimeViolated,
    NotAFlat,
    NotEquicardinal,
    RankLabelMismatch,
    SizeCapExceeded,
    ValidationError,
)

MAX_N = min(64, int(os.environ.get("MATROID_MAX_N", "64")))

# exhaustive enumeration of all 2^n subsets is only attempted up to here
EXHAUSTIVE_N = 16


def mask_of(elements):
    m = 0
    for e in elements:
        m |= 1 << int(e)
    return m


def elements_of(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


def _as_mask(x):
    if isinstance(x, (int, np.integer)):
        return int(x)
    return mask_of(x)


def _compress(mask, kept):
    """Renumber the bits of ``mask`` listed in ``kept`` to 0, 1, 2, ..."""
    out = 0
    for new, old in enumerate(kept):
        if mask >> old & 1:
            out |= 1 << new
    return out


def _check_size(n):
    if not 0 <= n <= MAX_N:
        raise SizeCapExceeded(f"ground set size {n} outside 0..{MAX_N}", witness=n)


@dataclass(frozen=True, eq=False)
class Matroid:
    """A validated matroid. Build it with :func:`from_flats` and friends."""

    n: int
    flats_by_rank: tuple
    labels: tuple
    name: str = ""

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self.flats_by_rank == other.flats_by_rank

    def __hash__(self):
        return hash((self.n, self.flats_by_rank))

    def __repr__(self):
        counts = [len(level) for level in self.flats_by_rank]
        tag = f"{self.name!r}, " if self.name else ""
        return f"Matroid({tag}n={self.n}, rank={self.rank_total}, flats={counts})"

    # ------------------------------------------------------------ basics

    @property
    def rank_total(self):
        return len(self.flats_by_rank) - 1

    @property
    def ground(self):
        return (1 << self.n) - 1

    @property
    def loops(self):
        return self.flats_by_rank[0][0]

    def is_loopless(self):
        return self.loops == 0

    @cached_property
    def flats(self):
        return tuple(f for level in self.flats_by_rank for f in level)

    @cached_property
    def masks(self):
        return np.array(self.flats, dtype=np.uint64)

    @cached_property
    def flat_ranks(self):
        return np.array([k for k, level in enumerate(self.flats_by_rank) for _ in level], dtype=np.int64)

    @cached_property
    def index(self):
        return {f: i for i, f in enumerate(self.flats)}

    def flats_of_rank(self, k):
        if 0 <= k <= self.rank_total:
            return self.flats_by_rank[k]
        return ()

    @property
    def hyperplanes(self):
        return self.flats_of_rank(self.rank_total - 1)

    def is_flat(self, x):
        return _as_mask(x) in self.index

    def flat_rank(self, flat):
        try:
            return int(self.flat_ranks[self.index[flat]])
        except KeyError:
            raise NotAFlat(f"{elements_of(flat)} is not a flat", witness=flat) from None

    def require_flat(self, x):
        m = _as_mask(x)
        if m not in self.index:
            raise NotAFlat(f"{elements_of(m)} is not a flat", witness=m)
        return m

    def rank(self, x):
        m = _as_mask(x)
        return int(self.flat_ranks[self._closure_idx(m)])

    def closure(self, x):
        m = _as_mask(x)
        return self.flats[self._closure_idx(m)]

    def _closure_idx(self, m):
        if m & ~self.ground:
            raise ValueError(f"{elements_of(m)} is not a subset of the ground set")
        return int(K.closure_index(self.masks, np.array([m], dtype=np.uint64))[0])

    def rank_many(self, queries):
        q = np.asarray(queries, dtype=np.uint64)
        return self.flat_ranks[K.closure_index(self.masks, q)]

    def closure_many(self, queries):
        q = np.asarray(queries, dtype=np.uint64)
        return self.masks[K.closure_index(self.masks, q)]

    def label_set(self, mask):
        return [self.labels[i] for i in elements_of(mask)]

    # ------------------------------------------------------------ tables

    @cached_property
    def superset_table(self):
        """``sup[i, j]`` is true when flat ``j`` contains flat ``i``."""
        m = self.masks
        return (m[None, :] & m[:, None]) == m[:, None]

    @cached_property
    def join_table(self):
        return K.join_table(self.masks)

    @cached_property
    def meet_table(self):
        return K.meet_table(self.masks)

    @cached_property
    def defect_table(self):
        """Modular defect of every pair of flats, by flat index."""
        r = self.flat_ranks
        return r[:, None] + r[None, :] - r[self.join_table] - r[self.meet_table]

    @cached_property
    def cover_table(self):
        return _covers(self.masks)


def _covers(masks):
    sup = (masks[None, :] & masks[:, None]) == masks[:, None]
    np.fill_diagonal(sup, False)
    s = sup.astype(np.float32)
    between = (s @ s) > 0
    return sup & ~between


# ---------------------------------------------------------------- validation


def _validate(n, masks, declared):
    """Check (F1), (F2') and the declared ranks; raise on the first failure."""
    full = (1 << n) - 1
    f = masks.shape[0]
    meet = K.meet_table(masks)
    bad = np.argwhere(meet < 0)
    if bad.size:
        a, b = (int(masks[i]) for i in bad[0])
        raise F1Violated(
            f"intersection of flats {elements_of(a)} and {elements_of(b)} is not a flat",
            witness=(a, b, a & b),
        )
    covers = _covers(masks)
    for i in range(f):
        li = int(masks[i])
        rest = full & ~li
        parts = [int(masks[j]) & ~li for j in np.nonzero(covers[i])[0]]
        union = 0
        total = 0
        for p in parts:
            union |= p
            total += popcount(p)
        if union != rest or total != popcount(rest):
            raise F2PrimeViolated(
                f"minimal flats above {elements_of(li)} do not partition its complement",
                witness=(li, tuple(p | li for p in parts)),
            )
    bottom = int(np.argmin(np.bitwise_count(masks)))
    height = np.full(f, -1, dtype=np.int64)
    height[bottom] = 0
    for i in np.argsort(np.bitwise_count(masks), kind="stable"):
        if height[i] < 0:
            raise RankLabelMismatch("flat lattice has more than one minimal flat", witness=int(masks[i]))
        for j in np.nonzero(covers[i])[0]:
            if height[j] < 0:
                height[j] = height[i] + 1
            elif height[j] != height[i] + 1:
                raise RankLabelMismatch(
                    f"flat {elements_of(int(masks[j]))} has chains of different lengths",
                    witness=int(masks[j]),
                )
    wrong = np.nonzero(height != declared)[0]
    if wrong.size:
        i = int(wrong[0])
        raise RankLabelMismatch(
            f"flat {elements_of(int(masks[i]))} declared rank {declared[i]}, lattice height {height[i]}",
            witness=int(masks[i]),
        )


def from_flats(n, flats_by_rank, labels=None, name=""):
    """Build a matroid from its flats, checking the lattice axioms exactly."""
    _check_size(n)
    full = (1 << n) - 1
    entries = []
    seen = {}
    for k, level in enumerate(flats_by_rank):
        for x in level:
            m = _as_mask(x)
            if m & ~full:
                raise ValidationError(f"flat {elements_of(m)} leaves the ground set", witness=m)
            if m in seen:
                raise ValidationError(f"flat {elements_of(m)} listed twice", witness=m)
            seen[m] = k
            entries.append((k, m))
    if full not in seen:
        raise ValidationError("the full ground set must be a flat", witness=full)
    entries.sort()
    masks = np.array([m for _, m in entries], dtype=np.uint64)
    declared = np.array([k for k, _ in entries], dtype=np.int64)
    _validate(n, masks, declared)
    top = int(declared.max())
    levels = [[] for _ in range(top + 1)]
    for k, m in entries:
        levels[k].append(m)
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise ValidationError(f"{len(labels)} labels for {n} elements", witness=labels)
    return Matroid(n, tuple(tuple(level) for level in levels), labels, name)


def _saturate(n, closure):
    """Flats of rank 0, 1, ... obtained by closing ``F + y`` over all covers."""
    full = (1 << n) - 1
    level = [closure(0)]
    levels = [level]
    while True:
        nxt = set()
        for f in level:
            remaining = full & ~f
            while remaining:
                y = remaining & -remaining
                g = closure(f | y)
                nxt.add(g)
                # covers of f partition the complement; skip the rest of g
                remaining &= ~g
                remaining &= ~y
        if not nxt:
            return levels
        level = sorted(nxt)
        levels.append(level)
        if len(levels) > n + 1:
            raise ValidationError("rank function does not stabilise", witness=n)


def closure_from_rank(n, rank_many):
    """Closure operator derived from a vectorised rank oracle."""
    bits = [1 << i for i in range(n)]

    def closure(x):
        extra = [b for b in bits if not x & b]
        q = np.array([x] + [x | b for b in extra], dtype=np.uint64)
        r = rank_many(q)
        out = x
        for b, rb in zip(extra, r[1:]):
            if rb == r[0]:
                out |= b
        return out

    return closure


def flats_from_rank(n, rank_many):
    """Flats level by level; each level costs one batched rank query.

    For every flat ``f`` of the current level and every ``y`` outside it the
    closure of ``f + y`` is read off the ranks of ``f + y + b`` for all ``b``.
    """
    bits = np.array([1 << i for i in range(n)], dtype=np.uint64)
    if n == 0:
        return [[0]]
    r_bits = np.asarray(rank_many(np.concatenate([np.zeros(1, dtype=np.uint64), bits])))
    bottom = int(bits[r_bits[1:] == r_bits[0]].sum())
    level = np.array([bottom], dtype=np.uint64)
    levels = [[bottom]]
    while True:
        fy = level[:, None] | bits[None, :]                      # (L, n)
        q = fy[:, :, None] | bits[None, None, :]                 # (L, n, n)
        r = np.asarray(rank_many(q.reshape(-1))).reshape(q.shape)
        base = r[:, np.arange(n), np.arange(n)]                 # rank of f + y
        same = r == base[:, :, None]
        closed = fy | (same * bits[None, None, :]).sum(axis=2, dtype=np.uint64)
        outside = (level[:, None] & bits[None, :]) == 0
        nxt = np.unique(closed[outside])
        if nxt.size == 0:
            return levels
        level = nxt
        levels.append([int(x) for x in nxt])
        if len(levels) > n + 1:
            raise ValidationError("rank function does not stabilise", witness=n)


def from_bases(n, bases, labels=None, name=""):
    _check_size(n)
    family = sorted({_as_mask(b) for b in bases})
    if not family:
        raise EmptyFamily("no bases given")
    for b in family:
        if b & ~((1 << n) - 1):
            raise ValidationError(f"basis {elements_of(b)} leaves the ground set", witness=b)
    sizes = {popcount(b) for b in family}
    if len(sizes) > 1:
        small = min(family, key=popcount)
        big = max(family, key=popcount)
        raise NotEquicardinal(
            f"bases {elements_of(small)} and {elements_of(big)} differ in size", witness=(small, big)
        )
    arr = np.array(family, dtype=np.uint64)
    try:
        levels = flats_from_rank(n, lambda q: K.bases_rank(arr, q))
        m = from_flats(n, levels, labels, name)
        if _count_bases(m) != len(family):
            raise ValidationError("basis family is not closed under exchange")
    except ValidationError:
        witness = _exchange_witness(family)
        if witness is None:
            raise
        b1, b2, x = witness
        raise ExchangeAxiomViolated(
            f"no exchange for element {elements_of(x)} of {elements_of(b1)} into {elements_of(b2)}",
            witness=witness,
        ) from None
    return m


def _count_bases(m):
    r = m.rank_total
    total = 0
    batch = []
    for combo in combinations(range(m.n), r):
        batch.append(mask_of(combo))
        if len(batch) >= 65536:
            total += int((m.rank_many(batch) == r).sum())
            batch = []
    if batch:
        total += int((m.rank_many(batch) == r).sum())
    return total


def _exchange_witness(family):
    fam = set(family)
    for b1 in family:
        for b2 in family:
            diff = b1 & ~b2
            while diff:
                x = diff & -diff
                diff &= ~x
                ys = b2 & ~b1
                ok = False
                while ys:
                    y = ys & -ys
                    ys &= ~y
                    if (b1 & ~x) | y in fam:
                        ok = True
                        break
                if not ok:
                    return b1, b2, x
    return None


def from_circuits(n, circuits, labels=None, name=""):
    _check_size(n)
    circ = sorted({_as_mask(c) for c in circuits})
    if any(c == 0 for c in circ):
        raise CircuitAxiomViolated("the empty set cannot be a circuit", witness=0)
    arr = np.array(circ, dtype=np.uint64)

    def closure(x):
        if arr.size == 0:
            return x
        rest = arr & np.uint64(~x & ((1 << n) - 1))
        one = np.bitwise_count(rest) == 1
        out = x
        for r in rest[one]:
            out |= int(r)
        return out

    try:
        m = from_flats(n, _saturate(n, closure), labels, name)
    except ValidationError as exc:
        raise CircuitAxiomViolated(f"circuit family is not a matroid: {exc}", witness=exc.witness) from None
    for c in circ:
        size = popcount(c)
        subs = [c & ~(1 << e) for e in elements_of(c)]
        if m.rank(c) != size - 1 or any(m.rank(s) != size - 1 for s in subs):
            raise CircuitAxiomViolated(f"{elements_of(c)} is not a circuit of the derived matroid", witness=c)
    if n <= EXHAUSTIVE_N:
        derived = set(circuits_of(m))
        if derived != set(circ):
            extra = min(derived ^ set(circ))
            raise CircuitAxiomViolated(f"circuit family mismatch at {elements_of(extra)}", witness=extra)
    return m


def circuits_of(m):
    """All circuits, by exhaustive scan (small ground sets only)."""
    if m.n > EXHAUSTIVE_N:
        raise SizeCapExceeded(f"circuit enumeration needs n <= {EXHAUSTIVE_N}", witness=m.n)
    table = K.rank_table(m.masks, m.flat_ranks, m.n)
    sizes = np.bitwise_count(np.arange(1 << m.n, dtype=np.uint64)).astype(np.int64)
    dep = table < sizes
    out = []
    for x in np.nonzero(dep)[0]:
        x = int(x)
        if all(not dep[x & ~(1 << e)] for e in elements_of(x)):
            out.append(x)
    return out


def bases_of(m):
    r = m.rank_total
    combos = [mask_of(c) for c in combinations(range(m.n), r)]
    if not combos:
        return []
    ranks = m.rank_many(combos)
    return [c for c, k in zip(combos, ranks) if k == r]


def rank_table(m):
    """Ranks of all ``2**n`` subsets, indexed by bitmask."""
    if m.n > EXHAUSTIVE_N:
        raise SizeCapExceeded(f"full rank table needs n <= {EXHAUSTIVE_N}", witness=m.n)
    return K.rank_table(m.masks, m.flat_ranks, m.n)


def submodularity_witness(m, exhaustive_limit=12, samples=20000, seed=0):
    """A pair ``(X, Y)`` breaking submodularity, or None.

    All pairs of subsets are checked when ``n <= exhaustive_limit``; above that
    ``samples`` random pairs are drawn.
    """
    if m.n <= exhaustive_limit:
        x, y = K.submodular_violation(rank_table(m))
        return None if x < 0 else (int(x), int(y))
    rng = np.random.default_rng(seed)
    hi = np.uint64(m.ground)
    xs = rng.integers(0, 1 << 63, size=samples, dtype=np.uint64) & hi
    ys = rng.integers(0, 1 << 63, size=samples, dtype=np.uint64) & hi
    lhs = m.rank_many(xs) + m.rank_many(ys)
    rhs = m.rank_many(xs | ys) + m.rank_many(xs & ys)
    bad = np.nonzero(lhs < rhs)[0]
    if bad.size:
        return int(xs[bad[0]]), int(ys[bad[0]])
    return None


# ---------------------------------------------------------------- lattice


@dataclass(frozen=True)
class FlatLattice:
    nodes: tuple  # (rank, mask) in canonical order
    covers: tuple  # (lower index, upper index)
    bottom: int
    top: int

    def upper(self, i):
        return [j for a, j in self.covers if a == i]


def lattice(m):
    covers = tuple((int(i), int(j)) for i, j in np.argwhere(m.cover_table))
    nodes = tuple((int(r), f) for r, f in zip(m.flat_ranks, m.flats))
    return FlatLattice(nodes, tuple(sorted(covers)), 0, len(nodes) - 1)


# ---------------------------------------------------------------- minors


def contract(m, flat):
    f = m.require_flat(flat)
    kept = [i for i in range(m.n) if not f >> i & 1]
    base = m.flat_rank(f)
    levels = [[] for _ in range(m.rank_total - base + 1)]
    for g, r in zip(m.flats, m.flat_ranks):
        if g & f == f:
            levels[int(r) - base].append(_compress(g & ~f, kept))
    return from_flats(len(kept), [sorted(lv) for lv in levels], [m.labels[i] for i in kept])


def delete(m, d):
    d = _as_mask(d) & m.ground
    kept = [i for i in range(m.n) if not d >> i & 1]
    keep = m.ground & ~d
    cands = sorted({f & keep for f in m.flats})
    ranks = m.rank_many(cands)
    levels = [[] for _ in range(int(ranks.max()) + 1)]
    for c, r in zip(cands, ranks):
        levels[int(r)].append(_compress(c, kept))
    return from_flats(len(kept), [sorted(lv) for lv in levels], [m.labels[i] for i in kept])


def restrict(m, x):
    return delete(m, m.ground & ~_as_mask(x))


def direct_sum(m, k_loops, labels=None):
    """Append ``k_loops`` loop elements after the existing ones."""
    if k_loops == 0:
        return m
    add = ((1 << k_loops) - 1) << m.n
    if labels is None:
        labels = [f"z{i}" for i in range(k_loops)]
    return from_flats(
        m.n + k_loops,
        [[f | add for f in level] for level in m.flats_by_rank],
        list(m.labels) + list(labels),
        m.name,
    )


def relabel(m, perm, labels=None):
    """Move element ``i`` to position ``perm[i]``."""
    if sorted(perm) != list(range(m.n)):
        raise ValueError("perm must be a permutation of the ground set")

    def move(f):
        out = 0
        for i in elements_of(f):
            out |= 1 << perm[i]
        return out

    if labels is None:
        labels = [None] * m.n
        for i, p in enumerate(perm):
            labels[p] = m.labels[i]
    return from_flats(m.n, [sorted(move(f) for f in level) for level in m.flats_by_rank], labels, m.name)
