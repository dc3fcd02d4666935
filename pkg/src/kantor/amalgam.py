"""Extension enumeration and exhaustive amalgam search on tiny matroids.

Two matroids sharing their first ``k`` elements are glued on the union ground
set. Union indices: the shared elements keep ``0..k-1``, the other elements
of ``m1`` keep their own indices, and element ``i >= k`` of ``m2`` becomes
``n1 + i - k``.

The amalgam search assigns a rank to every subset that meets both private
parts, in order of size. Each value must satisfy unit increase and local
submodularity against the smaller subsets already fixed. Failures are
explained by conflict sets so the search can jump back past irrelevant
choices. A completed search with no solution is a certificate of emptiness.
"""

import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .cuts import all_modular_cuts
from .errors import BudgetExceeded, PreconditionViolated, ValidationError
from .extension import extend
from .matroid import flats_from_rank, from_flats, restrict

MAX_UNION = 12


@dataclass(frozen=True)
class AmalgamProblem:
    m1: object
    m2: object
    shared: int

    def __post_init__(self):
        k = self.shared
        if not (0 <= k <= min(self.m1.n, self.m2.n)):
            raise PreconditionViolated(f"shared count {k} out of range", witness=k)
        a = restrict(self.m1, (1 << k) - 1)
        b = restrict(self.m2, (1 << k) - 1)
        if a != b:
            raise PreconditionViolated("the two matroids differ on the shared elements", witness=(a, b))

    @property
    def n(self):
        return self.m1.n + self.m2.n - self.shared

    def lift2(self, mask):
        """Union-ground mask of a subset of ``m2``."""
        k = self.shared
        low = mask & ((1 << k) - 1)
        return low | (mask >> k) << self.m1.n

    @property
    def side1(self):
        return (1 << self.m1.n) - 1

    @property
    def side2(self):
        return self.lift2((1 << self.m2.n) - 1)


@dataclass(frozen=True)
class NoAmalgamCertificate:
    """The search finished without finding any rank function."""

    problem: AmalgamProblem = field(repr=False)
    variables: int
    nodes: int
    backjumping: bool


def _fixed_table(p):
    n = p.n
    table = np.full(1 << n, -1, dtype=np.int64)
    q1 = np.arange(1 << p.m1.n, dtype=np.uint64)
    table[q1.astype(np.int64)] = p.m1.rank_many(q1)
    q2 = np.arange(1 << p.m2.n, dtype=np.uint64)
    lifted = np.array([p.lift2(int(x)) for x in q2], dtype=np.int64)
    r2 = p.m2.rank_many(q2)
    clash = (table[lifted] >= 0) & (table[lifted] != r2)
    if clash.any():
        x = int(lifted[np.nonzero(clash)[0][0]])
        raise PreconditionViolated("ranks disagree on a shared subset", witness=x)
    table[lifted] = r2
    return table


def _bounds(r, var, x, bits):
    """Value range for subset ``x`` and the variables that pin each end."""
    lo, lo_why = 0, 0
    hi, hi_why = len(bits), 0
    for a, e in enumerate(bits):
        y = x ^ e
        ry = r[y]
        vy = var[y]
        if ry > lo:
            lo, lo_why = ry, vy
        if ry + 1 < hi:
            hi, hi_why = ry + 1, vy
        for f in bits[a + 1:]:
            z = y ^ f
            w = x ^ f
            s = ry + r[w] - r[z]
            if s < hi:
                hi, hi_why = s, vy | var[w] | var[z]
    return lo, lo_why, hi, hi_why


def find_amalgam(p, max_nodes=1_000_000, time_limit=60.0, backjump=True):
    """A matroid on the union restricting to both inputs, or a certificate that none exists."""
    n = p.n
    if n > MAX_UNION:
        raise PreconditionViolated(f"union of {n} elements exceeds {MAX_UNION}", witness=n)
    table = _fixed_table(p)
    a_mask = p.side1 & ~((1 << p.shared) - 1)
    b_mask = p.side2 & ~((1 << p.shared) - 1)
    free = [x for x in range(1 << n) if x & a_mask and x & b_mask]
    free.sort(key=lambda x: (bin(x).count("1"), x))
    r = table.tolist()
    # var[x] is a bitmask naming the variable that owns subset x (0 when fixed)
    var = [0] * (1 << n)
    for i, x in enumerate(free):
        var[x] = 1 << i
    bits_of = [[1 << b for b in range(n) if x >> b & 1] for x in free]
    deadline = time.monotonic() + time_limit
    nodes = 0
    depth = len(free)

    def go(i):
        nonlocal nodes
        if i == depth:
            return None
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded(f"amalgam search passed {max_nodes} nodes", witness=nodes)
        if nodes & 1023 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded(f"amalgam search passed {time_limit} s", witness=nodes)
        x = free[i]
        lo, lo_why, hi, hi_why = _bounds(r, var, x, bits_of[i])
        conflict = lo_why | hi_why
        me = 1 << i
        for v in range(hi, lo - 1, -1):
            r[x] = v
            sub = go(i + 1)
            if sub is None:
                return None
            if backjump and not sub & me:
                r[x] = -1
                return sub
            conflict |= sub & ~me
        r[x] = -1
        if not backjump:
            conflict = me - 1
        return conflict

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * depth + 200))
    try:
        res = go(0)
    finally:
        sys.setrecursionlimit(old)
    if res is not None:
        return NoAmalgamCertificate(p, len(free), nodes, backjump)
    return _witness(p, np.array(r, dtype=np.int64))


def _witness(p, table):
    n = p.n

    def rank_many(q):
        return table[np.asarray(q, dtype=np.int64)]

    levels = flats_from_rank(n, rank_many)
    labels = list(p.m1.labels) + list(p.m2.labels[p.shared:])
    w = from_flats(n, levels, labels, "amalgam")
    every = np.arange(1 << n, dtype=np.uint64)
    if not np.array_equal(w.rank_many(every), table):
        raise ValidationError("search produced a table that is not a matroid rank function")
    if restrict(w, p.side1) != p.m1 or restrict(w, p.side2) != p.m2:
        raise ValidationError("amalgam does not restrict to both inputs")
    return w


def is_amalgam(p, w):
    return w.n == p.n and restrict(w, p.side1) == p.m1 and restrict(w, p.side2) == p.m2


# ---------------------------------------------------------------- extensions


def enumerate_extensions(m, k=1, budget=10_000):
    """Every matroid on ``m`` plus ``k`` new elements that restricts to ``m``.

    Built level by level from all modular cuts; duplicates are dropped.
    """
    if m.n + k > MAX_UNION:
        raise PreconditionViolated(f"{m.n + k} elements exceeds {MAX_UNION}", witness=m.n + k)
    level = [m]
    for step in range(k):
        seen = {}
        for base in level:
            left = budget - len(seen)
            for cut in all_modular_cuts(base, limit=max(left, 0) + 1):
                ext = extend(base, cut, label=f"e{step + 1}", check=False).result
                if ext not in seen:
                    seen[ext] = ext
                    if len(seen) > budget:
                        raise BudgetExceeded(f"more than {budget} extensions", witness=len(seen))
        level = list(seen)
    return level


@dataclass
class StickyReport:
    pairs_checked: int
    pairs_total: int
    witness: tuple = None  # (ext1, ext2, certificate)
    undecided: list = field(default_factory=list)  # pairs whose search ran out of budget

    @property
    def complete(self):
        return self.pairs_checked == self.pairs_total and not self.undecided

    def summary(self):
        if self.witness is not None:
            return "non-sticky witness found"
        if self.complete:
            return "no witness: every pair of extensions has an amalgam"
        return "no witness found within budget"


def sticky_probe(m, budget=200, max_nodes=200_000, time_limit=10.0):
    """Look for two single-element extensions of ``m`` with no amalgam."""
    exts = enumerate_extensions(m, 1)
    pairs = [(a, b) for i, a in enumerate(exts) for b in exts[i:]]
    report = StickyReport(0, len(pairs))
    for a, b in pairs[:budget]:
        report.pairs_checked += 1
        try:
            res = find_amalgam(AmalgamProblem(a, b, m.n), max_nodes, time_limit)
        except BudgetExceeded:
            report.undecided.append((a, b))
            continue
        if isinstance(res, NoAmalgamCertificate):
            report.witness = (a, b, res)
            return report
    return report
