"""Lines and planes of a rank-4 matroid, in the subspace picture.

A line is the contraction by a rank-2 flat, a plane the contraction by a
rank-1 flat and a point the contraction by a hyperplane. Two lines ``T1``,
``T2`` meet at a point when ``r(T1 | T2) == 3``; they are coplanar when some
rank-1 flat lies in both.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import HypothesisViolated, PreconditionViolated, WrongRank
from .matroid import elements_of


class Verdict(enum.Enum):
    VAMOS = "vamos"
    ANTI_VAMOS = "anti-vamos"
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class LineQuadruple:
    """Four rank-2 flats. For a Vamos verdict ``l0, l1`` is the pair that does not meet."""

    t0: int
    t1: int
    l0: int
    l1: int
    verdict: Verdict
    meeting: tuple  # 4x4 booleans in the order t0, t1, l0, l1

    @property
    def lines(self):
        return self.t0, self.t1, self.l0, self.l1


def _require_rank4(m):
    if m.rank_total != 4:
        raise WrongRank(f"rank must be 4, got {m.rank_total}", witness=m.rank_total)


def _require_line(m, t):
    m.require_flat(t)
    if m.flat_rank(t) != 2:
        raise WrongRank(f"{elements_of(t)} is not a rank-2 flat", witness=t)


def lines_meet(m, t1, t2):
    _require_rank4(m)
    _require_line(m, t1)
    _require_line(m, t2)
    if t1 == t2:
        raise PreconditionViolated("a line cannot be compared with itself", witness=t1)
    return m.rank(t1 | t2) == 3


def coplanar(m, t1, t2):
    return m.rank(t1 & t2) >= 1


def bezout(m, flats):
    """Whether the subspaces cut out by ``flats`` share a point."""
    u = 0
    for f in flats:
        u |= f
    return m.rank(u) <= m.rank_total - 1


def _scan_tables(m, lines):
    idx = np.array([m.index[t] for t in lines], dtype=np.int64)
    r = m.flat_ranks
    meet = m.meet_table[np.ix_(idx, idx)]
    join = m.join_table[np.ix_(idx, idx)]
    apart = r[meet] == 0
    np.fill_diagonal(apart, False)
    meets = r[join] == 3
    np.fill_diagonal(meets, False)
    line_masks = m.masks[idx]
    return apart, meets, join, line_masks


def find_line_arrangements(m, lines=None):
    """All Vamos and anti-Vamos quadruples among ``lines`` (default: every rank-2 flat)."""
    _require_rank4(m)
    if lines is None:
        lines = m.flats_of_rank(2)
    else:
        for t in lines:
            _require_line(m, t)
        lines = sorted(set(lines), key=m.index.__getitem__)
    if len(lines) < 4:
        return []
    apart, meets, join, line_masks = _scan_tables(m, lines)
    raw = K.line_quadruples(apart, meets, join, line_masks, m.masks)
    out = []
    for i, j, k, l, v in raw:
        quad = [int(i), int(j), int(k), int(l)]
        if v == K.VAMOS:
            pair = next((a, b) for ai, a in enumerate(quad) for b in quad[ai + 1:] if not meets[a, b])
            order = [x for x in quad if x not in pair] + list(pair)
            verdict = Verdict.VAMOS
        else:
            order = quad
            verdict = Verdict.ANTI_VAMOS
        grid = tuple(tuple(bool(meets[a, b]) for b in order) for a in order)
        t0, t1, l0, l1 = (lines[x] for x in order)
        out.append(LineQuadruple(t0, t1, l0, l1, verdict, grid))
    return out


def classify_quadruple(m, quad):
    """Verdict for four rank-2 flats, straight from the definition."""
    _require_rank4(m)
    for t in quad:
        _require_line(m, t)
    if len(set(quad)) != 4:
        return Verdict.NOT_APPLICABLE
    pairs = [(a, b) for i, a in enumerate(quad) for b in quad[i + 1:]]
    if any(coplanar(m, a, b) for a, b in pairs):
        return Verdict.NOT_APPLICABLE
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(j + 1, 4):
                if m.rank(quad[i] | quad[j] | quad[k]) == 3:
                    return Verdict.NOT_APPLICABLE
    ranks = [m.rank(a | b) for a, b in pairs]
    if ranks.count(3) == 6:
        return Verdict.ANTI_VAMOS
    if ranks.count(3) == 5 and ranks.count(4) == 1:
        return Verdict.VAMOS
    return Verdict.NOT_APPLICABLE


@dataclass(frozen=True)
class TripleLineReport:
    two_lines_plane_holds_third: bool
    line_and_point_plane_holds_all: bool
    witness: tuple = None


def triple_line_check(m, t1, t2, t3):
    """Incidence of planes with three pairwise meeting, non-concurrent lines."""
    _require_rank4(m)
    ts = (t1, t2, t3)
    for t in ts:
        _require_line(m, t)
    if m.rank(t1 | t2 | t3) != 4 or any(m.rank(a | b) != 3 for a, b in ((t1, t2), (t1, t3), (t2, t3))):
        raise HypothesisViolated("lines must pairwise meet with no common point", witness=ts)
    first = True
    second = True
    witness = None
    # plane M/P contains line M/T iff P <= T; contains point M/H iff P <= H
    for p in m.flats_of_rank(1):
        on = [p & t == p for t in ts]
        if sum(on) == 2:
            first = False
            witness = witness or ("two-lines", p)
        for a in range(3):
            b, c = [x for x in range(3) if x != a]
            point = m.closure(ts[b] | ts[c])
            if on[a] and p & point == p and not all(on):
                second = False
                witness = witness or ("line-and-point", p)
    return TripleLineReport(first, second, witness)


def qualifying_triples(m, lines=None):
    """Triples of rank-2 flats meeting the hypothesis of :func:`triple_line_check`."""
    if lines is None:
        lines = m.flats_of_rank(2)
    lines = list(lines)
    meet = {}
    out = []
    for i, a in enumerate(lines):
        for b in lines[i + 1:]:
            meet[a, b] = m.rank(a | b) == 3
    for i, a in enumerate(lines):
        for j in range(i + 1, len(lines)):
            b = lines[j]
            if not meet[a, b]:
                continue
            for c in lines[j + 1:]:
                if meet[a, c] and meet[b, c] and m.rank(a | b | c) == 4:
                    out.append((a, b, c))
    return out
