"""Modular pairs, modular flats and hypermodularity."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NotAFlat, PreconditionViolated, RankTooSmall
from .matroid import elements_of


@dataclass(frozen=True)
class PairDefectReport:
    x: int
    y: int
    defect: int
    ranks: tuple  # r(x), r(y), r(x | y), r(x & y)


class PairKind(enum.Enum):
    PLANE_LINE = "plane-line"
    LINE_LINE = "line-line"


@dataclass(frozen=True)
class NonModularPair:
    report: PairDefectReport
    kind: PairKind

    @property
    def flats(self):
        return self.report.x, self.report.y


def _idx(m, flat):
    try:
        return m.index[flat]
    except KeyError:
        raise NotAFlat(f"{elements_of(flat)} is not a flat", witness=flat) from None


def modular_defect_pair(m, x, y):
    i, j = _idx(m, x), _idx(m, y)
    r = m.flat_ranks
    ranks = (int(r[i]), int(r[j]), int(r[m.join_table[i, j]]), int(r[m.meet_table[i, j]]))
    return PairDefectReport(x, y, int(m.defect_table[i, j]), ranks)


def is_modular_flat(m, f):
    return not m.defect_table[_idx(m, f)].any()


def is_modular(m):
    return not m.defect_table.any()


def first_nonmodular_pair(m):
    bad = np.argwhere(np.triu(m.defect_table) > 0)
    if bad.size == 0:
        return None
    i, j = bad[0]
    return m.flats[i], m.flats[j]


def matroid_modular_defect(m):
    """Sum of the defects over unordered pairs of distinct flats."""
    return int(np.triu(m.defect_table, 1).sum())


def hypermodular_witness(m):
    """The worst non-modular pair of hyperplanes, or None.

    Worst means largest defect, then largest flats, then canonical order.
    """
    if m.rank_total < 3:
        raise RankTooSmall(f"hypermodularity needs rank >= 3, got {m.rank_total}", witness=m.rank_total)
    idx = np.nonzero(m.flat_ranks == m.rank_total - 1)[0]
    sub = m.defect_table[np.ix_(idx, idx)]
    bad = np.argwhere(np.triu(sub) > 0)
    if bad.size == 0:
        return None
    size = np.bitwise_count(m.masks[idx]).astype(np.int64)
    a, b = min(bad, key=lambda p: (-sub[p[0], p[1]], -(size[p[0]] + size[p[1]]), p[0], p[1]))
    return m.flats[idx[a]], m.flats[idx[b]]


def is_hypermodular(m):
    return hypermodular_witness(m) is None


def _require_rank4_hypermodular(m):
    if not m.is_loopless():
        raise PreconditionViolated("matroid has loops", witness=m.loops)
    if m.rank_total != 4:
        raise PreconditionViolated(f"rank must be 4, got {m.rank_total}", witness=m.rank_total)
    w = hypermodular_witness(m)
    if w is not None:
        raise PreconditionViolated("matroid is not hypermodular", witness=w)


def _classify(ranks, disjoint):
    rx, ry, ru, _ = ranks
    if not disjoint:
        return None
    if (rx, ry) == (3, 2):
        return PairKind.PLANE_LINE
    if (rx, ry) == (2, 2) and ru == 3:
        return PairKind.LINE_LINE
    return None


def nonmodular_pairs(m):
    """All non-modular pairs of a loopless rank-4 hypermodular matroid.

    Each pair is reported with the higher-rank flat first and classified as
    plane/line or line/line. A pair fitting neither shape raises, since no
    such pair can exist under the preconditions.
    """
    _require_rank4_hypermodular(m)
    d = m.defect_table
    r = m.flat_ranks
    out = []
    for i, j in np.argwhere(np.triu(d) > 0):
        if r[i] < r[j]:
            i, j = j, i
        rep = modular_defect_pair(m, m.flats[i], m.flats[j])
        kind = _classify(rep.ranks, rep.x & rep.y == 0)
        if kind is None:
            raise PreconditionViolated("non-modular pair outside the two rank-4 shapes", witness=rep)
        out.append(NonModularPair(rep, kind))
    out.sort(key=lambda p: (p.kind != PairKind.PLANE_LINE, m.index[p.report.x], m.index[p.report.y]))
    return out


def nonmodular_pairs_naive(m):
    """Every unordered pair of flats with positive defect, by direct rank calls."""
    flats = m.flats
    out = set()
    for a in range(len(flats)):
        for b in range(a + 1, len(flats)):
            x, y = flats[a], flats[b]
            if m.rank(x) + m.rank(y) - m.rank(x | y) - m.rank(x & y) > 0:
                out.add(frozenset((x, y)))
    return out


def planes_through_line_count(m, line):
    if m.rank_total != 4:
        raise PreconditionViolated(f"rank must be 4, got {m.rank_total}", witness=m.rank_total)
    i = _idx(m, line)
    if m.flat_ranks[i] != 2:
        raise NotAFlat(f"{elements_of(line)} is not a rank-2 flat", witness=line)
    return sum(1 for h in m.flats_of_rank(3) if h & line == line)


@dataclass(frozen=True)
class ModularityCriteria:
    modular: bool
    no_disjoint_plane_line: bool
    no_plane_with_disjoint_lines: bool

    def agree(self):
        return self.modular == self.no_disjoint_plane_line == self.no_plane_with_disjoint_lines


def modularity_criteria(m):
    """Three independently computed characterisations of modularity in rank 4."""
    _require_rank4_hypermodular(m)
    planes = m.flats_of_rank(3)
    lines = m.flats_of_rank(2)
    plane_line = not any(p & l == 0 for p in planes for l in lines)
    inside = True
    for p in planes:
        sub = [l for l in lines if l & p == l]
        if any(a & b == 0 for k, a in enumerate(sub) for b in sub[k + 1:]):
            inside = False
            break
    return ModularityCriteria(is_modular(m), plane_line, inside)
