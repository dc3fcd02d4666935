"""Modular cuts and linear subclasses.

Cuts are handled internally as boolean vectors over flat indices and exposed
as frozensets of flat bitmasks.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, NotAFlat, NotAModularCut, PreconditionViolated, WrongCorank
from .matroid import elements_of
from .modularity import _require_rank4_hypermodular, is_modular, nonmodular_pairs


class CutKind(enum.Enum):
    EMPTY = "empty"
    IMPROPER = "improper"
    PRINCIPAL = "principal"
    PROPER_NONPRINCIPAL = "proper-nonprincipal"


@dataclass(frozen=True)
class ModularCut:
    members: frozenset
    kind: CutKind
    generator: int = None  # the generating flat of a principal cut

    def __contains__(self, flat):
        return flat in self.members

    def __len__(self):
        return len(self.members)

    def sorted_members(self, m):
        return sorted(self.members, key=m.index.__getitem__)

    def rank_level(self, m, k):
        return sorted(f for f in self.members if m.flat_rank(f) == k)


@dataclass(frozen=True)
class LinearSubclass:
    hyperplanes: frozenset


@dataclass(frozen=True)
class CutCheck:
    ok: bool
    witness: tuple = None  # ("upward", member, missing) or ("intersection", a, b, missing)

    def __bool__(self):
        return self.ok


def _vector(m, flats):
    v = np.zeros(len(m.flats), dtype=bool)
    for f in flats:
        try:
            v[m.index[f]] = True
        except KeyError:
            raise NotAFlat(f"{elements_of(f)} is not a flat", witness=f) from None
    return v


def _members(m, v):
    return frozenset(m.flats[i] for i in np.nonzero(v)[0])


def is_modular_cut(m, flats):
    v = _vector(m, flats)
    idx = np.nonzero(v)[0]
    if idx.size == 0:
        return CutCheck(True)
    above = m.superset_table[idx]
    missing = np.argwhere(above & ~v[None, :])
    if missing.size:
        a, b = missing[0]
        return CutCheck(False, ("upward", m.flats[idx[a]], m.flats[b]))
    sub = m.defect_table[np.ix_(idx, idx)] == 0
    meets = m.meet_table[np.ix_(idx, idx)]
    bad = np.argwhere(sub & ~v[meets])
    if bad.size:
        a, b = bad[0]
        x, y = m.flats[idx[a]], m.flats[idx[b]]
        return CutCheck(False, ("intersection", x, y, x & y))
    return CutCheck(True)


def _saturate_cut(m, v):
    v = v.copy()
    sup = m.superset_table
    mod = m.defect_table == 0
    while True:
        if not v.any():
            return v
        v = sup[v].any(axis=0)
        idx = np.nonzero(v)[0]
        pairs = mod[np.ix_(idx, idx)]
        new = np.zeros_like(v)
        new[m.meet_table[np.ix_(idx, idx)][pairs]] = True
        if not (new & ~v).any():
            return v
        v |= new


def generated_cut(m, generators):
    """Smallest modular cut containing ``generators``."""
    v = _saturate_cut(m, _vector(m, generators))
    members = _members(m, v)
    kind, gen = _kind(m, members)
    return ModularCut(members, kind, gen)


def principal_cut(m, flat):
    m.require_flat(flat)
    members = frozenset(f for f in m.flats if f & flat == flat)
    kind, gen = _kind(m, members)
    return ModularCut(members, kind, gen)


def _kind(m, members):
    if not members:
        return CutKind.EMPTY, None
    if m.loops in members:
        return CutKind.IMPROPER, m.loops
    meet = m.ground
    for f in members:
        meet &= f
    if meet in members and all(f in members for f in m.flats if f & meet == meet):
        return CutKind.PRINCIPAL, meet
    return CutKind.PROPER_NONPRINCIPAL, None


def classify_cut(m, flats):
    members = frozenset(flats)
    check = is_modular_cut(m, members)
    if not check:
        raise NotAModularCut("not a modular cut", witness=check.witness)
    if members and m.loops in members and len(members) != len(m.flats):
        raise NotAModularCut("cut contains the loop flat but not every flat", witness=m.loops)
    kind, gen = _kind(m, members)
    return ModularCut(members, kind, gen)


# ---------------------------------------------------------------- linear subclasses


def linear_subclass(m, corank2):
    """Least set of hyperplanes closed under the linear-subclass rule, seeded by ``corank2``."""
    r = m.rank_total
    seeds = []
    for t in corank2:
        if m.flat_rank(t) != r - 2:
            raise WrongCorank(f"{elements_of(t)} does not have corank 2", witness=t)
        seeds.append(t)
    hyper = np.nonzero(m.flat_ranks == r - 1)[0]
    sup = m.superset_table
    v = np.zeros(len(m.flats), dtype=bool)
    for t in seeds:
        v[hyper[sup[m.index[t], hyper]]] = True
    while True:
        idx = np.nonzero(v)[0]
        meets = np.unique(m.meet_table[np.ix_(idx, idx)])
        lines = meets[m.flat_ranks[meets] == r - 2]
        new = v.copy()
        for t in lines:
            new[hyper[sup[t, hyper]]] = True
        if (new == v).all():
            break
        v = new
    return LinearSubclass(_members(m, v))


def mc_from_linear_subclass(m, ls):
    """The non-empty modular cut whose hyperplanes are ``ls``."""
    r = m.rank_total
    hyper = np.nonzero(m.flat_ranks == r - 1)[0]
    inside = _vector(m, ls.hyperplanes)[hyper]
    above = m.superset_table[:, hyper]
    keep = ~(above & ~inside[None, :]).any(axis=1)
    keep[m.index[m.ground]] = True
    members = _members(m, keep)
    kind, gen = _kind(m, members)
    return ModularCut(members, kind, gen)


def linear_subclass_of(m, cut):
    r = m.rank_total
    return LinearSubclass(frozenset(f for f in cut.members if m.flat_rank(f) == r - 1))


# ---------------------------------------------------------------- rank-4 structure


def _nonmodular_in(m, members):
    idx = sorted(m.index[f] for f in members)
    d = m.defect_table
    return [(m.flats[a], m.flats[b]) for k, a in enumerate(idx) for b in idx[k + 1:] if d[a, b] > 0]


@dataclass(frozen=True)
class ProperCutReport:
    proper: bool
    nonprincipal_and_pair_generated: bool
    no_flat_of_rank_at_most_1: bool
    rank2_members_partition: bool
    rank2_members: tuple

    def conditions(self):
        return (
            self.proper,
            self.nonprincipal_and_pair_generated,
            self.no_flat_of_rank_at_most_1,
            self.rank2_members_partition,
        )

    def agree(self):
        return len(set(self.conditions())) == 1


def proper_cut_equivalences(m, cut):
    """Evaluate four characterisations of a proper cut, each on its own path.

    ``m`` must be loopless, rank 4, hypermodular and non-modular, and ``cut``
    must contain a non-modular pair.
    """
    _require_rank4_hypermodular(m)
    if is_modular(m):
        raise PreconditionViolated("matroid is modular", witness=None)
    members = frozenset(cut.members if isinstance(cut, ModularCut) else cut)
    pairs = _nonmodular_in(m, members)
    if not pairs:
        raise PreconditionViolated("cut contains no non-modular pair", witness=None)

    proper = m.loops not in members

    # principal-ness straight from the definition: some flat whose up-set is the cut
    principal = any(members == {g for g in m.flats if g & f == f} for f in members)
    generated = all(generated_cut(m, p).members == members for p in pairs)
    nonprincipal = not principal and generated

    low = not any(m.rank(f) <= 1 for f in members)

    lines = tuple(sorted(f for f in members if m.rank(f) == 2))
    cover = 0
    disjoint = True
    for f in lines:
        if cover & f:
            disjoint = False
        cover |= f
    partition = disjoint and cover == m.ground
    return ProperCutReport(proper, nonprincipal, low, partition, lines)


def nonprincipal_cuts(m):
    """Distinct cuts generated by the non-modular pairs, in canonical order."""
    _require_rank4_hypermodular(m)
    seen = {}
    for pair in nonmodular_pairs(m):
        cut = generated_cut(m, pair.flats)
        seen.setdefault(cut.members, cut)
    out = list(seen.values())
    out.sort(key=lambda c: sorted(m.index[f] for f in c.members))
    return out


def all_modular_cuts(m, limit=None):
    """Every modular cut of ``m``, the empty cut first.

    Flats are decided from the top of the lattice down. Including a flat
    requires the meet of every modular pair it forms with an included flat;
    a branch dies as soon as a required flat has an excluded superset.
    """
    nf = len(m.flats)
    sup = m.superset_table  # sup[i, j]: flat j contains flat i
    mod = (m.defect_table == 0).tolist()
    meet = m.meet_table.tolist()
    inc = np.zeros(nf, dtype=bool)
    exc = np.zeros(nf, dtype=bool)
    req = np.zeros(nf, dtype=np.int64)
    out = []

    def go(i):
        if i < 0:
            if limit is not None and len(out) >= limit:
                raise BudgetExceeded(f"more than {limit} modular cuts", witness=len(out))
            out.append(frozenset(m.flats[j] for j in np.nonzero(inc)[0]))
            return
        if not (sup[:, i] & (req > 0)).any():
            exc[i] = True
            go(i - 1)
            exc[i] = False
        if not (sup[i] & exc).any():
            inc[i] = True
            row = mod[i]
            new = [meet[i][g] for g in np.nonzero(inc)[0] if row[g]]
            for c in new:
                req[c] += 1
            if not any((sup[c] & exc).any() for c in new):
                go(i - 1)
            for c in new:
                req[c] -= 1
            inc[i] = False

    go(nf - 1)
    out.sort(key=lambda c: (len(c), sorted(m.index[f] for f in c)))
    return [ModularCut(c, *_kind(m, c)) for c in out]
