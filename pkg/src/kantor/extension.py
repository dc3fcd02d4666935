"""Single-element extensions by a modular cut."""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .cuts import CutKind, ModularCut, classify_cut, is_modular_cut
from .errors import NotAModularCut
from .matroid import flats_from_rank, from_flats, restrict
from .modularity import matroid_modular_defect, modular_defect_pair


@dataclass(frozen=True)
class ExtensionStep:
    base: object
    cut: ModularCut
    new_element: int
    result: object
    phi: dict = field(repr=False)
    defect_before: int
    defect_after: int
    generating_pair: tuple = None


def extension_rank(m, cut_members):
    """Vectorised rank function of the extension of ``m`` by one element at index ``m.n``."""
    e = np.uint64(1 << m.n)
    in_cut = np.zeros(len(m.flats), dtype=bool)
    for f in cut_members:
        in_cut[m.index[f]] = True

    def rank_many(queries):
        q = np.asarray(queries, dtype=np.uint64)
        idx = K.closure_index(m.masks, q & ~e)
        has_e = (q & e) != 0
        return m.flat_ranks[idx] + (has_e & ~in_cut[idx])

    return rank_many


def extend(m, cut, label=None, generating_pair=None, check=True):
    """Add element ``m.n`` according to ``cut``; the flats are rebuilt from the rank formula."""
    members = cut.members if isinstance(cut, ModularCut) else frozenset(cut)
    if check:
        verdict = is_modular_cut(m, members)
        if not verdict:
            raise NotAModularCut("not a modular cut", witness=verdict.witness)
    if not isinstance(cut, ModularCut):
        cut = classify_cut(m, members)
    n = m.n + 1
    levels = flats_from_rank(n, extension_rank(m, members))
    if label is None:
        label = f"e{m.n}"
    result = from_flats(n, levels, list(m.labels) + [label], m.name)
    e = 1 << m.n
    phi = {f: (f | e if f in members else f) for f in m.flats}
    return ExtensionStep(
        base=m,
        cut=cut,
        new_element=m.n,
        result=result,
        phi=phi,
        defect_before=matroid_modular_defect(m),
        defect_after=matroid_modular_defect(result),
        generating_pair=generating_pair,
    )


def phi_map(step):
    return dict(step.phi)


@dataclass
class CorollaryReport:
    checks: dict  # name -> bool, only for the checks that apply
    notes: dict

    def ok(self):
        return all(self.checks.values())


def verify_corollaries(step):
    """Check the statements that follow from the extension rank formula.

    Never raises; the report lists which checks applied and their outcome.
    """
    m, n = step.base, step.result
    e = 1 << step.new_element
    members = step.cut.members
    phi = step.phi
    checks = {}
    notes = {}

    image = set(phi.values())
    checks["phi_injective"] = len(image) == len(phi)
    checks["phi_rank_preserving"] = all(n.is_flat(v) and n.rank(v) == m.rank(k) for k, v in phi.items())
    checks["restriction"] = restrict(n, m.ground) == m

    outside = [f for f in n.flats if f not in image]
    by_rank = [f for f in n.flats if f & e and n.rank(f) == m.rank(f & ~e) + 1]
    checks["image_complement_by_rank"] = sorted(outside) == sorted(by_rank)

    covered = set()
    for f in members:
        i = m.index[f]
        for j in np.nonzero(m.cover_table[:, i])[0]:
            covered.add(m.flats[j])
    uncovered = [l | e for l in m.flats if l not in members and l not in covered]
    checks["image_complement_by_covers"] = sorted(outside) == sorted(uncovered)
    notes["new_flats"] = sorted(outside)

    checks["empty_cut_iff_coloop"] = (not members) == (n.rank_total == m.rank_total + 1)
    checks["loop_flat_in_cut_iff_loop"] = (m.loops in members) == bool(n.loops & e)

    if step.generating_pair is not None and step.cut.kind == CutKind.PROPER_NONPRINCIPAL:
        x, y = step.generating_pair
        before = modular_defect_pair(m, x, y).defect
        after = modular_defect_pair(n, phi[x], phi[y]).defect
        notes["generating_pair_defect"] = (before, after)
        checks["generating_pair_defect_drops_by_one"] = after == before - 1
    return CorollaryReport(checks, notes)


def lattice_grows_by_one_point(step):
    """True when the new flats are exactly ``{e}`` and ``phi`` is an order
    isomorphism between the rank >= 2 parts of the two lattices."""
    m, n = step.base, step.result
    e = 1 << step.new_element
    image = set(step.phi.values())
    if [f for f in n.flats if f not in image] != [e]:
        return False
    hi = [f for f in m.flats if m.flat_rank(f) >= 2]
    hi_n = sorted(f for f in n.flats if n.flat_rank(f) >= 2)
    if sorted(step.phi[f] for f in hi) != hi_n:
        return False
    for a in hi:
        for b in hi:
            if (a & b == a) != (step.phi[a] & step.phi[b] == step.phi[a]):
                return False
    return True
