"""Modular completion of rank-4 hypermodular matroids.

The loop repeatedly picks a non-modular pair, extends by the modular cut that
pair generates, and stops once every pair of flats is modular. Each step is
re-verified unless ``fast`` is set.
"""

import random
from dataclasses import dataclass, field

from .cuts import CutKind, generated_cut, nonprincipal_cuts
from .errors import NonTermination, NotHypermodular, PreconditionViolated, RankTooSmall, VamosFound, WrongRank
from .extension import extend, lattice_grows_by_one_point, verify_corollaries
from .isomorphism import is_isomorphic
from .lines import Verdict, find_line_arrangements
from .matroid import delete, direct_sum, elements_of, relabel, restrict
from .modularity import hypermodular_witness, is_modular, matroid_modular_defect, nonmodular_pairs

POLICIES = ("lex", "reverse", "random")


@dataclass
class CompletionTrace:
    input: object
    steps: list
    result: object
    defect_sequence: list
    nonprincipal_cut_count: int
    policy: str
    seed: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def added(self):
        return self.result.n - self.input.n

    def problems(self):
        """Violated trace invariants, as human-readable strings."""
        out = []
        seq = self.defect_sequence
        if not seq or seq[-1] != 0:
            out.append(f"defect sequence {seq} does not end at 0")
        if any(b >= a for a, b in zip(seq, seq[1:])):
            out.append(f"defect sequence {seq} is not strictly decreasing")
        if not (self.added == len(self.steps) == self.nonprincipal_cut_count):
            out.append(
                f"added {self.added}, steps {len(self.steps)}, non-principal cuts {self.nonprincipal_cut_count}"
            )
        if restrict(self.result, self.input.ground) != self.input:
            out.append("result does not restrict to the input")
        if self.result.rank_total != self.input.rank_total:
            out.append("rank changed")
        if self.result.loops != self.input.loops:
            out.append("loop set changed")
        if not is_modular(self.result):
            out.append("result is not modular")
        return out


def _pick(pairs, policy, rng):
    if policy == "lex":
        return pairs[0]
    if policy == "reverse":
        return pairs[-1]
    if policy == "random":
        return rng.choice(pairs)
    raise ValueError(f"unknown policy {policy!r}; choose from {POLICIES}")


def check_completable(m):
    """Raise unless ``m`` is a loopless rank-4 hypermodular matroid with no Vamos arrangement."""
    if m.rank_total < 3:
        raise RankTooSmall(f"hypermodularity needs rank >= 3, got {m.rank_total}", witness=m.rank_total)
    if m.rank_total != 4:
        raise WrongRank(f"completion needs rank 4, got {m.rank_total}", witness=m.rank_total)
    if not m.is_loopless():
        raise PreconditionViolated("matroid has loops; use complete_with_loops", witness=m.loops)
    w = hypermodular_witness(m)
    if w is not None:
        raise NotHypermodular(
            f"hyperplanes {elements_of(w[0])} and {elements_of(w[1])} form a non-modular pair",
            witness=w,
        )
    vamos = [q for q in find_line_arrangements(m) if q.verdict == Verdict.VAMOS]
    if vamos:
        raise VamosFound("Vamos line arrangement in a hypermodular matroid", witness=vamos[0])


def _audit_step(step, m_prev):
    """Per-step invariants; returns a list of failures."""
    out = []
    n = step.result
    if not n.is_loopless():
        out.append("extension has a loop")
    if n.rank_total != 4:
        out.append("extension changed rank")
    if hypermodular_witness(n) is not None:
        out.append("extension is not hypermodular")
    if any(q.verdict == Verdict.VAMOS for q in find_line_arrangements(n)):
        out.append("extension has a Vamos arrangement")
    if len(n.flats) != len(m_prev.flats) + 1:
        out.append("flat count did not grow by exactly one")
    if not lattice_grows_by_one_point(step):
        out.append("lattice is not phi(L(M)) plus the new point")
    report = verify_corollaries(step)
    out.extend(f"corollary check {k} failed" for k, ok in report.checks.items() if not ok)
    # non-modular pairs of the extension pull back to non-modular pairs of the base
    inverse = {v: k for k, v in step.phi.items()}
    d_prev = m_prev.defect_table
    for p in nonmodular_pairs(n):
        x, y = p.flats
        if x not in inverse or y not in inverse:
            out.append("non-modular pair outside the image of phi")
            break
        if d_prev[m_prev.index[inverse[x]], m_prev.index[inverse[y]]] == 0:
            out.append("non-modular pair pulls back to a modular pair")
            break
    return out


def complete(m, policy="lex", seed=0, fast=False):
    """Extend ``m`` one element at a time until it is modular."""
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; choose from {POLICIES}")
    check_completable(m)
    rng = random.Random(seed)
    cut_count = len(nonprincipal_cuts(m))
    current = m
    steps = []
    defects = [matroid_modular_defect(m)]
    while defects[-1] > 0:
        pairs = nonmodular_pairs(current)
        pair = _pick(pairs, policy, rng)
        cut = generated_cut(current, pair.flats)
        if cut.kind != CutKind.PROPER_NONPRINCIPAL:
            raise PreconditionViolated(f"cut generated by a non-modular pair is {cut.kind.value}", witness=pair)
        label = f"e{len(steps) + 1}"
        step = extend(current, cut, label=label, generating_pair=pair.flats, check=not fast)
        if step.defect_after >= step.defect_before:
            raise NonTermination(
                f"modular defect went from {step.defect_before} to {step.defect_after}", witness=step
            )
        if not fast:
            failures = _audit_step(step, current)
            if failures:
                raise PreconditionViolated("; ".join(failures), witness=step)
        steps.append(step)
        defects.append(step.defect_after)
        current = step.result
    trace = CompletionTrace(m, steps, current, defects, cut_count, policy, seed)
    if not fast:
        problems = trace.problems()
        if problems:
            raise PreconditionViolated("; ".join(problems), witness=trace)
    return trace


def complete_with_loops(m, policy="lex", seed=0, fast=False):
    """Complete the loopless part, then put the loops back at their old positions."""
    if m.rank_total < 3:
        raise RankTooSmall(f"hypermodularity needs rank >= 3, got {m.rank_total}", witness=m.rank_total)
    if m.is_loopless():
        return complete(m, policy, seed, fast)
    loops = elements_of(m.loops)
    kept = [i for i in range(m.n) if i not in loops]
    core = delete(m, m.loops)
    inner = complete(core, policy, seed, fast)
    padded = direct_sum(inner.result, len(loops), [m.labels[i] for i in loops])
    # padded order: kept elements, new elements, loops
    added = inner.result.n - core.n
    perm = [0] * padded.n
    for new, old in enumerate(kept):
        perm[new] = old
    for k in range(added):
        perm[core.n + k] = m.n + k
    for k, old in enumerate(loops):
        perm[inner.result.n + k] = old
    result = relabel(padded, perm)
    trace = CompletionTrace(
        m, inner.steps, result, inner.defect_sequence, inner.nonprincipal_cut_count, policy, seed,
        notes={"loopless_trace": inner, "loops": loops},
    )
    if not fast:
        problems = trace.problems()
        if problems:
            raise PreconditionViolated("; ".join(problems), witness=trace)
    return trace


@dataclass
class PolicyReport:
    step_counts: dict
    isomorphic: dict  # (policy a, policy b) -> bool, reported only
    cut_count: int
    traces: dict = field(default=None, repr=False)

    def counts_agree(self):
        return len(set(self.step_counts.values())) == 1 and self.cut_count in self.step_counts.values()


def policy_invariance_report(m, policies=POLICIES, seed=0, fast=False):
    traces = {p: complete(m, p, seed, fast) for p in policies}
    counts = {p: len(t.steps) for p, t in traces.items()}
    names = list(traces)
    iso = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            iso[a, b] = is_isomorphic(traces[a].result, traces[b].result)
    cut_count = next(iter(traces.values())).nonprincipal_cut_count
    return PolicyReport(counts, iso, cut_count, traces)
