"""Acceptance suite. Each test prints one PASS/FAIL line, then asserts."""

import time
from itertools import combinations

import numpy as np
import pytest

from kantor.amalgam import AmalgamProblem, NoAmalgamCertificate, enumerate_extensions, find_amalgam, is_amalgam
from kantor.catalog import VAMOS_CIRCUITS, boolean, fano, pg3, pg3_minus, uniform
from kantor.completion import POLICIES, complete, complete_with_loops
from kantor.cuts import CutKind, all_modular_cuts, generated_cut, nonprincipal_cuts, proper_cut_equivalences
from kantor.errors import BudgetExceeded
from kantor.extension import extend, lattice_grows_by_one_point, verify_corollaries
from kantor.fileformat import load
from kantor.isomorphism import is_isomorphic
from kantor.lines import Verdict, find_line_arrangements
from kantor.matroid import from_bases, mask_of, rank_table
from kantor.modularity import is_hypermodular, modular_defect_pair
from oracles import extension_rank_table, rank_table_from_flats

TRACES = []


@pytest.fixture
def say(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[acceptance {number:>2}] {'PASS' if ok else 'FAIL'}  {title}  {detail}")
        return ok

    return emit


def corpus_matroids(corpus, max_n=None):
    out = []
    for path in sorted(corpus.glob("*.mat")):
        if path.stem == "broken_f2":
            continue
        m = load(path)
        if max_n is None or m.n <= max_n:
            out.append((path.stem, m))
    return out


def test_vamos_detection(say):
    find_line_arrangements(pg3(2))  # compile kernels outside the timed region
    t = time.perf_counter()
    skip = {mask_of(c) for c in VAMOS_CIRCUITS}
    m = from_bases(8, [mask_of(c) for c in combinations(range(8), 4) if mask_of(c) not in skip])
    quads = find_line_arrangements(m)
    elapsed = time.perf_counter() - t
    expected = {mask_of(p) for p in ([0, 1], [2, 3], [4, 5], [6, 7])}
    ok = (
        len(quads) == 1
        and quads[0].verdict == Verdict.VAMOS
        and set(quads[0].lines) == expected
        and m.rank(quads[0].l0 | quads[0].l1) == 4
        and elapsed < 1.0
    )
    assert say(1, "Vamos quadruple {12},{34},{56},{78}, r(L0|L1)=4", ok, f"{elapsed:.3f} s")


def test_no_vamos_in_hypermodular_rank4(corpus, say):
    t = time.perf_counter()
    checked = []
    bad = []
    for name, m in corpus_matroids(corpus):
        if m.rank_total != 4 or not is_hypermodular(m):
            continue
        checked.append(name)
        if any(q.verdict == Verdict.VAMOS for q in find_line_arrangements(m)):
            bad.append(name)
    elapsed = time.perf_counter() - t
    ok = not bad and {"pg32", "pg32_minus_point", "pg33", "pg33_minus_two"} <= set(checked) and elapsed < 60
    assert say(2, f"zero Vamos verdicts on {len(checked)} hypermodular rank-4 inputs", ok, f"{elapsed:.2f} s")


def test_headline_completion(corpus, say):
    t = time.perf_counter()
    m = load(corpus / "pg32_minus_point.mat")
    trace = complete(m)
    cuts = nonprincipal_cuts(m)
    iso = is_isomorphic(trace.result, pg3(2))
    elapsed = time.perf_counter() - t
    TRACES.append(trace)
    ok = (
        len(trace.steps) == 1
        and trace.defect_sequence[-1] == 0
        and trace.result.n == 15
        and iso
        and len(cuts) == 1
        and elapsed < 30
    )
    assert say(3, "PG(3,2) minus a point: 1 extension, defect 0, result is PG(3,2)", ok, f"{elapsed:.2f} s")


def test_extension_corollaries_exhaustive(corpus, say):
    failures = []
    n_cuts = 0
    n_pairs = 0
    for name, m in corpus_matroids(corpus, max_n=9):
        for cut in all_modular_cuts(m):
            n_cuts += 1
            step = extend(m, cut, check=False)
            rep = verify_corollaries(step)
            n = step.result
            e = 1 << m.n
            if (cut.kind == CutKind.EMPTY) != (n.rank_total == m.rank_total + 1):
                failures.append((name, "empty cut vs rank"))
            if (cut.kind == CutKind.IMPROPER) != bool(n.loops & e):
                failures.append((name, "improper cut vs loop"))
            if not rep.ok():
                failures.append((name, [k for k, v in rep.checks.items() if not v]))
        d = m.defect_table
        for i, j in np.argwhere(np.triu(d) > 0):
            x, y = m.flats[i], m.flats[j]
            cut = generated_cut(m, [x, y])
            if cut.kind != CutKind.PROPER_NONPRINCIPAL:
                continue
            n_pairs += 1
            step = extend(m, cut, generating_pair=(x, y), check=False)
            before = modular_defect_pair(m, x, y).defect
            after = modular_defect_pair(step.result, step.phi[x], step.phi[y]).defect
            if after != before - 1:
                failures.append((name, "generating pair", x, y, before, after))
    ok = not failures and n_cuts > 0 and n_pairs > 0
    assert say(4, f"coloop/loop/defect-drop over {n_cuts} cuts and {n_pairs} generating pairs", ok,
               str(failures[:3]) if failures else "")


def _completion_inputs(corpus):
    names = ["pg32_minus_point", "pg33_minus_two", "pg32", "pg33", "pg32_minus_point_loops"]
    return [(n, load(corpus / f"{n}.mat")) for n in names]


def test_each_step_adds_only_the_new_point(corpus, say):
    failures = []
    steps = 0
    for name, m in _completion_inputs(corpus):
        if m.loops:
            continue
        trace = complete(m)
        TRACES.append(trace)
        for step in trace.steps:
            steps += 1
            base, res = step.base, step.result
            e = 1 << step.new_element
            image = set(step.phi.values())
            new = [f for f in res.flats if f not in image]
            if new != [e] or len(res.flats) != len(base.flats) + 1:
                failures.append((name, "new flats", new))
            for f in base.flats:
                if base.flat_rank(f) < 2:
                    continue
                g = step.phi[f]
                if not res.is_flat(g) or res.flat_rank(g) != base.flat_rank(f):
                    failures.append((name, "rank", f))
                for h in base.flats:
                    if base.flat_rank(h) >= 2 and (f & h == f) != (g & step.phi[h] == g):
                        failures.append((name, "order", f, h))
            if not lattice_grows_by_one_point(step):
                failures.append((name, "lattice"))
    ok = not failures and steps >= 3
    assert say(5, f"{steps} completion steps add only the flat {{e}} and keep the rank>=2 order", ok,
               str(failures[:3]) if failures else "")


def test_oracle_equivalence(corpus, say):
    failures = []
    subsets = 0
    ext_checked = 0
    for name, m in corpus_matroids(corpus, max_n=12):
        oracle = rank_table_from_flats(m.n, list(m.flats))
        if rank_table(m).tolist() != oracle:
            failures.append((name, "rank table"))
        subsets += 1 << m.n
        if m.n + 1 > 13:
            continue
        cuts = all_modular_cuts(m)
        stride = max(1, len(cuts) // 400)
        for cut in cuts[::stride]:
            step = extend(m, cut, check=False)
            expected = extension_rank_table(m.n, list(m.flats), cut.members)
            if rank_table(step.result).tolist() != expected:
                failures.append((name, "extension", sorted(cut.members)[:3]))
            ext_checked += 1
    ok = not failures and ext_checked > 0
    assert say(6, f"rank tables on {subsets} subsets and {ext_checked} extensions match brute force", ok,
               str(failures[:3]) if failures else "")


def test_proper_cut_equivalences_on_pg_minus_point(say):
    m = pg3_minus(2)
    d = m.defect_table
    failures = []
    count = 0
    for i, j in np.argwhere(np.triu(d) > 0):
        cut = generated_cut(m, [m.flats[i], m.flats[j]])
        rep = proper_cut_equivalences(m, cut)
        count += 1
        lines = rep.rank2_members
        sizes = sorted(bin(t).count("1") for t in lines)
        if not (rep.agree() and all(rep.conditions()) and sizes == [2] * 7):
            failures.append((i, j, rep.conditions(), sizes))
    ok = not failures and count == 49
    assert say(7, f"four cut conditions agree on all {count} pair-generated cuts; 7 disjoint pairs", ok,
               str(failures[:3]) if failures else "")


def test_policy_invariance(corpus, say):
    counts = {}
    for name, m in _completion_inputs(corpus):
        runner = complete_with_loops if m.loops else complete
        per = {}
        for policy in POLICIES:
            trace = runner(m, policy=policy, seed=11)
            TRACES.append(trace)
            per[policy] = len(trace.steps)
        counts[name] = per
    ok = all(len(set(v.values())) == 1 for v in counts.values())
    detail = ", ".join(f"{k}={sorted(set(v.values()))}" for k, v in counts.items())
    assert say(8, "step counts equal under lex, reverse and seeded random", ok, detail)


def test_defect_sequences_strictly_decrease(say):
    if len(TRACES) < 5:
        TRACES.append(complete(pg3_minus(2)))
        TRACES.append(complete(pg3_minus(3, 2), policy="random", seed=5))
    bad = [t.defect_sequence for t in TRACES
           if t.defect_sequence[-1] != 0 or any(b >= a for a, b in zip(t.defect_sequence, t.defect_sequence[1:]))]
    ok = not bad and all(t.problems() == [] for t in TRACES)
    assert say(9, f"{len(TRACES)} completion traces strictly decrease to 0", ok, str(bad[:3]) if bad else "")


def test_amalgam_harness(say):
    failures = []
    searches = 0
    for m in (uniform(1, 1), uniform(2, 3), boolean(3), boolean(4), fano()):
        exts = enumerate_extensions(m, 1)
        if len(exts) != len(all_modular_cuts(m)):
            failures.append((m.name, "extension count"))
        for i, a in enumerate(exts):
            for b in exts[i:]:
                p = AmalgamProblem(a, b, m.n)
                if p.n > 9:
                    continue
                searches += 1
                w = find_amalgam(p)
                if isinstance(w, NoAmalgamCertificate) or not is_amalgam(p, w):
                    failures.append((m.name, "amalgam"))
                try:
                    tiny = find_amalgam(p, max_nodes=2)
                    if isinstance(tiny, NoAmalgamCertificate):
                        failures.append((m.name, "certificate from truncated search"))
                except BudgetExceeded:
                    pass
    for m in (uniform(2, 4), uniform(3, 6)):
        if len(enumerate_extensions(m, 1)) != len(all_modular_cuts(m)):
            failures.append((m.name, "extension count"))
    ok = not failures and searches > 0
    assert say(10, f"{searches} modular amalgam searches all succeed; extension counts match cuts", ok,
               str(failures[:3]) if failures else "")
