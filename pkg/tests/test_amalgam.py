import pytest

from kantor.amalgam import (
    AmalgamProblem,
    NoAmalgamCertificate,
    enumerate_extensions,
    find_amalgam,
    is_amalgam,
    sticky_probe,
)
from kantor.catalog import boolean, fano, uniform
from kantor.cuts import all_modular_cuts, generated_cut
from kantor.errors import BudgetExceeded, PreconditionViolated
from kantor.extension import extend
from kantor.matroid import rank_table
from oracles import extensions_by_rank_tables


def obstruction():
    u = uniform(3, 6)
    e = extend(u, generated_cut(u, [0b000011, 0b001100, 0b110000])).result
    f = extend(u, generated_cut(u, [0b000011, 0b001100])).result
    return AmalgamProblem(e, f, 6)


def test_zero_extensions():
    assert enumerate_extensions(fano(), 0) == [fano()]


def test_uniform_one_one_extensions():
    exts = enumerate_extensions(uniform(1, 1), 1)
    assert len(exts) == 3
    shapes = sorted((x.rank_total, x.loops != 0) for x in exts)
    assert shapes == [(1, False), (1, True), (2, False)]


def test_extension_count_matches_brute_force():
    m = uniform(2, 3)
    exts = enumerate_extensions(m, 1)
    brute = extensions_by_rank_tables(3, rank_table(m).tolist())
    assert len(exts) == len(brute) == len(all_modular_cuts(m))
    assert {tuple(rank_table(x).tolist()) for x in exts} == set(brute)


def test_extension_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_extensions(uniform(3, 6), 1, budget=10)


def test_identical_pair_amalgamates():
    m = fano()
    w = find_amalgam(AmalgamProblem(m, m, 7))
    assert w == m


@pytest.mark.parametrize("m", [uniform(1, 1), boolean(3), uniform(2, 3), fano()], ids=lambda m: m.name)
def test_modular_shared_always_amalgamates(m):
    exts = enumerate_extensions(m, 1)
    for i, a in enumerate(exts):
        for b in exts[i:]:
            p = AmalgamProblem(a, b, m.n)
            w = find_amalgam(p)
            assert not isinstance(w, NoAmalgamCertificate)
            assert is_amalgam(p, w)


def test_obstruction_certificate():
    p = obstruction()
    cert = find_amalgam(p)
    assert isinstance(cert, NoAmalgamCertificate)
    plain = find_amalgam(p, backjump=False)
    assert isinstance(plain, NoAmalgamCertificate)
    assert cert.nodes <= plain.nodes


def test_budget_gives_no_false_certificate():
    p = obstruction()
    with pytest.raises(BudgetExceeded):
        find_amalgam(p, max_nodes=5)


def test_shared_part_must_agree():
    with pytest.raises(PreconditionViolated):
        AmalgamProblem(uniform(2, 3), uniform(3, 3), 3)


def test_sticky_probe_modular():
    rep = sticky_probe(boolean(3))
    assert rep.witness is None and rep.complete


def test_sticky_probe_finds_obstruction():
    rep = sticky_probe(uniform(3, 6), budget=10**6)
    assert rep.witness is not None
    a, b, cert = rep.witness
    assert isinstance(cert, NoAmalgamCertificate)


def test_sticky_probe_budget_reports_partial():
    rep = sticky_probe(fano(), budget=5)
    assert rep.pairs_checked == 5 and not rep.complete
    assert rep.summary() == "no witness found within budget"
