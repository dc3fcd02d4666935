import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kantor.catalog import pg3, pg3_minus, uniform, vamos
from kantor.errors import HypothesisViolated, PreconditionViolated, WrongRank
from kantor.lines import (
    Verdict,
    bezout,
    classify_quadruple,
    coplanar,
    find_line_arrangements,
    lines_meet,
    qualifying_triples,
    triple_line_check,
)
from kantor.matroid import mask_of, relabel


def test_vamos_quadruple():
    m = vamos()
    quads = find_line_arrangements(m)
    assert len(quads) == 1
    q = quads[0]
    assert q.verdict == Verdict.VAMOS
    assert sorted(q.lines) == sorted(mask_of(p) for p in ([0, 1], [2, 3], [4, 5], [6, 7]))
    assert m.rank(q.l0 | q.l1) == 4
    assert not q.meeting[2][3]
    assert classify_quadruple(m, q.lines) == Verdict.VAMOS


def test_scan_agrees_with_definition_on_all_quadruples():
    for m in (vamos(), pg3_minus(2)):
        lines = m.flats_of_rank(2)
        found = {frozenset(q.lines): q.verdict for q in find_line_arrangements(m)}
        for quad in itertools.combinations(lines, 4):
            v = classify_quadruple(m, quad)
            assert found.get(frozenset(quad), Verdict.NOT_APPLICABLE) == v


@settings(max_examples=15)
@given(st.permutations(range(8)))
def test_vamos_scan_is_relabel_invariant(perm):
    m = relabel(vamos(), list(perm))
    quads = find_line_arrangements(m)
    assert [q.verdict for q in quads] == [Verdict.VAMOS]
    expected = {mask_of([perm[i], perm[j]]) for i, j in [(0, 1), (2, 3), (4, 5), (6, 7)]}
    assert set(quads[0].lines) == expected


def test_no_vamos_in_hypermodular_corpus():
    for m in (pg3(2), pg3_minus(2), pg3(3), pg3_minus(3, 2)):
        assert not any(q.verdict == Verdict.VAMOS for q in find_line_arrangements(m))


def test_meet_and_coplanar():
    m = pg3(2)
    lines = m.flats_of_rank(2)
    a = lines[0]
    for b in lines[1:]:
        assert lines_meet(m, a, b) == coplanar(m, a, b)
    with pytest.raises(PreconditionViolated):
        lines_meet(m, a, a)


def test_rank_checks():
    with pytest.raises(WrongRank):
        find_line_arrangements(uniform(3, 5))
    with pytest.raises(WrongRank):
        lines_meet(pg3(2), 1, 2)


def test_bezout_on_two_planes():
    m = pg3(2)
    p, q = m.flats_of_rank(1)[:2]
    assert bezout(m, [p, q])


def test_triple_line_check_on_pg_minus_point():
    m = pg3_minus(2)
    triples = qualifying_triples(m)
    assert len(triples) == 420
    for t in triples:
        rep = triple_line_check(m, *t)
        assert rep.two_lines_plane_holds_third and rep.line_and_point_plane_holds_all


def test_triple_line_hypothesis():
    m = pg3(2)
    lines = m.flats_of_rank(2)
    a = lines[0]
    b = next(t for t in lines if m.rank(a | t) == 4)
    c = next(t for t in lines if t not in (a, b))
    with pytest.raises(HypothesisViolated):
        triple_line_check(m, a, b, c)


def test_bezout_fails_for_spanning_flats():
    m = pg3(2)
    a = m.flats_of_rank(2)[0]
    b = next(t for t in m.flats_of_rank(2) if m.rank(a | t) == 4)
    assert not bezout(m, [a, b])
