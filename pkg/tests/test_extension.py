import numpy as np
import pytest
from hypothesis import given, strategies as st

from kantor.catalog import fano, pg3, pg3_minus, uniform, vamos
from kantor.cuts import CutKind, all_modular_cuts, generated_cut, nonprincipal_cuts, principal_cut
from kantor.errors import NotAModularCut
from kantor.extension import extend, extension_rank, lattice_grows_by_one_point, verify_corollaries
from kantor.isomorphism import is_isomorphic
from kantor.matroid import rank_table, restrict
from kantor.modularity import nonmodular_pairs
from oracles import extension_rank_table
from strategies import linear_matroids


@pytest.mark.parametrize("m", [uniform(2, 3), uniform(3, 5), fano()], ids=lambda m: m.name)
def test_extension_flats_match_rank_formula(m):
    for cut in all_modular_cuts(m):
        step = extend(m, cut)
        expected = extension_rank_table(m.n, m.flats, cut.members)
        assert rank_table(step.result).tolist() == expected


@given(linear_matroids(max_n=6), st.data())
def test_random_extension_matches_formula(pair, data):
    m, _ = pair
    cuts = all_modular_cuts(m, limit=500) if len(m.flats) < 40 else [principal_cut(m, m.ground)]
    cut = data.draw(st.sampled_from(cuts))
    step = extend(m, cut)
    assert rank_table(step.result).tolist() == extension_rank_table(m.n, m.flats, cut.members)
    assert restrict(step.result, m.ground) == m
    assert verify_corollaries(step).ok()


def test_vectorised_rank_matches_rebuilt_flats():
    m = pg3_minus(2)
    cut = nonprincipal_cuts(m)[0]
    step = extend(m, cut)
    q = np.arange(1 << step.result.n, dtype=np.uint64)
    assert np.array_equal(extension_rank(m, cut.members)(q), step.result.rank_many(q))


def test_empty_cut_adds_coloop():
    m = uniform(2, 4)
    step = extend(m, [])
    assert step.result.rank_total == 3
    assert step.cut.kind == CutKind.EMPTY


def test_improper_cut_adds_loop():
    m = fano()
    step = extend(m, m.flats)
    assert step.result.loops == 1 << 7
    assert step.cut.kind == CutKind.IMPROPER


def test_principal_point_cut_adds_parallel_element():
    m = fano()
    p = m.flats_of_rank(1)[2]
    step = extend(m, principal_cut(m, p))
    assert step.result.closure(1 << 7) == p | 1 << 7


def test_rejects_non_cut():
    with pytest.raises(NotAModularCut):
        extend(uniform(2, 3), [0b001])


def test_headline_extension_gives_pg32():
    m = pg3_minus(2)
    pair = nonmodular_pairs(m)[0]
    step = extend(m, generated_cut(m, pair.flats), generating_pair=pair.flats)
    assert step.defect_before == 49 and step.defect_after == 0
    rep = verify_corollaries(step)
    assert rep.ok(), rep.checks
    assert rep.checks["generating_pair_defect_drops_by_one"]
    assert lattice_grows_by_one_point(step)
    assert is_isomorphic(step.result, pg3(2))


def test_phi_is_identity_or_adds_e():
    m = uniform(3, 5)
    cut = generated_cut(m, [0b00011, 0b01100])
    step = extend(m, cut)
    e = 1 << 5
    for f, g in step.phi.items():
        assert g == (f | e if f in cut else f)
        assert step.result.is_flat(g)


def test_corollaries_on_vamos_cuts_sample():
    m = vamos()
    cuts = all_modular_cuts(m)
    for cut in cuts[::211]:
        rep = verify_corollaries(extend(m, cut, check=False))
        assert rep.ok(), rep.checks
