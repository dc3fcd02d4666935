from hypothesis import given, settings, strategies as st

from kantor.catalog import fano, pg3, pg3_minus, uniform, vamos
from kantor.isomorphism import find_isomorphism, is_isomorphic
from kantor.matroid import elements_of, relabel


@settings(max_examples=20)
@given(st.permutations(range(8)))
def test_relabelled_vamos_is_isomorphic(perm):
    m = vamos()
    r = relabel(m, list(perm))
    phi = find_isomorphism(m, r)
    assert phi is not None
    for f in m.flats:
        assert r.is_flat(sum(1 << phi[i] for i in elements_of(f)))


def test_non_isomorphic_pairs():
    assert not is_isomorphic(uniform(2, 4), uniform(3, 4))
    assert not is_isomorphic(pg3(2), uniform(4, 15))
    assert not is_isomorphic(fano(), uniform(3, 7))


def test_pg_minus_point_twice():
    a = pg3_minus(2)
    perm = list(range(14))[::-1]
    assert is_isomorphic(a, relabel(a, perm))
