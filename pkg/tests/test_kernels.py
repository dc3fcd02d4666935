import os
import subprocess
import sys

import numpy as np
from hypothesis import given, strategies as st

from kantor import _kernels as K
from kantor.catalog import pg3, pg3_minus, vamos
from kantor.lines import _scan_tables
from strategies import linear_matroids


@given(linear_matroids(), st.lists(st.integers(0, 2**7 - 1), max_size=40))
def test_closure_index_paths_agree(pair, qs):
    m, _ = pair
    q = np.array([x & m.ground for x in qs], dtype=np.uint64)
    assert np.array_equal(K.closure_index_np(m.masks, q), K.closure_index_nb(m.masks, q))


@given(linear_matroids())
def test_tables_paths_agree(pair):
    m, _ = pair
    assert np.array_equal(K.join_table_np(m.masks), K.join_table_nb(m.masks))
    assert np.array_equal(K.meet_table_np(m.masks), K.meet_table_nb(m.masks))
    a = K.rank_table_np(m.masks, m.flat_ranks, m.n)
    b = K.rank_table_nb(m.masks, m.flat_ranks, m.n)
    assert np.array_equal(a, b)
    assert tuple(K.submodular_violation_np(a)) == tuple(K.submodular_violation_nb(b)) == (-1, -1)


@given(st.lists(st.integers(0, 2**6 - 1), min_size=1, max_size=12), st.integers(0, 2**6 - 1))
def test_bases_rank_paths_agree(bases, extra):
    b = np.array(sorted(set(bases)), dtype=np.uint64)
    q = np.arange(64, dtype=np.uint64) ^ np.uint64(extra)
    assert np.array_equal(K.bases_rank_np(b, q), K.bases_rank_nb(b, q))


def test_submodular_violation_found_by_both():
    t = np.array([0, 1, 1, 1], dtype=np.int8)  # fine
    assert tuple(K.submodular_violation_np(t)) == (-1, -1)
    bad = np.array([0, 1, 1, 3], dtype=np.int8)  # r(01) > r(0) + r(1)
    assert tuple(K.submodular_violation_np(bad)) != (-1, -1)
    assert tuple(K.submodular_violation_nb(bad)) != (-1, -1)


def test_meet_table_tolerates_mislabelled_order():
    masks = np.array([0, 1, 2, 3, 4, 7], dtype=np.uint64)[::-1].copy()
    assert np.array_equal(K.meet_table_np(masks), K.meet_table_nb(masks))


def test_line_scan_paths_agree():
    for m in (vamos(), pg3(2), pg3_minus(2)):
        apart, meets, join, line_masks = _scan_tables(m, m.flats_of_rank(2))
        a = K.line_quadruples_np(apart, meets, join, line_masks, m.masks)
        b = K.line_quadruples_nb(apart, meets, join, line_masks, m.masks)
        assert np.array_equal(a, b)


def test_env_flag_selects_numpy():
    env = dict(os.environ, KANTOR_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from kantor import _kernels as K; print(K.backend())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_numpy_path_end_to_end():
    code = (
        "from kantor.catalog import vamos; from kantor.lines import find_line_arrangements;"
        "q = find_line_arrangements(vamos()); print(len(q), q[0].verdict.value)"
    )
    env = dict(os.environ, KANTOR_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["1", "vamos"]
