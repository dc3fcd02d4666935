"""Hypothesis strategies for small matroids given by vectors over GF(2) or GF(3)."""

from hypothesis import strategies as st

from oracles import bases_from_rank_table, vector_rank_table


@st.composite
def vector_configs(draw, max_n=7, max_r=4):
    p = draw(st.sampled_from([2, 3]))
    r = draw(st.integers(1, max_r))
    n = draw(st.integers(1, max_n))
    vecs = [tuple(draw(st.integers(0, p - 1)) for _ in range(r)) for _ in range(n)]
    return p, vecs


@st.composite
def linear_matroids(draw, max_n=7, max_r=4):
    """(matroid, oracle rank table); the matroid is built from its bases."""
    from kantor.matroid import from_bases

    p, vecs = draw(vector_configs(max_n, max_r))
    table = vector_rank_table(vecs, p)
    n = len(vecs)
    return from_bases(n, bases_from_rank_table(n, table)), table
