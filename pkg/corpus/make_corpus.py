"""Regenerate the corpus files from the catalog: python3 corpus/make_corpus.py"""

from pathlib import Path

from kantor.catalog import boolean, fano, pg3, pg3_minus, uniform, vamos
from kantor.cuts import generated_cut
from kantor.extension import extend
from kantor.fileformat import serialize
from kantor.matroid import direct_sum, relabel

HERE = Path(__file__).parent

BROKEN_F2 = """\
# U(2,3) with the line {1,2} missing: the points above {1} do not partition
matroid broken_f2
elements 3
type flats
0: -
1: 0
1: 1
1: 2
2: 0 1 2
2: 0 1
2: 0 2
"""


def obstruction_pair():
    """Two extensions of U(3,6): e on three lines, f on only two of them."""
    u = uniform(3, 6)
    e = extend(u, generated_cut(u, [0b11, 0b1100, 0b110000]), label="e").result
    f = extend(u, generated_cut(u, [0b11, 0b1100]), label="f").result
    return e, f


def looped():
    m = direct_sum(pg3_minus(2), 2, ["z0", "z1"])
    perm = list(range(m.n))
    perm[0], perm[14] = perm[14], perm[0]
    return relabel(m, perm)


def entries():
    e, f = obstruction_pair()
    yield "u24", uniform(2, 4), "bases"
    yield "u36", uniform(3, 6), "bases"
    yield "boolean4", boolean(4), "flats"
    yield "fano", fano(), "circuits"
    yield "vamos", vamos(), "flats"
    yield "pg32", pg3(2), "flats"
    yield "pg32_minus_point", pg3_minus(2, 1), "flats"
    yield "pg32_minus_point_loops", looped(), "flats"
    yield "pg33", pg3(3), "flats"
    yield "pg33_minus_two", pg3_minus(3, 2), "flats"
    yield "u36_e", e, "flats"
    yield "u36_f", f, "flats"


def main():
    for name, m, kind in entries():
        (HERE / f"{name}.mat").write_text(serialize(m, kind))
    (HERE / "broken_f2.mat").write_text(BROKEN_F2)


if __name__ == "__main__":
    main()
