import pytest
from hypothesis import given

from kantor.catalog import uniform, vamos
from kantor.errors import F2PrimeViolated, FormatError
from kantor.fileformat import canonical, load, parse, parse_file, serialize
from kantor.isomorphism import is_isomorphic
from strategies import linear_matroids

U24 = "matroid U24\nelements 4\ntype bases\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


def test_parse_u24():
    m = parse(U24)
    assert m == uniform(2, 4)
    assert m.name == "U24"


def test_canonical_is_fixed_point(corpus):
    for path in sorted(corpus.glob("*.mat")):
        if path.stem == "broken_f2":
            continue
        text = path.read_text()
        c = canonical(text)
        assert canonical(c) == c
        assert parse(c) == parse(text)


def test_vamos_flats_round_trip():
    text = serialize(vamos())
    m = parse(text)
    assert is_isomorphic(m, vamos())
    assert m.labels == vamos().labels


@given(linear_matroids())
def test_round_trip_all_kinds(pair):
    m, _ = pair
    for kind in ("flats", "bases", "circuits"):
        assert parse(serialize(m, kind)) == m


def test_comments_blank_lines_and_empty_set():
    text = "# header\nmatroid x  # trailing\n\nelements 1\ntype flats\n0: -\n1: 0\n"
    m = parse(text)
    assert m.rank_total == 1


@pytest.mark.parametrize(
    "text, line",
    [
        ("matroid x\nelements 2\ntype bases\n0 5\n", 4),
        ("matroid x\nelements two\ntype bases\n", 2),
        ("matroid x\nelements 2\ntype graphs\n", 3),
        ("matroid x\nelements 2\nlabels a\ntype bases\n0\n", 3),
        ("matroid x\nelements 2\ntype flats\n0 1\n", 4),
        ("matroid x\nelements 2\ntype bases\n0 0\n", 4),
        ("0 1\n", 1),
        ("matroid x\ntype bases\n0\n", 4),
    ],
)
def test_syntax_errors_carry_line(text, line):
    with pytest.raises(FormatError) as e:
        parse_file(text)
    assert e.value.line == line


def test_broken_f2_file(corpus):
    with pytest.raises(F2PrimeViolated) as e:
        load(corpus / "broken_f2.mat")
    assert e.value.witness is not None
