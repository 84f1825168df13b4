import pytest

from conftest import figure_lattice
from hibilab._bits import bits, popcount
from hibilab.errors import ParseError
from hibilab.formats import (
    format_complex,
    format_ideal,
    format_segment,
    parse_complex,
    parse_ideal,
    parse_lattice,
    parse_monomial,
    parse_poset,
    parse_segment,
)
from hibilab.lattice import boolean_lattice
from hibilab.monomial import hibi_ideal
from hibilab.poset import is_isomorphic

FIG = """\
# two of the elements sit below d
poset 4
names a b c d
b < d
c < d
"""


def test_parse_poset():
    P = parse_poset(FIG)
    assert P.n == 4 and P.covers == {(1, 3), (2, 3)} and P.names == ("a", "b", "c", "d")
    assert parse_poset("poset 2\n0 < 1\n").covers == {(0, 1)}


def test_non_cover_dropped_with_warning():
    with pytest.warns(UserWarning, match="line 4: 0 < 2 is not a cover"):
        P = parse_poset("poset 3\n0 < 1\n1 < 2\n0 < 2\n")
    assert P.covers == {(0, 1), (1, 2)}


@pytest.mark.parametrize(
    "text, line, token",
    [
        ("", 1, ""),
        ("posit 3\n", 1, "posit"),
        ("poset x\n", 1, "x"),
        ("poset 2\n0 < 5\n", 2, "5"),
        ("poset 2\nnames a b\na < z\n", 3, "z"),
        ("poset 2\n0 <= 1\n", 2, "0 <= 1"),
        ("poset 2\n1 < 1\n", 2, "1"),
    ],
)
def test_poset_errors_name_line_and_token(text, line, token):
    with pytest.raises(ParseError) as info:
        parse_poset(text)
    assert info.value.line == line and info.value.token == token


def test_cycle_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_poset("poset 2\n0 < 1\n1 < 0\n")


def test_parse_lattice(tmp_path):
    (tmp_path / "p.txt").write_text(FIG)
    L = parse_lattice("lattice-from-poset p.txt\n", base=tmp_path)
    assert L.n == 10 and is_isomorphic(L.order, figure_lattice().order)
    M = parse_lattice("lattice 4\n0 < 1\n0 < 2\n1 < 3\n2 < 3\n")
    assert M.is_distributive and M.n == 4
    with pytest.raises(ParseError):
        parse_lattice("lattice 4\n0 < 2\n0 < 3\n1 < 2\n1 < 3\n")
    with pytest.raises(ParseError) as info:
        parse_lattice("lattice-from-poset missing.txt\n", base=tmp_path)
    assert info.value.token == "missing.txt"


def test_parse_segment():
    L = figure_lattice()
    assert parse_segment("all", L) == L.full
    assert parse_segment("none", L) == 0
    mask = parse_segment("{a,b} {b,c,d}", L)
    assert format_segment(L, mask) == "ab bcd"
    assert parse_segment("ab, bcd", L) == mask
    assert parse_segment("4 8", L) == (1 << 4) | (1 << 8)
    with pytest.raises(ParseError):
        parse_segment("{a,d}", L)
    with pytest.raises(ParseError):
        parse_segment("zz", L)


def test_monomials_and_ideals():
    assert parse_monomial("avw", list("abcuvw")) == 0b110001
    assert parse_monomial("x1*y2", ["x1", "x2", "y1", "y2"]) == 0b1001
    assert parse_monomial("1", ["a"]) == 0
    with pytest.raises(ParseError):
        parse_monomial("x1y2", ["x1", "x2", "y1", "y2"])
    with pytest.raises(ParseError):
        parse_monomial("aa", ["a", "b"])
    I = parse_ideal("ring a b c u v w\navw buw\ncuv\n")
    assert len(I.gens) == 3
    assert parse_ideal(format_ideal(I)) == I
    H = hibi_ideal(boolean_lattice(3))
    assert parse_ideal(format_ideal(H)) == H
    with pytest.raises(ParseError) as info:
        parse_ideal("ring a b\nac\n")
    assert info.value.line == 2 and info.value.token == "c"


def test_parse_complex_round_trip():
    text = "complex 4\nsplit 0 1 | 2 3\n0 2\n1 3\n0 3\n"
    delta, split = parse_complex(text)
    assert split == ([0, 1], [2, 3])
    assert sorted(delta.facet_lists()) == [[0, 2], [0, 3], [1, 3]]
    again, split2 = parse_complex(format_complex(delta, split))
    assert again == delta and split2 == split
    irrelevant, _ = parse_complex("complex 2\n{}\n")
    assert irrelevant.facets == (0,)
    void, _ = parse_complex("complex 2\n")
    assert void.is_void()
    with pytest.raises(ParseError):
        parse_complex("complex 2\nsplit 0 1\n")
