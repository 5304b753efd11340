import pytest
from hypothesis import given, strategies as st

from hurwitz_alex.cgroup import ConjRelation, CPresentation, Word, abelian, example_4_1, example_4_2, g2
from hurwitz_alex.errors import ParseError
from hurwitz_alex.parsing import format_presentation, parse_matrix, parse_poly, parse_presentation
from hurwitz_alex.poly import T, Poly, cyclotomic


@pytest.mark.parametrize("text,expected", [
    ("t^2 - t + 1", T ** 2 - T + 1),
    ("(t-1)^2*(t+1)", (T - 1) ** 2 * (T + 1)),
    ("2t", T.scale(2)),
    ("-t+1", 1 - T),
    ("Phi6^2", cyclotomic(6) ** 2),
    ("Phi_4 (t-1)", cyclotomic(4) * (T - 1)),
    ("1", Poly((1,))),
    ("  t  ^ 3 ", T ** 3),
])
def test_parse_poly(text, expected):
    assert parse_poly(text) == expected


@pytest.mark.parametrize("text,col", [("t^2 -", 6), ("t^-1", 3), ("t + y", 5), ("(t-1", 5), ("Phi0", 1)])
def test_parse_poly_errors(text, col):
    with pytest.raises(ParseError) as exc:
        parse_poly(text)
    assert exc.value.column == col


@given(st.lists(st.integers(-9, 9), max_size=6))
def test_poly_print_parse_roundtrip(c):
    p = Poly(tuple(c))
    assert parse_poly(str(p)) == p


SPEC_SAMPLE = """cgroup m=3
x3 = x1^-1 x2 x1
x3 = x1^-1 x3 x2 x3^-1 x1
"""


def test_parse_sample():
    g = parse_presentation(SPEC_SAMPLE)
    assert g == example_4_1()


@pytest.mark.parametrize("g", [example_4_1(), example_4_2(), g2(), abelian(3)])
def test_format_parse_roundtrip(g):
    text = format_presentation(g)
    assert parse_presentation(text) == g
    assert format_presentation(parse_presentation(text)) == text


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4),
                          st.lists(st.tuples(st.integers(1, 4), st.sampled_from([-2, -1, 1, 3])),
                                   max_size=5)), max_size=5))
def test_roundtrip_random(rels):
    g = CPresentation(4, tuple(ConjRelation(i, j, Word(tuple(w))) for i, j, w in rels))
    assert parse_presentation(format_presentation(g)) == g


def test_alternative_forms():
    a = parse_presentation("x1^-1 x2 x1 = x3")
    assert a.relations == (ConjRelation(3, 2, Word.gen(1)),) and a.num_generators == 3
    b = parse_presentation("[x2, x1 x2] = 1")
    assert b.relations == (ConjRelation(2, 2, Word.product([1, 2])),)
    c = parse_presentation("x1 = (x1 x2)^-1 x1 (x1 x2)   # comment")
    assert c.relations == (ConjRelation(1, 1, Word.product([1, 2])),)


@pytest.mark.parametrize("text,line,col", [
    ("cgroup m=2\nx1 = x2 x1", 2, 6),
    ("cgroup m=2\nx3 = x1", 2, 1),
    ("x1 = x2\ncgroup m=2", 2, 1),
    ("x1 == x2", 1, 5),
    ("x1 = x2^2", 1, 6),
    ("cgroup m=2\n\nx1 = x1^-1 x2^2 x1", 3, 6),
    ("x0 = x1", 1, 1),
    ("x1 = x2 ? x3", 1, 9),
])
def test_presentation_errors(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_presentation(text)
    assert (exc.value.line, exc.value.column) == (line, col)


@pytest.mark.parametrize("text", ["[[0,1],[1,0]]", "0 1; 1 0", "0 1\n1 0", "2: 0 1 1 0", "0,1;1,0"])
def test_parse_matrix_forms(text):
    assert parse_matrix(text).tolist() == [[0, 1], [1, 0]]


@pytest.mark.parametrize("text", ["", "[[0,1],[1]]", "1 x", "3: 1 2", "[[1.5]]", "[1, 2]"])
def test_parse_matrix_errors(text):
    with pytest.raises(ParseError):
        parse_matrix(text)
