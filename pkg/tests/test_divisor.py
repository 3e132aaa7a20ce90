import pytest
from hypothesis import given, settings, strategies as st

from twistk3.divisor import (BiForm22, DoubleSexticSurface, QuadricSextet, biform_from_sextet,
                             derive, discriminant_matrix, extract_quadrics, k3_equation, minors,
                             parse_divisor, parse_surface)
from twistk3.errors import InvalidInput, ParseError
from twistk3.poly import HomPoly, parse_poly

PRINTED_X = {
    "A": "-5*x0^2 + 4*x0*x2 - 4*x1^2 + 2*x1*x2 - 4*x2^2",
    "B": "5*x0^2 + 2*x0*x1 - 2*x0*x2 + 2*x1^2 + 2*x1*x2 + 4*x2^2",
    "C": "4*x0^2 + 2*x0*x1 - 4*x0*x2 + 2*x1^2 - 2*x1*x2 + 5*x2^2",
    "D": "-4*x0^2 - 2*x0*x1 - x1^2 - 2*x1*x2 - 4*x2^2",
    "E": "4*x0^2 + 3*x1^2 + 4*x2^2",
    "F": "-4*x0^2 + 4*x0*x1 + 2*x0*x2 - 2*x1^2 - 4*x1*x2 - 5*x2^2",
}

X1_START = "-4*x0^6 - 308*x0^5*x1 - 190*x0^4*x1^2"
X1_END = "+ 166*x1*x2^5 - 4*x2^6"
X2_START = "236*y0^6 - 740*y0^5*y1 + 1268*y0^4*y1^2"
X2_END = "- 388*y1*y2^5 + 40*y2^6"


def single(i, j, c=1):
    rows = [[0] * 6 for _ in range(6)]
    rows[i][j] = c
    return BiForm22(rows)


def test_x_side_quadrics_match_printed(derivation):
    q = derivation.x_side
    for letter, text in PRINTED_X.items():
        assert getattr(q, letter) == parse_poly(text), letter


def test_y_side_reads_coefficients_across(divisor, derivation):
    assert derivation.y_side.A.coeff((2, 0, 0)) == -5
    assert divisor.coeff(0, 0) == -5


def test_single_monomial_divisor():
    Z = single(0, 0)
    qx, qy = extract_quadrics(Z, "x"), extract_quadrics(Z, "y")
    assert qx.A == parse_poly("x0^2") and all(q.is_zero for q in qx.quadrics[1:])
    assert qy.A == parse_poly("y0^2", ("y0", "y1", "y2"))
    assert all(q.is_zero for q in qy.quadrics[1:])


def test_discriminant_matrix(derivation):
    m = discriminant_matrix(derivation.x_side)
    assert m.entries[0][0] == parse_poly("-10*x0^2 + 8*x0*x2 - 8*x1^2 + 4*x1*x2 - 8*x2^2")
    zero = QuadricSextet.from_quadrics([HomPoly.zero(2)] * 6)
    assert all(e.is_zero for row in discriminant_matrix(zero).entries for e in row)


quadrics = st.lists(st.integers(-9, 9), min_size=6, max_size=6).map(
    lambda cs: HomPoly.from_coefficients(2, cs))


@given(st.lists(quadrics, min_size=6, max_size=6))
@settings(max_examples=30, deadline=None)
def test_discriminant_matrix_symmetric_and_roundtrip(qs):
    q = QuadricSextet.from_quadrics(qs)
    e = discriminant_matrix(q).entries
    assert e[0][1] == e[1][0] == q.B
    if any(not x.is_zero for x in qs):
        assert extract_quadrics(biform_from_sextet(q), "x") == q


def test_k3_equations_match_printed(derivation):
    assert derivation.X1.equation().startswith("w^2 = " + X1_START)
    assert derivation.X1.equation().endswith(X1_END)
    assert derivation.X2.g.to_str(("y0", "y1", "y2")).startswith(X2_START)
    assert derivation.X2.equation().endswith(X2_END)
    assert derivation.X1.g.coeff((6, 0, 0)) == -4
    assert derivation.X1.g.coeff((5, 1, 0)) == -308
    assert derivation.X2.g.coeff((0, 0, 6)) == 40


def test_diagonal_sextet():
    s = parse_poly("x0^2 + 2*x1^2 - x0*x2")
    z = HomPoly.zero(2)
    X = k3_equation(discriminant_matrix(QuadricSextet(s, z, z, s, z, s)))
    assert X.g == -4 * s ** 3


def test_minors():
    a, d, f = parse_poly("x0^2"), parse_poly("x1^2"), parse_poly("x0*x2")
    z = HomPoly.zero(2)
    m = minors(QuadricSextet(a, z, z, d, z, f))
    assert (m.M_A, m.M_D, m.M_F) == (4 * d * f, 4 * a * f, 4 * a * d)
    x = parse_poly("x0^2")
    m = minors(QuadricSextet(x, x, x, x, x, x))
    assert m.M_A == m.M_D == m.M_F == 3 * x * x


def test_minor_value(derivation):
    assert minors(derivation.x_side).M_F.eval((1, 0, 0)) == 55


def test_parse_divisor_formats_and_errors():
    Z = parse_divisor("x0x1 y2^2 : 3\nx0*x1 y0^2 : -1  # comment\n")
    assert Z.coeff(1, 5) == 3 and Z.coeff(1, 0) == -1
    for text, line in (("x0^2 y0^2 : 1\nx0^2 y0^2 : 2\n", 2),
                       ("x0^2 y0^2 : one\n", 1),
                       ("x0^3 y0 : 1\n", 1),
                       ("x0^2 y0^2 1\n", 1)):
        with pytest.raises(ParseError) as err:
            parse_divisor(text)
        assert err.value.line == line
    with pytest.raises(ParseError, match="no coefficients"):
        parse_divisor("# nothing\n")


def test_divisor_text_roundtrip(divisor):
    assert parse_divisor(divisor.to_text()) == divisor


def test_parse_surface(derivation):
    X = parse_surface(derivation.X2.equation() + "\n")
    assert X == derivation.X2
    with pytest.raises(ParseError):
        parse_surface("w^3 = x0^6")
    with pytest.raises(InvalidInput):
        DoubleSexticSurface(parse_poly("x0^2"))


def test_zero_divisor_rejected():
    with pytest.raises(InvalidInput):
        BiForm22([[0] * 6 for _ in range(6)])
    # a rank-one matrix of quadrics has identically zero determinant
    assert derive(single(0, 0)).X1.g.is_zero
