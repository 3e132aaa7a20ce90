from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from twistk3.errors import InvalidInput, NotPIntegral, ParseError
from twistk3.poly import (HomPoly, monomials, parse_poly, resultant_uni, roots_mod_p,
                          ugcd, usquarefree)

X = ("x0", "x1", "x2")
A = parse_poly("-5*x0^2 + 4*x0*x2 - 4*x1^2 + 2*x1*x2 - 4*x2^2")
E = parse_poly("4*x0^2 + 3*x1^2 + 4*x2^2")


def test_eval_examples():
    assert A.eval((1, 0, 0)) == -5
    assert E.eval((0, 1, 0)) == 3
    assert HomPoly.zero(4).eval((Fraction(1, 3), 2, 7)) == 0
    assert A.eval((Fraction(1, 2), 0, 0)) == Fraction(-5, 4)


def test_partial_examples():
    x0 = HomPoly.var(0)
    assert (x0 * x0).partial(0) == 2 * x0
    assert parse_poly("x1^3*x2^3").partial(0).is_zero


coeff = st.integers(-20, 20)
sextics = st.lists(coeff, min_size=28, max_size=28).filter(any).map(
    lambda cs: HomPoly.from_coefficients(6, cs))


@given(sextics)
@settings(max_examples=50, deadline=None)
def test_euler_identity(g):
    lhs = sum((HomPoly.var(i) * g.partial(i) for i in range(3)), HomPoly.zero(6))
    assert lhs == 6 * g


def test_monomial_order_and_printing():
    assert monomials(2) == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    assert A.to_str(X) == "-5*x0^2 - 4*x1^2 + 4*x0*x2 + 2*x1*x2 - 4*x2^2"
    assert parse_poly(A.to_str(X)) == A
    assert HomPoly.zero(2).to_str(X) == "0"


def test_parse_errors_carry_columns():
    with pytest.raises(ParseError) as err:
        parse_poly("x0^2 + $x1^2")
    assert err.value.column == 8
    with pytest.raises(ParseError):
        parse_poly("x0^2 + x1")  # inhomogeneous


def test_reduce_mod_p():
    red = A.reduce_mod_p(5)
    assert red.terms == {(1, 0, 1): 4, (0, 2, 0): 1, (0, 1, 1): 2, (0, 0, 2): 1}
    assert HomPoly.zero(3).reduce_mod_p(7).is_zero
    with pytest.raises(NotPIntegral):
        (HomPoly.var(0) ** 6 * Fraction(1, 2)).reduce_mod_p(2)


def test_resultant_examples():
    a, b = 3, -7
    assert resultant_uni([-a, 1], [-b, 1]) == a - b
    assert resultant_uni([1, 0, 1], [1, 0, 1]) == 0
    with pytest.raises(InvalidInput):
        resultant_uni([0], [0])


small_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=5).filter(lambda f: any(f[1:]))


@given(small_polys, small_polys, st.integers(-3, 3))
@settings(max_examples=200, deadline=None)
def test_resultant_vanishes_iff_common_factor(f, g, shift):
    # half the pairs get a forced common root
    if shift % 2 == 0:
        f = [c1 - shift * c0 for c0, c1 in zip([0] + f, f + [0])]
        g = [c1 - shift * c0 for c0, c1 in zip([0] + g, g + [0])]
    t = sympy.Symbol("t")
    fs = sum(c * t ** i for i, c in enumerate(f))
    gs = sum(c * t ** i for i, c in enumerate(g))
    common = sympy.degree(sympy.gcd(fs, gs), t) > 0
    assert (resultant_uni(f, g) == 0) == common


def test_roots_and_squarefree_mod_p():
    p = 101
    f = [(-2 * -3) % p, (-5) % p, 1]  # (t-2)(t-3)
    assert sorted(roots_mod_p(f, p)) == [2, 3]
    square = [4, p - 4, 1]  # (t-2)^2
    assert usquarefree(square, p) == [p - 2, 1]
    assert ugcd(f, square, p) == [p - 2, 1]
    big = 1000003
    assert sorted(roots_mod_p([(-7 * -11) % big, (-18) % big, 1], big)) == [7, 11]
