import math
import random

import pytest

from conftest import QP_TABLE
from twistk3.brauer import (REP_LABELS, ConstantClass, WeightedPoint, brauer_reps,
                            check_2adic_lemma, check_real_lemma, conclude_finite_place, evaluate,
                            eval_invariant, is_negative_definite, is_positive_definite)
from twistk3.divisor import QuadricSextet
from twistk3.errors import (CannotConclude, Indeterminate, InvalidInput, NotOnSurface,
                            RepresentativeMismatch)
from twistk3.local import HALF, ZERO, Place
from twistk3.poly import HomPoly, parse_poly
from twistk3.smoothness import reduction_certificate

TWO, REAL = Place.finite(2), Place.real()


def test_reps_structure(derivation):
    reps = brauer_reps(derivation.x_side)
    assert [r.label for r in reps] == list(REP_LABELS)
    assert reps[0].left.eval((1, 0, 0)) == -55
    assert reps[0].right == derivation.x_side.A


def test_reps_of_diagonal_sextet():
    a, d, f = parse_poly("x0^2"), parse_poly("x1^2"), parse_poly("x2^2")
    z = HomPoly.zero(2)
    reps = brauer_reps(QuadricSextet(a, z, z, d, z, f))
    assert len(reps) == 6
    assert (reps[0].left, reps[0].right) == (-4 * a * d, a)


def test_weighted_point(derivation):
    pt = WeightedPoint.on(derivation.X2, (2, 2, 2))
    assert pt.coords == (1, 1, 1) and pt.w_is_zero
    half = WeightedPoint.on(derivation.X2, ("1/2", 1, 0))
    assert half.coords == (1, 2, 0)
    with pytest.raises(InvalidInput):
        WeightedPoint(2, 4, 6, 0)


def test_examples_on_x2(derivation):
    reps = brauer_reps(derivation.y_side)
    x = WeightedPoint.on(derivation.X2, (-3, -1, 1))
    assert x.wsq == 357008
    assert eval_invariant(reps, x, TWO) == HALF
    ev = evaluate(reps, x, TWO)
    assert ev.label == "(-M_F, A)" and len(ev.usable) == 6
    y = WeightedPoint.on(derivation.X2, (4, 3, 3))
    assert y.wsq == 5204
    assert eval_invariant(reps, y, REAL) == ZERO


def test_rational_point_is_indeterminate(derivation):
    reps = brauer_reps(derivation.y_side)
    x = WeightedPoint.on(derivation.X2, (1, 1, 1))
    with pytest.raises(Indeterminate):
        eval_invariant(reps, x, REAL)


def test_point_must_lift(derivation):
    reps = brauer_reps(derivation.x_side)
    with pytest.raises(NotOnSurface):
        eval_invariant(reps, WeightedPoint.on(derivation.X1, (1, 1, 1)), REAL)


@pytest.mark.parametrize("p,coords", QP_TABLE)
def test_table_points_have_trivial_invariant(derivation, p, coords):
    reps = brauer_reps(derivation.x_side)
    assert eval_invariant(reps, WeightedPoint.on(derivation.X1, coords), Place.finite(p)) == ZERO


def test_mismatch_is_detected(derivation):
    reps = list(brauer_reps(derivation.y_side))
    # replace one representative by a wrong pair
    wrong = type(reps[1])(reps[1].label, reps[1].left, -reps[1].right)
    reps[1] = wrong
    x = WeightedPoint.on(derivation.X2, (-3, -1, 1))
    with pytest.raises(RepresentativeMismatch):
        evaluate(reps, x, TWO)


def test_real_lemma(derivation):
    assert check_real_lemma(derivation.x_side).ok
    assert len(check_real_lemma(derivation.x_side).detail) == 6
    assert not is_negative_definite(parse_poly("x0^2 + x1^2 + x2^2"))
    assert is_positive_definite(parse_poly("4*x0^2 + 3*x1^2 + 4*x2^2"))
    assert not is_positive_definite(parse_poly("x0^2 + 2*x0*x1 + x1^2 + x2^2"))


def test_two_adic_lemma(derivation):
    q = derivation.x_side
    check = check_2adic_lemma(q)
    assert check.ok and len(check.detail) == 36
    even = QuadricSextet(*(2 * parse_poly("x0^2 + x0*x1 + x0*x2 + x1^2 + x1*x2 + x2^2")
                           for _ in range(6)))
    failures = check_2adic_lemma(even).failures()
    assert sorted(failures) == sorted(f"v2({k}) = 0" for k in ("A1", "B1", "C6", "D4", "E4", "F6"))
    bumped = QuadricSextet(q.A + parse_poly("x0^2"), q.B, q.C, q.D, q.E, q.F)
    assert bumped.slot_coefficient("A", 1) == -4
    assert check_2adic_lemma(bumped).failures() == ["v2(A1) = 0"]


def test_conclude_finite_place(derivation):
    assert conclude_finite_place(Place.finite(11), "good") == ZERO
    cert = reduction_certificate(derivation.X1.g, 307)
    assert conclude_finite_place(Place.finite(307), cert, ZERO) == ZERO
    with pytest.raises(CannotConclude):
        conclude_finite_place(Place.finite(307), None, ZERO)
    with pytest.raises(CannotConclude):
        conclude_finite_place(Place.finite(307), cert)
    with pytest.raises(InvalidInput):
        conclude_finite_place(TWO, "good")


def test_constant_class():
    beta = ConstantClass.quaternion(-1, -1)
    assert beta.ramified == [TWO, REAL]
    assert beta.twist(ZERO, REAL) == HALF and beta.twist(ZERO, Place.finite(3)) == ZERO
    with pytest.raises(InvalidInput):
        ConstantClass(((REAL, HALF),))


def _sample(rng, X, accept, count, bound=10 ** 4):
    found = []
    while len(found) < count:
        c = tuple(rng.randint(-bound, bound) for _ in range(3))
        if not any(c) or math.gcd(*c) != 1:
            continue
        pt = WeightedPoint.on(X, c)
        if accept(pt):
            found.append(pt)
    return found


def test_two_adic_points_have_trivial_invariant(derivation):
    reps = brauer_reps(derivation.x_side)
    rng = random.Random(7)
    pts = _sample(rng, derivation.X1, lambda pt: pt.lies_over(TWO), 200)
    for pt in pts:
        assert eval_invariant(reps, pt, TWO) == ZERO


def test_real_points_have_invariant_half(derivation):
    reps = brauer_reps(derivation.x_side)
    rng = random.Random(11)
    pts = _sample(rng, derivation.X1, lambda pt: pt.wsq > 0, 200)
    for pt in pts:
        assert eval_invariant(reps, pt, REAL) == HALF
