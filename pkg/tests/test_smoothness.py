import pytest

from twistk3.errors import DegenerateReduction, InvalidInput
from twistk3.poly import parse_poly
from twistk3.smoothness import (bad_prime_candidates, candidate_integer, is_ordinary_double_point,
                                is_smooth_sextic, reduction_certificate, singular_locus_mod_p,
                                singular_points_mod_p)

FERMAT = parse_poly("x0^6 + x1^6 + x2^6")


def test_fermat_is_smooth():
    cert = is_smooth_sextic(FERMAT)
    assert cert.smooth and cert.resultant != 0


def test_nonreduced_sextic_has_witness():
    cert = is_smooth_sextic(parse_poly("x0^2*x1^4"))
    assert not cert.smooth
    assert cert.singular_point == (0, 0, 1)


def test_irrational_singularities_are_reported():
    # a node at the two points where x0^2 = 2 x2^2, x1 = 0
    q = parse_poly("x0^2 - 2*x2^2")
    x1 = parse_poly("x1")
    g = q * q * x1 * x1 + x1 ** 6 + q ** 3
    cert = is_smooth_sextic(g)
    assert not cert.smooth


def test_discriminant_curves_smooth(derivation):
    assert is_smooth_sextic(derivation.X1.g).smooth
    assert is_smooth_sextic(derivation.X2.g).smooth


def test_singular_points_mod_p_examples(derivation):
    g = derivation.X1.g
    assert singular_points_mod_p(g, 307) == [(1, 132, 33)]
    assert singular_points_mod_p(g, 23) == []
    assert (0, 0, 1) in singular_points_mod_p(parse_poly("x0^2*x1^4"), 7)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 307])
def test_scan_and_elimination_agree(derivation, p):
    g = derivation.X1.g
    assert singular_points_mod_p(g, p, "scan") == singular_points_mod_p(g, p, "eliminate")


def test_locus_is_complete_at_good_prime(derivation):
    locus = singular_locus_mod_p(derivation.X1.g, 3)
    assert locus.complete and locus.points == ()


def test_vanishing_reduction():
    with pytest.raises(DegenerateReduction):
        singular_points_mod_p(parse_poly("5*x0^6 + 10*x1^6"), 5)


def test_ordinary_double_points():
    assert is_ordinary_double_point(parse_poly("x0*x1*x2^4"), 5, (0, 0, 1))
    cusp = parse_poly("x0^3 - x1^2*x2") * parse_poly("x2^3")
    assert (0, 0, 1) in singular_points_mod_p(cusp, 5, "scan")
    assert not is_ordinary_double_point(cusp, 5, (0, 0, 1))
    with pytest.raises(InvalidInput):
        is_ordinary_double_point(FERMAT, 7, (1, 0, 0))
    with pytest.raises(InvalidInput):
        is_ordinary_double_point(FERMAT, 2, (1, 1, 0))


def test_reduction_certificate_307(derivation):
    cert = reduction_certificate(derivation.X1.g, 307)
    assert cert.holds and cert.count < 8 and all(cert.nodes)


def test_fermat_bad_primes():
    report = bad_prime_candidates(FERMAT, search_bound=1000)
    assert report.primes == [2, 3]
    assert report.cofactor == 1


def test_bad_primes_below_a_million(derivation):
    report = bad_prime_candidates(derivation.X1.g, search_bound=10 ** 6)
    assert report.primes == [2, 5, 7, 307, 4591, 27077, 371857]
    assert [p for p, _ in report.rejected] == [3]
    assert report.unresolved == []


def test_every_bad_prime_divides_candidate(derivation):
    cand, shears = candidate_integer(derivation.X1.g)
    assert len(shears) == 3
    for p in (5, 7, 307, 4591, 27077, 371857, 6902849, 104388233):
        assert cand % p == 0


def test_extra_primes_are_checked(derivation):
    report = bad_prime_candidates(derivation.X1.g, search_bound=100, extra_primes=[15, 1000003])
    reasons = dict(report.rejected)
    assert reasons[15] == "not a probable prime"
    assert reasons[1000003] == "does not divide the candidate integer"
