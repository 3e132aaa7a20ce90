"""Points of double sextics over F_p, Q_p, R and Q, adelic existence, and the
Brauer-Manin tally."""
from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .arith import primes_below
from .brauer import (ConstantClass, WeightedPoint, brauer_reps, check_2adic_lemma,
                     check_real_lemma, conclude_finite_place, eval_invariant)
from .divisor import DoubleSexticSurface, QuadricSextet
from .errors import CannotConclude, DegenerateReduction, InvalidInput, NotFound, NotOnSurface, TwistK3Error
from .local import HALF, ZERO, LocalInvariant, PAdicSqrt, Place, hensel_sqrt
from .smoothness import (ReductionCertificate, _eval_grid, _primitive_triples, candidate_integer,
                         primitive_integral, projective_grid, reduction_certificate,
                         singular_locus_mod_p)

# a smooth K3 reduction has at least p^2 - 22p + 1 points, positive once p > 21
WEIL_BETTI = 22


@dataclass(frozen=True)
class SearchConfig:
    height_bound: int = 8
    padic_precision: int = 24
    prime_enumeration_bound: int = WEIL_BETTI

    def __post_init__(self):
        for name in ("height_bound", "padic_precision", "prime_enumeration_bound"):
            if getattr(self, name) < 1:
                raise InvalidInput(f"{name} must be positive")


def primitive_triples(height: int) -> Iterable[tuple[int, int, int]]:
    """Primitive triples up to sign, by max-norm shell and then lexicographically."""
    return _primitive_triples(height)


# ---------------------------------------------------------------------------
# F_p


def has_good_reduction(X: DoubleSexticSurface, p: int) -> bool:
    """Is the branch sextic smooth modulo the odd prime ``p``?"""
    g = primitive_integral(X.g)
    cand, _ = candidate_integer(g)
    if cand % p:
        return True
    try:
        locus = singular_locus_mod_p(g, p)
    except DegenerateReduction:
        # every shear eliminates to zero: g and its partials share a component
        return False
    return locus.complete and not locus.points


def _values_mod_p(X: DoubleSexticSurface, p: int) -> np.ndarray:
    gp = X.g.reduce_mod_p(p)
    grid = projective_grid(p)
    return _eval_grid(gp.terms, p, (grid[:, 0], grid[:, 1], grid[:, 2]))


def count_points_mod_p(X: DoubleSexticSurface, p: int, method: str = "character",
                       check_good: bool = True) -> int:
    """Number of F_p-points of ``w^2 = g`` in P(1,1,1,3)."""
    if p % 2 == 0 or p < 3:
        raise InvalidInput("point counts are defined here for odd primes only")
    if X.g.reduce_mod_p(p).is_zero:
        raise InvalidInput(f"the sextic vanishes identically mod {p}")
    if check_good and not has_good_reduction(X, p):
        raise InvalidInput(f"{p} is a prime of bad reduction")
    values = _values_mod_p(X, p)
    squares = np.arange(p, dtype=np.int64) ** 2 % p
    if method == "character":
        chi = -np.ones(p, dtype=np.int64)
        chi[squares] = 1
        chi[0] = 0
        return int(len(values) + chi[values].sum())
    if method == "exhaustive":
        # for each w, the base points over which w^2 = g(x)
        hits = np.bincount(values, minlength=p)
        return int(hits[squares].sum())
    raise InvalidInput(f"unknown counting method {method!r}")


def weil_interval(p: int) -> tuple[int, int]:
    centre = 1 + p * p
    return centre - WEIL_BETTI * p, centre + WEIL_BETTI * p


# ---------------------------------------------------------------------------
# Q_p, R, Q


def point_over(X: DoubleSexticSurface, coords: Sequence, place: Place) -> WeightedPoint:
    """The weighted point above ``coords``, if it is defined over the completion."""
    pt = WeightedPoint.on(X, coords)
    if not pt.lies_over(place):
        raise NotOnSurface(f"g{pt.coords} = {pt.wsq} is not a square in {place.completion}")
    return pt


def find_qp_point(X: DoubleSexticSurface, p: int, config: SearchConfig = SearchConfig()
                  ) -> WeightedPoint:
    place = Place.finite(p)
    for coords in primitive_triples(config.height_bound):
        pt = WeightedPoint.on(X, coords)
        if pt.lies_over(place):
            return pt
    raise NotFound(f"no Q_{p}-point of height <= {config.height_bound}")


def find_real_point(X: DoubleSexticSurface, config: SearchConfig = SearchConfig(),
                    hints: Iterable[Sequence] = ()) -> WeightedPoint:
    """A triple where g >= 0; only a certificate of existence, never of absence."""
    for coords in [*hints, *primitive_triples(config.height_bound)]:
        pt = WeightedPoint.on(X, coords)
        if pt.wsq >= 0:
            return pt
    raise NotFound(f"g < 0 at every sampled triple of height <= {config.height_bound}")


def is_rational_square(r) -> bool:
    r = Fraction(r)
    if r < 0:
        return False
    n, d = r.numerator, r.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def find_rational_points(X: DoubleSexticSurface, config: SearchConfig = SearchConfig()
                         ) -> list[WeightedPoint]:
    return [pt for pt in (WeightedPoint.on(X, c) for c in primitive_triples(config.height_bound))
            if is_rational_square(pt.wsq)]


def local_sqrt(point: WeightedPoint, place: Place, precision: int) -> PAdicSqrt | None:
    """Hensel certificate for ``w`` at a finite place (``None`` when w = 0)."""
    if place.is_real or point.w_is_zero:
        return None
    root = hensel_sqrt(point.wsq, place.prime, precision)
    assert root.check(point.wsq)
    return root


# ---------------------------------------------------------------------------
# adelic points


@dataclass(frozen=True)
class PlaceWitness:
    place: Place
    kind: str  # "point" or "none"
    point: WeightedPoint | None = None
    sqrt: PAdicSqrt | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.kind == "point"


@dataclass
class AdelicReport:
    per_place: dict[Place, PlaceWitness] = field(default_factory=dict)
    weil_from: int = WEIL_BETTI

    @property
    def has_adelic_points(self) -> bool:
        return all(w.ok for w in self.per_place.values())

    @property
    def failing_places(self) -> list[Place]:
        return [p for p, w in self.per_place.items() if not w.ok]

    def point_at(self, place: Place) -> WeightedPoint | None:
        w = self.per_place.get(place)
        return w.point if w else None


def adelic_existence(X: DoubleSexticSurface, bad_primes: Iterable[int],
                     config: SearchConfig = SearchConfig(),
                     supplied: Mapping[int, Sequence[int]] | None = None,
                     real_hints: Iterable[Sequence[int]] = (),
                     search: bool = True) -> AdelicReport:
    """Local points at the real place, at every prime below the enumeration
    bound and every bad prime. The remaining primes have good reduction and
    at least p^2 - 22p + 1 > 0 smooth F_p-points, each lifting by Hensel."""
    supplied = dict(supplied or {})
    report = AdelicReport(weil_from=max(config.prime_enumeration_bound, WEIL_BETTI))
    real = Place.real()
    try:
        pt = find_real_point(X, config, hints=real_hints)
        report.per_place[real] = PlaceWitness(real, "point", pt, detail=f"g = {pt.wsq} >= 0")
    except NotFound as exc:
        report.per_place[real] = PlaceWitness(real, "none", detail=str(exc))

    bad = sorted(set(int(p) for p in bad_primes))
    primes = sorted(set(primes_below(config.prime_enumeration_bound)) | set(bad))
    for p in primes:
        place = Place.finite(p)
        pt, detail = None, ""
        if p in supplied:
            try:
                pt = point_over(X, supplied[p], place)
                detail = "supplied"
            except NotOnSurface as exc:
                detail = str(exc)
        if pt is None and search:
            try:
                pt = find_qp_point(X, p, config)
                detail = "search"
            except NotFound as exc:
                detail = str(exc)
        if pt is None:
            report.per_place[place] = PlaceWitness(place, "none", detail=detail or "not searched")
        else:
            root = local_sqrt(pt, place, config.padic_precision)
            report.per_place[place] = PlaceWitness(place, "point", pt, root, detail)
    return report


# ---------------------------------------------------------------------------
# verdict


@dataclass(frozen=True)
class PlaceConclusion:
    place: Place | None  # None stands for "every other finite place"
    invariant: LocalInvariant
    reason: str


@dataclass
class ObstructionVerdict:
    status: str  # "obstructed", "not obstructed" or "unknown"
    invariant_sum: LocalInvariant | None
    has_adelic_points: bool
    conclusions: list[PlaceConclusion] = field(default_factory=list)
    reason: str = ""

    @property
    def obstructed(self) -> bool:
        return self.status == "obstructed"


def place_conclusions(X: DoubleSexticSurface, q: QuadricSextet, adelic: AdelicReport,
                      bad_primes: Iterable[int],
                      certificates: Mapping[int, ReductionCertificate] | None = None
                      ) -> list[PlaceConclusion]:
    """The constant value of inv_v on X(Q_v) at every place, or CannotConclude."""
    certificates = dict(certificates or {})
    reps = brauer_reps(q)
    out = []

    real = check_real_lemma(q)
    if not real.ok:
        raise CannotConclude(f"real place: {', '.join(real.failures())}")
    out.append(PlaceConclusion(Place.real(), HALF, "A, D, F negative and B, C, E positive definite"))

    two = check_2adic_lemma(q)
    if not two.ok:
        raise CannotConclude(f"p = 2: {', '.join(two.failures())}")
    out.append(PlaceConclusion(Place.finite(2), ZERO, "coefficient parities"))

    g = primitive_integral(X.g)
    for p in sorted(set(int(p) for p in bad_primes) - {2}):
        place = Place.finite(p)
        cert = certificates.get(p) or reduction_certificate(g, p)
        sample = adelic.point_at(place)
        if sample is None:
            raise CannotConclude(f"p = {p}: no local point to evaluate")
        inv = conclude_finite_place(place, cert, eval_invariant(reps, sample, place))
        out.append(PlaceConclusion(
            place, inv, f"{cert.count} node(s) mod p; value at {sample}"))
    out.append(PlaceConclusion(None, conclude_finite_place(Place.finite(3), "good"),
                               "good reduction"))
    return out


def bm_verdict(X: DoubleSexticSurface, q: QuadricSextet, adelic: AdelicReport,
               bad_primes: Iterable[int],
               certificates: Mapping[int, ReductionCertificate] | None = None,
               twist: ConstantClass | None = None, cofactor: int = 1) -> ObstructionVerdict:
    """Obstruction status of ``X``; ``cofactor`` is the part of the bad-prime
    candidate integer left unfactored, which must be 1 for a conclusion."""
    if abs(cofactor) != 1:
        return ObstructionVerdict("unknown", None, adelic.has_adelic_points,
                                  reason=f"bad primes incomplete: a {len(str(cofactor))}-digit "
                                         "cofactor is unfactored")
    try:
        conclusions = place_conclusions(X, q, adelic, list(bad_primes), certificates)
    except TwistK3Error as exc:
        return ObstructionVerdict("unknown", None, adelic.has_adelic_points, reason=str(exc))
    failing = ", ".join(map(str, adelic.failing_places))
    return tally(conclusions, adelic.has_adelic_points, twist,
                 reason=f"no local point found at {failing}" if failing else "")


def tally(conclusions: Sequence[PlaceConclusion], has_adelic_points: bool,
          twist: ConstantClass | None = None, reason: str = "") -> ObstructionVerdict:
    """Sum the constant local invariants; an obstruction needs adelic points
    and a nonzero sum."""
    if twist is not None:
        conclusions = apply_twist(conclusions, twist)
    total = ZERO
    for c in conclusions:
        total = total + c.invariant
    if not has_adelic_points:
        return ObstructionVerdict("unknown", total, False, list(conclusions),
                                  reason or "adelic points not established")
    status = "obstructed" if total.half else "not obstructed"
    return ObstructionVerdict(status, total, True, list(conclusions))


def apply_twist(conclusions: Sequence[PlaceConclusion], beta: ConstantClass) -> list[PlaceConclusion]:
    """Divide the class by the constant class ``beta`` place by place."""
    listed = {c.place for c in conclusions}
    generic = next((c for c in conclusions if c.place is None), None)
    out = [PlaceConclusion(c.place, beta.twist(c.invariant, c.place), c.reason)
           if c.place is not None else c for c in conclusions]
    for place in beta.ramified:
        if place not in listed:
            if generic is None:
                raise CannotConclude(f"no conclusion covers the place {place}")
            out.append(PlaceConclusion(place, beta.twist(generic.invariant, place),
                                       f"{generic.reason}, twisted"))
    return out
