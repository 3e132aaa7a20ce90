"""Hilbert-symbol representatives of the quaternion Brauer class on a double
sextic, their evaluation at local points, and the coefficient criteria that
pin the local invariants at the real and 2-adic places."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .divisor import LETTERS, SLOTS, DoubleSexticSurface, QuadricSextet, minors
from .errors import (CannotConclude, Indeterminate, InvalidInput, NotOnSurface,
                     RepresentativeMismatch)
from .local import (HALF, ZERO, LocalInvariant, Place, hilbert_symbol, invariant_of_symbol,
                    is_square_local, padic_valuation, relevant_places)
from .poly import HomPoly

REP_LABELS = ("(-M_F, A)", "(-M_D, A)", "(-M_F, D)", "(-M_A, D)", "(-M_D, F)", "(-M_A, F)")

# representative tried first when x0, x1 or x2 is the first p-adic unit coordinate
_UNIT_PREFERENCE = (0, 3, 4)


@dataclass(frozen=True)
class SymbolRep:
    label: str
    left: HomPoly
    right: HomPoly

    def __post_init__(self):
        if self.label not in REP_LABELS:
            raise InvalidInput(f"unknown representative {self.label!r}")

    def values(self, point: Sequence[int]) -> tuple[Fraction, Fraction]:
        return self.left.eval(point), self.right.eval(point)


def brauer_reps(q: QuadricSextet) -> list[SymbolRep]:
    m = minors(q)
    pairs = (
        (-m.M_F, q.A), (-m.M_D, q.A), (-m.M_F, q.D),
        (-m.M_A, q.D), (-m.M_D, q.F), (-m.M_A, q.F),
    )
    return [SymbolRep(label, left, right) for label, (left, right) in zip(REP_LABELS, pairs)]


@dataclass(frozen=True)
class WeightedPoint:
    """``[x0, x1, x2, w]`` on ``w^2 = g`` with ``w`` known only through ``wsq = g(x)``."""

    x0: int
    x1: int
    x2: int
    wsq: Fraction

    def __post_init__(self):
        xs = (self.x0, self.x1, self.x2)
        if any(not isinstance(c, int) for c in xs):
            raise InvalidInput("coordinates must be integers")
        if math.gcd(*xs) != 1:
            raise InvalidInput(f"{xs} is not a primitive triple")
        object.__setattr__(self, "wsq", Fraction(self.wsq))

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.x0, self.x1, self.x2)

    @property
    def w_is_zero(self) -> bool:
        return self.wsq == 0

    @classmethod
    def on(cls, surface: DoubleSexticSurface, coords: Iterable) -> WeightedPoint:
        """Scale ``coords`` to a primitive integer triple and attach ``g`` there."""
        xs = [Fraction(c) for c in coords]
        if len(xs) != 3 or not any(xs):
            raise InvalidInput("a point needs three coordinates, not all zero")
        den = math.lcm(*(c.denominator for c in xs))
        ints = [int(c * den) for c in xs]
        g = math.gcd(*ints)
        ints = [c // g for c in ints]
        return cls(*ints, wsq=surface.g.eval(ints))

    def lies_over(self, place: Place) -> bool:
        return self.w_is_zero or is_square_local(self.wsq, place)

    def __str__(self):
        w = "0" if self.w_is_zero else f"sqrt({self.wsq})"
        return f"[{self.x0},{self.x1},{self.x2},{w}]"


def _first_unit(point: WeightedPoint, place: Place) -> int:
    if place.is_real:
        return 0
    for i, c in enumerate(point.coords):
        if c % place.prime:
            return i
    raise InvalidInput("primitive point has no unit coordinate")  # unreachable


def selection_order(point: WeightedPoint, place: Place) -> list[int]:
    first = _UNIT_PREFERENCE[_first_unit(point, place)]
    return [first] + [i for i in range(6) if i != first]


@dataclass(frozen=True)
class Evaluation:
    place: Place
    point: WeightedPoint
    label: str
    left: Fraction
    right: Fraction
    symbol: int
    invariant: LocalInvariant
    usable: tuple[str, ...]


def evaluate(reps: Sequence[SymbolRep], point: WeightedPoint, place: Place) -> Evaluation:
    """Evaluate the class at ``point`` over the completion at ``place``.

    Every representative with both entries nonzero at the point is evaluated
    and they must all agree.
    """
    if len(reps) != 6:
        raise InvalidInput("expected the six symbol representatives")
    if not point.lies_over(place):
        raise NotOnSurface(f"{point.wsq} is not a square in {place.completion}, so {point.coords} "
                           "does not lift to the surface there")
    results = []
    for i in selection_order(point, place):
        a, b = reps[i].values(point.coords)
        if a == 0 or b == 0:
            continue
        results.append((reps[i], a, b, hilbert_symbol(a, b, place)))
    if not results:
        raise Indeterminate(f"every representative has a vanishing entry at {point.coords}")
    rep, a, b, s = results[0]
    disagree = [r.label for r, _, _, t in results if t != s]
    if disagree:
        raise RepresentativeMismatch(
            f"at {point.coords} over {place}: {rep.label} gives {s}, but {', '.join(disagree)} differ")
    return Evaluation(place, point, rep.label, a, b, s, invariant_of_symbol(s),
                      tuple(r.label for r, *_ in results))


def eval_invariant(reps: Sequence[SymbolRep], point: WeightedPoint, place: Place) -> LocalInvariant:
    return evaluate(reps, point, place).invariant


# coefficient criteria

def gram_matrix(q: HomPoly) -> list[list[Fraction]]:
    g = [[Fraction(0)] * 3 for _ in range(3)]
    for e, c in q.terms.items():
        idx = [i for i in range(3) for _ in range(e[i])]
        i, j = idx
        if i == j:
            g[i][i] += c
        else:
            g[i][j] += c / 2
            g[j][i] += c / 2
    return g


def leading_minors(m: Sequence[Sequence[Fraction]]) -> tuple[Fraction, Fraction, Fraction]:
    d1 = m[0][0]
    d2 = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    d3 = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
          - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
          + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    return d1, d2, d3


def is_positive_definite(q: HomPoly) -> bool:
    if q.is_zero:
        return False
    return all(d > 0 for d in leading_minors(gram_matrix(q)))


def is_negative_definite(q: HomPoly) -> bool:
    return not q.is_zero and is_positive_definite(-q)


@dataclass(frozen=True)
class LemmaChecklist:
    name: str
    detail: Mapping[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.detail.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.detail.items() if not v]


def check_real_lemma(q: QuadricSextet) -> LemmaChecklist:
    """A, D, F negative definite and B, C, E positive definite."""
    detail = {}
    for letter, quad in zip(LETTERS, q.quadrics):
        if letter in "ADF":
            detail[f"{letter} negative definite"] = is_negative_definite(quad)
        else:
            detail[f"{letter} positive definite"] = is_positive_definite(quad)
    return LemmaChecklist("real", detail)


# slot (1-based) whose coefficient must be a 2-adic unit, per quadric
UNIT_SLOTS = {"A": 1, "B": 1, "C": 6, "D": 4, "E": 4, "F": 6}


def check_2adic_lemma(q: QuadricSextet) -> LemmaChecklist:
    """The coefficient ``UNIT_SLOTS[letter]`` of each quadric is odd and all others even."""
    detail = {}
    for letter in LETTERS:
        for slot in range(1, len(SLOTS) + 1):
            c = q.slot_coefficient(letter, slot)
            v = padic_valuation(c, 2)
            if UNIT_SLOTS[letter] == slot:
                detail[f"v2({letter}{slot}) = 0"] = v == 0
            else:
                detail[f"v2({letter}{slot}) > 0"] = v > 0
    return LemmaChecklist("2-adic", detail)


def lemma_checklist(q: QuadricSextet) -> dict[str, LemmaChecklist]:
    return {"real": check_real_lemma(q), "2-adic": check_2adic_lemma(q)}


def conclude_finite_place(place: Place, reduction, sample_invariant: LocalInvariant | None = None
                          ) -> LocalInvariant:
    """Constant value of the invariant on all Q_p-points, for odd ``p``.

    ``reduction`` is ``"good"`` or a reduction certificate with a ``holds``
    attribute (few singular points, all nodes); in the latter case the value
    is that of a sample point.
    """
    if place.is_real or place.prime == 2:
        raise InvalidInput("only odd primes are handled here")
    if reduction == "good":
        return ZERO
    if reduction is None or not getattr(reduction, "holds", False):
        raise CannotConclude(f"no bad-reduction certificate at p = {place.prime}")
    if sample_invariant is None:
        raise CannotConclude(f"no evaluated sample point at p = {place.prime}")
    return sample_invariant


@dataclass(frozen=True)
class ConstantClass:
    """A class from Br(Q), kept only as its nonzero local invariants."""

    invariants: tuple[tuple[Place, LocalInvariant], ...] = ()

    def __post_init__(self):
        inv = tuple(sorted(((p, i) for p, i in self.invariants if i.half),
                           key=lambda t: t[0].sort_key()))
        places = [p for p, _ in inv]
        if len(set(places)) != len(places):
            raise InvalidInput("a place is listed twice")
        if len(inv) % 2:
            raise InvalidInput("local invariants of a global class must sum to 0")
        object.__setattr__(self, "invariants", inv)

    @classmethod
    def from_places(cls, places: Iterable[Place]) -> ConstantClass:
        return cls(tuple((p, HALF) for p in places))

    @classmethod
    def quaternion(cls, a, b) -> ConstantClass:
        """The class of the quaternion algebra ``(a, b)`` over Q."""
        return cls(tuple((v, invariant_of_symbol(hilbert_symbol(a, b, v)))
                         for v in relevant_places(a, b)))

    def at(self, place: Place) -> LocalInvariant:
        for p, i in self.invariants:
            if p == place:
                return i
        return ZERO

    @property
    def ramified(self) -> list[Place]:
        return [p for p, _ in self.invariants]

    def twist(self, invariant: LocalInvariant, place: Place) -> LocalInvariant:
        """Invariant of the class divided by this constant one."""
        return invariant + self.at(place)
