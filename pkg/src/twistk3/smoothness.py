"""Jacobian smoothness certificates and bad-reduction primes for plane curves.

Singular points of ``g = 0`` are common zeros of the three partials (plus
``g`` itself when the characteristic divides the degree). They are
eliminated in two steps. After a shear ``x0 -> x0 + a*x2, x1 -> x1 + b*x2``
each pair of partials is viewed as polynomials in ``x2``; their Sylvester
resultants are binary forms ``R01, R02, R12`` in ``(x0, x1)`` of degree
``(d-1)^2``. The resultant of ``R01`` and ``R02`` is an integer that vanishes
modulo every prime where the curve acquires a singular point over the
algebraic closure (resultants are taken with formal degrees, so this is
compatible with reduction mod p).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .arith import is_probable_prime, trial_divisors
from .errors import DegenerateReduction, InvalidInput, NonGenericCoordinates
from .poly import (
    HomPoly,
    interpolate,
    roots_mod_p,
    sylvester_det,
    ugcd,
    umonic,
    usquarefree,
)

SHEARS: tuple[tuple[int, int], ...] = (
    (0, 0), (1, 2), (2, -1), (-1, 3), (3, 1), (1, -3), (4, 3), (-3, 2), (5, -2), (2, 5),
)
PAIRS = ((0, 1), (0, 2), (1, 2))
SCAN_LIMIT = 1000

Point = tuple[int, int, int]


def shear_matrix(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    return ((1, 0, a), (0, 1, b), (0, 0, 1))


def _apply(mat, pt):
    return tuple(sum(mat[i][j] * pt[j] for j in range(3)) for i in range(3))


def normalize_mod_p(pt: Sequence[int], p: int) -> Point:
    """Scale a nonzero point of P^2(F_p) so its first nonzero coordinate is 1."""
    pt = [c % p for c in pt]
    for c in pt:
        if c:
            inv = pow(c, -1, p)
            return tuple(x * inv % p for x in pt)
    raise InvalidInput("the zero vector is not a projective point")


def primitive_integral(g: HomPoly) -> HomPoly:
    """Scale ``g`` to integer coefficients with content 1 and the same sign."""
    if g.is_zero:
        raise InvalidInput("zero polynomial")
    den = math.lcm(*(c.denominator for c in g.terms.values()))
    num = math.gcd(*(c.numerator for c in g.terms.values()))
    return g * Fraction(den, num)


# ---------------------------------------------------------------------------
# Elimination over the integers


def _z_coefficients(terms: dict, x0: int, x1: int, deg: int) -> list[int]:
    out = [0] * (deg + 1)
    for (a, b, c), coef in terms.items():
        out[c] += coef * x0 ** a * x1 ** b
    return out


def _binary_resultant(gi: dict, di: int, gj: dict, dj: int) -> list[int]:
    """Coefficients in t of Res_z(gi(1,t,z), gj(1,t,z)) with formal z-degrees
    ``di``, ``dj``; the result is a binary form of degree ``di*dj``."""
    size = di * dj
    ts = list(range(size + 1))
    vals = [sylvester_det(_z_coefficients(gi, 1, t, di), _z_coefficients(gj, 1, t, dj))
            for t in ts]
    coeffs = interpolate(ts, vals)
    assert all(c.denominator == 1 for c in coeffs)
    return [c.numerator for c in coeffs]


@dataclass(frozen=True)
class Elimination:
    shear: tuple[int, int]
    degree: int
    g: dict
    partials: tuple[dict, dict, dict]
    forms: tuple[list[int], list[int], list[int]]
    resultant: int


@lru_cache(maxsize=64)
def elimination(g: HomPoly, shear_index: int) -> Elimination:
    """Resultant chain of ``g`` (integral) after the given shear."""
    a, b = SHEARS[shear_index]
    gs = g.compose_linear(shear_matrix(a, b))
    grads = gs.gradient()
    terms = gs.int_terms()
    partials = tuple(q.int_terms() for q in grads)
    deg = g.degree - 1
    forms = tuple(_binary_resultant(partials[i], deg, partials[j], deg) for i, j in PAIRS)
    res = sylvester_det(forms[0], forms[1])
    return Elimination((a, b), g.degree, terms, partials, forms, res)


@lru_cache(maxsize=64)
def curve_forms(g: HomPoly, shear_index: int) -> tuple[list[int], ...]:
    """Res_z(g, partial_i) for each i; needed when p divides deg g."""
    el = elimination(g, shear_index)
    d = el.degree
    return tuple(_binary_resultant(el.g, d, part, d - 1) for part in el.partials)


# ---------------------------------------------------------------------------
# Smoothness over Q


@dataclass(frozen=True)
class SmoothnessCertificate:
    smooth: bool
    shear: tuple[int, int] | None = None
    resultant: int | None = None
    singular_point: Point | None = None
    extension: list[Fraction] | None = None

    def __post_init__(self):
        if self.smooth and self.resultant in (None, 0):
            raise InvalidInput("a smoothness certificate needs a nonzero resultant")
        if not self.smooth and self.singular_point is None and self.extension is None:
            raise InvalidInput("a singularity certificate needs a witness")

    def describe(self) -> str:
        if self.smooth:
            digits = len(str(abs(self.resultant)))
            return f"smooth (shear {self.shear}, nonzero elimination resultant with {digits} digits)"
        if self.singular_point is not None:
            return f"singular at {list(self.singular_point)}"
        return f"singular over Q[t]/({_fmt_upoly(self.extension)}), t = x1/x0"


def _fmt_upoly(f):
    parts = [f"{c}*t^{i}" for i, c in enumerate(f) if c]
    return " + ".join(reversed(parts)) or "0"


def _primitive_triples(height: int) -> Iterable[Point]:
    for h in range(1, height + 1):
        rng = range(-h, h + 1)
        for x0 in rng:
            for x1 in rng:
                for x2 in rng:
                    if max(abs(x0), abs(x1), abs(x2)) != h or math.gcd(x0, x1, x2) != 1:
                        continue
                    first = next(c for c in (x0, x1, x2) if c)
                    if first > 0:
                        yield (x0, x1, x2)


def _q_gcd(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    def trim(h):
        h = list(h)
        while h and h[-1] == 0:
            h.pop()
        return h

    f, g = trim(f), trim(g)
    while g:
        r = list(f)
        while len(r) >= len(g):
            c = r[-1] / g[-1]
            shift = len(r) - len(g)
            for i, gc in enumerate(g):
                r[shift + i] -= c * gc
            r = trim(r)
            if not r:
                break
        f, g = g, r
    return [c / f[-1] for c in f] if f else f


def is_smooth_sextic(g: HomPoly) -> SmoothnessCertificate:
    """Decide smoothness of ``g = 0`` over the algebraic closure of Q."""
    if g.is_zero:
        raise InvalidInput("the zero polynomial does not define a curve")
    if g.degree < 2:
        raise InvalidInput("need a curve of degree >= 2")
    gi = primitive_integral(g)
    for idx in range(len(SHEARS)):
        el = elimination(gi, idx)
        if el.resultant != 0:
            return SmoothnessCertificate(True, shear=el.shear, resultant=el.resultant)
    grads = gi.gradient()
    for pt in _primitive_triples(6):
        if all(q.eval_int(pt) == 0 for q in grads):
            return SmoothnessCertificate(False, singular_point=pt)
    el = elimination(gi, 0)
    forms = [[Fraction(c) for c in f] for f in el.forms]
    common = _q_gcd(_q_gcd(forms[0], forms[1]), forms[2])
    return SmoothnessCertificate(False, shear=el.shear, extension=common or [Fraction(0)])


# ---------------------------------------------------------------------------
# Singular points modulo p


def _terms_mod(terms: dict, p: int) -> dict:
    return {e: c % p for e, c in terms.items() if c % p}


def _eval_grid(terms: dict, p: int, xs) -> np.ndarray:
    """Evaluate a polynomial mod p on arrays of coordinates (int64, p small)."""
    n = max((len(np.atleast_1d(x)) for x in xs), default=1)
    deg = max((sum(e) for e in terms), default=0)
    pows = []
    for x in xs:
        x = np.broadcast_to(np.asarray(x, dtype=np.int64) % p, (n,))
        table = [np.ones(n, dtype=np.int64)]
        for _ in range(deg):
            table.append(table[-1] * x % p)
        pows.append(table)
    total = np.zeros(n, dtype=np.int64)
    for (a, b, c), coef in terms.items():
        total = (total + coef * pows[0][a] % p * pows[1][b] % p * pows[2][c]) % p
    return total


def projective_grid(p: int) -> np.ndarray:
    """All points of P^2(F_p) as rows (first nonzero coordinate equal to 1)."""
    a, b = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    chart0 = np.stack([np.ones(p * p, dtype=np.int64), a.ravel(), b.ravel()], axis=1)
    chart1 = np.stack([np.zeros(p, dtype=np.int64), np.ones(p, dtype=np.int64),
                       np.arange(p, dtype=np.int64)], axis=1)
    return np.concatenate([chart0, chart1, np.array([[0, 0, 1]], dtype=np.int64)])


def _scan_common_zeros(polys: Sequence[dict], p: int) -> list[Point]:
    grid = projective_grid(p)
    cols = (grid[:, 0], grid[:, 1], grid[:, 2])
    mask = np.ones(len(grid), dtype=bool)
    for terms in polys:
        mask &= _eval_grid(terms, p, cols) == 0
    return [tuple(int(v) for v in row) for row in grid[mask]]


def _check_prime_poly(g: HomPoly, prime: int) -> dict:
    gp = g.reduce_mod_p(prime)
    if gp.is_zero:
        raise DegenerateReduction(f"polynomial vanishes identically mod {prime}")
    return gp.terms


def _eval_terms_mod(terms: dict, pt: Sequence[int], p: int) -> int:
    x0, x1, x2 = pt
    return sum(c * pow(x0, a, p) * pow(x1, b, p) * pow(x2, e, p) for (a, b, e), c in terms.items()) % p


@dataclass(frozen=True)
class SingularLocus:
    """Singular points over F_p, with a geometric completeness flag.

    ``complete`` is true when elimination shows every singular point over the
    algebraic closure of F_p is one of ``points``.
    """

    prime: int
    points: tuple[Point, ...]
    complete: bool
    shear: tuple[int, int] | None = None


def singular_locus_mod_p(g: HomPoly, prime: int) -> SingularLocus:
    """Singular points of ``g mod prime`` found by elimination mod p."""
    _check_prime_poly(g, prime)
    gi = primitive_integral(g)
    if gi != g and any(c.denominator % prime == 0 for c in g.terms.values()):
        raise InvalidInput("scaling changed the reduction")
    p = prime
    for idx in range(len(SHEARS)):
        el = elimination(gi, idx)
        forms = list(el.forms)
        if gi.degree % p == 0:
            forms += curve_forms(gi, idx)
        forms = [[c % p for c in f] for f in forms]
        if not all(any(f) for f in forms):
            # two of the polynomials share a component mod p; try another shear
            continue
        result = _locus_from_elimination(el, forms, p)
        if result is not None:
            return result
    raise DegenerateReduction(f"no shear gives a usable elimination mod {prime}")


def _locus_from_elimination(el: Elimination, forms, p: int) -> SingularLocus | None:
    gs = _terms_mod(el.g, p)
    parts = [_terms_mod(t, p) for t in el.partials]
    common = forms[0]
    for f in forms[1:]:
        common = ugcd(common, f, p)
    common = umonic(common, p)
    # formal top coefficient zero in every form <=> common root at x0 = 0
    infinite = all(f[-1] == 0 for f in forms)
    complete = True
    projections: list[tuple[int, int]] = []
    if len(common) > 1:
        sqf = usquarefree(common, p)
        roots = roots_mod_p(sqf, p)
        if len(roots) != len(sqf) - 1:
            complete = False
        projections.extend((1, t) for t in roots)
    if infinite:
        projections.append((0, 1))
    found: list[Point] = []
    for x0, x1 in projections:
        zpolys = [[c % p for c in _z_coefficients(q, x0, x1, el.degree - 1)] for q in parts]
        zpolys.append([c % p for c in _z_coefficients(gs, x0, x1, el.degree)])
        live = [z for z in zpolys if any(z)]
        if not live:
            return None
        h = live[0]
        for z in live[1:]:
            h = ugcd(h, z, p)
        h = umonic(h, p)
        if len(h) <= 1:
            continue
        sqf = usquarefree(h, p)
        zs = roots_mod_p(sqf, p)
        if len(zs) != len(sqf) - 1:
            complete = False
        for z in zs:
            found.append((x0, x1, z))
    # the shear centre [0:0:1] is invisible to the projection; test it directly
    centre = (0, 0, 1)
    if all(_eval_terms_mod(q, centre, p) == 0 for q in parts):
        found.append(centre)
    mat = shear_matrix(*el.shear)
    points = set()
    for pt in found:
        if _eval_terms_mod(gs, pt, p) != 0:
            continue
        points.add(normalize_mod_p(_apply(mat, pt), p))
    return SingularLocus(p, tuple(sorted(points)), complete, el.shear)


def singular_points_mod_p(g: HomPoly, prime: int, method: str = "auto") -> list[Point]:
    """All points of P^2(F_p) where ``g`` and its three partials vanish."""
    terms = _check_prime_poly(g, prime)
    if method == "auto":
        method = "scan" if prime < SCAN_LIMIT else "eliminate"
    if method == "scan":
        if prime >= 3037000499:
            raise InvalidInput("prime too large for exhaustive scan")
        gp = g.reduce_mod_p(prime)
        polys = [terms] + [gp.partial(i).terms for i in range(3)]
        return sorted(_scan_common_zeros(polys, prime))
    if method == "eliminate":
        return list(singular_locus_mod_p(g, prime).points)
    raise InvalidInput(f"unknown method {method!r}")


def _local_quadratic(g: HomPoly, prime: int, point: Sequence[int]):
    """Constant, linear and quadratic Taylor coefficients at ``point`` in an affine chart."""
    p = prime
    pt = normalize_mod_p(point, p)
    i = next(k for k in range(3) if pt[k])
    j, k = [m for m in range(3) if m != i]
    terms = g.reduce_mod_p(p).terms
    coeffs = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (2, 0): 0, (1, 1): 0, (0, 2): 0}
    for e, c in terms.items():
        ej, ek = e[j], e[k]
        for r, s in coeffs:
            if r <= ej and s <= ek:
                coeffs[(r, s)] += (c * math.comb(ej, r) * pow(pt[j], ej - r, p)
                                   * math.comb(ek, s) * pow(pt[k], ek - s, p))
    return {key: v % p for key, v in coeffs.items()}


def is_ordinary_double_point(g: HomPoly, prime: int, point: Sequence[int]) -> bool:
    """True iff the tangent cone at a singular point is a nondegenerate quadric."""
    if prime == 2:
        raise InvalidInput("node test needs an odd prime")
    q = _local_quadratic(g, prime, point)
    if q[(0, 0)] or q[(1, 0)] or q[(0, 1)]:
        raise InvalidInput(f"{list(point)} is not a singular point mod {prime}")
    disc = (q[(1, 1)] ** 2 - 4 * q[(2, 0)] * q[(0, 2)]) % prime
    return disc != 0


# ---------------------------------------------------------------------------
# Bad reduction


@dataclass(frozen=True)
class ReductionCertificate:
    """Hypotheses of the bad-reduction constancy result, checked on the sextic.

    ``holds`` requires the geometric singular locus to be known completely,
    to have fewer than 8 points, and every point to be an ordinary double point.
    """

    prime: int
    points: tuple[Point, ...]
    nodes: tuple[bool, ...]
    complete: bool

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def holds(self) -> bool:
        return self.complete and 0 < self.count < 8 and all(self.nodes)


def reduction_certificate(g: HomPoly, prime: int) -> ReductionCertificate:
    if prime == 2:
        raise InvalidInput("the bad-reduction certificate applies to odd primes only")
    locus = singular_locus_mod_p(g, prime)
    points = locus.points
    complete = locus.complete
    if prime < SCAN_LIMIT:
        scanned = tuple(singular_points_mod_p(g, prime, "scan"))
        if scanned != points:
            # elimination and scan must agree on rational points
            complete = False
            points = tuple(sorted(set(points) | set(scanned)))
    nodes = tuple(is_ordinary_double_point(g, prime, pt) for pt in points)
    return ReductionCertificate(prime, points, nodes, complete)


@dataclass(frozen=True)
class BadPrime:
    prime: int
    points: tuple[Point, ...]
    nodes: tuple[bool, ...]
    reason: str  # "convention" or "singular"


@dataclass
class BadPrimeReport:
    certified_bad: list[BadPrime]
    candidate_integer: int
    search_bound: int
    cofactor: int
    rejected: list[tuple[int, str]] = field(default_factory=list)
    unresolved: list[int] = field(default_factory=list)
    shears: list[tuple[int, int]] = field(default_factory=list)

    @property
    def primes(self) -> list[int]:
        return [b.prime for b in self.certified_bad]


def candidate_integer(g: HomPoly, shears: int = 3) -> tuple[int, list[tuple[int, int]]]:
    """gcd of the elimination resultants over the first usable shears."""
    gi = primitive_integral(g)
    values, used = [], []
    for idx in range(len(SHEARS)):
        el = elimination(gi, idx)
        if el.resultant:
            values.append(abs(el.resultant))
            used.append(el.shear)
            if len(values) == shears:
                break
    if not values:
        raise NonGenericCoordinates("every resultant chain vanished identically")
    return math.gcd(*values), used


def _verify_prime(g: HomPoly, p: int) -> tuple[BadPrime | None, bool]:
    """Return (certificate or None, geometrically resolved?)."""
    if p == 2:
        pts = tuple(singular_points_mod_p(g, 2, "scan"))
        return BadPrime(2, pts, (), "convention"), True
    pts = tuple(singular_points_mod_p(g, p))
    if pts:
        nodes = tuple(is_ordinary_double_point(g, p, pt) for pt in pts)
        return BadPrime(p, pts, nodes, "singular"), True
    locus = singular_locus_mod_p(g, p)
    return None, locus.complete


def bad_prime_candidates(g: HomPoly, search_bound: int = 10 ** 6,
                         extra_primes: Iterable[int] = (), shears: int = 3) -> BadPrimeReport:
    """Bad primes of ``w^2 = g``: trial division of the elimination integer,
    plus externally supplied prime factors, each verified mod p."""
    gi = primitive_integral(g)
    cand, used = candidate_integer(gi, shears)
    cofactor = cand
    certified: dict[int, BadPrime] = {}
    rejected: list[tuple[int, str]] = []
    unresolved: list[int] = []

    def consider(p: int):
        nonlocal cofactor
        while cofactor % p == 0:
            cofactor //= p
        bp, resolved = _verify_prime(gi, p)
        if bp is not None:
            certified[p] = bp
        elif resolved:
            rejected.append((p, "no singular point over the algebraic closure"))
        else:
            unresolved.append(p)

    consider(2)
    for p in trial_divisors(cand, search_bound):
        if p != 2:
            consider(p)
    for q in extra_primes:
        q = int(q)
        if q in certified:
            continue
        if not is_probable_prime(q):
            rejected.append((q, "not a probable prime"))
        elif cand % q:
            rejected.append((q, "does not divide the candidate integer"))
        else:
            consider(q)
    report = BadPrimeReport(
        certified_bad=[certified[p] for p in sorted(certified)],
        candidate_integer=cand,
        search_bound=search_bound,
        cofactor=cofactor,
        rejected=sorted(rejected),
        unresolved=sorted(unresolved),
        shears=used,
    )
    return report
