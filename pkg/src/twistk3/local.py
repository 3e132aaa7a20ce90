"""Arithmetic of Q_p and R: valuations, squares, Hensel lifting, Hilbert symbols."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import is_probable_prime, legendre, primes_below, split_power
from .errors import InvalidInput, NotASquare

DEFAULT_PRECISION = 24


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q; ``prime is None`` means the real place."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and self.prime < 2:
            raise InvalidInput(f"{self.prime} is not a prime")

    @classmethod
    def real(cls) -> Place:
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> Place:
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> Place:
        t = text.strip().lower()
        if t in ("real", "r", "inf", "infinity", "oo"):
            return cls.real()
        try:
            return cls.finite(int(t))
        except ValueError:
            raise InvalidInput(f"cannot parse place {text!r}") from None

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def sort_key(self):
        return (1, 0) if self.prime is None else (0, self.prime)

    @property
    def completion(self) -> str:
        return "R" if self.prime is None else f"Q_{self.prime}"

    def __str__(self):
        return "real" if self.prime is None else str(self.prime)


@dataclass(frozen=True)
class LocalInvariant:
    """An element of {0, 1/2} in Q/Z, stored as a numerator over 2."""

    half: int = 0

    def __post_init__(self):
        if self.half not in (0, 1):
            raise InvalidInput("local invariants of quaternion classes are 0 or 1/2")

    @property
    def value(self) -> Fraction:
        return Fraction(self.half, 2)

    def __add__(self, other: LocalInvariant) -> LocalInvariant:
        return LocalInvariant((self.half + other.half) % 2)

    def __neg__(self):
        return self

    def __str__(self):
        return "1/2" if self.half else "0"


ZERO = LocalInvariant(0)
HALF = LocalInvariant(1)


def _frac(r) -> Fraction:
    return r if isinstance(r, Fraction) else Fraction(r)


def padic_valuation(r, prime: int) -> float | int:
    """v_p(r); ``math.inf`` for 0."""
    r = _frac(r)
    if r == 0:
        return math.inf
    return split_power(r.numerator, prime)[0] - split_power(r.denominator, prime)[0]


def _square_class(r: Fraction, p: int) -> tuple[int, int]:
    """``(v, u)`` with r = p^v * u * (square), u an integer prime to p."""
    # r = n/d has the square class of n*d
    n = r.numerator * r.denominator
    v, u = split_power(n, p)
    v -= 2 * split_power(r.denominator, p)[0]
    return v, u


def is_square_local(r, place: Place) -> bool:
    r = _frac(r)
    if r == 0:
        raise InvalidInput("0 has no square class")
    if place.is_real:
        return r > 0
    p = place.prime
    v, u = _square_class(r, p)
    if v % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


@dataclass(frozen=True)
class PAdicSqrt:
    """``(residue * p^half_valuation)^2`` agrees with the target to relative precision."""

    prime: int
    precision: int
    residue: int
    half_valuation: int

    @property
    def modulus(self) -> int:
        return self.prime ** self.precision

    def check(self, target) -> bool:
        """Self-verifying postcondition against ``target``."""
        t = _frac(target) * Fraction(self.prime) ** (-2 * self.half_valuation)
        if t.denominator % self.prime == 0:
            return False
        return (self.residue ** 2 * t.denominator - t.numerator) % self.modulus == 0


def _sqrt_mod_prime(a: int, p: int) -> int:
    """Tonelli-Shanks; ``a`` a nonzero quadratic residue mod odd ``p``."""
    a %= p
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def hensel_sqrt(r, prime: int, precision: int = DEFAULT_PRECISION) -> PAdicSqrt:
    """Square root of ``r`` in Q_p to ``precision`` p-adic digits."""
    r = _frac(r)
    if r == 0:
        raise InvalidInput("0 has no unit square root")
    if precision < 1:
        raise InvalidInput("precision must be positive")
    p = prime
    if not is_square_local(r, Place.finite(p)):
        raise NotASquare(f"{r} is not a square in Q_{p}")
    v = padic_valuation(r, p)
    h = v // 2
    unit = r / Fraction(p) ** v
    mod = p ** precision
    u = unit.numerator * pow(unit.denominator, -1, mod) % mod
    if p == 2:
        # bit-by-bit: s^2 = u mod 2^j lifts to s or s + 2^(j-1) mod 2^(j+1)
        s = 1
        for j in range(3, precision):
            if (s * s - u) % (1 << (j + 1)):
                s += 1 << (j - 1)
        s %= mod
    else:
        s = _sqrt_mod_prime(u, p)
        k = 1
        while k < precision:
            k = min(2 * k, precision)
            pk = p ** k
            s = (s - (s * s - u) * pow(2 * s, -1, pk)) % pk
    result = PAdicSqrt(p, precision, s, h)
    assert (s * s - u) % mod == 0
    return result


def _hilbert_odd(a: Fraction, b: Fraction, p: int) -> int:
    alpha, u = _square_class(a, p)
    beta, v = _square_class(b, p)
    sign = 1
    if alpha % 2 and beta % 2 and p % 4 == 3:
        sign = -sign
    if beta % 2:
        sign *= legendre(u, p)
    if alpha % 2:
        sign *= legendre(v, p)
    return sign


def _hilbert_two(a: Fraction, b: Fraction) -> int:
    alpha, u = _square_class(a, 2)
    beta, v = _square_class(b, 2)

    def eps(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2

    e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
    return -1 if e % 2 else 1


def hilbert_symbol(a, b, place: Place) -> int:
    """(a, b)_v = +1 iff z^2 = a x^2 + b y^2 has a nonzero solution over Q_v."""
    a, b = _frac(a), _frac(b)
    if a == 0 or b == 0:
        raise InvalidInput("Hilbert symbol of 0 is undefined")
    if place.is_real:
        return -1 if a < 0 and b < 0 else 1
    if place.prime == 2:
        return _hilbert_two(a, b)
    return _hilbert_odd(a, b, place.prime)


def invariant_of_symbol(s: int) -> LocalInvariant:
    if s == 1:
        return ZERO
    if s == -1:
        return HALF
    raise InvalidInput(f"symbol value must be +1 or -1, not {s}")


def _prime_factors(n: int) -> set[int]:
    n = abs(n)
    found = set()
    for p in primes_below(10 ** 6):
        if p * p > n:
            break
        if n % p == 0:
            found.add(p)
            while n % p == 0:
                n //= p
    if n > 1:
        if n >= 10 ** 12 and not is_probable_prime(n):
            raise InvalidInput(f"cannot factor {n} by trial division")
        found.add(n)
    return found


def relevant_places(*values) -> list[Place]:
    """Places where a quaternion algebra built from ``values`` can ramify:
    the real place and every prime dividing 2 or a numerator/denominator."""
    primes = {2}
    for r in values:
        r = _frac(r)
        primes |= _prime_factors(r.numerator) | _prime_factors(r.denominator)
    return [Place.finite(p) for p in sorted(primes)] + [Place.real()]
