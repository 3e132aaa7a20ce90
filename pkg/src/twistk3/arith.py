"""Integer helpers: prime sieve, probable-prime test, Legendre symbol."""
from __future__ import annotations

import random
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=4)
def _sieve(n: int) -> tuple[int, ...]:
    if n < 3:
        return ()
    flags = np.ones(n, dtype=bool)
    flags[:2] = False
    for i in range(2, int(n ** 0.5) + 1):
        if flags[i]:
            flags[i * i::i] = False
    return tuple(int(p) for p in np.flatnonzero(flags))


def primes_below(n: int) -> tuple[int, ...]:
    """All primes ``p < n``."""
    return _sieve(n)


def _prime_segments(bound: int, segment: int = 1 << 22):
    """Yield numpy arrays of the primes below ``bound``, in increasing chunks."""
    base = np.array(primes_below(int(bound ** 0.5) + 2), dtype=np.int64)
    for lo in range(0, bound, segment):
        hi = min(lo + segment, bound)
        flags = np.ones(hi - lo, dtype=bool)
        if lo == 0:
            flags[:min(2, hi)] = False
        for p in base:
            if p * p >= hi:
                break
            start = max(p * p, (lo + p - 1) // p * p)
            flags[start - lo::p] = False
        yield np.flatnonzero(flags).astype(np.int64) + lo


def trial_divisors(n: int, bound: int) -> list[int]:
    """Primes ``p < bound`` dividing ``n``, by vectorized trial division."""
    if bound >= 1 << 40:
        raise ValueError("trial division bound too large")
    n = abs(n)
    if n == 0:
        raise ValueError("every prime divides 0")
    limbs = []
    while n:
        limbs.append(n & 0xFFFF)
        n >>= 16
    limbs.reverse()
    found = []
    for primes in _prime_segments(bound):
        r = np.zeros_like(primes)
        for limb in limbs:
            r = (r * 65536 + limb) % primes
        found.extend(int(p) for p in primes[r == 0])
    return found


_SMALL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int, rounds: int = 64, seed: int = 0) -> bool:
    """Miller-Rabin with ``rounds`` bases drawn from a seeded generator."""
    if n < 2:
        return False
    for p in _SMALL:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(seed ^ (n & 0xFFFFFFFF))
    bases = list(_SMALL) + [rng.randrange(2, n - 1) for _ in range(max(rounds - len(_SMALL), 0))]
    for a in bases[:rounds]:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, in {-1, 0, 1}."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def split_power(n: int, p: int) -> tuple[int, int]:
    """Return ``(v, u)`` with ``n = p^v * u`` and ``p`` not dividing ``u`` (n != 0)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n
