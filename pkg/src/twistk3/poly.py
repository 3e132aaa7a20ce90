"""Exact homogeneous polynomials in three variables, plus univariate helpers.

Coefficients are :class:`fractions.Fraction` throughout. A :class:`HomPoly`
is a map from exponent triples ``(e0, e1, e2)`` to nonzero coefficients, all
exponent triples summing to the same degree.

Canonical text order lists terms by ascending power of the last variable,
then ascending power of the middle one, so that a sextic starts
``x0^6, x0^5*x1, ..., x1^6, x0^5*x2, ...``.

Univariate polynomials are plain lists of coefficients, lowest degree first.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInput, NotPIntegral, ParseError

Exponent = tuple[int, int, int]
DEFAULT_NAMES = ("x0", "x1", "x2")


def monomials(degree: int) -> list[Exponent]:
    """All exponent triples of the given degree, in canonical order."""
    out = []
    for e2 in range(degree + 1):
        for e1 in range(degree - e2 + 1):
            out.append((degree - e1 - e2, e1, e2))
    return out


def _order_key(e: Exponent):
    return (e[2], e[1])


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class HomPoly:
    """Immutable homogeneous polynomial in three variables over Q."""

    __slots__ = ("degree", "terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int | Fraction] | None = None,
                 degree: int | None = None):
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            c = _as_fraction(c)
            if c == 0:
                continue
            e = tuple(int(k) for k in e)
            if len(e) != 3 or min(e) < 0:
                raise InvalidInput(f"bad exponent {e}")
            if e in clean:
                c = clean[e] + c
                if c == 0:
                    del clean[e]
                    continue
            clean[e] = c
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise InvalidInput(f"not homogeneous: degrees {sorted(degs)}")
        if degs:
            d = degs.pop()
            if degree is not None and degree != d:
                raise InvalidInput(f"terms have degree {d}, expected {degree}")
            degree = d
        elif degree is None:
            degree = 0
        if degree < 0:
            raise InvalidInput("negative degree")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: _order_key(kv[0]))))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("HomPoly is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, degree: int = 0) -> HomPoly:
        return cls({}, degree)

    @classmethod
    def constant(cls, c) -> HomPoly:
        return cls({(0, 0, 0): c}, 0)

    @classmethod
    def var(cls, i: int) -> HomPoly:
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1}, 1)

    @classmethod
    def from_coefficients(cls, degree: int, coeffs: Sequence) -> HomPoly:
        """Build from a coefficient vector indexed like :func:`monomials`."""
        mons = monomials(degree)
        if len(coeffs) != len(mons):
            raise InvalidInput(f"need {len(mons)} coefficients for degree {degree}")
        return cls(dict(zip(mons, coeffs)), degree)

    # -- basic queries ----------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: Exponent) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def coefficient_vector(self) -> list[Fraction]:
        return [self.coeff(e) for e in monomials(self.degree)]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def int_terms(self) -> dict[Exponent, int]:
        if not self.is_integral():
            raise InvalidInput("polynomial has non-integral coefficients")
        return {e: c.numerator for e, c in self.terms.items()}

    def __eq__(self, other):
        if isinstance(other, HomPoly):
            if self.is_zero and other.is_zero:
                return True
            return self.degree == other.degree and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == HomPoly.constant(other) if other else self.is_zero
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.degree, tuple(self.terms.items()))))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> HomPoly:
        if isinstance(other, HomPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return HomPoly.constant(other)
        raise TypeError(f"cannot combine HomPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.degree != other.degree:
            raise InvalidInput(f"cannot add degree {self.degree} and {other.degree}")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return HomPoly(terms, self.degree)

    __radd__ = __add__

    def __neg__(self):
        return HomPoly({e: -c for e, c in self.terms.items()}, self.degree)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return HomPoly({e: c * other for e, c in self.terms.items()}, self.degree)
        other = self._coerce(other)
        terms: dict[Exponent, Fraction] = {}
        for (a, ca), (b, cb) in product(self.terms.items(), other.terms.items()):
            e = (a[0] + b[0], a[1] + b[1], a[2] + b[2])
            terms[e] = terms.get(e, 0) + ca * cb
        return HomPoly(terms, self.degree + other.degree)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInput("negative power")
        result = HomPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus and evaluation -----------------------------------------
    def eval(self, point: Sequence) -> Fraction:
        """Exact value at ``point`` (a triple of ints or Fractions)."""
        x = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for (a, b, c), coef in self.terms.items():
            total += coef * x[0] ** a * x[1] ** b * x[2] ** c
        return total

    def eval_int(self, point: Sequence[int]) -> int:
        """Fast evaluation of an integral polynomial at an integer point."""
        x0, x1, x2 = (int(v) for v in point)
        total = 0
        for (a, b, c), coef in self.terms.items():
            if coef.denominator != 1:
                raise InvalidInput("eval_int needs integral coefficients")
            total += coef.numerator * x0 ** a * x1 ** b * x2 ** c
        return total

    def partial(self, var: int) -> HomPoly:
        """Formal partial derivative with respect to variable ``var``."""
        if var not in (0, 1, 2):
            raise InvalidInput(f"variable index {var} out of range")
        if self.degree == 0:
            return HomPoly.zero(0)
        terms = {}
        for e, c in self.terms.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                terms[tuple(f)] = c * e[var]
        return HomPoly(terms, self.degree - 1)

    def gradient(self) -> tuple[HomPoly, HomPoly, HomPoly]:
        return (self.partial(0), self.partial(1), self.partial(2))

    def compose_linear(self, matrix: Sequence[Sequence]) -> HomPoly:
        """Substitute ``x_i -> sum_j matrix[i][j] * x_j``."""
        forms = [HomPoly({(1, 0, 0): row[0], (0, 1, 0): row[1], (0, 0, 1): row[2]}, 1)
                 for row in matrix]
        powers = [[HomPoly.constant(1)] for _ in range(3)]
        for i in range(3):
            for _ in range(self.degree):
                powers[i].append(powers[i][-1] * forms[i])
        out = HomPoly.zero(self.degree)
        for (a, b, c), coef in self.terms.items():
            out = out + powers[0][a] * powers[1][b] * powers[2][c] * coef
        return out

    def reduce_mod_p(self, prime: int) -> PolyModP:
        terms = {}
        for e, c in self.terms.items():
            if c.denominator % prime == 0:
                raise NotPIntegral(f"coefficient {c} has denominator divisible by {prime}")
            terms[e] = c.numerator * pow(c.denominator, -1, prime) % prime
        return PolyModP(prime, self.degree, terms)

    # -- text -------------------------------------------------------------
    def to_str(self, names: Sequence[str] = DEFAULT_NAMES) -> str:
        return format_terms(self.terms.items(), names)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"HomPoly({self.to_str()!r}, degree={self.degree})"


def _monomial_str(e: Exponent, names: Sequence[str]) -> str:
    parts = []
    for k, name in zip(e, names):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_terms(items: Iterable[tuple[Exponent, object]], names: Sequence[str]) -> str:
    pieces = []
    for e, c in items:
        mono = _monomial_str(e, names)
        neg = c < 0
        mag = -c if neg else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces) if pieces else "0"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z_]+\d)|(?P<op>[-+*/^()]))")


def parse_poly(text: str, names: Sequence[str] | None = None, line: int | None = None) -> HomPoly:
    """Parse the canonical text form (and minor variations of it).

    Variables are any identifier ending in the digit 0, 1 or 2; when ``names``
    is given only those are accepted. Implicit multiplication is not allowed.
    """
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            bad = len(stripped) - len(stripped[pos:].lstrip())
            raise ParseError(f"unexpected character {stripped[bad]!r}", line, bad + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", line, 1)

    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None, len(stripped) + 1)

    def take(kind=None, value=None):
        nonlocal idx
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise ParseError(f"expected {want}", line, tok[2])
        idx += 1
        return tok

    def factor():
        kind, val, col = peek()
        if kind == "num":
            take()
            num = Fraction(int(val))
            if peek()[1] == "/":
                take()
                den = int(take("num")[1])
                if den == 0:
                    raise ParseError("zero denominator", line, col)
                num /= den
            return num, (0, 0, 0)
        if kind == "var":
            take()
            if names is not None and val not in names:
                raise ParseError(f"unknown variable {val!r}", line, col)
            k = int(val[-1])
            if k > 2:
                raise ParseError(f"variable index out of range in {val!r}", line, col)
            power = 1
            if peek()[1] == "^":
                take()
                power = int(take("num")[1])
            e = [0, 0, 0]
            e[k] = power
            return Fraction(1), tuple(e)
        raise ParseError("expected number or variable", line, col)

    terms: dict[Exponent, Fraction] = {}
    sign = 1
    if peek()[1] in "+-" and peek()[0] == "op":
        sign = -1 if take()[1] == "-" else 1
    while True:
        coef, e = factor()
        e = list(e)
        while peek()[1] == "*":
            take()
            c2, e2 = factor()
            coef *= c2
            e = [a + b for a, b in zip(e, e2)]
        e = tuple(e)
        terms[e] = terms.get(e, 0) + sign * coef
        kind, val, col = peek()
        if kind is None:
            break
        if val not in ("+", "-"):
            raise ParseError(f"unexpected {val!r}", line, col)
        take()
        sign = -1 if val == "-" else 1
    try:
        return HomPoly(terms)
    except InvalidInput as exc:
        raise ParseError(str(exc), line, 1) from None


class PolyModP:
    """Homogeneous polynomial over F_p with residues in ``[0, prime)``."""

    __slots__ = ("prime", "degree", "terms")

    def __init__(self, prime: int, degree: int, terms: Mapping[Exponent, int]):
        if prime < 2:
            raise InvalidInput("prime must be >= 2")
        self.prime = prime
        self.degree = degree
        self.terms = {e: c % prime for e, c in sorted(terms.items(), key=lambda kv: _order_key(kv[0]))
                      if c % prime}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def eval(self, point: Sequence[int]) -> int:
        p = self.prime
        x0, x1, x2 = (v % p for v in point)
        total = 0
        for (a, b, c), coef in self.terms.items():
            total += coef * pow(x0, a, p) * pow(x1, b, p) * pow(x2, c, p)
        return total % p

    def partial(self, var: int) -> PolyModP:
        terms = {}
        for e, c in self.terms.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                terms[tuple(f)] = c * e[var]
        return PolyModP(self.prime, max(self.degree - 1, 0), terms)

    def __eq__(self, other):
        if not isinstance(other, PolyModP):
            return NotImplemented
        if self.is_zero and other.is_zero:
            return self.prime == other.prime
        return (self.prime, self.degree, self.terms) == (other.prime, other.degree, other.terms)

    def __add__(self, other: PolyModP) -> PolyModP:
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return PolyModP(self.prime, max(self.degree, other.degree), terms)

    def __mul__(self, other: PolyModP) -> PolyModP:
        terms: dict[Exponent, int] = {}
        for (a, ca), (b, cb) in product(self.terms.items(), other.terms.items()):
            e = (a[0] + b[0], a[1] + b[1], a[2] + b[2])
            terms[e] = terms.get(e, 0) + ca * cb
        return PolyModP(self.prime, self.degree + other.degree, terms)

    def __str__(self):
        return format_terms(self.terms.items(), DEFAULT_NAMES)

    def __repr__(self):
        return f"PolyModP({self}, p={self.prime})"


# ---------------------------------------------------------------------------
# Determinants and resultants


def bareiss_det(matrix: Sequence[Sequence]):
    """Determinant by fraction-free Gaussian elimination.

    Integer matrices stay in the integers; anything else is handled over Q.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise InvalidInput("matrix is not square")
    integral = all(isinstance(v, int) for row in a for v in row)
    if not integral:
        a = [[_as_fraction(v) for v in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            if integral:
                for j in range(k + 1, n):
                    rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            else:
                for j in range(k + 1, n):
                    rowi[j] = (rowi[j] * akk - aik * rowk[j]) / prev
        prev = akk
    return sign * a[n - 1][n - 1]


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix for formal degrees ``len(f)-1`` and ``len(g)-1``."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    fh = list(reversed(f))
    gh = list(reversed(g))
    rows = []
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - n - 1 - i))
    return rows


def sylvester_det(f: Sequence, g: Sequence):
    """Resultant with formal degrees (leading zeros are kept)."""
    return bareiss_det(sylvester_matrix(f, g))


def strip(f: Sequence) -> list:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def resultant_uni(f: Sequence, g: Sequence):
    """Resultant of two univariate polynomials (coefficients lowest first)."""
    f, g = strip(f), strip(g)
    if not f and not g:
        raise InvalidInput("resultant of two zero polynomials")
    if not f or not g:
        return 0
    return sylvester_det(f, g)


def interpolate(xs: Sequence[int], ys: Sequence) -> list[Fraction]:
    """Coefficients (lowest first) of the interpolating polynomial over Q."""
    n = len(xs)
    coef = [_as_fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[i] * c for s, c in zip(shifted, poly)]
        poly[0] += coef[i]
    return poly


# ---------------------------------------------------------------------------
# Univariate arithmetic over F_p (coefficient lists, lowest degree first)


def _trim_mod(f: Sequence[int], p: int) -> list[int]:
    out = [c % p for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def umul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim_mod(out, p)


def udivmod(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    f = _trim_mod(f, p)
    g = _trim_mod(g, p)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    dg = len(g) - 1
    for k in range(len(f) - len(g), -1, -1):
        c = r[k + dg] * inv % p
        q[k] = c
        if c:
            for j in range(dg + 1):
                r[k + j] = (r[k + j] - c * g[j]) % p
    return _trim_mod(q, p), _trim_mod(r[:dg], p)


def umonic(f: Sequence[int], p: int) -> list[int]:
    f = _trim_mod(f, p)
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def ugcd(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    f, g = _trim_mod(f, p), _trim_mod(g, p)
    while g:
        f, g = g, udivmod(f, g, p)[1]
    return umonic(f, p)


def upowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = udivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = udivmod(umul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = udivmod(umul(base, base, p), mod, p)[1]
    return result


def uderiv(f: Sequence[int], p: int) -> list[int]:
    return _trim_mod([i * c for i, c in enumerate(f)][1:], p)


def ueval(f: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def usquarefree(f: Sequence[int], p: int) -> list[int]:
    """Product of the distinct monic irreducible factors of ``f`` over F_p."""
    f = umonic(f, p)
    if len(f) <= 1:
        return f
    d = uderiv(f, p)
    if not d:
        # f is a p-th power: f(t) = h(t^p) = h(t)^p over F_p
        return usquarefree(f[::p], p)
    g = ugcd(f, d, p)
    core = umonic(udivmod(f, g, p)[0], p)
    if len(g) > 1:
        rest = usquarefree(g, p)
        # merge factors of g not already in core
        extra = umonic(udivmod(rest, ugcd(rest, core, p), p)[0], p)
        core = umonic(umul(core, extra, p), p)
    return core


def roots_mod_p(f: Sequence[int], p: int) -> list[int]:
    """Distinct roots in F_p of a nonzero polynomial, sorted."""
    f = umonic(f, p)
    if not f:
        raise InvalidInput("roots of the zero polynomial")
    if len(f) == 1:
        return []
    if p < 64:
        return [x for x in range(p) if ueval(f, x, p) == 0]
    # restrict to the split part: gcd(f, t^p - t)
    tp = upowmod([0, 1], p, f, p)
    h = list(tp) + [0] * max(0, 2 - len(tp))
    h[1] = (h[1] - 1) % p
    h = ugcd(f, h, p)
    roots: list[int] = []
    _split_linear(h, p, roots)
    return sorted(roots)


def _split_linear(h: list[int], p: int, out: list[int]) -> None:
    if len(h) <= 1:
        return
    if len(h) == 2:
        out.append(-h[0] * pow(h[1], -1, p) % p)
        return
    delta = 1
    while True:
        k = upowmod([delta, 1], (p - 1) // 2, h, p)
        k = list(k) + [0] * max(0, 1 - len(k))
        k[0] = (k[0] - 1) % p
        d = ugcd(h, k, p)
        if 1 < len(d) < len(h):
            _split_linear(d, p, out)
            _split_linear(umonic(udivmod(h, d, p)[0], p), p, out)
            return
        delta += 1
