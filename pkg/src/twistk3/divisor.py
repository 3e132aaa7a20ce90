"""(2,2) divisors on P^2 x P^2 and the double sextics they determine.

A divisor ``Z`` is stored as a 6x6 integer matrix ``c[i][j]``: the coefficient
of ``xmon_i * ymon_j`` where both monomial lists follow the slot order
``s0^2, s0*s1, s0*s2, s1^2, s1*s2, s2^2``.

Grouping by the y-monomials gives six quadrics A..F in the x-variables;
grouping by the x-monomials gives A'..F' in the y-variables. Each sextet
yields a symmetric matrix of quadrics whose determinant cuts out the
discriminant sextic, and the surface ``w^2 = -det/2``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import IntegralityViolation, InvalidInput, ParseError
from .poly import HomPoly, parse_poly

SLOTS: tuple[tuple[int, int, int], ...] = (
    (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
)
LETTERS = "ABCDEF"
X_NAMES = ("x0", "x1", "x2")
Y_NAMES = ("y0", "y1", "y2")


@dataclass(frozen=True)
class BiForm22:
    coefficients: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(c) for c in row) for row in self.coefficients)
        if len(rows) != 6 or any(len(r) != 6 for r in rows):
            raise InvalidInput("a (2,2) form needs a 6x6 coefficient matrix")
        if not any(c for r in rows for c in r):
            raise InvalidInput("the (2,2) form is identically zero")
        object.__setattr__(self, "coefficients", rows)

    def coeff(self, i: int, j: int) -> int:
        return self.coefficients[i][j]

    def to_text(self) -> str:
        lines = []
        for i in range(6):
            for j in range(6):
                c = self.coefficients[i][j]
                if c:
                    lines.append(f"{_slot_name(i, 'x')} {_slot_name(j, 'y')} : {c}")
        return "\n".join(lines) + "\n"


def _slot_name(i: int, letter: str) -> str:
    parts = []
    for k, e in enumerate(SLOTS[i]):
        if e == 1:
            parts.append(f"{letter}{k}")
        elif e == 2:
            parts.append(f"{letter}{k}^2")
    return "*".join(parts)


_VAR = re.compile(r"([xy])([0-2])(?:\^(\d+))?")


def parse_divisor(text: str) -> BiForm22:
    """Parse lines ``<x-monomial> <y-monomial> : <integer>``; ``#`` starts a comment."""
    coeffs = [[0] * 6 for _ in range(6)]
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise ParseError("expected '<monomials> : <coefficient>'", lineno, len(line.rstrip()) + 1)
        left, right = line.split(":", 1)
        value = right.strip()
        if not re.fullmatch(r"[-+]?\d+", value):
            raise ParseError(f"coefficient {value!r} is not an integer", lineno, len(left) + 2)
        exps = {"x": [0, 0, 0], "y": [0, 0, 0]}
        pos = 0
        for m in _VAR.finditer(left):
            gap = left[pos:m.start()]
            if gap.strip(" \t*"):
                col = pos + len(gap) - len(gap.lstrip(" \t*")) + 1
                raise ParseError(f"unexpected text {gap.strip()!r}", lineno, col)
            exps[m.group(1)][int(m.group(2))] += int(m.group(3) or 1)
            pos = m.end()
        if left[pos:].strip(" \t*"):
            raise ParseError(f"unexpected text {left[pos:].strip()!r}", lineno, pos + 1)
        try:
            i = SLOTS.index(tuple(exps["x"]))
            j = SLOTS.index(tuple(exps["y"]))
        except ValueError:
            raise ParseError("each term needs an x-monomial and a y-monomial of degree 2",
                             lineno, 1) from None
        if (i, j) in seen:
            raise ParseError("duplicate monomial", lineno, 1)
        seen.add((i, j))
        coeffs[i][j] = int(value)
    if not seen:
        raise ParseError("no coefficients found", None)
    try:
        return BiForm22(tuple(tuple(r) for r in coeffs))
    except InvalidInput as exc:
        raise ParseError(str(exc), None) from None


@dataclass(frozen=True)
class QuadricSextet:
    A: HomPoly
    B: HomPoly
    C: HomPoly
    D: HomPoly
    E: HomPoly
    F: HomPoly
    side: str = "x"

    def __post_init__(self):
        if self.side not in ("x", "y"):
            raise InvalidInput(f"side must be 'x' or 'y', not {self.side!r}")
        for letter, q in zip(LETTERS, self.quadrics):
            if not q.is_zero and q.degree != 2:
                raise InvalidInput(f"{letter} is not a quadric")

    @property
    def quadrics(self) -> tuple[HomPoly, ...]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    @property
    def names(self) -> tuple[str, str, str]:
        return X_NAMES if self.side == "x" else Y_NAMES

    def slot_coefficient(self, letter: str, slot: int) -> Fraction:
        """Coefficient ``A_1 .. F_6`` (slots numbered from 1)."""
        q = self.quadrics[LETTERS.index(letter)]
        return q.coeff(SLOTS[slot - 1])

    def __neg__(self) -> QuadricSextet:
        return QuadricSextet(*(-q for q in self.quadrics), side=self.side)

    @classmethod
    def from_quadrics(cls, quadrics: Sequence[HomPoly], side: str = "x") -> QuadricSextet:
        qs = [q if not q.is_zero else HomPoly.zero(2) for q in quadrics]
        return cls(*qs, side=side)


def _quadric(coeffs: Sequence[int]) -> HomPoly:
    return HomPoly(dict(zip(SLOTS, coeffs)), 2)


def extract_quadrics(Z: BiForm22, side: str = "x") -> QuadricSextet:
    c = Z.coefficients
    if side == "x":
        qs = [_quadric([c[i][j] for i in range(6)]) for j in range(6)]
    elif side == "y":
        qs = [_quadric([c[i][j] for j in range(6)]) for i in range(6)]
    else:
        raise InvalidInput(f"side must be 'x' or 'y', not {side!r}")
    return QuadricSextet(*qs, side=side)


def biform_from_sextet(q: QuadricSextet) -> BiForm22:
    """Inverse of :func:`extract_quadrics` (requires integral coefficients)."""
    rows = [[0] * 6 for _ in range(6)]
    for k, quad in enumerate(q.quadrics):
        for s, e in enumerate(SLOTS):
            c = quad.coeff(e)
            if c.denominator != 1:
                raise InvalidInput("sextet has non-integral coefficients")
            if q.side == "x":
                rows[s][k] = c.numerator
            else:
                rows[k][s] = c.numerator
    return BiForm22(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class DiscriminantMatrix:
    entries: tuple[tuple[HomPoly, ...], ...]

    def __post_init__(self):
        e = self.entries
        for i in range(3):
            for j in range(3):
                if e[i][j] != e[j][i]:
                    raise InvalidInput("discriminant matrix must be symmetric")

    def det(self) -> HomPoly:
        e = self.entries
        return (e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
                - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
                + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]))


def discriminant_matrix(q: QuadricSextet) -> DiscriminantMatrix:
    A, B, C, D, E, F = q.quadrics
    return DiscriminantMatrix((
        (2 * A, B, C),
        (B, 2 * D, E),
        (C, E, 2 * F),
    ))


@dataclass(frozen=True)
class DoubleSexticSurface:
    """The surface ``w^2 = g`` in P(1,1,1,3); ``g = 0`` is the branch sextic."""

    g: HomPoly
    names: tuple[str, str, str] = X_NAMES

    def __post_init__(self):
        if self.g.degree != 6 and not self.g.is_zero:
            raise InvalidInput(f"branch curve has degree {self.g.degree}, expected 6")

    def equation(self) -> str:
        return f"w^2 = {self.g.to_str(self.names)}"

    def curve_equation(self) -> str:
        return f"{self.g.to_str(self.names)} = 0"


def k3_equation(m: DiscriminantMatrix, names: tuple[str, str, str] = X_NAMES) -> DoubleSexticSurface:
    g = m.det() * Fraction(-1, 2)
    if not g.is_integral():
        raise IntegralityViolation("-det(M)/2 has non-integral coefficients")
    return DoubleSexticSurface(g if not g.is_zero else HomPoly.zero(6), names)


def parse_surface(text: str) -> DoubleSexticSurface:
    """Read ``w^2 = <sextic>`` (or a bare sextic); ``#`` comments allowed."""
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if not body:
        raise ParseError("empty surface file", 1, 1)
    if "=" in body:
        lhs, body = body.split("=", 1)
        if lhs.replace(" ", "") != "w^2":
            raise ParseError("left-hand side must be 'w^2'", 1, 1)
    names = Y_NAMES if re.search(r"\by[0-2]", body) else X_NAMES
    g = parse_poly(body, names)
    if g.degree != 6:
        raise ParseError(f"expected a sextic, got degree {g.degree}", 1, 1)
    return DoubleSexticSurface(g, names)


@dataclass(frozen=True)
class MinorTriple:
    M_A: HomPoly
    M_D: HomPoly
    M_F: HomPoly


def minors(q: QuadricSextet) -> MinorTriple:
    A, B, C, D, E, F = q.quadrics
    return MinorTriple(
        M_A=4 * D * F - E * E,
        M_D=4 * A * F - C * C,
        M_F=4 * A * D - B * B,
    )


@dataclass(frozen=True)
class Derivation:
    x_side: QuadricSextet
    y_side: QuadricSextet
    X1: DoubleSexticSurface
    X2: DoubleSexticSurface


def derive(Z: BiForm22) -> Derivation:
    qx = extract_quadrics(Z, "x")
    qy = extract_quadrics(Z, "y")
    return Derivation(
        x_side=qx,
        y_side=qy,
        X1=k3_equation(discriminant_matrix(qx), X_NAMES),
        X2=k3_equation(discriminant_matrix(qy), Y_NAMES),
    )
