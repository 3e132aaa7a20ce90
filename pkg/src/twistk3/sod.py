"""Picard-class bookkeeping for the mutations relating the two quadric-fibration
decompositions of D^b(P^2 x P^2).

Only the line-bundle classes are tracked; the Clifford components are opaque
markers. The check is that after moving the last line bundle to the front
(Serre twist by the canonical class) and mutating each marker left through it,
both decompositions leave the same set of line bundles behind the marker.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import InvalidInput, InvalidState


@dataclass(frozen=True, order=True)
class PicClass:
    """``a*H_1 + b*H_2``."""

    a: int = 0
    b: int = 0

    def __add__(self, other: PicClass) -> PicClass:
        return PicClass(self.a + other.a, self.b + other.b)

    def __neg__(self) -> PicClass:
        return PicClass(-self.a, -self.b)

    def swapped(self) -> PicClass:
        return PicClass(self.b, self.a)

    def __str__(self):
        parts = []
        for c, h in ((self.a, "H1"), (self.b, "H2")):
            if c:
                parts.append(h if c == 1 else f"-{h}" if c == -1 else f"{c}{h}")
        if not parts:
            return "O"
        return "O(" + "+".join(parts).replace("+-", "-") + ")"


H1 = PicClass(1, 0)
H2 = PicClass(0, 1)
CANONICAL = PicClass(-2, -2)


@dataclass(frozen=True)
class Marker:
    """A non-exceptional component; ``name`` records the mutations applied."""

    name: str

    def __str__(self):
        return self.name


Item = Union[PicClass, Marker]


@dataclass(frozen=True)
class ExceptionalList:
    items: tuple[Item, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        for it in self.items:
            if not isinstance(it, (PicClass, Marker)):
                raise InvalidInput(f"{it!r} is neither a class nor a marker")

    def __len__(self):
        return len(self.items)

    def __str__(self):
        return "<" + ", ".join(map(str, self.items)) + ">"

    @property
    def classes(self) -> list[PicClass]:
        return [it for it in self.items if isinstance(it, PicClass)]

    def swapped(self) -> ExceptionalList:
        return ExceptionalList(it.swapped() if isinstance(it, PicClass) else it for it in self.items)


def serre_mutate_last_to_front(coll: ExceptionalList, canonical: PicClass = CANONICAL
                               ) -> ExceptionalList:
    """Left mutation of the last component through all the others."""
    if not coll.items:
        raise InvalidInput("empty collection")
    last = coll.items[-1]
    if not isinstance(last, PicClass):
        raise InvalidInput("the last component is not a line bundle")
    return ExceptionalList((last + canonical,) + coll.items[:-1])


def left_mutate_marker(coll: ExceptionalList) -> ExceptionalList:
    """Move the first marker one step right, past the line bundle L after it,
    renaming it L_L(marker)."""
    idx = next((i for i, it in enumerate(coll.items) if isinstance(it, Marker)), None)
    if idx is None:
        raise InvalidState("no marker to mutate")
    if idx == 0:
        raise InvalidState("the marker is already in front; nothing to mutate through")
    before = coll.items[idx - 1]
    if not isinstance(before, PicClass):
        raise InvalidState("can only mutate through a line bundle")
    marker = Marker(f"L_{before}({coll.items[idx]})")
    items = coll.items[:idx - 1] + (marker, before) + coll.items[idx + 1:]
    return ExceptionalList(items)


def residual_orthogonal(coll: ExceptionalList) -> frozenset[PicClass]:
    """The line-bundle classes after the front marker."""
    if not coll.items:
        return frozenset()
    if not isinstance(coll.items[0], Marker):
        raise InvalidState("the marker is not in front")
    if any(isinstance(it, Marker) for it in coll.items[1:]):
        raise InvalidState("more than one marker")
    return frozenset(coll.classes)


def beilinson(h: PicClass) -> list[PicClass]:
    return [PicClass(), h, h + h]


def fibration_decomposition(i: int) -> ExceptionalList:
    """``<C_i, Beilinson(H_i) (x) O(H_j), Beilinson(H_i) (x) O(H_i + 2H_j)>``."""
    if i not in (1, 2):
        raise InvalidInput("fibration index must be 1 or 2")
    hi, hj = (H1, H2) if i == 1 else (H2, H1)
    first = [c + hj for c in beilinson(hi)]
    second = [c + hi + hj + hj for c in beilinson(hi)]
    return ExceptionalList([Marker(f"C{i}")] + first + second)


@dataclass
class MutationReport:
    trace: list[str] = field(default_factory=list)
    residuals: list[frozenset[PicClass]] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return len(self.residuals) == 2 and self.residuals[0] == self.residuals[1]


def mutation_report(swap: bool = False, perturb: tuple[int, PicClass] | None = None,
                    canonical: PicClass = CANONICAL) -> MutationReport:
    """Replay both mutation sequences.

    ``swap`` exchanges H_1 and H_2 throughout; ``perturb = (k, cls)`` replaces
    the k-th item of the first decomposition before mutating.
    """
    report = MutationReport()
    for i in (1, 2):
        coll = fibration_decomposition(i)
        if swap:
            coll = coll.swapped()
        if perturb is not None and i == 1:
            k, cls = perturb
            items = list(coll.items)
            if not isinstance(items[k], PicClass):
                raise InvalidInput("only line-bundle positions can be perturbed")
            items[k] = cls
            coll = ExceptionalList(items)
        report.trace.append(f"start {i}: {coll}")
        coll = serre_mutate_last_to_front(coll, canonical)
        report.trace.append(f"serre {i}: {coll}")
        coll = left_mutate_marker(coll)
        report.trace.append(f"left  {i}: {coll}")
        res = residual_orthogonal(coll)
        report.residuals.append(res)
        report.trace.append(f"residual {i}: {{{', '.join(map(str, sorted(res)))}}}")
    return report


def verify_mutation_identity(swap: bool = False, perturb: tuple[int, PicClass] | None = None
                             ) -> bool:
    return mutation_report(swap, perturb).agree
