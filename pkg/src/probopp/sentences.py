"""Sentences ``(family, region)`` and the four relations of opposition.

Everything is decided at the level of t-coherent parts: two regions matter
only through their intersection with the set of coherent assessments.
Relations return ``True``/``False``, or ``None`` when the backend could not
decide (grid scans only).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .coherence import AUTO, Backend, all3, g_coherent, pi_equal, pi_is_empty, search
from .events import Family
from .regions import DimensionMismatch, Region, complement, intersect, union

__all__ = [
    "Sentence",
    "FamilyMismatch",
    "s_and",
    "s_or",
    "s_not",
    "acceptable",
    "equivalent_t",
    "is_contrary",
    "is_subcontrary",
    "is_contradictory",
    "is_subaltern",
]


class FamilyMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Sentence:
    family: Family
    region: Region
    label: str = ""

    def __post_init__(self):
        if self.region.dim != self.family.n:
            raise DimensionMismatch(
                f"region of dimension {self.region.dim} for a family of {self.family.n} events"
            )

    def named(self, label: str) -> "Sentence":
        return replace(self, label=label)

    def __and__(self, other: "Sentence") -> "Sentence":
        return s_and(self, other)

    def __or__(self, other: "Sentence") -> "Sentence":
        return s_or(self, other)

    def __invert__(self) -> "Sentence":
        return s_not(self)

    def __str__(self) -> str:
        return self.label or f"({self.family}, {self.region})"


def _same_family(s1: Sentence, s2: Sentence) -> Family:
    if s1.family != s2.family:
        raise FamilyMismatch(f"sentences {s1} and {s2} are over different families")
    return s1.family


def s_and(s1: Sentence, s2: Sentence) -> Sentence:
    fam = _same_family(s1, s2)
    return Sentence(fam, intersect(s1.region, s2.region))


def s_or(s1: Sentence, s2: Sentence) -> Sentence:
    fam = _same_family(s1, s2)
    return Sentence(fam, union(s1.region, s2.region))


def s_not(s: Sentence) -> Sentence:
    return Sentence(s.family, complement(s.region))


def acceptable(s: Sentence, backend: Backend = AUTO) -> Optional[bool]:
    return g_coherent(s.family, s.region, backend)


def equivalent_t(s1: Sentence, s2: Sentence, backend: Backend = AUTO) -> Optional[bool]:
    fam = _same_family(s1, s2)
    return pi_equal(fam, s1.region, s2.region, backend)


def is_contrary(s1: Sentence, s2: Sentence, backend: Backend = AUTO) -> Optional[bool]:
    fam = _same_family(s1, s2)
    return pi_is_empty(fam, intersect(s1.region, s2.region), backend)


def is_subcontrary(s1: Sentence, s2: Sentence, backend: Backend = AUTO) -> Optional[bool]:
    fam = _same_family(s1, s2)
    return pi_is_empty(fam, intersect(complement(s1.region), complement(s2.region)), backend)


def is_contradictory(s1: Sentence, s2: Sentence, backend: Backend = AUTO) -> Optional[bool]:
    first = is_contrary(s1, s2, backend)
    if first is False:
        return False
    return all3([first, is_subcontrary(s1, s2, backend)])


def is_subaltern(s1: Sentence, s2: Sentence, backend: Backend = AUTO) -> Optional[bool]:
    """Whether ``s2`` is a subaltern of ``s1`` (``s1`` entails ``s2``)."""
    fam = _same_family(s1, s2)
    return pi_is_empty(fam, intersect(s1.region, complement(s2.region)), backend)


# regions whose coherent points witness each relation failing
def relation_witness_region(kind: str, s1: Sentence, s2: Sentence) -> Region:
    r1, r2 = s1.region, s2.region
    if kind == "contrary":
        return intersect(r1, r2)
    if kind == "subcontrary":
        return intersect(complement(r1), complement(r2))
    if kind == "subaltern":
        return intersect(r1, complement(r2))
    raise ValueError(f"no single witness region for {kind!r}")


def counterexample(kind: str, s1: Sentence, s2: Sentence, backend: Backend = AUTO):
    """A coherent point showing the relation fails, or ``None``."""
    fam = _same_family(s1, s2)
    if kind == "contradictory":
        return counterexample("contrary", s1, s2, backend) or counterexample("subcontrary", s1, s2, backend)
    return search(fam, relation_witness_region(kind, s1, s2), backend).witness
