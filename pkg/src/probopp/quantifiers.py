"""Threshold readings of quantified sentences.

With a threshold ``x`` in ``]1/2, 1]`` on one conditional event ``P|S``:

====  =====================  ==================
A(x)  at least x of S are P   p >= x
E(x)  at least x are not P    p <= 1 - x
I(x)  more than 1 - x are P   p > 1 - x
O(x)  more than 1 - x not P   p < x
U(x)  A(x) or E(x)            p <= 1 - x or p >= x
Y(x)  I(x) and O(x)           1 - x < p < x
====  =====================  ==================

``x = 1`` gives the traditional A, E, I, O.  For ``n`` events the same
shapes are applied to the mean assessment ``sum(p_i) / n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .coherence import AUTO, Backend, check_coherence, compute_pi
from .events import ConditionalEvent, EventContext, Family, SingleCase, classify_single_conditional
from .oppositions import (
    Hexagon,
    Square,
    Tripartition,
    hexagon_from_contraries,
    hexagon_from_tripartition,
    verify_hexagon,
    NotAStructure,
)
from .regions import (
    LinearConstraint,
    Region,
    as_rational,
    box,
    constraint_region,
    contains_point,
    cylinder,
    grid_points,
    intersect,
    point,
    region_equal,
    region_is_empty,
    union,
)
from .sentences import (
    Sentence,
    counterexample,
    is_contradictory,
    is_contrary,
    is_subaltern,
    is_subcontrary,
    relation_witness_region,
)

__all__ = [
    "Threshold",
    "QuantifiedSquare",
    "QuantifiedHexagon",
    "DegenerateReport",
    "NoCubeReport",
    "table_regions",
    "threshold_tripartition",
    "basic_square",
    "basic_hexagon",
    "degenerate_report",
    "cross_threshold",
    "mean_tripartition",
    "mean_regions",
    "mean_hexagon",
    "de_morgan_square",
    "no_cube_check",
    "SWEEP",
]

SWEEP = tuple(Fraction(v) for v in ("51/100", "3/5", "2/3", "3/4", "9/10", "1"))


@dataclass(frozen=True, order=True)
class Threshold:
    x: Fraction

    def __post_init__(self):
        x = as_rational(self.x)
        object.__setattr__(self, "x", x)
        if not Fraction(1, 2) < x <= 1:
            raise ValueError(f"threshold must lie in ]1/2, 1], got {x}")

    def __str__(self) -> str:
        return str(self.x)


def _threshold(x) -> Threshold:
    return x if isinstance(x, Threshold) else Threshold(x)


def table_regions(x) -> dict[str, Region]:
    """The six one-dimensional assessments for threshold ``x``."""
    x = _threshold(x).x
    a = box([(x, True, 1, True)])
    e = box([(0, True, 1 - x, True)])
    return {
        "A": a,
        "E": e,
        "I": box([(1 - x, False, 1, True)]),
        "O": box([(0, True, x, False)]),
        "U": union(e, a),
        "Y": box([(1 - x, False, x, False)]),
    }


def _mean_constraint(n: int, rel: str, bound: Fraction) -> LinearConstraint:
    return LinearConstraint.make({i: Fraction(1, n) for i in range(n)}, rel, bound)


def threshold_tripartition(x, n: int = 1) -> Tripartition:
    """``(mean >= x, mean <= 1 - x, 1 - x < mean < x)`` over ``[0,1]^n``.

    ``x`` is not range-checked here, so that an overlapping triple can be
    built and rejected by validation.
    """
    x = as_rational(x.x if isinstance(x, Threshold) else x)
    if n < 1:
        raise ValueError("n must be at least 1")
    b1 = constraint_region(n, [_mean_constraint(n, ">=", x)])
    b2 = constraint_region(n, [_mean_constraint(n, "<=", 1 - x)])
    b3 = constraint_region(n, [_mean_constraint(n, ">", 1 - x), _mean_constraint(n, "<", x)])
    return Tripartition(b1, b2, b3, scope="cube")


def mean_tripartition(n: int, x) -> Tripartition:
    return threshold_tripartition(_threshold(x), n)


def mean_regions(n: int, x) -> dict[str, Region]:
    """A, E, I, O, U, Y over ``[0,1]^n`` for the mean assessment."""
    b1, b2, b3 = mean_tripartition(n, x).parts
    return {"A": b1, "E": b2, "I": union(b1, b3), "O": union(b2, b3), "U": union(b1, b2), "Y": b3}


# --------------------------------------------------------------------------
# squares and hexagons on a single event


@dataclass(frozen=True)
class QuantifiedSquare:
    threshold: Threshold
    family: Family
    a: Sentence
    e: Sentence
    i: Sentence
    o: Sentence

    def __iter__(self) -> Iterator[Sentence]:
        return iter((self.a, self.e, self.i, self.o))

    @property
    def square(self) -> Square:
        return Square(self.a, self.e, self.i, self.o)


@dataclass(frozen=True)
class QuantifiedHexagon:
    threshold: Threshold
    family: Family
    a: Sentence
    e: Sentence
    i: Sentence
    o: Sentence
    u: Sentence
    y: Sentence

    def __iter__(self) -> Iterator[Sentence]:
        return iter((self.a, self.e, self.i, self.o, self.u, self.y))

    @property
    def square(self) -> QuantifiedSquare:
        return QuantifiedSquare(self.threshold, self.family, self.a, self.e, self.i, self.o)

    @property
    def hexagon(self) -> Hexagon:
        return Hexagon(*self)


def _family(ce) -> Family:
    return ce if isinstance(ce, Family) else Family.of(ce)


def _labels(x: Threshold) -> dict[str, str]:
    return {k: f"{k}({x})" for k in "AEIOUY"}


def basic_square(x, ce: ConditionalEvent) -> QuantifiedSquare:
    t = _threshold(x)
    fam = _family(ce)
    if fam.n != 1:
        raise ValueError("the basic square is defined on a single conditional event")
    regs, labs = table_regions(t), _labels(t)
    return QuantifiedSquare(t, fam, *(Sentence(fam, regs[k], labs[k]) for k in "AEIO"))


def basic_hexagon(x, ce: ConditionalEvent, backend: Backend = AUTO) -> QuantifiedHexagon:
    sq = basic_square(x, ce)
    labs = _labels(sq.threshold)
    h = hexagon_from_contraries(sq.a, sq.e, backend)
    return QuantifiedHexagon(
        sq.threshold,
        sq.family,
        sq.a,
        sq.e,
        h.s3.named(labs["I"]),
        h.s4.named(labs["O"]),
        h.s5.named(labs["U"]),
        h.s6.named(labs["Y"]),
    )


# commonly quoted coherent parts of A, E, I, O in the three single-event cases
REFERENCE_LISTING = {
    SingleCase.CaseI: {"A": "region", "E": "region", "I": "region", "O": "region"},
    SingleCase.CaseII: {"A": "{1}", "E": "empty", "I": "{1}", "O": "empty"},
    SingleCase.CaseIII: {"A": "empty", "E": "{1}", "I": "empty", "O": "{1}"},
}


def describe_part(part: Region, region: Region) -> str:
    """Name a one-dimensional t-coherent part: empty, {0}, {1}, region, or other.

    Singletons win over "region" so that ``x = 1`` reads as a point.
    """
    if region_is_empty(part):
        return "empty"
    for v in (0, 1):
        if region_equal(part, point([v])):
            return "{%d}" % v
    return "region" if region_equal(part, region) else "other"


@dataclass
class DegenerateReport:
    threshold: Threshold
    case: SingleCase
    parts: dict[str, str]
    reference: dict[str, str]
    discrepancies: list[str]
    strengthened: dict[str, Optional[bool]] = field(default_factory=dict)


def degenerate_report(x, ce: ConditionalEvent, backend: Backend = AUTO) -> DegenerateReport:
    """Coherent parts of the four corners, computed exactly from the coherent set.

    Where the computed part differs from :data:`REFERENCE_LISTING` the label
    is recorded in ``discrepancies``; the computed value is what is reported.
    """
    sq = basic_square(x, ce)
    event = sq.family.events[0]
    case = classify_single_conditional(event)
    pi = compute_pi(sq.family)
    parts = {k: describe_part(intersect(pi, s.region), s.region) for k, s in zip("AEIO", sq)}
    reference = REFERENCE_LISTING[case]
    discrepancies = [k for k in "AEIO" if parts[k] != reference[k]]
    strengthened = {}
    if case is not SingleCase.CaseI:
        strengthened = {
            "A/E contradictory": is_contradictory(sq.a, sq.e, backend),
            "I/O contradictory": is_contradictory(sq.i, sq.o, backend),
            "A subaltern of I": is_subaltern(sq.i, sq.a, backend),
            "E subaltern of O": is_subaltern(sq.o, sq.e, backend),
        }
    return DegenerateReport(sq.threshold, case, parts, reference, discrepancies, strengthened)


def cross_threshold(x1, x2, ce: ConditionalEvent, backend: Backend = AUTO) -> dict[str, Optional[bool]]:
    """Subalternations between the squares at thresholds ``x1 > x2``."""
    t1, t2 = _threshold(x1), _threshold(x2)
    if not t2.x < t1.x:
        raise ValueError(f"need x2 < x1, got x1={t1}, x2={t2}")
    s1, s2 = basic_square(t1, ce), basic_square(t2, ce)
    return {
        f"A({t2}) subaltern of A({t1})": is_subaltern(s1.a, s2.a, backend),
        f"E({t2}) subaltern of E({t1})": is_subaltern(s1.e, s2.e, backend),
        f"I({t1}) subaltern of I({t2})": is_subaltern(s2.i, s1.i, backend),
        f"O({t1}) subaltern of O({t2})": is_subaltern(s2.o, s1.o, backend),
    }


def mean_hexagon(n: int, x, fam: Family, backend: Backend = AUTO) -> Hexagon:
    """Hexagon from the mean tripartition; verified with ``backend`` before returning."""
    if fam.n != n:
        raise ValueError(f"family has {fam.n} events, expected {n}")
    t = _threshold(x)
    labs = _labels(t)
    h = hexagon_from_tripartition(mean_tripartition(n, t), fam, backend, labels=[labs[k] for k in "AEIOUY"])
    verdict = verify_hexagon(h, backend)
    if not verdict.ok:
        raise NotAStructure(f"mean hexagon failed verification at condition {verdict.failed}")
    return h


def de_morgan_square(ctx: EventContext, x=1, predicate: str = "P", subject: str = "S") -> Square:
    """The square on ``!P|!S`` labelled a, e, i, o."""
    t = _threshold(x)
    ce = ctx.conditional(f"!{predicate}", f"!{subject}")
    fam = Family.of(ce)
    regs = table_regions(t)
    suffix = "" if t.x == 1 else f"({t})"
    return Square(*(Sentence(fam, regs[k], k.lower() + suffix) for k in "AEIO"))


# --------------------------------------------------------------------------
# no cube from the two squares


@dataclass
class NoCubeReport:
    pairs: dict[tuple[str, str], dict[str, tuple[Optional[bool], Optional[tuple]]]]
    grid_coherent: bool

    @property
    def ok(self) -> bool:
        return self.grid_coherent and all(
            v is False and w is not None for rels in self.pairs.values() for v, w in rels.values()
        )


def no_cube_check(backend: Backend = AUTO, x=1) -> NoCubeReport:
    """Check that no relation links a corner of (A,E,I,O) to one of (a,e,i,o).

    Both squares are placed over the family ``(P|S, !P|!S)`` with logically
    independent P and S, each corner's region cylindrified to two dimensions.
    """
    t = _threshold(x)
    ctx = EventContext.of("P", "S")
    fam = Family.of(ctx.conditional("P", "S"), ctx.conditional("!P", "!S"), independent=True)
    regs = table_regions(t)
    upper = {k: Sentence(fam, cylinder(regs[k], 2, 0), k) for k in "AEIO"}
    lower = {k.lower(): Sentence(fam, cylinder(regs[k], 2, 1), k.lower()) for k in "AEIO"}
    checks = {
        "contrary": is_contrary,
        "subcontrary": is_subcontrary,
        "contradictory": is_contradictory,
    }
    pairs = {}
    for ku, su in upper.items():
        for kl, sl in lower.items():
            rels = {}
            for kind, fn in checks.items():
                v = fn(su, sl, backend)
                rels[kind] = (v, _checked(counterexample(kind, su, sl, backend), fam, kind, su, sl) if v is False else None)
            v = is_subaltern(su, sl, backend)
            rels[f"{kl} subaltern of {ku}"] = (
                v,
                _checked(counterexample("subaltern", su, sl, backend), fam, "subaltern", su, sl) if v is False else None,
            )
            v = is_subaltern(sl, su, backend)
            rels[f"{ku} subaltern of {kl}"] = (
                v,
                _checked(counterexample("subaltern", sl, su, backend), fam, "subaltern", sl, su) if v is False else None,
            )
            pairs[(ku, kl)] = rels
    grid_ok = all(check_coherence(fam, q) for q in grid_points(2, 4))
    return NoCubeReport(pairs, grid_ok)


def _checked(w, fam, kind, s1, s2):
    """Keep a witness only if it re-checks as coherent and inside the relevant region."""
    if w is None:
        return None
    if kind == "contradictory":
        ok = any(contains_point(relation_witness_region(k, s1, s2), w) for k in ("contrary", "subcontrary"))
    else:
        ok = contains_point(relation_witness_region(kind, s1, s2), w)
    return w if ok and check_coherence(fam, w) else None
