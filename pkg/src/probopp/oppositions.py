"""Squares and hexagons of opposition, and their tripartition correspondence.

A square ``(s1, s2, s3, s4)`` needs: s1/s2 contraries (a), s3/s4
subcontraries (b), s1/s4 and s2/s3 contradictories (c), and s3, s4
subalterns of s1, s2 (d).  A hexagon adds ``s5 = s1 or s2`` and
``s6 = s3 and s4``.  Squares are in one-to-one correspondence with
tripartitions of the coherent set, which is how most of them get built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .coherence import AUTO, Backend, all3, pi_equal, pi_is_empty
from .events import Family
from .regions import (
    Region,
    complement,
    intersect,
    region_equal,
    region_is_empty,
    union,
)
from .sentences import (
    FamilyMismatch,
    Sentence,
    acceptable,
    counterexample,
    is_contradictory,
    is_contrary,
    is_subaltern,
    is_subcontrary,
    s_and,
    s_not,
    s_or,
)

__all__ = [
    "Tripartition",
    "Square",
    "Hexagon",
    "Verdict",
    "HexagonVerdict",
    "NotAStructure",
    "InvalidTripartition",
    "NotContraries",
    "verify_square",
    "verify_square_minimal",
    "square_from_contraries",
    "square_from_tripartition",
    "extract_tripartition",
    "squares_coincide",
    "swap_square",
    "verify_hexagon",
    "hexagon_from_contraries",
    "hexagon_from_tripartition",
    "hexagon_relations",
    "triangles",
    "to_dot",
    "SQUARE_EDGES",
    "HEXAGON_EDGES",
]


class NotAStructure(ValueError):
    """The tuple is not a (verified) square or hexagon."""


class InvalidTripartition(ValueError):
    pass


class NotContraries(ValueError):
    pass


# --------------------------------------------------------------------------
# tripartitions


@dataclass(frozen=True)
class Tripartition:
    """Three regions meant to partition the cube, or the coherent set of ``family``."""

    d1: Region
    d2: Region
    d3: Region
    scope: str = "cube"
    family: Optional[Family] = None

    def __post_init__(self):
        if self.scope not in ("cube", "pi"):
            raise ValueError(f"scope must be 'cube' or 'pi', not {self.scope!r}")
        if self.scope == "pi" and self.family is None:
            raise ValueError("a tripartition of the coherent set needs its family")
        if not self.d1.dim == self.d2.dim == self.d3.dim:
            raise ValueError("tripartition parts differ in dimension")

    @property
    def parts(self) -> tuple[Region, Region, Region]:
        return (self.d1, self.d2, self.d3)

    @property
    def dim(self) -> int:
        return self.d1.dim

    def check(self, backend: Backend = AUTO) -> Optional[bool]:
        """Pairwise disjoint and covering, in the sense of the scope."""
        pairs = [(self.d1, self.d2), (self.d1, self.d3), (self.d2, self.d3)]
        rest = complement(union(union(self.d1, self.d2), self.d3))
        if self.scope == "cube":
            return all(region_is_empty(intersect(a, b)) for a, b in pairs) and region_is_empty(rest)
        fam = self.family
        return all3([pi_is_empty(fam, intersect(a, b), backend) for a, b in pairs] + [pi_is_empty(fam, rest, backend)])

    def validate(self, backend: Backend = AUTO) -> None:
        ok = self.check(backend)
        if ok is not True:
            why = "could not be confirmed" if ok is None else "is not a tripartition"
            raise InvalidTripartition(f"the triple {why} of {'[0,1]^n' if self.scope == 'cube' else 'the coherent set'}")

    def pi_equal(self, other: "Tripartition", family: Family, backend: Backend = AUTO) -> Optional[bool]:
        return all3(pi_equal(family, a, b, backend) for a, b in zip(self.parts, other.parts))


# --------------------------------------------------------------------------
# squares


@dataclass(frozen=True)
class Square:
    s1: Sentence
    s2: Sentence
    s3: Sentence
    s4: Sentence

    def __post_init__(self):
        fam = self.s1.family
        if any(s.family != fam for s in self):
            raise FamilyMismatch("all sentences of a square must share one family")

    def __iter__(self) -> Iterator[Sentence]:
        return iter((self.s1, self.s2, self.s3, self.s4))

    @property
    def family(self) -> Family:
        return self.s1.family

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label or f"s{k}" for k, s in enumerate(self, 1))


@dataclass
class Verdict:
    """Per-condition outcome; ``failed`` names the first condition that is not true."""

    ok: Optional[bool]
    conditions: dict[str, Optional[bool]]
    failed: Optional[str] = None
    witness: Optional[tuple] = None
    degenerate: bool = False
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok is True


# condition label -> (relation, first index, second index); indices are 0-based
_SQUARE_CONDITIONS = {
    "a": ("contrary", 0, 1),
    "b": ("subcontrary", 2, 3),
    "c1": ("contradictory", 0, 3),
    "c2": ("contradictory", 1, 2),
    "d1": ("subaltern", 0, 2),
    "d2": ("subaltern", 1, 3),
}

_RELATIONS = {
    "contrary": is_contrary,
    "subcontrary": is_subcontrary,
    "contradictory": is_contradictory,
    "subaltern": is_subaltern,
}


def _run_conditions(items, spec, backend) -> Verdict:
    results: dict[str, Optional[bool]] = {}
    failed = None
    wit = None
    for name, (kind, i, j) in spec.items():
        v = _RELATIONS[kind](items[i], items[j], backend)
        results[name] = v
        if v is not True and failed is None:
            failed = name
            if v is False:
                wit = counterexample(kind, items[i], items[j], backend)
    return Verdict(all3(results.values()), results, failed, wit)


def _as_square(q) -> Square:
    return q if isinstance(q, Square) else Square(*q)


def verify_square(q, backend: Backend = AUTO) -> Verdict:
    sq = _as_square(q)
    items = tuple(sq)
    verdict = _run_conditions(items, _SQUARE_CONDITIONS, backend)
    if verdict.ok:
        empty = [sq.labels[k] for k, s in enumerate(items) if acceptable(s, backend) is False]
        if empty:
            verdict.degenerate = True
            verdict.notes.append("degenerate: empty coherent part for " + ", ".join(empty))
    return verdict


def verify_square_minimal(q, backend: Backend = AUTO) -> bool:
    """Contrariety of s1/s2 plus the two contradictions; equivalent to the full check."""
    items = tuple(_as_square(q))
    spec = {k: _SQUARE_CONDITIONS[k] for k in ("a", "c1", "c2")}
    return _run_conditions(items, spec, backend).ok is True


def _require_contraries(s1: Sentence, s2: Sentence, backend: Backend) -> None:
    v = is_contrary(s1, s2, backend)
    if v is not True:
        raise NotContraries(f"{s1} and {s2} are {'not' if v is False else 'not provably'} contraries")


def _neg_label(label: str) -> str:
    return f"~{label}" if label else ""


def square_from_contraries(s1: Sentence, s2: Sentence, backend: Backend = AUTO) -> Square:
    _require_contraries(s1, s2, backend)
    return Square(
        s1,
        s2,
        s_not(s2).named(_neg_label(s2.label)),
        s_not(s1).named(_neg_label(s1.label)),
    )


def _tripartition_regions(t: Tripartition):
    b1, b2, b3 = t.parts
    return b1, b2, union(b1, b3), union(b2, b3), union(b1, b2), b3


def square_from_tripartition(t: Tripartition, fam: Family, backend: Backend = AUTO,
                             labels=("s1", "s2", "s3", "s4")) -> Square:
    if t.dim != fam.n:
        raise InvalidTripartition(f"tripartition of dimension {t.dim} for a family of {fam.n} events")
    if t.scope == "pi" and t.family != fam:
        raise InvalidTripartition("tripartition belongs to a different family")
    t.validate(backend)
    regions = _tripartition_regions(t)[:4]
    return Square(*(Sentence(fam, r, lab) for r, lab in zip(regions, labels)))


def extract_tripartition(sq, backend: Backend = AUTO) -> Tripartition:
    sq = _as_square(sq)
    if not verify_square(sq, backend):
        raise NotAStructure("input is not a square of opposition")
    return Tripartition(
        sq.s1.region, sq.s2.region, intersect(sq.s3.region, sq.s4.region), scope="pi", family=sq.family
    )


def squares_coincide(sq1, sq2, backend: Backend = AUTO) -> Optional[bool]:
    sq1, sq2 = _as_square(sq1), _as_square(sq2)
    if sq1.family != sq2.family:
        raise FamilyMismatch("squares over different families cannot coincide")
    return all3(pi_equal(sq1.family, a.region, b.region, backend) for a, b in zip(sq1, sq2))


def swap_square(sq) -> Square:
    sq = _as_square(sq)
    return Square(sq.s2, sq.s1, sq.s4, sq.s3)


# --------------------------------------------------------------------------
# hexagons


@dataclass(frozen=True)
class Hexagon:
    s1: Sentence
    s2: Sentence
    s3: Sentence
    s4: Sentence
    s5: Sentence
    s6: Sentence

    def __post_init__(self):
        fam = self.s1.family
        if any(s.family != fam for s in self):
            raise FamilyMismatch("all sentences of a hexagon must share one family")

    def __iter__(self) -> Iterator[Sentence]:
        return iter((self.s1, self.s2, self.s3, self.s4, self.s5, self.s6))

    @property
    def family(self) -> Family:
        return self.s1.family

    @property
    def square(self) -> Square:
        return Square(self.s1, self.s2, self.s3, self.s4)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label or f"s{k}" for k, s in enumerate(self, 1))


@dataclass
class HexagonVerdict(Verdict):
    """``ok`` demands region-level identity of s5 and s6; ``ok_t`` only t-coherent parts."""

    ok_t: Optional[bool] = None
    square: Optional[Verdict] = None


def _as_hexagon(h) -> Hexagon:
    return h if isinstance(h, Hexagon) else Hexagon(*h)


def verify_hexagon(h, backend: Backend = AUTO) -> HexagonVerdict:
    hx = _as_hexagon(h)
    sq = verify_square(hx.square, backend)
    r1, r2, r3, r4, r5, r6 = (s.region for s in hx)
    top, bottom = union(r1, r2), intersect(r3, r4)
    conds = dict(sq.conditions)
    conds["ii"] = region_equal(r5, top)
    conds["iii"] = region_equal(r6, bottom)
    fam = hx.family
    t5 = True if conds["ii"] else pi_equal(fam, r5, top, backend)
    t6 = True if conds["iii"] else pi_equal(fam, r6, bottom, backend)
    ok = all3(conds.values())
    ok_t = all3([sq.ok, t5, t6])
    failed = sq.failed or next((k for k in ("ii", "iii") if not conds[k]), None)
    out = HexagonVerdict(ok, conds, failed, sq.witness, sq.degenerate, list(sq.notes), ok_t=ok_t, square=sq)
    if ok is False and ok_t:
        out.notes.append("hexagon up to t-coherence only")
    return out


def hexagon_from_contraries(s1: Sentence, s2: Sentence, backend: Backend = AUTO) -> Hexagon:
    _require_contraries(s1, s2, backend)
    n1, n2 = s_not(s1), s_not(s2)
    top = s_or(s1, s2)
    bottom = s_and(n1, n2)
    l1, l2 = s1.label, s2.label
    return Hexagon(
        s1,
        s2,
        n2.named(_neg_label(l2)),
        n1.named(_neg_label(l1)),
        top.named(f"{l1} v {l2}" if l1 and l2 else ""),
        bottom.named(f"~{l1} & ~{l2}" if l1 and l2 else ""),
    )


def hexagon_from_tripartition(t: Tripartition, fam: Family, backend: Backend = AUTO,
                              labels=("s1", "s2", "s3", "s4", "s5", "s6")) -> Hexagon:
    if t.scope != "cube":
        raise InvalidTripartition("hexagons are built from tripartitions of the whole cube")
    if t.dim != fam.n:
        raise InvalidTripartition(f"tripartition of dimension {t.dim} for a family of {fam.n} events")
    t.validate(backend)
    return Hexagon(*(Sentence(fam, r, lab) for r, lab in zip(_tripartition_regions(t), labels)))


# the nine extra relations; ("subaltern", i, j) reads "item j is a subaltern of item i"
_HEXAGON_RELATIONS = {
    "i": ("contrary", 0, 5),
    "ii": ("contrary", 1, 5),
    "iii": ("subaltern", 5, 2),
    "iv": ("subaltern", 5, 3),
    "v": ("subaltern", 0, 4),
    "vi": ("subaltern", 1, 4),
    "vii": ("subcontrary", 4, 2),
    "viii": ("subcontrary", 4, 3),
    "ix": ("contradictory", 4, 5),
}


def hexagon_relations(h, backend: Backend = AUTO) -> Verdict:
    """Evaluate the nine relations every hexagon satisfies beyond its square."""
    hx = _as_hexagon(h)
    if not verify_hexagon(hx, backend).ok_t:
        raise NotAStructure("input is not a hexagon of opposition")
    return _run_conditions(tuple(hx), _HEXAGON_RELATIONS, backend)


def triangles(h, backend: Backend = AUTO) -> dict[str, Optional[bool]]:
    """Contrary triangle (s1, s2, s6) and subcontrary triangle (s3, s4, s5)."""
    s = tuple(_as_hexagon(h))
    t1 = all3([is_contrary(s[0], s[1], backend), is_contrary(s[0], s[5], backend), is_contrary(s[1], s[5], backend)])
    t2 = all3(
        [is_subcontrary(s[2], s[3], backend), is_subcontrary(s[2], s[4], backend), is_subcontrary(s[3], s[4], backend)]
    )
    return {"contrary_triangle": t1, "subcontrary_triangle": t2}


# --------------------------------------------------------------------------
# diagrams

# (kind, i, j) with 0-based node indices; subaltern edges point at the subaltern
SQUARE_EDGES = [(kind, i, j) for kind, i, j in _SQUARE_CONDITIONS.values()]
HEXAGON_EDGES = SQUARE_EDGES + list(_HEXAGON_RELATIONS.values())

_EDGE_STYLE = {
    "contrary": 'dir=none, style=dashed, color="blue"',
    "subcontrary": 'dir=none, style=dotted, color="red"',
    "contradictory": 'dir=none, style=dashed, color="blue:red"',
    "subaltern": 'style=solid, color="black"',
}


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(structure, name: str = "opposition") -> str:
    """DOT digraph of a square or hexagon with the usual edge conventions.

    The caller is responsible for having verified the structure.
    """
    if not isinstance(structure, (Square, Hexagon)):
        structure = getattr(structure, "hexagon", None) or getattr(structure, "square", structure)
    if isinstance(structure, Hexagon):
        labels, edges = structure.labels, HEXAGON_EDGES
    elif isinstance(structure, Square):
        labels, edges = structure.labels, SQUARE_EDGES
    else:
        raise TypeError(f"cannot draw {type(structure).__name__}")
    lines = [f"digraph {_quote(name)} {{", "  node [shape=box];"]
    for k, lab in enumerate(labels):
        lines.append(f"  n{k + 1} [label={_quote(lab)}];")
    for kind, i, j in edges:
        lines.append(f"  n{i + 1} -> n{j + 1} [{_EDGE_STYLE[kind]}, label={_quote(kind)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
