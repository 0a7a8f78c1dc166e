"""Exact set algebra on subsets of the unit cube.

A :class:`Region` is a finite union of convex :class:`Cell` objects, each a
conjunction of rational linear constraints with ``=``, ``<=`` or ``<``
relations, always intersected with ``[0,1]^n``.  Complements are therefore
relative to the unit cube.  There is no canonical form: equality and
inclusion are decided semantically with exact LPs.

Emptiness of a cell with strict constraints is decided by adding one slack
``eps`` to every strict row and maximising it; finitely many strict rational
inequalities have a common strict solution iff the optimum is positive.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Union

from .lp import OPTIMAL, linprog

__all__ = [
    "Rational",
    "Rel",
    "LinearConstraint",
    "Cell",
    "Region",
    "DimensionMismatch",
    "box",
    "interval",
    "halfspace",
    "full",
    "empty",
    "point",
    "complement",
    "intersect",
    "union",
    "region_is_empty",
    "witness",
    "contains_point",
    "subset",
    "region_equal",
    "cylinder",
    "as_rational",
]

Rational = Fraction
Number = Union[int, Fraction, str]


def as_rational(v: Number) -> Fraction:
    """Exact conversion; floats are refused because they are rarely what was meant."""
    if isinstance(v, float):
        raise TypeError(f"use an exact rational instead of the float {v!r}")
    return v if isinstance(v, Fraction) else Fraction(v)


class DimensionMismatch(ValueError):
    pass


class Rel(enum.Enum):
    EQ = "="
    LE = "<="
    LT = "<"


_REL_ALIASES = {"=": "=", "==": "=", "<=": "<=", "<": "<", ">=": ">=", ">": ">"}


@dataclass(frozen=True, order=True)
class LinearConstraint:
    """``sum(a_i * p_i) rel bound``, stored normalised.

    Normalisation divides by the magnitude of the first nonzero coefficient
    (and fixes its sign for equalities) so syntactically equal half-spaces
    compare equal.  Coordinates are 0-based.
    """

    coeffs: tuple[tuple[int, Fraction], ...]
    rel: str
    bound: Fraction

    @classmethod
    def make(cls, coeffs: Mapping[int, Number] | Iterable[tuple[int, Number]], rel: str, bound: Number):
        if rel not in _REL_ALIASES:
            raise ValueError(f"unknown relation {rel!r}")
        rel = _REL_ALIASES[rel]
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, Fraction] = {}
        for i, a in items:
            if i < 0:
                raise ValueError(f"negative coordinate index {i}")
            acc[i] = acc.get(i, Fraction(0)) + as_rational(a)
        terms = sorted((i, a) for i, a in acc.items() if a)
        b = as_rational(bound)
        if rel in (">=", ">"):
            terms = [(i, -a) for i, a in terms]
            b = -b
            rel = "<=" if rel == ">=" else "<"
        if terms:
            scale = abs(terms[0][1])
            if rel == "=" and terms[0][1] < 0:
                scale = -scale
            terms = [(i, a / scale) for i, a in terms]
            b = b / scale
        return cls(tuple(terms), rel, b)

    @property
    def relation(self) -> Rel:
        return Rel(self.rel)

    @property
    def is_constant(self) -> bool:
        return not self.coeffs

    @property
    def coordinates(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.coeffs)

    def lhs(self, p: Sequence[Fraction]) -> Fraction:
        return sum((a * p[i] for i, a in self.coeffs), Fraction(0))

    def holds(self, p: Sequence[Fraction]) -> bool:
        v = self.lhs(p)
        if self.rel == "=":
            return v == self.bound
        if self.rel == "<=":
            return v <= self.bound
        return v < self.bound

    def negated(self) -> tuple["LinearConstraint", ...]:
        """Constraints whose union is the complement of this half-space."""
        if self.rel == "<=":
            return (LinearConstraint.make(self.coeffs, ">", self.bound),)
        if self.rel == "<":
            return (LinearConstraint.make(self.coeffs, ">=", self.bound),)
        return (
            LinearConstraint.make(self.coeffs, "<", self.bound),
            LinearConstraint.make(self.coeffs, ">", self.bound),
        )

    def cube_verdict(self) -> Optional[bool]:
        """Trivial truth over the unit cube for constant and one-coordinate rows."""
        if not self.coeffs:
            return _compare(Fraction(0), self.rel, self.bound)
        if len(self.coeffs) != 1:
            return None
        _, a = self.coeffs[0]
        b = self.bound
        # a is +-1 after normalisation
        lo, hi = (Fraction(0), Fraction(1)) if a > 0 else (Fraction(-1), Fraction(0))
        if self.rel == "=":
            return False if not lo <= b <= hi else None
        if self.rel == "<=":
            return True if hi <= b else (False if lo > b else None)
        return True if hi < b else (False if lo >= b else None)

    def __str__(self) -> str:
        parts = []
        for i, a in self.coeffs:
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            term = f"p{i + 1}" if mag == 1 else f"{mag}*p{i + 1}"
            parts.append((sign, term))
        if not parts:
            lhs = "0"
        else:
            lhs = ("-" if parts[0][0] == "-" else "") + parts[0][1]
            lhs += "".join(f" {s} {t}" for s, t in parts[1:])
        return f"{lhs} {self.rel} {self.bound}"


def _compare(v: Fraction, rel: str, b: Fraction) -> bool:
    return v == b if rel == "=" else (v <= b if rel == "<=" else v < b)


@dataclass(frozen=True)
class Cell:
    """A convex piece: the constraints intersected with ``[0,1]^dim``."""

    dim: int
    constraints: tuple[LinearConstraint, ...] = ()

    @classmethod
    def make(cls, dim: int, constraints: Iterable[LinearConstraint]) -> Optional["Cell"]:
        """Build a simplified cell, or ``None`` if it is trivially empty."""
        kept = set()
        for c in constraints:
            if c.coeffs and c.coeffs[-1][0] >= dim:
                raise DimensionMismatch(f"constraint {c} mentions a coordinate beyond dimension {dim}")
            v = c.cube_verdict()
            if v is False:
                return None
            if v is None:
                kept.add(c)
        return cls(dim, tuple(sorted(kept)))

    @property
    def has_strict(self) -> bool:
        return any(c.rel == "<" for c in self.constraints)

    def contains(self, p: Sequence[Fraction]) -> bool:
        return all(c.holds(p) for c in self.constraints)

    def __str__(self) -> str:
        if not self.constraints:
            return f"[0,1]^{self.dim}"
        return " & ".join(str(c) for c in self.constraints)


@dataclass(frozen=True)
class Region:
    """A finite union of cells in ``[0,1]^dim`` (no cells means the empty set)."""

    dim: int
    cells: tuple[Cell, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("regions need dimension >= 1")
        for c in self.cells:
            if c.dim != self.dim:
                raise DimensionMismatch(f"cell of dimension {c.dim} in a region of dimension {self.dim}")

    @classmethod
    def from_cells(cls, dim: int, cells: Iterable[Optional[Cell]]) -> "Region":
        seen = []
        for c in cells:
            if c is not None and c not in seen:
                seen.append(c)
        return cls(dim, tuple(seen))

    def __invert__(self) -> "Region":
        return complement(self)

    def __and__(self, other: "Region") -> "Region":
        return intersect(self, other)

    def __or__(self, other: "Region") -> "Region":
        return union(self, other)

    def __contains__(self, p) -> bool:
        return contains_point(self, p)

    def __str__(self) -> str:
        if not self.cells:
            return "{}"
        return " \\/ ".join(f"{{{c}}}" for c in self.cells)


# --------------------------------------------------------------------------
# constructors


def full(dim: int) -> Region:
    return Region(dim, (Cell(dim),))


def empty(dim: int) -> Region:
    return Region(dim)


def interval(lower: Number, upper: Number, lower_closed: bool = True, upper_closed: bool = True):
    """One coordinate's ``(lower, lower_closed, upper, upper_closed)`` tuple for :func:`box`."""
    return (as_rational(lower), lower_closed, as_rational(upper), upper_closed)


def box(intervals: Sequence[tuple]) -> Region:
    """Axis-aligned box; one ``(lower, lower_closed, upper, upper_closed)`` per coordinate."""
    if not intervals:
        raise ValueError("a box needs at least one coordinate")
    cons = []
    for i, iv in enumerate(intervals):
        lo, lo_closed, hi, hi_closed = iv
        lo, hi = as_rational(lo), as_rational(hi)
        if not (0 <= lo <= hi <= 1):
            raise ValueError(f"malformed interval on coordinate {i + 1}: need 0 <= {lo} <= {hi} <= 1")
        if lo == hi and not (lo_closed and hi_closed):
            raise ValueError(f"degenerate interval on coordinate {i + 1} must be closed")
        if lo == hi:
            cons.append(LinearConstraint.make({i: 1}, "=", lo))
            continue
        cons.append(LinearConstraint.make({i: 1}, ">=" if lo_closed else ">", lo))
        cons.append(LinearConstraint.make({i: 1}, "<=" if hi_closed else "<", hi))
    dim = len(intervals)
    return Region.from_cells(dim, [Cell.make(dim, cons)])


def point(values: Sequence[Number]) -> Region:
    return box([(v, True, v, True) for v in values])


def halfspace(coeffs: Mapping[int, Number] | Sequence[Number], rel: str, bound: Number, dim: Optional[int] = None) -> Region:
    """Single-constraint region; ``coeffs`` is a 0-based map or a dense list."""
    if not isinstance(coeffs, Mapping):
        coeffs = dict(enumerate(coeffs))
        dim = dim or len(coeffs)
    if dim is None:
        dim = max(coeffs) + 1
    return constraint_region(dim, [LinearConstraint.make(coeffs, rel, bound)])


def constraint_region(dim: int, constraints: Iterable[LinearConstraint]) -> Region:
    return Region.from_cells(dim, [Cell.make(dim, constraints)])


def cylinder(r: Region, dim: int, offset: int) -> Region:
    """Embed ``r`` into ``[0,1]^dim`` on coordinates ``offset..``, free elsewhere."""
    if offset < 0 or offset + r.dim > dim:
        raise DimensionMismatch(f"cannot place a {r.dim}-dimensional region at offset {offset} in dimension {dim}")
    cells = []
    for c in r.cells:
        shifted = [
            LinearConstraint(tuple((i + offset, a) for i, a in k.coeffs), k.rel, k.bound) for k in c.constraints
        ]
        cells.append(Cell(dim, tuple(sorted(shifted))))
    return Region(dim, tuple(cells))


# --------------------------------------------------------------------------
# emptiness and witnesses


@lru_cache(maxsize=65536)
def cell_witness(cell: Cell) -> Optional[tuple[Fraction, ...]]:
    """A point of the cell, or ``None`` if the cell is empty."""
    n = cell.dim
    strict = cell.has_strict
    nv = n + 1 if strict else n
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for c in cell.constraints:
        row = [Fraction(0)] * nv
        for i, a in c.coeffs:
            row[i] = a
        if c.rel == "=":
            A_eq.append(row)
            b_eq.append(c.bound)
        else:
            if c.rel == "<":
                row[n] = Fraction(1)
            A_ub.append(row)
            b_ub.append(c.bound)
    obj = [0] * nv
    if strict:
        obj[n] = 1
    res = linprog(obj, A_ub, b_ub, A_eq, b_eq, bounds=[(0, 1)] * nv, maximize=True)
    if res.status != OPTIMAL:
        return None
    if strict and res.value <= 0:
        return None
    return res.x[:n]


def cell_is_empty(cell: Cell) -> bool:
    return cell_witness(cell) is None


def witness(r: Region) -> Optional[tuple[Fraction, ...]]:
    """Some point of ``r`` (from the first nonempty cell), or ``None``."""
    for c in r.cells:
        w = cell_witness(c)
        if w is not None:
            return w
    return None


def region_is_empty(r: Region) -> bool:
    return witness(r) is None


def prune(r: Region) -> Region:
    """Drop empty cells."""
    return Region(r.dim, tuple(c for c in r.cells if not cell_is_empty(c)))


# --------------------------------------------------------------------------
# algebra


def _check_dims(r1: Region, r2: Region) -> None:
    if r1.dim != r2.dim:
        raise DimensionMismatch(f"dimension mismatch: {r1.dim} vs {r2.dim}")


def _conj(a: Cell, b: Cell) -> Optional[Cell]:
    return Cell.make(a.dim, a.constraints + b.constraints)


def intersect(r1: Region, r2: Region) -> Region:
    _check_dims(r1, r2)
    cells = (_conj(a, b) for a in r1.cells for b in r2.cells)
    return prune(Region.from_cells(r1.dim, cells))


def union(r1: Region, r2: Region) -> Region:
    _check_dims(r1, r2)
    return Region.from_cells(r1.dim, r1.cells + r2.cells)


def _cell_complement(cell: Cell) -> list[Cell]:
    # disjoint pieces: c1 & ... & c(j-1) & not cj
    pieces = []
    for j, c in enumerate(cell.constraints):
        prefix = cell.constraints[:j]
        for neg in c.negated():
            piece = Cell.make(cell.dim, prefix + (neg,))
            if piece is not None:
                pieces.append(piece)
    return pieces


def complement(r: Region) -> Region:
    """``[0,1]^n`` minus ``r``, as a union of pairwise disjoint cells."""
    acc = [Cell(r.dim)]
    for cell in r.cells:
        pieces = _cell_complement(cell)
        nxt = []
        for a in acc:
            for p in pieces:
                c = _conj(a, p)
                if c is not None and c not in nxt and not cell_is_empty(c):
                    nxt.append(c)
        acc = nxt
        if not acc:
            break
    return Region(r.dim, tuple(acc))


def contains_point(r: Region, p: Sequence[Number]) -> bool:
    if len(p) != r.dim:
        raise DimensionMismatch(f"point of dimension {len(p)} for a region of dimension {r.dim}")
    q = tuple(as_rational(v) for v in p)
    if any(not 0 <= v <= 1 for v in q):
        raise ValueError(f"point {tuple(map(str, q))} lies outside the unit cube")
    return any(c.contains(q) for c in r.cells)


def subset(r1: Region, r2: Region) -> bool:
    _check_dims(r1, r2)
    if not r1.cells:
        return True
    return region_is_empty(intersect(r1, complement(r2)))


def region_equal(r1: Region, r2: Region) -> bool:
    return subset(r1, r2) and subset(r2, r1)


def grid_points(dim: int, m: int) -> Iterable[tuple[Fraction, ...]]:
    """All points of ``{0, 1/m, ..., 1}^dim`` in lexicographic order."""
    axis = [Fraction(k, m) for k in range(m + 1)]
    return itertools.product(axis, repeat=dim)
