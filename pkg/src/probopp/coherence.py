"""Coherence of precise and set-valued assessments on conditional events.

Precise coherence is decided with the usual constituent-mass recursion: put
a nonnegative mass on each constituent of the disjunction of antecedents,
require ``mass(E_i H_i) = p_i * mass(H_i)``, and if some antecedents get zero
mass in every solution, recurse on that zero layer.  The betting view is
available separately through :func:`find_dutch_book`, which searches stakes
directly and serves as an independent check.

Set-valued assessments (regions) are checked through one of three backends:

``ExactPi``
    intersects the region with a region known to equal the set of all
    coherent points (only available for a few certified family shapes);
``LambdaLP``
    runs the mass recursion with interval constraints linearised over the
    conditioning masses (box-shaped cells only);
``Grid``
    scans a rational grid; it can confirm but never refute.

A verdict of ``None`` means "unknown" and only the grid produces it.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .events import (
    Constituent,
    Family,
    Not,
    SingleCase,
    classify_single_conditional,
    And,
    formulas_equivalent,
)
from .lp import OPTIMAL, linprog
from .regions import (
    Cell,
    LinearConstraint,
    Region,
    as_rational,
    constraint_region,
    full,
    grid_points,
    intersect,
    complement,
    point,
)
from . import events as _events
from . import regions as _regions

log = logging.getLogger(__name__)

__all__ = [
    "Backend",
    "ExactPi",
    "LambdaLP",
    "Grid",
    "Auto",
    "AUTO",
    "DutchBook",
    "Search",
    "UnsupportedCellError",
    "UncertifiedPiError",
    "OracleBoundError",
    "gain_values",
    "check_coherence",
    "find_dutch_book",
    "compute_pi",
    "search",
    "g_coherent",
    "pi_is_empty",
    "pi_subset",
    "pi_equal",
    "all3",
    "DUTCH_BOOK_BOUND",
    "clear_caches",
]

DUTCH_BOOK_BOUND = 6


class UnsupportedCellError(ValueError):
    """A cell constraint mixes several coordinates where only boxes are supported."""


class UncertifiedPiError(ValueError):
    """The exact backend was asked about a family whose coherent set is not known."""


class OracleBoundError(ValueError):
    pass


# --------------------------------------------------------------------------
# backends


class Backend:
    name = "backend"


@dataclass(frozen=True)
class ExactPi(Backend):
    name = "exact"


@dataclass(frozen=True)
class LambdaLP(Backend):
    name = "lp"


@dataclass(frozen=True)
class Grid(Backend):
    step: Fraction = Fraction(1, 20)
    name = "grid"

    def __post_init__(self):
        step = as_rational(self.step)
        object.__setattr__(self, "step", step)
        if step.numerator != 1 or step.denominator < 2:
            raise ValueError(f"grid step must be 1/m with m >= 2, got {step}")

    @property
    def m(self) -> int:
        return self.step.denominator


@dataclass(frozen=True)
class Auto(Backend):
    """Exact where the coherent set is certified, otherwise the mass LP."""

    name = "auto"


AUTO = Auto()


def all3(values: Iterable[Optional[bool]]) -> Optional[bool]:
    """Three-valued conjunction: any False wins, then any unknown."""
    seen_unknown = False
    for v in values:
        if v is False:
            return False
        if v is None:
            seen_unknown = True
    return None if seen_unknown else True


# --------------------------------------------------------------------------
# constituent tables


@lru_cache(maxsize=1024)
def _table(fam: Family) -> tuple[tuple[Constituent, tuple[tuple[bool, bool], ...]], ...]:
    cols = [ce.values() for ce in fam.events]
    return tuple(
        (c, tuple(col[k] for col in cols)) for k, c in enumerate(fam.context.constituents)
    )


@lru_cache(maxsize=4096)
def _rows(fam: Family, idxs: tuple[int, ...]) -> tuple[tuple[tuple[bool, bool], ...], ...]:
    """Distinct (EH, H) signatures over ``idxs`` of constituents of the union of their antecedents."""
    seen = {}
    for _, sig in _table(fam):
        sub = tuple(sig[i] for i in idxs)
        if any(h for _, h in sub):
            seen.setdefault(sub, None)
    return tuple(seen)


def _single_coordinate(c: LinearConstraint) -> tuple[int, Fraction]:
    if len(c.coeffs) != 1:
        raise UnsupportedCellError(
            f"constraint {c} involves {len(c.coeffs)} coordinates; the mass LP backend supports box cells only"
        )
    return c.coeffs[0]


def _mass_lp(rows, idxs, cons, zero, target_strict=None, target_mass=None):
    """One LP over constituent masses (plus an optional slack as last variable).

    ``cons[i]`` lists constraints on coordinate ``idxs[i]`` (0-based within
    ``idxs``).  Strict rows are relaxed to non-strict except for
    ``target_strict``, which gets the slack.  Indices in ``zero`` have their
    conditioning mass forced to zero.
    """
    nr = len(rows)
    slack = target_strict is not None
    nv = nr + (1 if slack else 0)
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    A_eq.append([Fraction(1)] * nr + ([Fraction(0)] if slack else []))
    b_eq.append(Fraction(1))
    for k in range(len(idxs)):
        if k in zero:
            A_eq.append([Fraction(int(r[k][1])) for r in rows] + ([Fraction(0)] if slack else []))
            b_eq.append(Fraction(0))
            continue
        for c in cons.get(k, ()):
            _, a = c.coeffs[0]
            b = c.bound
            row = [a * int(r[k][0]) - b * int(r[k][1]) for r in rows]
            if slack:
                row.append(Fraction(1) if (c.rel == "<" and k == target_strict) else Fraction(0))
            if c.rel == "=":
                A_eq.append(row)
                b_eq.append(Fraction(0))
            else:
                A_ub.append(row)
                b_ub.append(Fraction(0))
    obj = [Fraction(0)] * nv
    if slack:
        obj[nr] = Fraction(1)
    elif target_mass is not None:
        for j, r in enumerate(rows):
            if r[target_mass][1]:
                obj[j] = Fraction(1)
    bounds = [(0, None)] * nr + ([(0, 1)] if slack else [])
    return linprog(obj, A_ub, b_ub, A_eq, b_eq, bounds=bounds, maximize=True)


def _masses(rows, lam, k):
    eh = sum((l for r, l in zip(rows, lam) if r[k][0]), Fraction(0))
    h = sum((l for r, l in zip(rows, lam) if r[k][1]), Fraction(0))
    return eh, h


def _lambda_witness(fam: Family, idxs: tuple[int, ...], cons: Mapping[int, Sequence[LinearConstraint]]):
    """A coherent assessment on the subfamily ``idxs`` meeting the box constraints, or None.

    Strict constraints need care: they only bind on antecedents that carry
    positive mass.  An index is demoted to the forced-zero layer when no
    solution of the relaxed system satisfies its strict rows with slack; at
    the fixpoint the average of the per-index solutions is strictly feasible
    for every surviving index.
    """
    rows = _rows(fam, idxs)
    strict = {k for k in cons if any(c.rel == "<" for c in cons[k])}
    zero: set[int] = set()
    live = set(strict)
    sols: dict[int, tuple[Fraction, ...]] = {}
    changed = True
    while changed:
        changed = False
        sols = {}
        for k in sorted(live):
            res = _mass_lp(rows, idxs, cons, zero, target_strict=k)
            if res.status != OPTIMAL:
                return None
            if res.value > 0:
                sols[k] = res.x[: len(rows)]
            else:
                live.discard(k)
                zero.add(k)
                changed = True
                break
    if not live:
        res = _mass_lp(rows, idxs, cons, zero)
        if res.status != OPTIMAL:
            return None
    layer = set(zero)
    for k in range(len(idxs)):
        if k in strict:
            continue
        res = _mass_lp(rows, idxs, cons, zero, target_mass=k)
        if res.status != OPTIMAL:
            return None
        if res.value > 0:
            sols[k] = res.x
        else:
            layer.add(k)
    # nonempty: the antecedent disjunction carries total mass one
    assert sols, "mass recursion produced an empty positive layer"
    count = len(sols)
    lam = [sum(col, Fraction(0)) / count for col in zip(*sols.values())]
    out: dict[int, Fraction] = {}
    for k in range(len(idxs)):
        if k in layer:
            continue
        eh, h = _masses(rows, lam, k)
        out[idxs[k]] = eh / h
    if layer:
        sub = tuple(idxs[k] for k in sorted(layer))
        sub_cons = {j: cons[k] for j, k in enumerate(sorted(layer)) if k in cons}
        rest = _lambda_witness(fam, sub, sub_cons)
        if rest is None:
            return None
        out.update(rest)
    return out


def _box_constraints(cell: Cell) -> dict[int, list[LinearConstraint]]:
    cons: dict[int, list[LinearConstraint]] = {}
    for c in cell.constraints:
        i, _ = _single_coordinate(c)
        cons.setdefault(i, []).append(c)
    return cons


# --------------------------------------------------------------------------
# precise assessments


def _as_point(fam: Family, p: Sequence) -> tuple[Fraction, ...]:
    if len(p) != fam.n:
        raise ValueError(f"assessment has {len(p)} values for a family of {fam.n} events")
    q = tuple(as_rational(v) for v in p)
    if any(not 0 <= v <= 1 for v in q):
        raise ValueError(f"assessment values must lie in [0,1]: {tuple(map(str, q))}")
    return q


def gain_values(
    fam: Family, p: Sequence, stakes: Sequence, support: Optional[Iterable[int]] = None
) -> dict[Constituent, Fraction]:
    """Random gain ``sum s_i H_i (E_i - p_i)`` on each constituent of the antecedent disjunction.

    ``support`` restricts the disjunction to a subfamily (defaults to all events).
    """
    q = _as_point(fam, p)
    if len(stakes) != fam.n:
        raise ValueError(f"{len(stakes)} stakes for a family of {fam.n} events")
    s = [as_rational(v) for v in stakes]
    idxs = range(fam.n) if support is None else sorted(support)
    out = {}
    for c, sig in _table(fam):
        if not any(sig[i][1] for i in idxs):
            continue
        g = Fraction(0)
        for i in range(fam.n):
            eh, h = sig[i]
            if h:
                g += s[i] * ((1 if eh else 0) - q[i])
        out[c] = g
    return out


@lru_cache(maxsize=65536)
def _check_point(fam: Family, q: tuple[Fraction, ...]) -> bool:
    cons = {i: [LinearConstraint.make({0: 1}, "=", v)] for i, v in enumerate(q)}
    return _lambda_witness(fam, tuple(range(fam.n)), cons) is not None


def check_coherence(fam: Family, p: Sequence) -> bool:
    return _check_point(fam, _as_point(fam, p))


@dataclass(frozen=True)
class DutchBook:
    """Stakes giving a strictly one-signed gain on every constituent of ``support``."""

    stakes: tuple[Fraction, ...]
    gains: dict
    support: tuple[int, ...]

    @property
    def sign(self) -> int:
        return 1 if next(iter(self.gains.values())) > 0 else -1


def find_dutch_book(fam: Family, p: Sequence, bound: int = DUTCH_BOOK_BOUND) -> Optional[DutchBook]:
    """Search every subfamily for stakes with uniformly positive gain.

    Stakes live in ``[-1, 1]``; the returned book is sign-normalised so its
    first nonzero stake is negative (selling).
    """
    q = _as_point(fam, p)
    if fam.n > bound:
        raise OracleBoundError(f"family of {fam.n} events exceeds the Dutch-book oracle bound {bound}")
    for size in range(1, fam.n + 1):
        for J in itertools.combinations(range(fam.n), size):
            rows = _rows(fam, J)
            # variables: s_j for j in J, then t; maximise t with t <= gain(row)
            A_ub, b_ub = [], []
            for r in rows:
                row = []
                for k, i in enumerate(J):
                    eh, h = r[k]
                    row.append(-((1 if eh else 0) - q[i]) if h else Fraction(0))
                row.append(Fraction(1))
                A_ub.append(row)
                b_ub.append(Fraction(0))
            obj = [0] * size + [1]
            bounds = [(-1, 1)] * size + [(None, 1)]
            res = linprog(obj, A_ub, b_ub, bounds=bounds, maximize=True)
            if res.status == OPTIMAL and res.value > 0:
                stakes = [Fraction(0)] * fam.n
                for k, i in enumerate(J):
                    stakes[i] = res.x[k]
                first = next(v for v in stakes if v)
                if first > 0:
                    stakes = [-v for v in stakes]
                gains = gain_values(fam, q, stakes, support=J)
                return DutchBook(tuple(stakes), gains, J)
    return None


# --------------------------------------------------------------------------
# the set of all coherent assessments


def _complementary_pair(fam: Family) -> bool:
    if fam.n != 2:
        return False
    a, b = fam.events
    ctx = fam.context
    if not formulas_equivalent(a.antecedent, b.antecedent, ctx):
        return False
    h = a.antecedent
    return formulas_equivalent(And(b.consequent, h), And(Not(a.consequent), h), ctx)


@lru_cache(maxsize=1024)
def compute_pi(fam: Family) -> Optional[Region]:
    """The set of coherent precise assessments, when it is known exactly.

    Certified shapes: a single conditional event (three cases), a
    complementary pair ``(E|H, !E|H)``, and families declared logically
    independent (the declaration is refuted if a cube vertex or the centre
    turns out incoherent).  Returns ``None`` otherwise.
    """
    if fam.n == 1:
        case = classify_single_conditional(fam.events[0])
        if case is SingleCase.CaseI:
            return full(1)
        return point([1]) if case is SingleCase.CaseII else point([0])
    if _complementary_pair(fam):
        case = classify_single_conditional(fam.events[0])
        if case is SingleCase.CaseII:
            return point([1, 0])
        if case is SingleCase.CaseIII:
            return point([0, 1])
        return constraint_region(2, [LinearConstraint.make({0: 1, 1: 1}, "=", 1)])
    if fam.independent:
        probes = list(itertools.product((Fraction(0), Fraction(1)), repeat=fam.n))
        probes.append(tuple([Fraction(1, 2)] * fam.n))
        for q in probes:
            if not _check_point(fam, q):
                raise ValueError(
                    f"family {fam} is declared independent but {tuple(map(str, q))} is incoherent"
                )
        return full(fam.n)
    return None


# --------------------------------------------------------------------------
# set-valued assessments


@dataclass(frozen=True)
class Search:
    """Outcome of looking for a coherent point in a region."""

    verdict: Optional[bool]
    witness: Optional[tuple[Fraction, ...]] = None
    backend: str = ""


def _resolve(fam: Family, backend: Backend) -> Backend:
    if isinstance(backend, Auto):
        return ExactPi() if compute_pi(fam) is not None else LambdaLP()
    return backend


def search(fam: Family, r: Region, backend: Backend = AUTO) -> Search:
    """Find a coherent precise assessment inside ``r``."""
    if r.dim != fam.n:
        raise _regions.DimensionMismatch(f"region of dimension {r.dim} for a family of {fam.n} events")
    backend = _resolve(fam, backend)
    if isinstance(backend, ExactPi):
        pi = compute_pi(fam)
        if pi is None:
            raise UncertifiedPiError(f"no certified coherent set for family {fam}")
        w = _regions.witness(intersect(pi, r))
        return Search(w is not None, w, backend.name)
    if isinstance(backend, LambdaLP):
        for cell in r.cells:
            _box_constraints(cell)  # reject unsupported cells before any search
        for cell in r.cells:
            found = _lambda_witness(fam, tuple(range(fam.n)), _box_constraints(cell))
            if found is not None:
                return Search(True, tuple(found[i] for i in range(fam.n)), backend.name)
        return Search(False, None, backend.name)
    if isinstance(backend, Grid):
        if r.cells:
            for q in grid_points(fam.n, backend.m):
                if any(c.contains(q) for c in r.cells) and _check_point(fam, q):
                    return Search(True, q, backend.name)
            return Search(None, None, backend.name)
        return Search(False, None, backend.name)
    raise TypeError(f"unknown backend {backend!r}")


def clear_caches() -> None:
    """Drop memoised truth tables, LP witnesses and coherence verdicts."""
    for fn in (_table, _rows, _check_point, compute_pi, _regions.cell_witness, _events._truth_vector):
        fn.cache_clear()


def g_coherent(fam: Family, r: Region, backend: Backend = AUTO) -> Optional[bool]:
    return search(fam, r, backend).verdict


def pi_is_empty(fam: Family, r: Region, backend: Backend = AUTO) -> Optional[bool]:
    v = g_coherent(fam, r, backend)
    return None if v is None else not v


def pi_subset(fam: Family, r1: Region, r2: Region, backend: Backend = AUTO) -> Optional[bool]:
    return pi_is_empty(fam, intersect(r1, complement(r2)), backend)


def pi_equal(fam: Family, r1: Region, r2: Region, backend: Backend = AUTO) -> Optional[bool]:
    first = pi_subset(fam, r1, r2, backend)
    if first is False:
        return False
    return all3([first, pi_subset(fam, r2, r1, backend)])
