"""Exact linear programming over the rationals.

A dense two-phase simplex using Bland's rule, so it always terminates and
pivots deterministically.  All arithmetic is done with
:class:`fractions.Fraction`; there are no tolerances anywhere.

The entry point mirrors the familiar ``linprog`` calling convention::

    >>> from fractions import Fraction as F
    >>> res = linprog([1, 1], A_ub=[[1, 2]], b_ub=[4], bounds=[(0, 3), (0, None)],
    ...               maximize=True)
    >>> res.status, res.value, res.x
    ('optimal', Fraction(7, 2), (Fraction(3, 1), Fraction(1, 2)))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["LPResult", "linprog", "OPTIMAL", "INFEASIBLE", "UNBOUNDED"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[tuple[Fraction, ...]] = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class _Tableau:
    """Row-major simplex tableau ``rows[i] = [a_i0 .. a_i(n-1), rhs]``."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.obj: list[Fraction] = [_ZERO] * (ncols + 1)

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        # reduced costs for a minimisation problem, priced out against the basis
        obj = list(cost) + [_ZERO]
        for i, b in enumerate(self.basis):
            cb = obj[b]
            if cb:
                row = self.rows[i]
                for k, v in enumerate(row):
                    if v:
                        obj[k] -= cb * v
        self.obj = obj

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        piv = prow[c]
        if piv != _ONE:
            inv = 1 / piv
            prow = [v * inv if v else v for v in prow]
            self.rows[r] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
        f = self.obj[c]
        if f:
            for k in nz:
                self.obj[k] -= f * prow[k]
        self.basis[r] = c

    def run(self, allowed: int) -> str:
        """Minimise with Bland's rule; only columns ``< allowed`` may enter."""
        while True:
            enter = -1
            for k in range(allowed):
                if self.obj[k] < 0:
                    enter = k
                    break
            if enter < 0:
                return OPTIMAL
            leave = -1
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leave])
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return UNBOUNDED
            self.pivot(leave, enter)

    def solution(self) -> list[Fraction]:
        x = [_ZERO] * self.ncols
        for i, b in enumerate(self.basis):
            x[b] = self.rows[i][-1]
        return x


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    bounds: Optional[Sequence[tuple]] = None,
    maximize: bool = False,
) -> LPResult:
    """Optimise ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``.

    ``bounds`` is a sequence of ``(lower, upper)`` pairs, ``None`` meaning
    unbounded on that side; the default is ``(0, None)`` for every variable.
    The returned ``x`` is in the original variable space.
    """
    n = len(c)
    if bounds is None:
        bounds = [(0, None)] * n
    if len(bounds) != n:
        raise ValueError("bounds length does not match objective length")
    cost = [_frac(v) for v in c]
    if maximize:
        cost = [-v for v in cost]

    # x_j = offset_j + sum(sign * y_k) over the internal columns of j
    cols: list[tuple[int, int]] = []  # (original index, sign)
    offsets: list[Fraction] = []
    extra_ub: list[tuple[list[tuple[int, int]], Fraction]] = []
    for j, (lo, hi) in enumerate(bounds):
        lo = None if lo is None else _frac(lo)
        hi = None if hi is None else _frac(hi)
        if lo is not None and hi is not None and lo > hi:
            return LPResult(INFEASIBLE)
        if lo is not None:
            offsets.append(lo)
            cols.append((j, 1))
            if hi is not None:
                extra_ub.append(([(len(cols) - 1, 1)], hi - lo))
        elif hi is not None:
            offsets.append(hi)
            cols.append((j, -1))
        else:
            offsets.append(_ZERO)
            cols.append((j, 1))
            cols.append((j, -1))
    col_of: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k, (j, s) in enumerate(cols):
        col_of[j].append((k, s))
    ny = len(cols)

    def transform(row: Sequence, rhs) -> tuple[list[Fraction], Fraction]:
        out = [_ZERO] * ny
        r = _frac(rhs)
        for j, a in enumerate(row):
            if not a:
                continue
            a = _frac(a)
            r -= a * offsets[j]
            for k, s in col_of[j]:
                out[k] += a * s
        return out, r

    ub_rows = [transform(row, b) for row, b in zip(A_ub, b_ub)]
    for spec, rhs in extra_ub:
        row = [_ZERO] * ny
        for k, s in spec:
            row[k] = Fraction(s)
        ub_rows.append((row, rhs))
    eq_rows = [transform(row, b) for row, b in zip(A_eq, b_eq)]

    m_ub = len(ub_rows)
    # columns: y (ny) | slacks (m_ub) | artificials (as needed)
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    need_art: list[int] = []
    for i, (row, rhs) in enumerate(ub_rows):
        slack = [_ZERO] * m_ub
        slack[i] = _ONE
        full = row + slack
        if rhs < 0:
            full = [-v for v in full]
            rhs = -rhs
            need_art.append(len(rows))
            basis.append(-1)
        else:
            basis.append(ny + i)
        rows.append(full + [rhs])
    for row, rhs in eq_rows:
        full = row + [_ZERO] * m_ub
        if rhs < 0:
            full = [-v for v in full]
            rhs = -rhs
        need_art.append(len(rows))
        basis.append(-1)
        rows.append(full + [rhs])

    nstruct = ny + m_ub
    nart = len(need_art)
    ncols = nstruct + nart
    for i, row in enumerate(rows):
        rhs = row.pop()
        row.extend([_ZERO] * nart)
        row.append(rhs)
    for a, i in enumerate(need_art):
        rows[i][nstruct + a] = _ONE
        basis[i] = nstruct + a

    tab = _Tableau(rows, basis, ncols)
    if nart:
        tab.set_objective([_ZERO] * nstruct + [_ONE] * nart)
        tab.run(ncols)
        if tab.obj[-1] != 0:
            # objective row holds -(sum of artificials)
            return LPResult(INFEASIBLE)
        # drive remaining artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= nstruct:
                row = tab.rows[i]
                col = next((k for k in range(nstruct) if row[k]), -1)
                if col < 0:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1
        for row in tab.rows:
            del row[nstruct:ncols]
        tab.ncols = nstruct
        tab.obj = tab.obj[:nstruct] + [tab.obj[-1]]

    ycost = [_ZERO] * nstruct
    for k, (j, s) in enumerate(cols):
        ycost[k] = cost[j] * s
    tab.set_objective(ycost)
    status = tab.run(nstruct)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    y = tab.solution()
    x = list(offsets)
    for k, (j, s) in enumerate(cols):
        if y[k]:
            x[j] += s * y[k]
    value = sum((_frac(cj) * xj for cj, xj in zip(c, x)), _ZERO)
    return LPResult(OPTIMAL, value, tuple(x))
