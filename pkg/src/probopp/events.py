"""Propositional event algebra and conditional events.

Formulas are small immutable trees over declared atoms.  A context fixes the
atom order and any logical relations (constraint formulas that must hold),
and everything else is decided by brute-force enumeration of constituents,
which is plenty at the sizes this library targets (at most 16 atoms).
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "Formula",
    "Atom",
    "Const",
    "Not",
    "And",
    "Or",
    "TOP",
    "BOTTOM",
    "FormulaSyntaxError",
    "UndeclaredAtomError",
    "InconsistentContextError",
    "EventContext",
    "Constituent",
    "ConditionalEvent",
    "Family",
    "SingleCase",
    "parse_formula",
    "enumerate_constituents",
    "formulas_equivalent",
    "classify_single_conditional",
    "MAX_ATOMS",
]

MAX_ATOMS = 16


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class UndeclaredAtomError(ValueError):
    pass


class InconsistentContextError(ValueError):
    pass


# --------------------------------------------------------------------------
# formulas


class Formula:
    """Base class of the formula tree; supports ``&``, ``|`` and ``~``."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def atoms(self) -> frozenset[str]:
        raise NotImplementedError

    def evaluate(self, valuation: Mapping[str, bool]) -> bool:
        raise NotImplementedError

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def atoms(self):
        return frozenset((self.name,))

    def evaluate(self, valuation):
        return valuation[self.name]

    def __repr__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class Const(Formula):
    value: bool

    def atoms(self):
        return frozenset()

    def evaluate(self, valuation):
        return self.value

    def __repr__(self):
        return "TRUE" if self.value else "FALSE"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    arg: Formula

    def atoms(self):
        return self.arg.atoms()

    def evaluate(self, valuation):
        return not self.arg.evaluate(valuation)

    def __repr__(self):
        return f"NOT({self.arg!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def atoms(self):
        return self.left.atoms() | self.right.atoms()

    def evaluate(self, valuation):
        return self.left.evaluate(valuation) and self.right.evaluate(valuation)

    def __repr__(self):
        return f"AND({self.left!r},{self.right!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def atoms(self):
        return self.left.atoms() | self.right.atoms()

    def evaluate(self, valuation):
        return self.left.evaluate(valuation) or self.right.evaluate(valuation)

    def __repr__(self):
        return f"OR({self.left!r},{self.right!r})"


TOP = Const(True)
BOTTOM = Const(False)

_PREC = {Or: 1, And: 2, Not: 3, Atom: 4, Const: 4}


def to_text(f: Formula) -> str:
    """Print in the ASCII grammar with the minimum of parentheses."""

    def wrap(sub: Formula, level: int) -> str:
        s = to_text(sub)
        return f"({s})" if _PREC[type(sub)] < level else s

    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Const):
        return "TRUE" if f.value else "FALSE"
    if isinstance(f, Not):
        return "!" + wrap(f.arg, 3)
    if isinstance(f, And):
        # binary trees are left-nested by the parser; a right-nested
        # conjunction needs parentheses to round-trip structurally
        return f"{wrap(f.left, 2)} & {wrap(f.right, 3)}"
    if isinstance(f, Or):
        return f"{wrap(f.left, 1)} | {wrap(f.right, 2)}"
    raise TypeError(f"not a formula: {f!r}")


_TOKEN = re.compile(r"[A-Za-z][A-Za-z0-9_]*|\S")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        tok = m.group(0)
        if not tok[0].isalpha() and tok not in "&|!()":
            raise FormulaSyntaxError(f"unexpected character {tok!r}", text, m.start())
        tokens.append((tok, m.start()))
    return tokens


class _Parser:
    def __init__(self, text: str, atoms: Iterable[str] | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.atoms = None if atoms is None else set(atoms)

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def expect(self, tok):
        if self.peek() != tok:
            found = self.peek() or "end of input"
            raise FormulaSyntaxError(f"expected {tok!r}, found {found!r}", self.text, self.pos())
        self.i += 1

    def parse(self) -> Formula:
        f = self.disj()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"unexpected {self.peek()!r}", self.text, self.pos())
        return f

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek() == "&":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok == "!":
            self.i += 1
            return Not(self.unary())
        if tok == "(":
            self.i += 1
            f = self.disj()
            self.expect(")")
            return f
        if tok is None or tok in "&|)":
            found = tok or "end of input"
            raise FormulaSyntaxError(f"expected a formula, found {found!r}", self.text, self.pos())
        pos = self.pos()
        self.i += 1
        if tok == "TRUE":
            return TOP
        if tok == "FALSE":
            return BOTTOM
        if self.atoms is not None and tok not in self.atoms:
            raise UndeclaredAtomError(f"undeclared identifier {tok!r} at position {pos}")
        return Atom(tok)


def parse_formula(text: str, ctx: "EventContext | Iterable[str] | None" = None) -> Formula:
    """Parse ``text``; identifiers must be declared in ``ctx`` when given.

    >>> parse_formula("!(P | S)", ["P", "S"])
    NOT(OR(P,S))
    """
    atoms = ctx.atoms if isinstance(ctx, EventContext) else ctx
    return _Parser(text, atoms).parse()


# --------------------------------------------------------------------------
# contexts and constituents


@dataclass(frozen=True)
class Constituent:
    """One admissible truth assignment, in the context's atom order."""

    atoms: tuple[str, ...]
    values: tuple[bool, ...]

    def __getitem__(self, name: str) -> bool:
        return self.values[self.atoms.index(name)]

    def valuation(self) -> dict[str, bool]:
        return dict(zip(self.atoms, self.values))

    def __str__(self) -> str:
        return " ".join(a if v else "!" + a for a, v in zip(self.atoms, self.values))


FormulaLike = Union[Formula, str]


@dataclass(frozen=True)
class EventContext:
    """Declared atoms plus constraint formulas asserted to be logically true."""

    atoms: tuple[str, ...]
    constraints: tuple[Formula, ...] = ()

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if len(set(atoms)) != len(atoms):
            raise ValueError(f"duplicate atom identifiers in {atoms}")
        if len(atoms) > MAX_ATOMS:
            raise ValueError(f"at most {MAX_ATOMS} atoms are supported, got {len(atoms)}")
        for a in atoms:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", a) or a in ("TRUE", "FALSE"):
                raise ValueError(f"invalid atom identifier {a!r}")
        cons = tuple(self.formula(c) for c in self.constraints)
        object.__setattr__(self, "constraints", cons)
        if not self.constituents:
            raise InconsistentContextError("no truth assignment satisfies the context constraints")

    @classmethod
    def of(cls, *atoms: str, constraints: Sequence[str] = ()) -> "EventContext":
        return cls(tuple(atoms), tuple(constraints))

    def formula(self, f: FormulaLike) -> Formula:
        if isinstance(f, str):
            return parse_formula(f, self.atoms)
        undeclared = f.atoms() - set(self.atoms)
        if undeclared:
            raise UndeclaredAtomError(f"undeclared identifier(s) {sorted(undeclared)}")
        return f

    @cached_property
    def constituents(self) -> tuple[Constituent, ...]:
        out = []
        for values in itertools.product((False, True), repeat=len(self.atoms)):
            val = dict(zip(self.atoms, values))
            if all(c.evaluate(val) for c in self.constraints):
                out.append(Constituent(self.atoms, values))
        return tuple(out)

    def truth_vector(self, f: FormulaLike) -> tuple[bool, ...]:
        f = self.formula(f)
        return _truth_vector(self, f)

    def conditional(self, consequent: FormulaLike, antecedent: FormulaLike) -> "ConditionalEvent":
        return ConditionalEvent(self, self.formula(consequent), self.formula(antecedent))


@lru_cache(maxsize=4096)
def _truth_vector(ctx: EventContext, f: Formula) -> tuple[bool, ...]:
    return tuple(f.evaluate(c.valuation()) for c in ctx.constituents)


def enumerate_constituents(ctx: EventContext) -> tuple[Constituent, ...]:
    """Admissible assignments, lexicographic over the declaration order (False < True)."""
    return ctx.constituents


def formulas_equivalent(f: FormulaLike, g: FormulaLike, ctx: EventContext) -> bool:
    return ctx.truth_vector(f) == ctx.truth_vector(g)


@dataclass(frozen=True)
class ConditionalEvent:
    """``consequent | antecedent``; the antecedent must be satisfiable in context."""

    context: EventContext
    consequent: Formula
    antecedent: Formula

    def __post_init__(self):
        self.context.formula(self.consequent)
        self.context.formula(self.antecedent)
        if not any(self.context.truth_vector(self.antecedent)):
            raise ValueError(f"antecedent {self.antecedent} is impossible in this context")

    def __str__(self) -> str:
        def part(f):
            return f"({f})" if isinstance(f, Or) else str(f)

        return f"{part(self.consequent)} | {part(self.antecedent)}"

    def values(self) -> tuple[tuple[bool, bool], ...]:
        """Per constituent: (consequent-and-antecedent true, antecedent true)."""
        e = self.context.truth_vector(self.consequent)
        h = self.context.truth_vector(self.antecedent)
        return tuple((ei and hi, hi) for ei, hi in zip(e, h))


@dataclass(frozen=True)
class Family:
    """An ordered sequence of conditional events over one context.

    ``independent`` is a declaration that the events are logically
    independent, so that every point of the unit cube is coherent.
    """

    events: tuple[ConditionalEvent, ...]
    independent: bool = False

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        if not events:
            raise ValueError("a family needs at least one conditional event")
        ctx = events[0].context
        if any(e.context != ctx for e in events):
            raise ValueError("all events of a family must share one context")

    @classmethod
    def of(cls, *events: ConditionalEvent, independent: bool = False) -> "Family":
        return cls(tuple(events), independent)

    @property
    def context(self) -> EventContext:
        return self.events[0].context

    @property
    def n(self) -> int:
        return len(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.events) + ")"


class SingleCase(enum.Enum):
    """How logical relations between consequent and antecedent restrict coherence."""

    CaseI = "i"  # all of [0,1] is coherent
    CaseII = "ii"  # consequent-and-antecedent equals antecedent: only 1
    CaseIII = "iii"  # consequent-and-antecedent impossible: only 0


def classify_single_conditional(ce: ConditionalEvent) -> SingleCase:
    ctx = ce.context
    conj = And(ce.consequent, ce.antecedent)
    if formulas_equivalent(conj, BOTTOM, ctx):
        return SingleCase.CaseIII
    if formulas_equivalent(conj, ce.antecedent, ctx):
        return SingleCase.CaseII
    return SingleCase.CaseI
