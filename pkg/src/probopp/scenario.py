"""Line-oriented scenario files: declarations followed by queries.

A scenario declares one event context, some conditional events, families,
regions and sentences, and then lists queries with optional expectations::

    atoms P S
    independent
    event c1 = P | S
    family F = [c1]
    region RA = box [3/4, 1]
    sentence A = (F, RA)
    query acceptable A expect true

The full grammar is documented in ``docs/scenario.md``.  Parsing reports
errors with line and column; problems met while running a query carry the
query's index.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .coherence import (
    AUTO,
    Backend,
    ExactPi,
    Grid,
    LambdaLP,
    UncertifiedPiError,
    UnsupportedCellError,
    check_coherence,
    find_dutch_book,
    search,
)
from .events import (
    ConditionalEvent,
    EventContext,
    Family,
    FormulaSyntaxError,
    InconsistentContextError,
    UndeclaredAtomError,
    parse_formula,
)
from .oppositions import (
    Hexagon,
    NotAStructure,
    Square,
    to_dot,
    verify_hexagon,
    verify_square,
)
from .quantifiers import mean_regions
from .regions import (
    DimensionMismatch,
    LinearConstraint,
    Region,
    box,
    complement,
    constraint_region,
    empty,
    full,
    intersect,
    union,
)
from .sentences import (
    FamilyMismatch,
    Sentence,
    counterexample,
    equivalent_t,
    is_contradictory,
    is_contrary,
    is_subaltern,
    is_subcontrary,
)

__all__ = [
    "ScenarioError",
    "ScenarioSyntaxError",
    "QueryError",
    "Query",
    "Scenario",
    "QueryResult",
    "Report",
    "parse_scenario",
    "load_scenario",
    "run_scenario",
    "parse_backend",
    "backend_label",
    "emit_dot",
    "fmt_rational",
]


class ScenarioError(ValueError):
    """Any problem with a scenario's input (exit code 2)."""


class ScenarioSyntaxError(ScenarioError):
    def __init__(self, message: str, line: int, column: int, source: str = "<scenario>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


class QueryError(ScenarioError):
    def __init__(self, message: str, index: int, line: int):
        super().__init__(f"query #{index} (line {line}): {message}")
        self.index = index
        self.line = line


def fmt_rational(v: Fraction) -> str:
    return str(Fraction(v))


def fmt_point(p: Optional[Sequence[Fraction]]) -> Optional[list[str]]:
    return None if p is None else [fmt_rational(v) for v in p]


# --------------------------------------------------------------------------
# backends


def parse_backend(name: str, step: Optional[str] = None) -> Backend:
    """``exact``, ``lp``, ``grid`` (with optional step ``1/m``) or ``auto``."""
    name = name.strip().lower()
    if name == "exact":
        return ExactPi()
    if name == "lp":
        return LambdaLP()
    if name == "auto":
        return AUTO
    if name == "grid":
        return Grid(Fraction(step)) if step else Grid()
    raise ValueError(f"unknown backend {name!r}; expected exact, lp, grid or auto")


def backend_label(b: Backend) -> str:
    return f"grid {b.step}" if isinstance(b, Grid) else b.name


# --------------------------------------------------------------------------
# tokens


_TOKEN = re.compile(
    r"(?P<num>\d+(?:\.\d+)?(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>/\\|\\/|<=|>=|[\[\]\(\),~*+\-<>=])"
    r"|(?P<bad>\S)"
)


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    col: int  # 1-based


class _Tokens:
    def __init__(self, text: str, offset: int, lineno: int, source: str, prefix: str = ""):
        self.lineno = lineno
        self.prefix = prefix
        self.source = source
        self.end_col = offset + len(text) + 1
        self.toks: list[Tok] = []
        for m in _TOKEN.finditer(text):
            kind = m.lastgroup
            if kind == "bad":
                self.error(f"unexpected character {m.group()!r}", offset + m.start() + 1)
            self.toks.append(Tok(kind, m.group(), offset + m.start() + 1))
        self.i = 0

    def error(self, message: str, col: Optional[int] = None):
        raise ScenarioSyntaxError(self.prefix + message, self.lineno, col or self.col, self.source)

    @property
    def col(self) -> int:
        return self.toks[self.i].col if self.i < len(self.toks) else self.end_col

    def peek(self, k: int = 0) -> Optional[Tok]:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text

    def next(self, what: str = "token") -> Tok:
        t = self.peek()
        if t is None:
            self.error(f"expected {what}, found end of line")
        self.i += 1
        return t

    def expect(self, text: str) -> Tok:
        t = self.peek()
        if t is None or t.text != text:
            self.error(f"expected {text!r}, found {t.text if t else 'end of line'!r}")
        self.i += 1
        return t

    def name(self, what: str = "name") -> Tok:
        t = self.next(what)
        if t.kind != "name":
            self.error(f"expected {what}, found {t.text!r}", t.col)
        return t

    def rational(self) -> Fraction:
        neg = False
        if self.at("-"):
            self.i += 1
            neg = True
        t = self.next("a rational number")
        if t.kind != "num":
            self.error(f"expected a rational number, found {t.text!r}", t.col)
        v = Fraction(t.text)
        return -v if neg else v

    def done(self) -> bool:
        return self.i >= len(self.toks)

    def finish(self):
        if not self.done():
            self.error(f"unexpected {self.peek().text!r}")


# --------------------------------------------------------------------------
# region expressions (materialised once the dimension is known)

QUANTIFIER_NAMES = "AEIOUY"


@dataclass(frozen=True)
class RExpr:
    op: str  # ref, box, half, quant, full, empty, not, and, or
    args: tuple = ()
    col: int = 0


def _parse_rexpr(ts: _Tokens) -> RExpr:
    left = _parse_rand(ts)
    while ts.at("\\/"):
        col = ts.next().col
        left = RExpr("or", (left, _parse_rand(ts)), col)
    return left


def _parse_rand(ts: _Tokens) -> RExpr:
    left = _parse_rnot(ts)
    while ts.at("/\\"):
        col = ts.next().col
        left = RExpr("and", (left, _parse_rnot(ts)), col)
    return left


def _parse_rnot(ts: _Tokens) -> RExpr:
    if ts.at("~"):
        col = ts.next().col
        return RExpr("not", (_parse_rnot(ts),), col)
    return _parse_ratom(ts)


def _parse_interval(ts: _Tokens) -> tuple:
    t = ts.next("an interval")
    if t.text not in ("[", "]"):
        ts.error(f"expected '[' or ']' to open an interval, found {t.text!r}", t.col)
    lo = ts.rational()
    ts.expect(",")
    hi = ts.rational()
    t2 = ts.next("an interval bracket")
    if t2.text not in ("[", "]"):
        ts.error(f"expected ']' or '[' to close an interval, found {t2.text!r}", t2.col)
    return (lo, t.text == "[", hi, t2.text == "]")


def _parse_linear(ts: _Tokens) -> dict[int, Fraction]:
    coeffs: dict[int, Fraction] = {}
    sign = Fraction(1)
    first = True
    while True:
        if ts.at("+") or ts.at("-"):
            sign = Fraction(-1 if ts.next().text == "-" else 1)
        elif not first:
            break
        coef = Fraction(1)
        if ts.at("("):
            ts.next()
            coef = ts.rational()
            ts.expect(")")
            ts.expect("*")
        elif ts.peek() is not None and ts.peek().kind == "num":
            coef = ts.rational()
            ts.expect("*")
        t = ts.name("a coordinate p1, p2, ...")
        m = re.fullmatch(r"p([1-9][0-9]*)", t.text)
        if not m:
            ts.error(f"expected a coordinate p1, p2, ..., found {t.text!r}", t.col)
        k = int(m.group(1)) - 1
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * coef
        sign = Fraction(1)
        first = False
    return coeffs


def _parse_ratom(ts: _Tokens) -> RExpr:
    t = ts.peek()
    if t is None:
        ts.error("expected a region")
    if t.text == "(":
        ts.next()
        e = _parse_rexpr(ts)
        ts.expect(")")
        return e
    if t.kind != "name":
        ts.error(f"expected a region, found {t.text!r}")
    ts.next()
    if t.text == "box":
        ivs = [_parse_interval(ts)]
        while ts.peek() is not None and ts.peek().text == "x":
            ts.next()
            ivs.append(_parse_interval(ts))
        try:
            box(ivs)
        except ValueError as exc:
            ts.error(str(exc), t.col)
        return RExpr("box", tuple(ivs), t.col)
    if t.text == "halfspace":
        coeffs = _parse_linear(ts)
        rel = ts.next("a comparison")
        if rel.text not in ("<=", ">=", "<", ">", "="):
            ts.error(f"expected a comparison, found {rel.text!r}", rel.col)
        bound = ts.rational()
        return RExpr("half", (tuple(sorted(coeffs.items())), rel.text, bound), t.col)
    if t.text in ("full", "empty"):
        return RExpr(t.text, (), t.col)
    if t.text in QUANTIFIER_NAMES and ts.at("("):
        ts.next()
        x = ts.rational()
        ts.expect(")")
        return RExpr("quant", (t.text, x), t.col)
    return RExpr("ref", (t.text,), t.col)


def _region_refs(e: RExpr) -> list[RExpr]:
    if e.op == "ref":
        return [e]
    if e.op in ("not", "and", "or"):
        return [r for a in e.args for r in _region_refs(a)]
    return []


# --------------------------------------------------------------------------
# scenario model


@dataclass(frozen=True)
class SentenceTerm:
    name: str
    x: Optional[Fraction] = None  # set for built-in quantifier terms
    col: int = 0

    def __str__(self) -> str:
        return f"{self.name}({self.x})" if self.x is not None else self.name


@dataclass
class Query:
    index: int
    line: int
    text: str
    kind: str
    args: tuple
    expect: Optional[Optional[bool]] = None
    has_expect: bool = False


@dataclass
class Scenario:
    source: str = "<scenario>"
    atoms: tuple[str, ...] = ()
    constraints: list[str] = field(default_factory=list)
    independent: bool = False
    backend: Optional[Backend] = None
    events: dict[str, ConditionalEvent] = field(default_factory=dict)
    families: dict[str, Family] = field(default_factory=dict)
    regions: dict[str, RExpr] = field(default_factory=dict)
    sentences: dict[str, tuple[str, RExpr]] = field(default_factory=dict)
    quantify: Optional[str] = None
    queries: list[Query] = field(default_factory=list)
    _context: Optional[EventContext] = None

    @property
    def context(self) -> EventContext:
        if self._context is None:
            self._context = EventContext(self.atoms, tuple(self.constraints))
        return self._context


_VERDICT_WORDS = {"true": True, "false": False, "unknown": None}

# query kind -> argument pattern: S sentence, F family, P point, R region
QUERY_KINDS = {
    "acceptable": "S",
    "contrary": "SS",
    "subcontrary": "SS",
    "contradictory": "SS",
    "subaltern": "SS",
    "equivalent": "SS",
    "verify_square": "SSSS",
    "verify_hexagon": "SSSSSS",
    "coherent": "FP",
    "dutch_book": "FP",
    "g_coherent": "FR",
}


class _Parser:
    def __init__(self, text: str, source: str):
        self.text = text
        self.sc = Scenario(source=source)
        self.lineno = 0
        self._query: Optional[int] = None

    def error(self, message: str, col: int = 1):
        if self._query is not None:
            message = f"query #{self._query}: {message}"
        raise ScenarioSyntaxError(message, self.lineno, col, self.sc.source)

    def parse(self) -> Scenario:
        for lineno, raw in enumerate(self.text.splitlines(), 1):
            self.lineno = lineno
            line = raw.split("#", 1)[0].rstrip()
            body = line.lstrip()
            if not body:
                continue
            indent = len(line) - len(body)
            m = re.match(r"[A-Za-z_]+", body)
            if not m:
                self.error(f"expected a keyword, found {body[0]!r}", indent + 1)
            kw = m.group()
            rest_off = indent + m.end()
            rest = line[rest_off:]
            handler = getattr(self, f"_kw_{kw}", None)
            if handler is None:
                self.error(f"unknown keyword {kw!r}", indent + 1)
            handler(rest, rest_off, line)
        if not self.sc.atoms:
            raise ScenarioSyntaxError("scenario declares no atoms", max(self.lineno, 1), 1, self.sc.source)
        return self.sc

    def _tokens(self, rest: str, off: int) -> _Tokens:
        prefix = f"query #{self._query}: " if self._query is not None else ""
        return _Tokens(rest, off, self.lineno, self.sc.source, prefix)

    def _need_atoms(self):
        if not self.sc.atoms:
            self.error("'atoms' must be declared first")

    def _fresh(self, t: Tok, table: dict, what: str):
        if t.text in table:
            self.error(f"{what} {t.text!r} is already declared", t.col)

    # -- declarations

    def _kw_atoms(self, rest, off, line):
        if self.sc.atoms:
            self.error("only one 'atoms' line is allowed per scenario")
        ts = self._tokens(rest, off)
        names = []
        while not ts.done():
            t = ts.name("an atom name")
            if t.text in names:
                self.error(f"atom {t.text!r} declared twice", t.col)
            names.append(t.text)
        if not names:
            self.error("'atoms' needs at least one name", off + 1)
        self.sc.atoms = tuple(names)

    def _formula(self, text: str, col: int):
        try:
            return parse_formula(text, self.sc.atoms)
        except FormulaSyntaxError as exc:
            self.error(str(exc).split(" at position")[0], col + exc.pos)
        except UndeclaredAtomError as exc:
            self.error(str(exc), col)

    def _kw_constraint(self, rest, off, line):
        self._need_atoms()
        if self.sc._context is not None:
            self.error("constraints must precede the first event")
        text = rest.strip()
        col = off + len(rest) - len(rest.lstrip()) + 1
        if not text:
            self.error("'constraint' needs a formula", col)
        self._formula(text, col)
        self.sc.constraints.append(text)

    def _kw_independent(self, rest, off, line):
        if rest.strip():
            self.error("'independent' takes no arguments", off + 2)
        self.sc.independent = True

    def _kw_backend(self, rest, off, line):
        parts = rest.split()
        if not parts or len(parts) > 2:
            self.error("expected 'backend exact|lp|grid [1/m]|auto'", off + 2)
        try:
            self.sc.backend = parse_backend(parts[0], parts[1] if len(parts) > 1 else None)
        except (ValueError, ZeroDivisionError) as exc:
            self.error(str(exc), off + 2)

    def _kw_quantify(self, rest, off, line):
        ts = self._tokens(rest, off)
        t = ts.name("a family name")
        ts.finish()
        if t.text not in self.sc.families:
            self.error(f"undeclared family {t.text!r}", t.col)
        self.sc.quantify = t.text

    def _binding(self, rest, off):
        ts = self._tokens(rest, off)
        name = ts.name()
        eq = ts.expect("=")
        return name, eq.col, ts

    def _kw_event(self, rest, off, line):
        self._need_atoms()
        m = re.match(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=", rest)
        if not m:
            self.error("expected 'event NAME = E | H'", off + 2)
        name = Tok("name", m.group(1), off + m.start(1) + 1)
        self._fresh(name, self.sc.events, "event")
        body_start = off + m.end()  # 0-based index just after '='
        body = line[body_start:]
        depth, bars = 0, []
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "|" and depth == 0:
                bars.append(i)
        if len(bars) != 1:
            self.error(
                "a conditional event needs exactly one top-level '|'; parenthesise disjunctions",
                body_start + (bars[1] if len(bars) > 1 else len(body)) + 1,
            )
        cons_txt, ante_txt = body[: bars[0]], body[bars[0] + 1 :]
        c_col = body_start + len(cons_txt) - len(cons_txt.lstrip()) + 1
        a_col = body_start + bars[0] + 1 + len(ante_txt) - len(ante_txt.lstrip()) + 1
        if not cons_txt.strip():
            self.error("missing consequent", c_col)
        if not ante_txt.strip():
            self.error("missing antecedent", a_col)
        cons_f = self._formula(cons_txt.strip(), c_col)
        ante_f = self._formula(ante_txt.strip(), a_col)
        try:
            self.sc.events[name.text] = self.sc.context.conditional(cons_f, ante_f)
        except InconsistentContextError as exc:
            self.error(f"constraints are inconsistent: {exc}", 1)
        except ValueError as exc:
            self.error(str(exc), a_col)

    def _kw_family(self, rest, off, line):
        name, _, ts = self._binding(rest, off)
        self._fresh(name, self.sc.families, "family")
        ts.expect("[")
        members = []
        while True:
            t = ts.name("an event name")
            if t.text not in self.sc.events:
                self.error(f"undeclared event {t.text!r}", t.col)
            members.append(self.sc.events[t.text])
            if ts.at("]"):
                ts.next()
                break
            ts.expect(",")
        indep = self.sc.independent
        if not ts.done():
            t = ts.name("'independent' or 'dependent'")
            if t.text not in ("independent", "dependent"):
                self.error(f"unexpected {t.text!r}", t.col)
            indep = t.text == "independent"
        ts.finish()
        self.sc.families[name.text] = Family(tuple(members), indep)

    def _check_refs(self, e: RExpr):
        for r in _region_refs(e):
            if r.args[0] not in self.sc.regions:
                self.error(f"undeclared region {r.args[0]!r}", r.col)

    def _kw_region(self, rest, off, line):
        name, _, ts = self._binding(rest, off)
        self._fresh(name, self.sc.regions, "region")
        e = _parse_rexpr(ts)
        ts.finish()
        self._check_refs(e)
        self.sc.regions[name.text] = e

    def _kw_sentence(self, rest, off, line):
        name, _, ts = self._binding(rest, off)
        self._fresh(name, self.sc.sentences, "sentence")
        ts.expect("(")
        fam = ts.name("a family name")
        if fam.text not in self.sc.families:
            self.error(f"undeclared family {fam.text!r}", fam.col)
        ts.expect(",")
        e = _parse_rexpr(ts)
        ts.expect(")")
        ts.finish()
        self._check_refs(e)
        self.sc.sentences[name.text] = (fam.text, e)

    # -- queries

    def _sentence_term(self, ts: _Tokens) -> SentenceTerm:
        t = ts.name("a sentence")
        if t.text in QUANTIFIER_NAMES and ts.at("("):
            ts.next()
            x = ts.rational()
            ts.expect(")")
            if not Fraction(1, 2) < x <= 1:
                self.error(f"threshold must lie in ]1/2, 1], got {x}", t.col)
            return SentenceTerm(t.text, x, t.col)
        if t.text not in self.sc.sentences:
            self.error(f"undeclared sentence {t.text!r}", t.col)
        return SentenceTerm(t.text, None, t.col)

    def _kw_query(self, rest, off, line):
        self._need_atoms()
        self._query = len(self.sc.queries) + 1
        try:
            self._parse_query(rest, off, line)
        finally:
            self._query = None

    def _parse_query(self, rest, off, line):
        ts = self._tokens(rest, off)
        kind = ts.name("a query kind")
        if kind.text not in QUERY_KINDS:
            self.error(f"unknown query {kind.text!r}; expected one of {', '.join(QUERY_KINDS)}", kind.col)
        args: list = []
        for a in QUERY_KINDS[kind.text]:
            if a == "S":
                args.append(self._sentence_term(ts))
            elif a == "F":
                t = ts.name("a family name")
                if t.text not in self.sc.families:
                    self.error(f"undeclared family {t.text!r}", t.col)
                args.append(t.text)
            elif a == "R":
                e = _parse_rexpr(ts)
                self._check_refs(e)
                args.append(e)
            elif a == "P":
                ts.expect("(")
                pts = [ts.rational()]
                while ts.at(","):
                    ts.next()
                    pts.append(ts.rational())
                ts.expect(")")
                args.append(tuple(pts))
        q = Query(len(self.sc.queries) + 1, self.lineno, line[kind.col - 1 :].strip(), kind.text, tuple(args))
        if not ts.done():
            t = ts.name("'expect'")
            if t.text != "expect":
                self.error(f"unexpected {t.text!r}", t.col)
            v = ts.name("true, false or unknown")
            if v.text not in _VERDICT_WORDS:
                self.error(f"expected true, false or unknown, found {v.text!r}", v.col)
            q.expect, q.has_expect = _VERDICT_WORDS[v.text], True
            q.text = line[kind.col - 1 : t.col - 1].strip()
        ts.finish()
        self.sc.queries.append(q)


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    return _Parser(text, source).parse()


def load_scenario(path) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(), str(path))


# --------------------------------------------------------------------------
# running


@dataclass
class QueryResult:
    index: int
    line: int
    query: str
    verdict: Optional[bool]
    expect: Optional[bool] = None
    has_expect: bool = False
    witness: Optional[tuple[Fraction, ...]] = None
    failed: Optional[str] = None
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    dot: Optional[str] = None
    seconds: Optional[float] = None
    structure: object = field(default=None, repr=False, compare=False)

    @property
    def met(self) -> Optional[bool]:
        return (self.verdict == self.expect) if self.has_expect else None


@dataclass
class Report:
    source: str
    backend: str
    results: list[QueryResult]

    @property
    def ok(self) -> bool:
        return all(r.met is not False for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1


def _verdict_word(v: Optional[bool]) -> str:
    return {True: "true", False: "false", None: "unknown"}[v]


class _Runner:
    def __init__(self, sc: Scenario, backend: Backend):
        self.sc = sc
        self.backend = backend
        self._default_family: Optional[Family] = None

    def family(self, name: str) -> Family:
        return self.sc.families[name]

    def quant_family(self) -> Family:
        if self.sc.quantify is not None:
            return self.sc.families[self.sc.quantify]
        if self._default_family is None:
            if not {"P", "S"} <= set(self.sc.atoms):
                raise ScenarioError("built-in quantifier terms need atoms P and S or a 'quantify' line")
            ce = self.sc.context.conditional("P", "S")
            self._default_family = Family((ce,), self.sc.independent)
        return self._default_family

    def region(self, e: RExpr, n: int) -> Region:
        op = e.op
        if op == "ref":
            return self.region(self.sc.regions[e.args[0]], n)
        if op == "box":
            if len(e.args) != n:
                raise DimensionMismatch(f"box of dimension {len(e.args)} used with a family of {n} events")
            return box(list(e.args))
        if op == "half":
            coeffs, rel, bound = e.args
            if coeffs and max(k for k, _ in coeffs) >= n:
                raise DimensionMismatch(f"halfspace mentions p{max(k for k, _ in coeffs) + 1} but the family has {n} events")
            return constraint_region(n, [LinearConstraint.make(dict(coeffs), rel, bound)])
        if op == "quant":
            letter, x = e.args
            return mean_regions(n, x)[letter]
        if op == "full":
            return full(n)
        if op == "empty":
            return empty(n)
        if op == "not":
            return complement(self.region(e.args[0], n))
        a, b = (self.region(x, n) for x in e.args)
        return intersect(a, b) if op == "and" else union(a, b)

    def sentence(self, t: SentenceTerm) -> Sentence:
        if t.x is not None:
            fam = self.quant_family()
            return Sentence(fam, mean_regions(fam.n, t.x)[t.name], str(t))
        fam_name, e = self.sc.sentences[t.name]
        fam = self.family(fam_name)
        return Sentence(fam, self.region(e, fam.n), t.name)

    def run(self, q: Query) -> QueryResult:
        res = QueryResult(q.index, q.line, q.text, None, q.expect, q.has_expect)
        getattr(self, f"_q_{q.kind}")(q, res)
        return res

    # -- query kinds

    def _q_acceptable(self, q, res):
        s = self.sentence(q.args[0])
        found = search(s.family, s.region, self.backend)
        res.verdict, res.witness = found.verdict, found.witness

    def _q_g_coherent(self, q, res):
        fam = self.family(q.args[0])
        found = search(fam, self.region(q.args[1], fam.n), self.backend)
        res.verdict, res.witness = found.verdict, found.witness

    def _relation(self, kind, fn, q, res):
        s1, s2 = (self.sentence(t) for t in q.args)
        res.verdict = fn(s1, s2, self.backend)
        if res.verdict is False:
            res.witness = counterexample(kind, s1, s2, self.backend)

    def _q_contrary(self, q, res):
        self._relation("contrary", is_contrary, q, res)

    def _q_subcontrary(self, q, res):
        self._relation("subcontrary", is_subcontrary, q, res)

    def _q_contradictory(self, q, res):
        self._relation("contradictory", is_contradictory, q, res)

    def _q_subaltern(self, q, res):
        self._relation("subaltern", is_subaltern, q, res)

    def _q_equivalent(self, q, res):
        s1, s2 = (self.sentence(t) for t in q.args)
        res.verdict = equivalent_t(s1, s2, self.backend)
        if res.verdict is False:
            res.witness = counterexample("subaltern", s1, s2, self.backend) or counterexample(
                "subaltern", s2, s1, self.backend
            )

    def _structure(self, cls, verify, q, res):
        items = [self.sentence(t) for t in q.args]
        structure = cls(*items)
        v = verify(structure, self.backend)
        res.verdict, res.failed, res.witness = v.ok, v.failed, v.witness
        res.notes.extend(v.notes)
        res.details["conditions"] = {k: _verdict_word(c) for k, c in v.conditions.items()}
        if v.ok:
            res.structure = structure

    def _q_verify_square(self, q, res):
        self._structure(Square, verify_square, q, res)

    def _q_verify_hexagon(self, q, res):
        self._structure(Hexagon, verify_hexagon, q, res)

    def _q_coherent(self, q, res):
        fam = self.family(q.args[0])
        res.verdict = check_coherence(fam, q.args[1])

    def _q_dutch_book(self, q, res):
        fam = self.family(q.args[0])
        book = find_dutch_book(fam, q.args[1])
        res.verdict = book is not None
        if book is not None:
            res.details["stakes"] = fmt_point(book.stakes)
            res.details["gains"] = sorted({fmt_rational(g) for g in book.gains.values()}, key=Fraction)
            res.details["support"] = [i + 1 for i in book.support]


def run_scenario(sc: Scenario, backend: Optional[Backend] = None, timing: bool = False) -> Report:
    """Run every query in order; the backend defaults to the scenario's, then auto."""
    backend = backend or sc.backend or AUTO
    runner = _Runner(sc, backend)
    results = []
    for q in sc.queries:
        start = time.perf_counter()
        try:
            res = runner.run(q)
        except (
            FamilyMismatch,
            DimensionMismatch,
            UnsupportedCellError,
            UncertifiedPiError,
            NotAStructure,
            ScenarioError,
            ValueError,
        ) as exc:
            raise QueryError(f"{type(exc).__name__}: {exc}", q.index, q.line) from exc
        if timing:
            res.seconds = time.perf_counter() - start
        results.append(res)
    return Report(sc.source, backend_label(backend), results)


def emit_dot(result: QueryResult, path) -> Path:
    """Write the verified square or hexagon of ``result`` as a DOT file."""
    if result.structure is None or result.verdict is not True:
        raise NotAStructure(f"query #{result.index} did not produce a verified square or hexagon")
    path = Path(path)
    path.write_text(to_dot(result.structure, name=f"q{result.index}"))
    result.dot = str(path)
    return path
