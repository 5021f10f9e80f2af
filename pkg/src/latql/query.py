"""The latql query language: parsing, pretty-printing and evaluation.

Grammar::

    query     := expr
    expr      := name
               | SELECT '(' expr ',' cond ')'
               | PROJECT '(' expr ',' '[' names ']' ')'
               | (APPOSE | SUBPOSE | GLUE | JOIN) '(' expr ',' expr ')'
               | GENERALIZE '(' expr ',' name ',' semantics ')'
               | APPROX '(' expr ',' '{' names '}' ';' '{' names '}' ')'
               | BUILD '(' expr ')'
    semantics := exists | forall | alpha [ '=' name ]
    cond      := conj { '|' conj }
    conj      := unary { '&' unary }
    unary     := '!' atom | atom | '(' cond ')'
    atom      := name [ '=' name ]
    names     := [ name { ',' name } ]
    name      := bare identifier | "double-quoted string"

Operator keywords are only special directly before ``(``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from .algebra import (
    And, Atom, Not, Or, ProjectionResult, SelectionResult, apposition, glue,
    natural_join, project, select, subposition,
)
from .approximation import ApproxResult, PresumedConcept, approx_interval
from .context import (
    ConceptualScale, FormalContext, Relation, derive_context, from_relation,
)
from .errors import ConfigurationError, LatqlError, QueryError, QuerySyntaxError
from .generalization import AttributeCover, GeneralizationSemantics, generalize
from .lattice import ConceptLattice, build_lattice

Span = tuple[int, int]


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Ref:
    name: str
    span: Span | None = _span()


@dataclass(frozen=True)
class Select:
    source: Any
    condition: Any
    span: Span | None = _span()


@dataclass(frozen=True)
class Project:
    source: Any
    attributes: tuple[str, ...]
    span: Span | None = _span()


@dataclass(frozen=True)
class Combine:
    """APPOSE, SUBPOSE, GLUE (contexts) or JOIN (relations)."""

    op: str
    left: Any
    right: Any
    span: Span | None = _span()


@dataclass(frozen=True)
class Generalize:
    source: Any
    cover: str
    mode: str
    alpha: str | None = None
    span: Span | None = _span()


@dataclass(frozen=True)
class Approx:
    source: Any
    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    span: Span | None = _span()


@dataclass(frozen=True)
class Build:
    source: Any
    span: Span | None = _span()


BINARY_OPS = ("APPOSE", "SUBPOSE", "GLUE", "JOIN")
KEYWORDS = ("SELECT", "PROJECT", "GENERALIZE", "APPROX", "BUILD") + BINARY_OPS
MODES = ("exists", "forall", "alpha")

# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<name>[A-Za-z0-9_][A-Za-z0-9_.\-]*)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<punct>[()\[\]{},;&|!=])
""", re.VERBOSE)

BARE_NAME = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "string", a punctuation character, or "end"
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos] == '"':
                raise QuerySyntaxError("unterminated string", text, pos)
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind == "string":
            body = m.group()[1:-1]
            value = re.sub(r"\\(.)", r"\1", body)
            tokens.append(Token("string", value, m.start(), m.end()))
        elif kind == "name":
            tokens.append(Token("name", m.group(), m.start(), m.end()))
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("end", "", len(text), len(text)))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.k]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return QuerySyntaxError(message, self.text, tok.start)

    def expect(self, kind: str) -> Token:
        tok = self.tok
        if tok.kind != kind:
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise self.error(f"expected {kind!r}, found {found}")
        self.k += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            self.k += 1
            return self.tokens[self.k - 1]
        return None

    def name(self) -> str:
        tok = self.tok
        if tok.kind in ("name", "string"):
            self.k += 1
            return tok.text
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise self.error(f"expected a name, found {found}")

    def query(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r} after the query")
        return node

    def expr(self):
        tok = self.tok
        if tok.kind == "name" and self.tokens[self.k + 1].kind == "(":
            if tok.text not in KEYWORDS:
                raise self.error(f"unknown operator {tok.text!r}")
            self.k += 2
            return getattr(self, "_" + tok.text.lower())(tok.start)
        if tok.kind in ("name", "string"):
            self.k += 1
            return Ref(tok.text, (tok.start, tok.end))
        raise self.error("expected an expression")

    def _close(self, start):
        end = self.expect(")").end
        return (start, end)

    def _select(self, start):
        source = self.expr()
        self.expect(",")
        cond = self.cond()
        return Select(source, cond, self._close(start))

    def _project(self, start):
        source = self.expr()
        self.expect(",")
        self.expect("[")
        names = self.names("]")
        return Project(source, names, self._close(start))

    def _binary(self, op, start):
        left = self.expr()
        self.expect(",")
        right = self.expr()
        return Combine(op, left, right, self._close(start))

    def _appose(self, start):
        return self._binary("APPOSE", start)

    def _subpose(self, start):
        return self._binary("SUBPOSE", start)

    def _glue(self, start):
        return self._binary("GLUE", start)

    def _join(self, start):
        return self._binary("JOIN", start)

    def _generalize(self, start):
        source = self.expr()
        self.expect(",")
        cover = self.name()
        self.expect(",")
        tok = self.tok
        mode = self.name()
        if mode not in MODES:
            raise self.error(f"unknown semantics {mode!r}", tok)
        alpha = None
        if mode == "alpha" and self.accept("="):
            alpha = self.name()
        return Generalize(source, cover, mode, alpha, self._close(start))

    def _approx(self, start):
        source = self.expr()
        self.expect(",")
        self.expect("{")
        objects = self.names("}")
        self.expect(";")
        self.expect("{")
        attributes = self.names("}")
        return Approx(source, objects, attributes, self._close(start))

    def _build(self, start):
        source = self.expr()
        return Build(source, self._close(start))

    def names(self, closer: str) -> tuple[str, ...]:
        out = []
        if not self.accept(closer):
            out.append(self.name())
            while self.accept(","):
                out.append(self.name())
            self.expect(closer)
        return tuple(out)

    def cond(self):
        terms = [self.conj()]
        while self.accept("|"):
            terms.append(self.conj())
        return terms[0] if len(terms) == 1 else Or(tuple(terms))

    def conj(self):
        terms = [self.unary()]
        while self.accept("&"):
            terms.append(self.unary())
        return terms[0] if len(terms) == 1 else And(tuple(terms))

    def unary(self):
        if self.accept("!"):
            if self.tok.kind in ("(", "!"):
                raise self.error("negation applies to atoms only")
            return Not(self.atom())
        if self.accept("("):
            inner = self.cond()
            self.expect(")")
            return inner
        return self.atom()

    def atom(self):
        attribute = self.name()
        value = self.name() if self.accept("=") else None
        return Atom(attribute, value)


def parse_query(text: str):
    """Parse query text into an AST; raises QuerySyntaxError with a location."""
    return _Parser(text).query()


def parse_condition(text: str):
    p = _Parser(text)
    cond = p.cond()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r} after the condition")
    return cond


# ---------------------------------------------------------------------------
# pretty printer


def quote(name: str) -> str:
    if BARE_NAME.match(name):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_condition(cond, nested: bool = False) -> str:
    if isinstance(cond, Atom):
        text = quote(cond.attribute)
        return text if cond.value is None else f"{text}={quote(cond.value)}"
    if isinstance(cond, Not):
        return "!" + format_condition(cond.atom)
    sep = " & " if isinstance(cond, And) else " | "
    text = sep.join(format_condition(t, nested=True) for t in cond.terms)
    return f"({text})" if nested else text


def pretty(node) -> str:
    """Canonical text of an AST; ``parse_query(pretty(ast)) == ast``."""
    if isinstance(node, Ref):
        return quote(node.name)
    if isinstance(node, Select):
        return f"SELECT({pretty(node.source)}, {format_condition(node.condition)})"
    if isinstance(node, Project):
        return f"PROJECT({pretty(node.source)}, [{', '.join(map(quote, node.attributes))}])"
    if isinstance(node, Combine):
        return f"{node.op}({pretty(node.left)}, {pretty(node.right)})"
    if isinstance(node, Generalize):
        mode = node.mode if node.alpha is None else f"{node.mode}={quote(node.alpha)}"
        return f"GENERALIZE({pretty(node.source)}, {quote(node.cover)}, {mode})"
    if isinstance(node, Approx):
        return (f"APPROX({pretty(node.source)}, {{{', '.join(map(quote, node.objects))}}}"
                f" ; {{{', '.join(map(quote, node.attributes))}}})")
    if isinstance(node, Build):
        return f"BUILD({pretty(node.source)})"
    raise TypeError(f"not a query node: {node!r}")


# ---------------------------------------------------------------------------
# catalog


@dataclass
class Catalog:
    """Named contexts, relations, scales and covers for one session."""

    contexts: dict[str, FormalContext] = field(default_factory=dict)
    relations: dict[str, Relation] = field(default_factory=dict)
    scales: dict[str, dict[str, ConceptualScale]] = field(default_factory=dict)
    covers: dict[str, AttributeCover] = field(default_factory=dict)
    alphas: dict[str, dict] = field(default_factory=dict)

    def add_context(self, name: str, ctx: FormalContext):
        if name in self.contexts:
            raise ConfigurationError(f"context {name!r} defined twice")
        self.contexts[name] = ctx

    def add_relation(self, name: str, r: Relation, scales=None):
        if name in self.relations:
            raise ConfigurationError(f"relation {name!r} defined twice")
        self.relations[name] = r
        self.scales[name] = dict(scales or {})

    def add_cover(self, name: str, cover: AttributeCover, alpha=None):
        if name in self.covers:
            raise ConfigurationError(f"cover {name!r} defined twice")
        self.covers[name] = cover
        if alpha is not None:
            self.alphas[name] = alpha

    @classmethod
    def from_config(cls, path) -> Catalog:
        from .config import load_catalog
        return load_catalog(path)


# ---------------------------------------------------------------------------
# evaluation


class _Evaluator:
    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self.memo: dict = {}
        self.lattices: dict[int, tuple[FormalContext, ConceptLattice]] = {}
        self.relation_scales: dict[int, dict] = {}

    def run(self, node):
        if node in self.memo:
            return self.memo[node]
        try:
            value = getattr(self, "_" + type(node).__name__.lower())(node)
        except QueryError:
            raise
        except LatqlError as exc:
            raise QueryError(str(exc), node.span, exc) from exc
        self.memo[node] = value
        return value

    # conversions

    def lattice_of(self, ctx: FormalContext) -> ConceptLattice:
        hit = self.lattices.get(id(ctx))
        if hit is None or hit[0] is not ctx:
            hit = (ctx, build_lattice(ctx))
            self.lattices[id(ctx)] = hit
        return hit[1]

    def as_context(self, value, node) -> FormalContext:
        if isinstance(value, FormalContext):
            return value
        if isinstance(value, ConceptLattice):
            return value.context
        if isinstance(value, ProjectionResult):
            return value.lattice.context
        if isinstance(value, Relation):
            scales = self.relation_scales.get(id(value), {})
            return derive_context(from_relation(value), scales)
        raise QueryError(f"expected a context, got {type(value).__name__}", node.span)

    def as_lattice(self, value, node) -> ConceptLattice:
        if isinstance(value, ConceptLattice):
            return value
        if isinstance(value, ProjectionResult):
            return value.lattice
        return self.lattice_of(self.as_context(value, node))

    def as_relation(self, value, node) -> Relation:
        if isinstance(value, Relation):
            return value
        raise QueryError(f"expected a relation, got {type(value).__name__}", node.span)

    # nodes

    def _ref(self, node: Ref):
        cat = self.catalog
        if node.name in cat.contexts:
            return cat.contexts[node.name]
        if node.name in cat.relations:
            r = cat.relations[node.name]
            self.relation_scales[id(r)] = cat.scales.get(node.name, {})
            return r
        raise QueryError(f"unknown name {node.name!r}", node.span)

    def _select(self, node: Select):
        lat = self.as_lattice(self.run(node.source), node.source)
        return select(lat, node.condition)

    def _project(self, node: Project):
        lat = self.as_lattice(self.run(node.source), node.source)
        return project(lat, node.attributes)

    def _combine(self, node: Combine):
        left, right = self.run(node.left), self.run(node.right)
        if node.op == "JOIN":
            r, s = self.as_relation(left, node.left), self.as_relation(right, node.right)
            out = natural_join(r, s)
            scales = dict(self.relation_scales.get(id(r), {}))
            scales.update(self.relation_scales.get(id(s), {}))
            self.relation_scales[id(out)] = scales
            return out
        k1, k2 = self.as_context(left, node.left), self.as_context(right, node.right)
        return {"APPOSE": apposition, "SUBPOSE": subposition, "GLUE": glue}[node.op](k1, k2)

    def _generalize(self, node: Generalize):
        ctx = self.as_context(self.run(node.source), node.source)
        try:
            cover = self.catalog.covers[node.cover]
        except KeyError:
            raise QueryError(f"unknown cover {node.cover!r}", node.span) from None
        thresholds = None
        if node.mode == "alpha":
            if node.alpha is not None:
                try:
                    thresholds = float(node.alpha)
                except ValueError:
                    raise QueryError(f"bad alpha {node.alpha!r}", node.span) from None
            else:
                thresholds = self.catalog.alphas.get(node.cover)
        return generalize(ctx, cover, GeneralizationSemantics(node.mode, thresholds))

    def _approx(self, node: Approx):
        lat = self.as_lattice(self.run(node.source), node.source)
        return approx_interval(lat, PresumedConcept(node.objects, node.attributes))

    def _build(self, node: Build):
        return self.as_lattice(self.run(node.source), node.source)


def execute(ast, catalog: Catalog):
    """Evaluate a parsed query bottom-up against a catalog.

    Returns a FormalContext, Relation, ConceptLattice, SelectionResult,
    ProjectionResult or ApproxResult depending on the outermost operator.
    """
    if isinstance(ast, str):
        ast = parse_query(ast)
    return _Evaluator(catalog).run(ast)


def result_lattice(value):
    """(lattice, region) to render for a query result, or None."""
    if isinstance(value, ConceptLattice):
        return value, None
    if isinstance(value, SelectionResult):
        return value.region.lattice, value.region
    if isinstance(value, ProjectionResult):
        return value.lattice, None
    if isinstance(value, ApproxResult):
        return value.interval.lattice, value.interval
    if isinstance(value, FormalContext):
        return build_lattice(value), None
    return None
