"""Parser for the small analysis spec language.

Grammar (informally)::

    algebra <name> { basis <id>:<weight> ... ; bracket [<id>,<id>] = <lincomb> ; ... }
    ideal <name> in <algebra> { span <lincomb> ; ... }
    operator <name> on <algebra> = [coeff] (i <id>)^<even> + ...
    analyze <directive> <name> [key=value ...]

Rational literals are ``p/q``; ``#`` starts a line comment.  Statements
inside braces are separated by ``;``; ``operator`` and ``analyze`` end at
a newline (or ``;``).  Every referenced name must resolve, and algebras
are validated (antisymmetry, Jacobi, grading) before any analysis runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import GradedLieAlgebra, Subspace
from .errors import SpecSemanticError, SpecSyntaxError
from .spectral import SymbolOperator

Q = Fraction

_TOKEN_RE = re.compile(
    r"""
    (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<ws>[ \t\r]+)
  | (?P<rational>\d+/\d+)
  | (?P<integer>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<punct>[{}\[\];:,=^()+\-*])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "newline":
            tokens.append(Token("newline", value, line, col))
            line += 1
            col = 1
        else:
            if kind not in ("ws", "comment"):
                tokens.append(Token(kind, value, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


@dataclass
class AlgebraDecl:
    name: str
    basis: list  # (id, weight)
    brackets: list  # (lhs, rhs, lincomb, token)
    algebra: GradedLieAlgebra = None
    index: dict = field(default_factory=dict)


@dataclass
class IdealDecl:
    name: str
    algebra_name: str
    spans: list
    subspace: Subspace = None


@dataclass
class OperatorDecl:
    name: str
    algebra_name: str
    terms: list  # (coeff Fraction, {id: exponent})
    symbol: SymbolOperator = None


@dataclass
class AnalyzeDirective:
    command: str
    target: str
    options: dict
    line: int


@dataclass
class SpecDocument:
    algebras: dict
    ideals: dict
    operators: dict
    directives: list
    source: str

    def directives_for(self, command):
        return [d for d in self.directives if d.command == command]


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    # -- token plumbing -------------------------------------------------
    def peek(self, skip_newlines=True):
        pos = self.pos
        while skip_newlines and self.tokens[pos].kind == "newline":
            pos += 1
        return self.tokens[pos]

    def advance(self, skip_newlines=True):
        while skip_newlines and self.tokens[self.pos].kind == "newline":
            self.pos += 1
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_kind(self, kind, description=None, skip_newlines=True):
        tok = self.advance(skip_newlines)
        if tok.kind != kind:
            raise SpecSyntaxError(
                f"expected {description or kind}, found {tok.text!r}",
                tok.line, tok.column,
            )
        return tok

    def expect_literal(self, text, skip_newlines=True):
        tok = self.advance(skip_newlines)
        if tok.text != text:
            raise SpecSyntaxError(
                f"expected {text!r}, found {tok.text!r}", tok.line, tok.column
            )
        return tok

    def at_line_end(self):
        return self.tokens[self.pos].kind in ("newline", "eof")

    # -- grammar ----------------------------------------------------------
    def parse_document(self):
        algebras, ideals, operators, directives = {}, {}, {}, []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                break
            if tok.kind != "name":
                raise SpecSyntaxError(f"expected a declaration, found {tok.text!r}",
                                      tok.line, tok.column)
            if tok.text == "algebra":
                decl = self.parse_algebra()
                if decl.name in algebras:
                    raise SpecSemanticError(f"algebra {decl.name!r} declared twice",
                                            tok.line, tok.column)
                algebras[decl.name] = decl
            elif tok.text == "ideal":
                decl = self.parse_ideal()
                if decl.name in ideals:
                    raise SpecSemanticError(f"ideal {decl.name!r} declared twice",
                                            tok.line, tok.column)
                ideals[decl.name] = decl
            elif tok.text == "operator":
                decl = self.parse_operator()
                if decl.name in operators:
                    raise SpecSemanticError(f"operator {decl.name!r} declared twice",
                                            tok.line, tok.column)
                operators[decl.name] = decl
            elif tok.text == "analyze":
                directives.append(self.parse_analyze())
            else:
                raise SpecSyntaxError(
                    f"unknown declaration {tok.text!r}", tok.line, tok.column
                )
        return algebras, ideals, operators, directives

    def parse_rational(self):
        tok = self.advance()
        sign = 1
        if tok.kind == "punct" and tok.text == "-":
            sign = -1
            tok = self.advance()
        if tok.kind == "rational":
            num, den = tok.text.split("/")
            return sign * Q(int(num), int(den))
        if tok.kind == "integer":
            return sign * Q(int(tok.text))
        raise SpecSyntaxError(f"expected a rational literal, found {tok.text!r}",
                              tok.line, tok.column)

    def parse_lincomb(self):
        """``[coeff] id (+|- [coeff] id)*`` or the literal 0."""
        tok = self.peek()
        if tok.kind == "integer" and tok.text == "0":
            nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            if nxt is None or nxt.kind != "name":
                self.advance()
                return []
        terms = []
        sign = Q(1)
        first = True
        while True:
            tok = self.peek()
            if tok.kind == "punct" and tok.text in "+-":
                self.advance()
                sign = Q(1) if tok.text == "+" else Q(-1)
            elif not first:
                break
            tok = self.peek()
            coeff = Q(1)
            if tok.kind in ("integer", "rational"):
                coeff = self.parse_rational()
                maybe_star = self.peek()
                if maybe_star.kind == "punct" and maybe_star.text == "*":
                    self.advance()
            name_tok = self.expect_kind("name", "a basis identifier")
            terms.append((sign * coeff, name_tok.text, name_tok))
            sign = Q(1)
            first = False
            nxt = self.peek()
            if not (nxt.kind == "punct" and nxt.text in "+-"):
                break
        return terms

    def parse_algebra(self):
        self.expect_literal("algebra")
        name = self.expect_kind("name", "an algebra name").text
        self.expect_literal("{")
        basis = []
        brackets = []
        while True:
            tok = self.peek()
            if tok.kind == "punct" and tok.text == "}":
                self.advance()
                break
            if tok.kind == "punct" and tok.text == ";":
                self.advance()
                continue
            key = self.expect_kind("name")
            if key.text == "basis":
                while self.peek().kind == "name":
                    ident = self.advance().text
                    self.expect_literal(":")
                    wtok = self.expect_kind("integer", "a positive integer weight")
                    weight = int(wtok.text)
                    if weight < 1:
                        raise SpecSemanticError("weights must be positive",
                                                wtok.line, wtok.column)
                    basis.append((ident, weight, wtok))
            elif key.text == "bracket":
                self.expect_literal("[")
                lhs = self.expect_kind("name").text
                self.expect_literal(",")
                rhs_tok = self.expect_kind("name")
                self.expect_literal("]")
                self.expect_literal("=")
                combo = self.parse_lincomb()
                brackets.append((lhs, rhs_tok.text, combo, rhs_tok))
            else:
                raise SpecSyntaxError(
                    f"expected 'basis' or 'bracket', found {key.text!r}",
                    key.line, key.column,
                )
        return AlgebraDecl(name, basis, brackets)

    def parse_ideal(self):
        self.expect_literal("ideal")
        name = self.expect_kind("name", "an ideal name").text
        self.expect_literal("in")
        algebra_name = self.expect_kind("name", "an algebra name").text
        self.expect_literal("{")
        spans = []
        while True:
            tok = self.peek()
            if tok.kind == "punct" and tok.text == "}":
                self.advance()
                break
            if tok.kind == "punct" and tok.text == ";":
                self.advance()
                continue
            self.expect_literal("span")
            spans.append(self.parse_lincomb())
        return IdealDecl(name, algebra_name, spans)

    def parse_operator(self):
        self.expect_literal("operator")
        name = self.expect_kind("name", "an operator name").text
        self.expect_literal("on")
        algebra_name = self.expect_kind("name", "an algebra name").text
        self.expect_literal("=")
        terms = []
        while True:
            coeff = Q(1)
            tok = self.peek()
            if tok.kind in ("integer", "rational"):
                coeff = self.parse_rational()
            factors = {}
            while True:
                tok = self.peek()
                if not (tok.kind == "punct" and tok.text == "("):
                    break
                self.advance()
                self.expect_literal("i")
                ident_tok = self.expect_kind("name", "a basis identifier")
                self.expect_literal(")")
                self.expect_literal("^")
                etok = self.expect_kind("integer", "an even exponent")
                expo = int(etok.text)
                if expo % 2 or expo == 0:
                    raise SpecSemanticError(
                        f"exponent {expo} must be even and positive",
                        etok.line, etok.column, construct=f"operator {name}",
                    )
                factors[ident_tok.text] = factors.get(ident_tok.text, 0) + expo
            if not factors:
                tok = self.peek()
                raise SpecSyntaxError("expected a '(i <id>)^<even>' factor",
                                      tok.line, tok.column)
            terms.append((coeff, factors))
            nxt = self.peek(skip_newlines=False)
            if nxt.kind == "punct" and nxt.text == "+":
                self.advance()
                continue
            break
        if not self.at_line_end():
            nxt = self.tokens[self.pos]
            if nxt.kind == "punct" and nxt.text == ";":
                self.pos += 1
            elif nxt.kind != "eof":
                raise SpecSyntaxError(
                    f"unexpected trailing {nxt.text!r} in operator declaration",
                    nxt.line, nxt.column,
                )
        return OperatorDecl(name, algebra_name, terms)

    def parse_analyze(self):
        kw = self.expect_literal("analyze")
        command = self.expect_kind("name", "an analysis command").text
        target_tok = self.peek(skip_newlines=False)
        target = None
        if target_tok.kind == "name":
            target = self.advance(skip_newlines=False).text
        options = {}
        while not self.at_line_end():
            tok = self.advance(skip_newlines=False)
            if tok.kind == "punct" and tok.text == ";":
                break
            if tok.kind != "name":
                raise SpecSyntaxError(
                    f"expected option key, found {tok.text!r}", tok.line, tok.column
                )
            self.expect_literal("=", skip_newlines=False)
            val_tok = self.advance(skip_newlines=False)
            raw = val_tok.text
            prev = val_tok
            while True:
                nxt = self.tokens[self.pos]
                adjacent = (
                    nxt.line == prev.line
                    and nxt.column == prev.column + len(prev.text)
                )
                gluable = (
                    nxt.kind in ("integer", "rational", "name")
                    or (nxt.kind == "punct" and nxt.text in ",/-.")
                )
                if not (adjacent and gluable):
                    break
                raw += nxt.text
                prev = nxt
                self.pos += 1
            options[tok.text] = raw
        return AnalyzeDirective(command, target, options, kw.line)


def _build_algebra(decl: AlgebraDecl):
    index = {}
    weights = []
    for ident, weight, tok in decl.basis:
        if ident in index:
            raise SpecSemanticError(f"basis vector {ident!r} declared twice",
                                    tok.line, tok.column, construct=f"algebra {decl.name}")
        index[ident] = len(weights)
        weights.append(weight)
    if not weights:
        raise SpecSemanticError(f"algebra {decl.name!r} has an empty basis")
    brackets = {}
    for lhs, rhs, combo, tok in decl.brackets:
        for side in (lhs, rhs):
            if side not in index:
                raise SpecSemanticError(
                    f"unknown basis identifier {side!r}", tok.line, tok.column,
                    construct=f"algebra {decl.name}",
                )
        if lhs == rhs:
            if combo:
                raise SpecSemanticError(
                    f"bracket [{lhs},{lhs}] must vanish (antisymmetry)",
                    tok.line, tok.column, construct=f"algebra {decl.name}",
                )
            continue
        targets = {}
        for coeff, ident, itok in combo:
            if ident not in index:
                raise SpecSemanticError(
                    f"unknown basis identifier {ident!r}", itok.line, itok.column,
                    construct=f"algebra {decl.name}",
                )
            targets[index[ident]] = targets.get(index[ident], Q(0)) + coeff
        i, j = index[lhs], index[rhs]
        key = (i, j) if i < j else (j, i)
        if key in brackets:
            raise SpecSemanticError(
                f"bracket [{lhs},{rhs}] specified twice", tok.line, tok.column,
                construct=f"algebra {decl.name}",
            )
        if i < j:
            brackets[key] = targets
        else:
            brackets[key] = {k: -c for k, c in targets.items()}
    try:
        decl.algebra = GradedLieAlgebra(len(weights), brackets, weights)
    except ValueError as exc:
        raise SpecSemanticError(str(exc), construct=f"algebra {decl.name}") from exc
    decl.index = index
    return decl


def _build_ideal(decl: IdealDecl, algebras):
    if decl.algebra_name not in algebras:
        raise SpecSemanticError(
            f"ideal {decl.name!r} references unknown algebra {decl.algebra_name!r}"
        )
    parent = algebras[decl.algebra_name]
    rows = []
    for combo in decl.spans:
        row = [Q(0)] * parent.algebra.dim
        for coeff, ident, tok in combo:
            if ident not in parent.index:
                raise SpecSemanticError(
                    f"unknown basis identifier {ident!r}", tok.line, tok.column,
                    construct=f"ideal {decl.name}",
                )
            row[parent.index[ident]] += coeff
        rows.append(tuple(row))
    subspace = Subspace(parent.algebra, rows)
    if not parent.algebra.is_ideal(subspace):
        raise SpecSemanticError(
            f"span of {decl.name!r} is not an ideal of {decl.algebra_name!r}",
            construct=f"ideal {decl.name}",
        )
    decl.subspace = subspace
    return decl


def _build_operator(decl: OperatorDecl, algebras):
    if decl.algebra_name not in algebras:
        raise SpecSemanticError(
            f"operator {decl.name!r} references unknown algebra {decl.algebra_name!r}"
        )
    parent = algebras[decl.algebra_name]
    if not parent.algebra.is_abelian():
        raise SpecSemanticError(
            f"operator {decl.name!r} needs a commutative algebra "
            f"(the numeric battery runs on flat models)",
            construct=f"operator {decl.name}",
        )
    dim = parent.algebra.dim
    terms = []
    for coeff, factors in decl.terms:
        expo = [0] * dim
        for ident, e in factors.items():
            if ident not in parent.index:
                raise SpecSemanticError(
                    f"unknown basis identifier {ident!r}",
                    construct=f"operator {decl.name}",
                )
            expo[parent.index[ident]] += e
        terms.append((float(coeff), tuple(expo)))
    decl.symbol = SymbolOperator(dim, parent.algebra.degrees, terms)
    return decl


def parse(text: str) -> SpecDocument:
    """Parse and semantically validate a spec document."""
    parser = _Parser(text)
    algebras, ideals, operators, directives = parser.parse_document()
    for decl in algebras.values():
        _build_algebra(decl)
    for decl in ideals.values():
        _build_ideal(decl, algebras)
    for decl in operators.values():
        _build_operator(decl, algebras)
    for directive in directives:
        pool = {"contract": ideals, "vf": ideals, "growth": ideals, "spectral": operators}
        if directive.command not in pool:
            raise SpecSemanticError(
                f"unknown analysis command {directive.command!r}", directive.line
            )
        if directive.target is not None and directive.target not in pool[directive.command]:
            raise SpecSemanticError(
                f"analysis target {directive.target!r} does not resolve",
                directive.line,
            )
    return SpecDocument(algebras, ideals, operators, directives, text)
