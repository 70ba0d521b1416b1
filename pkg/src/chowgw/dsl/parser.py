"""Hand-written LL(1) lexer and recursive-descent parser."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import DslSyntaxError, make_diagnostic
from .nodes import (Assert, BinOp, BundleDecl, ClassDecl, Name, Neg, Num, Param, Pow,
                    ProductDecl, Query, QueryStmt, RingDecl, Script)

KEYWORDS = frozenset({
    "ring", "gen", "rel", "dim", "space", "product", "projbundle", "class", "in",
    "assert", "symbolic", "n",
    "integrate", "table", "betti", "det", "pairing", "invariant", "acoeff",
})
QUERY_KINDS = ("integrate", "table", "betti", "det", "pairing", "invariant", "acoeff")
SCALAR_QUERIES = frozenset({"integrate", "det", "invariant", "acoeff"})

# accepted keyword-argument shapes per query, in canonical order
QUERY_SIGNATURES = {
    "table": [("symbolic",), ("n",)],
    "det": [("symbolic",), ("n",)],
    "betti": [("n",)],
    "pairing": [()],
    "invariant": [("i", "d")],
    "acoeff": [("i",)],
}

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>[0-9]+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>==|[{}();:=,+\-*/^])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str   # int, name, kw, op, eof
    value: str
    line: int
    col: int

    @property
    def pos(self):
        return (self.line, self.col)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        col = i - line_start + 1
        if not m:
            raise DslSyntaxError(make_diagnostic(
                text, (line, col), f"unexpected character {text[i]!r}"))
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "name":
            tokens.append(Token("kw" if value in KEYWORDS else "name", value, line, col))
        elif kind in ("int", "op"):
            tokens.append(Token(kind, value, line, col))
        i = m.end()
    tokens.append(Token("eof", "", line, i - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers --------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise DslSyntaxError(make_diagnostic(self.text, tok.pos, message))

    def at(self, value: str) -> bool:
        return self.tok.kind in ("op", "kw") and self.tok.value == value

    def expect(self, value: str) -> Token:
        if not self.at(value):
            found = self.tok.value or "end of input"
            self.error(f"expected {value!r}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    def expect_name(self, what: str = "name") -> Token:
        tok = self.tok
        if tok.kind == "kw":
            self.error(f"reserved word {tok.value!r} cannot be used as a {what}")
        if tok.kind != "name":
            self.error(f"expected {what}, found {tok.value or 'end of input'!r}")
        self.i += 1
        return tok

    def expect_int(self) -> int:
        tok = self.tok
        if tok.kind != "int":
            self.error(f"expected an integer, found {tok.value or 'end of input'!r}")
        self.i += 1
        return int(tok.value)

    # -- statements -----------------------------------------------------
    def script(self) -> Script:
        stmts = []
        while self.tok.kind != "eof":
            stmts.append(self.statement())
        return Script(tuple(stmts))

    def statement(self):
        tok = self.tok
        if self.at("ring"):
            return self.ring_decl()
        if self.at("space"):
            return self.space_decl()
        if self.at("class"):
            return self.class_decl()
        if self.at("assert"):
            return self.assert_stmt()
        if tok.kind == "kw" and tok.value in QUERY_KINDS:
            q = self.query()
            self.expect(";")
            return QueryStmt(q, pos=tok.pos)
        if tok.kind == "kw":
            self.error(f"reserved word {tok.value!r} cannot start a statement")
        self.error(f"expected a statement, found {tok.value!r}")

    def ring_decl(self) -> RingDecl:
        start = self.expect("ring")
        name = self.expect_name("ring name").value
        self.expect("{")
        gens, rels = [], []
        while self.at("gen"):
            self.i += 1
            g = self.expect_name("generator name").value
            self.expect(":")
            gens.append((g, self.expect_int()))
            self.expect(";")
        while self.at("rel"):
            self.i += 1
            lhs = self.expr()
            self.expect("=")
            rhs = self.expr()
            self.expect(";")
            rels.append((lhs, rhs))
        self.expect("dim")
        dim = self.expect_int()
        self.expect(";")
        self.expect("}")
        return RingDecl(name, tuple(gens), tuple(rels), dim, pos=start.pos)

    def space_decl(self):
        start = self.expect("space")
        name = self.expect_name("space name").value
        self.expect("=")
        if self.at("product"):
            self.i += 1
            self.expect("(")
            factors = [self.expect_name("ring name").value]
            while self.at(","):
                self.i += 1
                factors.append(self.expect_name("ring name").value)
            self.expect(")")
            self.expect(";")
            if len(factors) < 2:
                self.error("product needs at least two factors", start)
            return ProductDecl(name, tuple(factors), pos=start.pos)
        if self.at("projbundle"):
            self.i += 1
            self.expect("(")
            base = self.expect_name("ring name").value
            self.expect(";")
            self._expect_word("c1")
            self.expect("=")
            c1 = self.expr()
            self.expect(",")
            self._expect_word("c2")
            self.expect("=")
            c2 = self.expr()
            gen = "zeta"
            if self.at(","):
                self.i += 1
                self.expect("gen")
                self.expect("=")
                gen = self.expect_name("generator name").value
            self.expect(")")
            self.expect(";")
            return BundleDecl(name, base, c1, c2, gen, pos=start.pos)
        self.error("expected 'product' or 'projbundle'")

    def _expect_word(self, word: str):
        if self.tok.kind != "name" or self.tok.value != word:
            self.error(f"expected {word!r}")
        self.i += 1

    def class_decl(self) -> ClassDecl:
        start = self.expect("class")
        name = self.expect_name("class name").value
        self.expect("in")
        ring = self.expect_name("ring name").value
        self.expect("=")
        e = self.expr()
        self.expect(";")
        return ClassDecl(name, ring, e, pos=start.pos)

    def assert_stmt(self) -> Assert:
        start = self.expect("assert")
        ring = None
        if self.at("in"):
            self.i += 1
            ring = self.expect_name("ring name").value
            self.expect(":")
        lhs = self.expr()
        self.expect("==")
        rhs = self.expr()
        self.expect(";")
        return Assert(lhs, rhs, ring, pos=start.pos)

    # -- queries ----------------------------------------------------------
    def query(self) -> Query:
        tok = self.tok
        kind = tok.value
        self.i += 1
        self.expect("(")
        if kind == "integrate":
            ring = self.expect_name("ring name").value
            self.expect(";")
            e = self.expr()
            self.expect(")")
            return Query(kind, ring, e, (), pos=tok.pos)
        args = {}
        order = []
        while not self.at(")"):
            if order:
                self.expect(",")
            if self.at("symbolic"):
                key, value = "symbolic", None
                self.i += 1
            else:
                ktok = self.tok
                if ktok.kind == "kw" and ktok.value == "n":
                    self.i += 1
                else:
                    self.expect_name("argument name")
                key = ktok.value
                self.expect("=")
                value = self.expect_int()
            if key in args:
                self.error(f"argument {key!r} given twice")
            args[key] = value
            order.append(key)
        end = self.tok
        self.expect(")")
        for sig in QUERY_SIGNATURES[kind]:
            if set(sig) == set(args):
                return Query(kind, None, None, tuple((k, args[k]) for k in sig), pos=tok.pos)
        shapes = " or ".join("(" + ", ".join(s) + ")" for s in QUERY_SIGNATURES[kind])
        self.error(f"{kind} takes {shapes}", end)

    # -- expressions ------------------------------------------------------
    def expr(self):
        left = self.term()
        while self.at("+") or self.at("-"):
            tok = self.tok
            self.i += 1
            left = BinOp(tok.value, left, self.term(), pos=tok.pos)
        return left

    def term(self):
        left = self.unary()
        while self.at("*") or self.at("/"):
            tok = self.tok
            self.i += 1
            left = BinOp(tok.value, left, self.unary(), pos=tok.pos)
        return left

    def unary(self):
        if self.at("-"):
            tok = self.tok
            self.i += 1
            return Neg(self.unary(), pos=tok.pos)
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            tok = self.tok
            self.i += 1
            return Pow(base, self.expect_int(), pos=tok.pos)
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return Num(int(tok.value), pos=tok.pos)
        if tok.kind == "name":
            self.i += 1
            return Name(tok.value, pos=tok.pos)
        if tok.kind == "kw" and tok.value == "n":
            self.i += 1
            return Param("n", pos=tok.pos)
        if tok.kind == "kw" and tok.value in SCALAR_QUERIES:
            return self.query()
        if self.at("("):
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "kw":
            self.error(f"reserved word {tok.value!r} cannot appear in an expression")
        self.error(f"expected an expression, found {tok.value or 'end of input'!r}")


def parse(text: str) -> Script:
    return Parser(text).script()


def parse_expr(text: str):
    p = Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.value!r} after expression")
    return e
