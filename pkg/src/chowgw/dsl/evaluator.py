"""Evaluate intersection scripts against the ring, series and pipeline modules."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .. import gw
from ..exact import N, ParamPoly, format_rational, to_param
from ..ring import (GradedRing, GradedRingPresentation, Relation, RingElement, RingError,
                    free_ring, integrate, make_ring, product_ring, projective_bundle)
from ..series import poincare
from .errors import DslEvalError, make_diagnostic
from .nodes import (Assert, BinOp, BundleDecl, ClassDecl, Name, Neg, Num, Param, Pow,
                    ProductDecl, Query, QueryStmt, RingDecl, Script)
from .parser import parse
from .printer import print_expr, print_query


@dataclass
class Result:
    line: int
    kind: str
    text: str
    value: Any = None
    ok: bool = True

    def to_json(self) -> dict:
        return {"line": self.line, "kind": self.kind, "ok": self.ok,
                "value": _json_value(self.value)}


def _json_value(v):
    if isinstance(v, ParamPoly):
        return str(v)
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    return v


def _scalar_text(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    return str(v)


class Evaluator:
    def __init__(self, source: str = ""):
        self.source = source
        self.rings: Dict[str, GradedRing] = {}
        self.classes: Dict[str, RingElement] = {}
        self.results: List[Result] = []

    def fail(self, node, message: str):
        raise DslEvalError(make_diagnostic(self.source, getattr(node, "pos", None), message))

    def _bind_check(self, node, name: str):
        if name in self.rings or name in self.classes:
            self.fail(node, f"name {name!r} is already bound")

    def ring(self, node, name: str) -> GradedRing:
        if name not in self.rings:
            self.fail(node, f"undeclared ring {name!r}")
        return self.rings[name]

    # -- statements -------------------------------------------------------
    def run(self, script: Script) -> List[Result]:
        for stmt in script.statements:
            try:
                self.statement(stmt)
            except RingError as exc:
                self.fail(stmt, str(exc))
        return self.results

    def statement(self, s):
        if isinstance(s, RingDecl):
            self._bind_check(s, s.name)
            free = free_ring(s.gens)
            rels = []
            for lhs, rhs in s.rels:
                lead = self.expr(lhs, free)
                if not isinstance(lead, RingElement) or len(lead.terms) != 1 \
                        or list(lead.terms.values())[0] != 1:
                    self.fail(lhs, "left side of a relation must be a single monic monomial")
                repl = self.expr(rhs, free)
                repl = repl if isinstance(repl, RingElement) else free.scalar(repl)
                rels.append(Relation(next(iter(lead.terms)), repl.terms))
            self.rings[s.name] = make_ring(
                GradedRingPresentation(s.name, list(s.gens), rels, s.dim))
        elif isinstance(s, ProductDecl):
            self._bind_check(s, s.name)
            r = self.ring(s, s.factors[0])
            rest = s.factors[1:]
            for j, f in enumerate(rest):
                last = j == len(rest) - 1
                r = product_ring(r, self.ring(s, f), s.name if last else None)
            self.rings[s.name] = r
        elif isinstance(s, BundleDecl):
            self._bind_check(s, s.name)
            base = self.ring(s, s.base)
            c1, c2 = (self._as_element(self.expr(e, base), base) for e in (s.c1, s.c2))
            self.rings[s.name] = projective_bundle(base, c1, c2, s.gen, s.name)
        elif isinstance(s, ClassDecl):
            self._bind_check(s, s.name)
            R = self.ring(s, s.ring)
            if s.name in R.gen_names:
                self.fail(s, f"class {s.name!r} would shadow a generator of {R.name}")
            self.classes[s.name] = self._as_element(self.expr(s.expr, R), R)
        elif isinstance(s, QueryStmt):
            self.query_stmt(s.query)
        elif isinstance(s, Assert):
            R = self.ring(s, s.ring) if s.ring else None
            left, right = self.expr(s.left, R), self.expr(s.right, R)
            if R is not None:
                left, right = self._as_element(left, R), self._as_element(right, R)
            else:
                left, right = to_param(left), to_param(right)
            ok = left == right
            src = f"{print_expr(s.left)} == {print_expr(s.right)}"
            if ok:
                text = f"assert ok: {src}"
            else:
                text = (f"assert FAILED at line {s.pos[0] if s.pos else 0}: {src}; "
                        f"left = {left}, right = {right}")
            self.results.append(Result(self._line(s), "assert", text,
                                       {"left": str(left), "right": str(right)}, ok))
        else:
            raise TypeError(f"unknown statement {s!r}")

    @staticmethod
    def _line(node) -> int:
        return node.pos[0] if node.pos else 0

    @staticmethod
    def _as_element(v, R: GradedRing) -> RingElement:
        return v if isinstance(v, RingElement) else R.scalar(v)

    # -- queries ----------------------------------------------------------
    def query_value(self, q: Query):
        args = dict(q.args)
        try:
            if q.kind == "integrate":
                R = self.ring(q, q.ring)
                return integrate(self._as_element(self.expr(q.expr, R), R))
            if q.kind == "det":
                return gw.basis_determinant(args["n"] if "n" in args else None)
            if q.kind == "invariant":
                return gw.invariant(args["i"], args["d"])
            if q.kind == "acoeff":
                return gw.a_coefficient(args["i"])
            if q.kind == "table":
                return gw.intersection_table()
            if q.kind == "betti":
                return poincare(args["n"])
            if q.kind == "pairing":
                return gw.pairing_matrix()
        except (ValueError, ArithmeticError) as exc:
            self.fail(q, str(exc))
        raise TypeError(f"unknown query {q.kind}")

    def query_stmt(self, q: Query):
        v = self.query_value(q)
        head = print_query(q)
        args = dict(q.args)
        if q.kind == "table":
            n = args.get("n")
            if n is not None and n < 3:
                self.fail(q, "table needs n >= 3")
            js = v.to_json(n)
            lines = [f"{head}:", "  " + " | ".join(["    "] + js["cols"])]
            for r, row in zip(js["rows"], js["entries"]):
                lines.append(f"  {r}: " + ", ".join(row))
            self.results.append(Result(self._line(q), "table", "\n".join(lines), js))
        elif q.kind == "betti":
            self.results.append(Result(self._line(q), "betti",
                                       f"{head} = {list(v.poly)}", list(v.poly)))
        elif q.kind == "pairing":
            m = v.as_ints()
            self.results.append(Result(self._line(q), "pairing", f"{head} = {m}", m))
        elif q.kind == "invariant":
            text = f"{head} = {format_rational(v.value)} [{v.provenance}]"
            self.results.append(Result(self._line(q), "invariant", text, v.to_json()))
        else:
            text = f"{head} = {_scalar_text(v)}"
            self.results.append(Result(self._line(q), q.kind, text, v))

    # -- expressions ------------------------------------------------------
    def expr(self, e, R: Optional[GradedRing]):
        if isinstance(e, Num):
            return to_param(e.value)
        if isinstance(e, Param):
            return N
        if isinstance(e, Name):
            return self.name(e, R)
        if isinstance(e, Neg):
            return -self.expr(e.operand, R)
        if isinstance(e, Pow):
            return self.expr(e.base, R) ** e.exp
        if isinstance(e, Query):
            if e.kind == "integrate":
                return self.query_value(e)
            if e.kind == "invariant":
                return to_param(self.query_value(e).value)
            return to_param(self.query_value(e))
        if isinstance(e, BinOp):
            a, b = self.expr(e.left, R), self.expr(e.right, R)
            if e.op == "+":
                return a + b
            if e.op == "-":
                return a - b
            if e.op == "*":
                return a * b
            if e.op == "/":
                if not isinstance(b, ParamPoly) or not b.is_constant():
                    self.fail(e, "division is only by nonzero numbers")
                if not b:
                    self.fail(e, "division by zero")
                return a / b.constant_value()
        raise TypeError(f"unknown expression {e!r}")

    def name(self, e: Name, R: Optional[GradedRing]):
        if R is None:
            self.fail(e, f"{e.id!r} needs a ring context")
        if e.id in R.gen_names:
            return R.gen(e.id)
        if e.id in self.classes:
            x = self.classes[e.id]
            try:
                return R.lift(x)
            except RingError:
                self.fail(e, f"class {e.id!r} lives in {x.ring.name}, not in {R.name}")
        self.fail(e, f"undeclared name {e.id!r} in ring {R.name}")


def evaluate(script: Script, source: str = "") -> List[Result]:
    return Evaluator(source).run(script)


def run_source(text: str) -> List[Result]:
    return evaluate(parse(text), text)
