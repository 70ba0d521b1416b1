"""Canonical text for syntax trees; ``parse(print_script(s)) == s``."""
from __future__ import annotations

from .nodes import (Assert, BinOp, BundleDecl, ClassDecl, Name, Neg, Num, Param, Pow,
                    ProductDecl, Query, QueryStmt, RingDecl, Script)

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_UNARY = 3
_ATOM = 4


def _prec(e) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _UNARY
    return _ATOM


def print_expr(e) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, (Name, Param)):
        return e.id
    if isinstance(e, Query):
        return print_query(e)
    if isinstance(e, Pow):
        base = print_expr(e.base)
        if _prec(e.base) < _ATOM or isinstance(e.base, Pow):
            base = f"({base})"
        return f"{base}^{e.exp}"
    if isinstance(e, Neg):
        inner = print_expr(e.operand)
        if _prec(e.operand) < _UNARY:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = print_expr(e.left)
        if _prec(e.left) < p:
            left = f"({left})"
        right = print_expr(e.right)
        if _prec(e.right) <= p:
            right = f"({right})"
        sep = f" {e.op} " if p == 1 else e.op
        return f"{left}{sep}{right}"
    raise TypeError(f"not an expression node: {e!r}")


def print_query(q: Query) -> str:
    if q.kind == "integrate":
        return f"integrate({q.ring}; {print_expr(q.expr)})"
    parts = ["symbolic" if v is None else f"{k} = {v}" for k, v in q.args]
    return f"{q.kind}({', '.join(parts)})"


def print_stmt(s) -> str:
    if isinstance(s, RingDecl):
        lines = [f"ring {s.name} {{"]
        lines += [f"  gen {g} : {d};" for g, d in s.gens]
        lines += [f"  rel {print_expr(a)} = {print_expr(b)};" for a, b in s.rels]
        lines += [f"  dim {s.dim};", "}"]
        return "\n".join(lines)
    if isinstance(s, ProductDecl):
        return f"space {s.name} = product({', '.join(s.factors)});"
    if isinstance(s, BundleDecl):
        extra = "" if s.gen == "zeta" else f", gen = {s.gen}"
        return (f"space {s.name} = projbundle({s.base}; c1 = {print_expr(s.c1)}, "
                f"c2 = {print_expr(s.c2)}{extra});")
    if isinstance(s, ClassDecl):
        return f"class {s.name} in {s.ring} = {print_expr(s.expr)};"
    if isinstance(s, QueryStmt):
        return print_query(s.query) + ";"
    if isinstance(s, Assert):
        ctx = f"in {s.ring}: " if s.ring else ""
        return f"assert {ctx}{print_expr(s.left)} == {print_expr(s.right)};"
    raise TypeError(f"not a statement node: {s!r}")


def print_script(script: Script) -> str:
    return "".join(print_stmt(s) + "\n" for s in script.statements)
