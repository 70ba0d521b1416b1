"""Syntax tree for intersection scripts.

Source positions are carried on every node but excluded from equality, so a
tree re-parsed from its printed form compares equal to the original.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

Pos = Optional[Tuple[int, int]]


def _pos():
    return field(default=None, compare=False, repr=False)


# -- expressions --------------------------------------------------------
@dataclass(frozen=True)
class Num:
    value: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Name:
    id: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Param:
    id: str = "n"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Query:
    """``kind(...)``; ``ring``/``expr`` only for integrate, ``args`` are keyword ints.

    An arg value of None stands for the bare word ``symbolic``.
    """
    kind: str
    ring: Optional[str] = None
    expr: Optional["Expr"] = None
    args: Tuple[Tuple[str, Optional[int]], ...] = ()
    pos: Pos = _pos()


Expr = Union[Num, Name, Param, Neg, BinOp, Pow, Query]


# -- statements -----------------------------------------------------------
@dataclass(frozen=True)
class RingDecl:
    name: str
    gens: Tuple[Tuple[str, int], ...]
    rels: Tuple[Tuple[Expr, Expr], ...]
    dim: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class ProductDecl:
    name: str
    factors: Tuple[str, ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class BundleDecl:
    name: str
    base: str
    c1: Expr
    c2: Expr
    gen: str = "zeta"
    pos: Pos = _pos()


@dataclass(frozen=True)
class ClassDecl:
    name: str
    ring: str
    expr: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class QueryStmt:
    query: Query
    pos: Pos = _pos()


@dataclass(frozen=True)
class Assert:
    left: Expr
    right: Expr
    ring: Optional[str] = None
    pos: Pos = _pos()


Stmt = Union[RingDecl, ProductDecl, BundleDecl, ClassDecl, QueryStmt, Assert]


@dataclass(frozen=True)
class Script:
    statements: Tuple[Stmt, ...]
