"""Exact rationals and polynomials in named formal parameters.

Rationals are :class:`fractions.Fraction` (always reduced, zero is 0/1).
:class:`ParamPoly` is a multivariate polynomial over those rationals whose
exponent vectors are dense over a small sorted tuple of parameter names,
almost always just ``("n",)``.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Mapping, Tuple, Union

Rational = Fraction

DEFAULT_PARAMS: Tuple[str, ...] = ("n",)

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction, "ParamPoly"]


class ParameterMismatchError(ValueError):
    """Two polynomials were combined over different parameter sets."""


class MissingBindingError(KeyError):
    """Evaluation was asked for without a value for some parameter."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


class ParamPoly:
    """Immutable polynomial with rational coefficients.

    ``terms`` maps exponent tuples (aligned with ``params``) to nonzero
    Fractions. The empty map is zero, so equality is structural.
    """

    __slots__ = ("_params", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, object] | None = None,
                 params: Iterable[str] = DEFAULT_PARAMS):
        params = tuple(params)
        order = sorted(range(len(params)), key=lambda i: params[i])
        if len(set(params)) != len(params):
            raise ValueError(f"duplicate parameter names in {params}")
        clean: Dict[Exponents, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(params):
                raise ValueError(f"exponent vector {exps} does not match {params}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = as_rational(c)
            if c:
                key = tuple(exps[i] for i in order)
                c = clean.pop(key, 0) + c
                if c:
                    clean[key] = c
        self._params = tuple(params[i] for i in order)
        self._terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c, params: Iterable[str] = DEFAULT_PARAMS) -> "ParamPoly":
        params = tuple(sorted(params))
        return cls({(0,) * len(params): c}, params)

    @classmethod
    def var(cls, name: str, params: Iterable[str] | None = None) -> "ParamPoly":
        params = tuple(sorted(params if params is not None else (name,)))
        if name not in params:
            raise ParameterMismatchError(f"{name!r} is not among {params}")
        exps = tuple(1 if p == name else 0 for p in params)
        return cls({exps: 1}, params)

    @classmethod
    def zero(cls, params: Iterable[str] = DEFAULT_PARAMS) -> "ParamPoly":
        return cls({}, params)

    # -- inspection -----------------------------------------------------
    @property
    def params(self) -> Tuple[str, ...]:
        return self._params

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * len(self._params), Fraction(0))

    def coefficients(self, name: str | None = None) -> list:
        """Dense coefficient list (lowest degree first) of a univariate poly."""
        if len(self._params) != 1:
            raise ValueError("coefficients() needs a univariate polynomial")
        if name is not None and name != self._params[0]:
            raise ParameterMismatchError(name)
        out = [Fraction(0)] * (self.degree() + 1)
        for (e,), c in self._terms.items():
            out[e] = c
        return out

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            if other._params != self._params:
                raise ParameterMismatchError(
                    f"parameter sets differ: {self._params} vs {other._params}")
            return other
        try:
            return ParamPoly.const(as_rational(other), self._params)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return ParamPoly(terms, self._params)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({e: -c for e, c in self._terms.items()}, self._params)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return ParamPoly(terms, self._params)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero constant is exact
        c = other.constant_value() if isinstance(other, ParamPoly) else as_rational(other)
        if not c:
            raise ZeroDivisionError("division of a ParamPoly by zero")
        return self * (1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("ParamPoly powers must be nonnegative integers")
        result = ParamPoly.const(1, self._params)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self._params == other._params and self._terms == other._terms
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._params, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation -----------------------------------------------------
    def eval(self, bindings: Mapping[str, object]) -> Fraction:
        missing = [p for p in self._params if p not in bindings]
        if missing and self._terms and not self.is_constant():
            raise MissingBindingError(f"no value bound for {missing}")
        vals = [as_rational(bindings[p]) if p in bindings else Fraction(0)
                for p in self._params]
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    def substitute(self, name: str, value: "ParamPoly") -> "ParamPoly":
        """Replace one parameter by a polynomial over the same parameter set."""
        i = self._params.index(name)
        out = ParamPoly.zero(self._params)
        for exps, c in self._terms.items():
            rest = list(exps)
            rest[i] = 0
            out = out + ParamPoly({tuple(rest): c}, self._params) * value ** exps[i]
        return out

    # -- rendering ------------------------------------------------------
    def sorted_terms(self):
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]),
                      reverse=True)

    def _render(self, star: bool) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for name, e in zip(self._params, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            elif star:
                body = f"{a}*{mono}"
            elif a.denominator == 1:
                body = f"{a}{mono}"
            else:
                body = f"({a}){mono}"
            parts.append((sign, body))
        sep = " " if star else ""
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f"{sep}{sign}{sep}{body}"
        return out

    def __str__(self):
        """Compact form, e.g. ``2n^3-8n^2+9n-1``."""
        return self._render(star=False)

    def expr(self) -> str:
        """Operator form, e.g. ``2*n^3 - 8*n^2 + 9*n - 1``."""
        return self._render(star=True)

    def __repr__(self):
        return f"ParamPoly({self.expr()!r}, params={self._params})"


def poly_arith(a: ParamPoly, b: ParamPoly, op: str) -> ParamPoly:
    if not (isinstance(a, ParamPoly) and isinstance(b, ParamPoly)):
        raise TypeError("poly_arith expects two ParamPoly operands")
    if a.params != b.params:
        raise ParameterMismatchError(f"parameter sets differ: {a.params} vs {b.params}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: ParamPoly, bindings: Mapping[str, object]) -> Fraction:
    return p.eval(bindings)


def to_param(x, params: Iterable[str] = DEFAULT_PARAMS) -> ParamPoly:
    if isinstance(x, ParamPoly):
        return x
    return ParamPoly.const(as_rational(x), params)


def format_rational(x) -> str:
    x = as_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


N = ParamPoly.var("n")
