"""Truncated power series in (q, t) and the Betti-number generating function.

The Poincare polynomial of the Gieseker moduli space with c2 = n is the t^n
coefficient of::

    S(q, t) * P(q, t) / ((q^2 - 1) * Theta(q, t))

with ``Theta`` the sum over all integers m of q^{2m(2m-1)} t^{m^2}, ``S`` the
sum over b >= 0 of two geometric denominators times t^{(b+1)^2}, and ``P`` the
product over d >= 1 of (1 - q^{4d-2} t^d)^-2 (1 - q^{4d} t^d)^-2 (1 - q^{4d+2} t^d)^-2.
Every factor is a genuine power series in q and t, so truncated arithmetic is
exact on the kept range.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple

from .exact import as_rational

Key = Tuple[int, int]


class TruncationMismatchError(ValueError):
    pass


class PoincareInvariantError(RuntimeError):
    """Extracted Betti numbers violate a structural property."""


class PowerSeries2:
    """Sum of c * q^i * t^j over 0 <= i <= trunc_q, 0 <= j <= trunc_t."""

    __slots__ = ("trunc_q", "trunc_t", "_coeffs")

    def __init__(self, trunc_q: int, trunc_t: int, coeffs: Mapping[Key, object] | None = None):
        if trunc_q < 0 or trunc_t < 0:
            raise ValueError("truncation bounds must be nonnegative")
        self.trunc_q = trunc_q
        self.trunc_t = trunc_t
        clean: Dict[Key, Fraction] = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponents are not power series")
            if i <= trunc_q and j <= trunc_t:
                c = as_rational(c)
                if c:
                    clean[(i, j)] = c
        self._coeffs = clean

    @classmethod
    def monomial(cls, trunc_q: int, trunc_t: int, i: int = 0, j: int = 0, c=1):
        return cls(trunc_q, trunc_t, {(i, j): c})

    @classmethod
    def one(cls, trunc_q: int, trunc_t: int):
        return cls.monomial(trunc_q, trunc_t)

    @property
    def coeffs(self) -> Dict[Key, Fraction]:
        return dict(self._coeffs)

    @property
    def bounds(self) -> Key:
        return (self.trunc_q, self.trunc_t)

    def __getitem__(self, key: Key) -> Fraction:
        return self._coeffs.get(tuple(key), Fraction(0))

    def t_coefficient(self, j: int) -> List[Fraction]:
        """q-coefficients 0..trunc_q of t^j."""
        return [self[(i, j)] for i in range(self.trunc_q + 1)]

    def restrict(self, trunc_q: int, trunc_t: int) -> "PowerSeries2":
        if trunc_q > self.trunc_q or trunc_t > self.trunc_t:
            raise TruncationMismatchError("cannot restrict to a larger truncation")
        return PowerSeries2(trunc_q, trunc_t, self._coeffs)

    def _check(self, other: "PowerSeries2"):
        if not isinstance(other, PowerSeries2):
            raise TypeError("expected a PowerSeries2")
        if other.bounds != self.bounds:
            raise TruncationMismatchError(f"truncations differ: {self.bounds} vs {other.bounds}")

    def __eq__(self, other):
        if not isinstance(other, PowerSeries2):
            return NotImplemented
        return self.bounds == other.bounds and self._coeffs == other._coeffs

    def __add__(self, other):
        self._check(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return PowerSeries2(self.trunc_q, self.trunc_t, out)

    def __neg__(self):
        return PowerSeries2(self.trunc_q, self.trunc_t,
                            {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries2):
            c = as_rational(other)
            return PowerSeries2(self.trunc_q, self.trunc_t,
                                {k: v * c for k, v in self._coeffs.items()})
        self._check(other)
        tq, tt = self.bounds
        out: Dict[Key, Fraction] = {}
        for (i1, j1), c1 in self._coeffs.items():
            for (i2, j2), c2 in other._coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i <= tq and j <= tt:
                    out[(i, j)] = out.get((i, j), 0) + c1 * c2
        return PowerSeries2(tq, tt, out)

    __rmul__ = __mul__

    def __truediv__(self, other: "PowerSeries2") -> "PowerSeries2":
        """Exact quotient by a series with nonzero constant term.

        Solves b * other = self coefficient by coefficient in lexicographic
        order; cost is proportional to the number of terms of ``other``.
        """
        self._check(other)
        c0 = other[(0, 0)]
        if not c0:
            raise ZeroDivisionError("divisor has zero constant term")
        rest = [(k, c) for k, c in other._coeffs.items() if k != (0, 0)]
        tq, tt = self.bounds
        b: Dict[Key, Fraction] = {}
        for i in range(tq + 1):
            for j in range(tt + 1):
                acc = self._coeffs.get((i, j), Fraction(0))
                for (u, v), c in rest:
                    if u <= i and v <= j:
                        prev = b.get((i - u, j - v))
                        if prev:
                            acc -= c * prev
                if acc:
                    b[(i, j)] = acc / c0
        return PowerSeries2(tq, tt, b)

    def inverse(self) -> "PowerSeries2":
        return PowerSeries2.one(*self.bounds) / self

    def __repr__(self):
        return f"<PowerSeries2 q<={self.trunc_q} t<={self.trunc_t} terms={len(self._coeffs)}>"


def series_mul(a: PowerSeries2, b: PowerSeries2) -> PowerSeries2:
    return a * b


def series_inverse(a: PowerSeries2) -> PowerSeries2:
    return a.inverse()


def _one_minus(tq: int, tt: int, i: int, j: int) -> PowerSeries2:
    return PowerSeries2(tq, tt, {(0, 0): 1}) - PowerSeries2.monomial(tq, tt, i, j)


def theta_sum(tq: int, tt: int) -> PowerSeries2:
    coeffs: Dict[Key, int] = {}
    m = 0
    # q-exponent 2m(2m-1) and t-exponent m^2 both grow with |m|
    while m * m <= tt:
        for s in ({m, -m} if m else {0}):
            e = 2 * s * (2 * s - 1)
            if e <= tq:
                coeffs[(e, m * m)] = coeffs.get((e, m * m), 0) + 1
        m += 1
    return PowerSeries2(tq, tt, coeffs)


def boundary_sum(tq: int, tt: int) -> PowerSeries2:
    out = PowerSeries2(tq, tt)
    b = 0
    while (b + 1) ** 2 <= tt:
        tj = (b + 1) ** 2
        first = PowerSeries2.monomial(tq, tt, 2 * (b + 1) * (2 * b + 1), tj)
        first = first / _one_minus(tq, tt, 8 * (b + 1), 2 * b + 1)
        second = PowerSeries2.monomial(tq, tt, 2 * b * (2 * b + 5), tj)
        second = second / _one_minus(tq, tt, 8 * b, 2 * b + 1)
        out = out + first - second
        b += 1
    return out


def divide_by_eta_product(x: PowerSeries2) -> PowerSeries2:
    """x times the infinite product of inverse squared (1 - q^a t^d) factors."""
    tq, tt = x.bounds
    for d in range(1, tt + 1):
        for a in (4 * d - 2, 4 * d, 4 * d + 2):
            if a > tq:
                continue
            f = _one_minus(tq, tt, a, d)
            x = x / f / f
    return x


def generating_series(trunc_q: int, trunc_t: int) -> PowerSeries2:
    if trunc_q <= 0 or trunc_t <= 0:
        raise ValueError("truncations must be positive")
    tq, tt = trunc_q, trunc_t
    x = divide_by_eta_product(boundary_sum(tq, tt))
    x = x / theta_sum(tq, tt)
    q2_minus_1 = PowerSeries2(tq, tt, {(2, 0): 1, (0, 0): -1})
    return x / q2_minus_1


@dataclass(frozen=True)
class PoincareData:
    n: int
    poly: Tuple[int, ...]

    @property
    def betti(self) -> Tuple[int, ...]:
        return self.poly

    @property
    def dimension(self) -> int:
        """Complex dimension 4n - 4."""
        return (len(self.poly) - 1) // 2

    def b(self, i: int) -> int:
        return self.poly[i] if 0 <= i < len(self.poly) else 0

    def euler_characteristic(self) -> int:
        return sum(self.poly)

    def validate(self):
        top = 8 * self.n - 8
        p = self.poly
        if len(p) != top + 1 or p[-1] <= 0:
            raise PoincareInvariantError(f"degree is not exactly {top}")
        if any(x < 0 for x in p):
            raise PoincareInvariantError("negative Betti number")
        if any(p[i] for i in range(1, top + 1, 2)):
            raise PoincareInvariantError("odd Betti number is nonzero")
        if list(p) != list(reversed(p)):
            raise PoincareInvariantError("Betti numbers are not palindromic")


def poincare(n: int, slack: int = 2, series: PowerSeries2 | None = None) -> PoincareData:
    """Betti numbers b_0..b_{8n-8} read off the generating function."""
    if n < 1:
        raise ValueError("n must be at least 1")
    top = 8 * n - 8
    if series is None:
        series = generating_series(top + slack, n)
    if series.trunc_t < n or series.trunc_q < top:
        raise TruncationMismatchError("series truncated below what poincare(n) needs")
    coeffs = series.t_coefficient(n)
    if any(c for c in coeffs[top + 1:]):
        raise PoincareInvariantError(
            f"t^{n} coefficient has terms beyond q^{top}; not a polynomial of that degree")
    if any(c.denominator != 1 for c in coeffs):
        raise PoincareInvariantError("non-integral Betti number")
    data = PoincareData(n, tuple(int(c) for c in coeffs[:top + 1]))
    data.validate()
    return data
