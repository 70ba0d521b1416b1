"""Chern-class bookkeeping for the bundles A_0, A_1, A_2 and their restrictions.

A :class:`ChernTriple` holds (rank, c1, c2) of each ``A_k`` pulled back to
some ambient ring.  From it come the divisor classes ``eps`` and ``delta``
and the degree-4 classes ``tau_k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .exact import N, ParamPoly, to_param
from .ring import DegreeError, RingElement, RingError

KS = (0, 1, 2)


def a_nk(n, k: int):
    """Degree of the bundle A~_{n,k} over the rational curve Gamma."""
    if k == 0:
        return 2 * n - 2
    if k == 1:
        return n
    if k == 2:
        return 0 * n
    raise ValueError(f"k must be 0, 1 or 2, got {k}")


def ranks(n=N) -> Tuple:
    """Ranks of A_0, A_1, A_2 on the moduli space with second Chern class n."""
    return (n - 1, n, n - 1)


@dataclass(frozen=True)
class ChernTriple:
    c1: Tuple[RingElement, RingElement, RingElement]
    c2: Tuple[RingElement, RingElement, RingElement]
    n: ParamPoly = N

    def __post_init__(self):
        if len(self.c1) != 3 or len(self.c2) != 3:
            raise ValueError("need Chern data for k = 0, 1, 2")
        ring = self.c1[0].ring
        for x in self.c1 + self.c2:
            if x.ring is not ring:
                raise RingError("Chern classes of a triple must share one ring")
        for x in self.c1:
            if not x.is_homogeneous(1):
                raise DegreeError(f"c1 class {x} is not of degree 1")
        for x in self.c2:
            if not x.is_homogeneous(2):
                raise DegreeError(f"c2 class {x} is not of degree 2")

    @property
    def ring(self):
        return self.c1[0].ring

    @property
    def ranks(self):
        return ranks(to_param(self.n))

    def restrict(self, f) -> "ChernTriple":
        """Push every class through a ring map ``f``."""
        return ChernTriple(tuple(f(x) for x in self.c1), tuple(f(x) for x in self.c2), self.n)

    @classmethod
    def uniform(cls, c1: RingElement, c2: RingElement, n=N) -> "ChernTriple":
        return cls((c1, c1, c1), (c2, c2, c2), n)


def eps_delta(t: ChernTriple) -> Tuple[RingElement, RingElement]:
    n = t.n
    eps = t.c1[0] - t.c1[2]
    delta = t.c1[0] * n - t.c1[1] * (n - 1)
    return eps, delta


def tau(t: ChernTriple, k: int) -> RingElement:
    r = t.ranks[k]
    return t.c2[k] * (2 * r) - t.c1[k] * t.c1[k] * (r - 1)


def divisor_classes(t: ChernTriple) -> dict:
    """eps, delta, the two derived divisors K = -3 eps and B = n eps - 2 delta, taus."""
    eps, delta = eps_delta(t)
    out = {"eps": eps, "delta": delta,
           "K": eps * -3, "B": eps * t.n - delta * 2}
    for k in KS:
        out[f"tau{k}"] = tau(t, k)
    return out


def pushforward_chern(k: int, zeta: RingElement, ell: RingElement,
                      base_c1: RingElement, base_c2: RingElement | None = None
                      ) -> Tuple[RingElement, RingElement]:
    """c1, c2 of R^1 pi_*(E' (-k)) on a boundary projective bundle.

    The bundle is an extension of ``A^0_{n-1,k}`` (pulled back from the base)
    by ``O(1) (-k ell)``.  ``base_c2`` defaults to zero, which is forced
    whenever the base classes come from a curve.
    """
    if k not in KS:
        raise ValueError(f"k must be 0, 1 or 2, got {k}")
    ring = zeta.ring
    for x in (ell, base_c1) + ((base_c2,) if base_c2 is not None else ()):
        if x.ring is not ring:
            raise RingError("base classes must already be pulled back to the bundle")
    if base_c2 is None:
        base_c2 = ring.zero
    line = zeta - ell * k
    return line + base_c1, line * base_c1 + base_c2


def twist_rank2(c1: RingElement, c2: RingElement, l: RingElement
                ) -> Tuple[RingElement, RingElement]:
    """Chern classes of E (x) L for rank-2 E and a line bundle with c1(L) = l."""
    return c1 + l * 2, c2 + c1 * l + l * l


def whitney(*line_classes: RingElement) -> Tuple[RingElement, RingElement]:
    """c1, c2 of a direct sum of line bundles (trivial summands contribute 0)."""
    if not line_classes:
        raise ValueError("need at least one summand")
    ring = line_classes[0].ring
    c1, c2 = ring.zero, ring.zero
    for x in line_classes:
        c2 = c2 + c1 * x
        c1 = c1 + x
    return c1, c2


def extension_chern(sub: Sequence[RingElement], quot: Sequence[RingElement]
                    ) -> Tuple[RingElement, RingElement]:
    """c1, c2 of the middle term of 0 -> S -> E -> Q -> 0, each given as (c1, c2)."""
    s1, s2 = sub
    q1, q2 = quot
    return s1 + q1, s2 + s1 * q1 + q2


@dataclass(frozen=True)
class BoundaryData:
    """Divisor data entering the normal direction of the boundary.

    ``L`` is det of the family on Gamma x X, ``D`` the class D_{n-1} pulled
    back from Gamma, and ``B_restriction`` the normal bundle class of the
    boundary restricted to the projective bundle.
    """
    L: RingElement
    D: RingElement
    B_restriction: RingElement

    def __post_init__(self):
        for x in (self.L, self.D, self.B_restriction):
            if not x.is_homogeneous(1):
                raise DegreeError(f"boundary class {x} is not a divisor")

    def obstruction_line(self, ell: RingElement) -> RingElement:
        """-L + D + 2 ell, the first Chern class of the sub line bundle of V."""
        return -self.L + self.D + ell * 2


def d_boundary_degree(n) -> ParamPoly:
    """Degree on Gamma of D_{n-1} = 2 c1(A^0_{n-1,1}) - c1(A^0_{n-1,2}) - c1(A^0_{n-1,0})."""
    m = n - 1
    return to_param(2 * a_nk(m, 1) - a_nk(m, 2) - a_nk(m, 0))
