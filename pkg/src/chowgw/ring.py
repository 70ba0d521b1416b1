"""Finitely presented commutative graded rings with monic rewrite relations.

A ring is given by generators with positive degrees and a list of rules
``lead monomial -> replacement``. Monomials are compared by degree first,
then lexicographically with the *last* generator most significant, so a
projective-bundle generator appended by :func:`projective_bundle` dominates
everything coming from the base. Coefficients are :class:`ParamPoly`, which
lets one ring instance answer for every value of ``n`` at once.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exact import DEFAULT_PARAMS, ParamPoly, to_param

Monomial = Tuple[int, ...]


class RingError(ValueError):
    """Invalid presentation or ill-typed ring operation."""


class NotConfluentError(RingError):
    pass


class DegreeError(RingError):
    pass


@dataclass(frozen=True)
class Relation:
    lead: Monomial
    replacement: Mapping[Monomial, ParamPoly]


@dataclass
class GradedRingPresentation:
    name: str
    generators: Sequence[Tuple[str, int]]
    relations: Sequence[Relation]
    dimension: int
    fundamental_monomial: Optional[Monomial] = None
    params: Tuple[str, ...] = DEFAULT_PARAMS
    # rings whose generator names embed by name (bundle base, product factors)
    parents: Tuple["GradedRing", ...] = field(default_factory=tuple)


class GradedRing:
    """Use :func:`make_ring` (or the constructors below) rather than this class."""

    def __init__(self, p: GradedRingPresentation, *, free: bool = False):
        self.name = p.name
        self.gen_names: Tuple[str, ...] = tuple(g for g, _ in p.generators)
        self.gen_degrees: Tuple[int, ...] = tuple(d for _, d in p.generators)
        if len(set(self.gen_names)) != len(self.gen_names):
            raise RingError(f"duplicate generator names in {self.gen_names}")
        if any(d <= 0 for d in self.gen_degrees):
            raise RingError("generator degrees must be positive")
        self.params = tuple(p.params)
        self.dimension = p.dimension
        self.relations: Tuple[Relation, ...] = tuple(
            Relation(tuple(r.lead), {tuple(m): to_param(c, self.params)
                                     for m, c in r.replacement.items()})
            for r in p.relations)
        self.parents = tuple(p.parents)
        self.free = free
        self._nf_cache: Dict[Monomial, Dict[Monomial, ParamPoly]] = {}
        self._lift_cache: Dict[int, Callable] = {}
        self.basis: Dict[int, List[Monomial]] = {}
        self.fundamental_monomial = p.fundamental_monomial
        if not free:
            self._validate()

    # -- monomials ------------------------------------------------------
    @property
    def ngens(self) -> int:
        return len(self.gen_names)

    def mono_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.gen_degrees))

    def order_key(self, m: Monomial):
        return (self.mono_degree(m), tuple(reversed(m)))

    def unit_monomial(self) -> Monomial:
        return (0,) * self.ngens

    @staticmethod
    def _divides(a: Monomial, b: Monomial) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def is_normal(self, m: Monomial) -> bool:
        return not any(self._divides(r.lead, m) for r in self.relations)

    def monomials_of_degree(self, deg: int) -> List[Monomial]:
        out: List[Monomial] = []

        def rec(i, left, acc):
            if i == self.ngens:
                if left == 0:
                    out.append(tuple(acc))
                return
            d = self.gen_degrees[i]
            for e in range(left // d + 1):
                rec(i + 1, left - e * d, acc + [e])

        rec(0, deg, [])
        return sorted(out, key=self.order_key, reverse=True)

    def normal_monomials(self, deg: int) -> List[Monomial]:
        return [m for m in self.monomials_of_degree(deg) if self.is_normal(m)]

    def render_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.gen_names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    # -- reduction ------------------------------------------------------
    def _pick_rule(self, m: Monomial, strategy: str) -> Optional[Relation]:
        rules = self.relations if strategy == "first" else reversed(self.relations)
        for r in rules:
            if self._divides(r.lead, m):
                return r
        return None

    def _rewrite_once(self, m: Monomial, rule: Relation) -> Dict[Monomial, ParamPoly]:
        quot = tuple(a - b for a, b in zip(m, rule.lead))
        return {tuple(a + b for a, b in zip(rm, quot)): c
                for rm, c in rule.replacement.items()}

    def normal_form_monomial(self, m: Monomial, strategy: str = "first"
                             ) -> Dict[Monomial, ParamPoly]:
        if strategy == "first" and m in self._nf_cache:
            return self._nf_cache[m]
        rule = self._pick_rule(m, strategy)
        if rule is None:
            out = {m: ParamPoly.const(1, self.params)}
        else:
            out = self.reduce(self._rewrite_once(m, rule), strategy)
        if strategy == "first":
            self._nf_cache[m] = out
        return out

    def reduce(self, terms: Mapping[Monomial, object], strategy: str = "first"
               ) -> Dict[Monomial, ParamPoly]:
        acc: Dict[Monomial, ParamPoly] = {}
        for m, c in terms.items():
            c = to_param(c, self.params)
            if not c:
                continue
            for nm, nc in self.normal_form_monomial(tuple(m), strategy).items():
                acc[nm] = acc.get(nm, ParamPoly.zero(self.params)) + c * nc
        return {m: c for m, c in acc.items() if c}

    # -- validation -----------------------------------------------------
    def _validate(self):
        for r in self.relations:
            if len(r.lead) != self.ngens:
                raise RingError(f"relation lead {r.lead} has wrong length")
            lead_deg = self.mono_degree(r.lead)
            if lead_deg == 0:
                raise RingError("a relation cannot rewrite the unit")
            for rm, c in r.replacement.items():
                if self.mono_degree(rm) != lead_deg:
                    raise DegreeError(
                        f"relation {self.render_monomial(r.lead)} is not homogeneous")
                if self.order_key(rm) >= self.order_key(r.lead):
                    raise RingError(
                        f"relation for {self.render_monomial(r.lead)} does not reduce "
                        f"strictly: {self.render_monomial(rm)} is not smaller")
                if not self.is_normal(rm):
                    raise RingError(
                        f"replacement term {self.render_monomial(rm)} of "
                        f"{self.render_monomial(r.lead)} is not in normal form")
        self.check_confluence()
        for deg in range(self.dimension + 1):
            self.basis[deg] = self.normal_monomials(deg)
        top_gen = max(self.gen_degrees, default=1)
        for deg in range(self.dimension + 1, self.dimension + top_gen + 1):
            extra = self.normal_monomials(deg)
            if extra:
                raise RingError(
                    f"normal monomial {self.render_monomial(extra[0])} survives in degree "
                    f"{deg} > dimension {self.dimension}")
        top = self.basis[self.dimension]
        if self.fundamental_monomial is None:
            if len(top) != 1:
                raise RingError(
                    f"top degree {self.dimension} has {len(top)} normal monomials; "
                    "cannot pick a fundamental class")
            self.fundamental_monomial = top[0]
        else:
            self.fundamental_monomial = tuple(self.fundamental_monomial)
            if self.fundamental_monomial not in top:
                raise RingError("fundamental monomial is not a top-degree normal monomial")

    def critical_pairs(self):
        for r1, r2 in itertools.combinations(self.relations, 2):
            if any(a and b for a, b in zip(r1.lead, r2.lead)) or r1.lead == r2.lead:
                lcm = tuple(max(a, b) for a, b in zip(r1.lead, r2.lead))
                yield r1, r2, lcm

    def check_confluence(self):
        for r1, r2, lcm in self.critical_pairs():
            left = self.reduce(self._rewrite_once(lcm, r1))
            right = self.reduce(self._rewrite_once(lcm, r2))
            if left != right:
                raise NotConfluentError(
                    f"overlap {self.render_monomial(lcm)} reduces ambiguously: "
                    f"{self._render_terms(left)} vs {self._render_terms(right)}")

    # -- elements -------------------------------------------------------
    def element(self, terms: Mapping[Monomial, object]) -> "RingElement":
        return RingElement(self, self.reduce(terms))

    def scalar(self, c) -> "RingElement":
        return self.element({self.unit_monomial(): c})

    @property
    def one(self) -> "RingElement":
        return self.scalar(1)

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def gen(self, name: str) -> "RingElement":
        try:
            i = self.gen_names.index(name)
        except ValueError:
            raise RingError(f"ring {self.name} has no generator {name!r}") from None
        m = tuple(1 if j == i else 0 for j in range(self.ngens))
        return self.element({m: 1})

    def gens(self) -> Tuple["RingElement", ...]:
        return tuple(self.gen(g) for g in self.gen_names)

    @property
    def fundamental(self) -> "RingElement":
        return self.element({self.fundamental_monomial: 1})

    def _render_terms(self, terms) -> str:
        return str(RingElement(self, dict(terms)))

    # -- maps -----------------------------------------------------------
    def hom(self, target: "GradedRing", images: Mapping[str, "RingElement"],
            check: bool = True) -> Callable[["RingElement"], "RingElement"]:
        """Graded ring map sending each generator to the given image.

        With ``check`` every relation is verified to map to zero.
        """
        imgs = []
        for name, deg in zip(self.gen_names, self.gen_degrees):
            if name not in images:
                raise RingError(f"no image given for generator {name!r}")
            x = images[name]
            x = x if isinstance(x, RingElement) else target.scalar(x)
            if x.ring is not target:
                raise RingError("image lives in the wrong ring")
            if not x.is_zero() and not x.is_homogeneous(deg):
                raise DegreeError(f"image of {name} is not of degree {deg}")
            imgs.append(x)

        cache: Dict[Monomial, RingElement] = {}

        def image_of_monomial(m: Monomial) -> RingElement:
            if m not in cache:
                out = target.one
                for x, e in zip(imgs, m):
                    if e:
                        out = out * x ** e
                cache[m] = out
            return cache[m]

        def apply(x: "RingElement") -> "RingElement":
            if x.ring is not self:
                raise RingError(f"element of {x.ring.name} given to a map from {self.name}")
            out = target.zero
            for m, c in x.terms.items():
                out = out + image_of_monomial(m) * c
            return out

        if check:
            for r in self.relations:
                lhs = image_of_monomial(r.lead)
                rhs = apply(RingElement(self, dict(r.replacement)))
                if lhs != rhs:
                    raise RingError(
                        f"map {self.name} -> {target.name} does not respect the relation "
                        f"for {self.render_monomial(r.lead)}")
        return apply

    def ancestors(self) -> List["GradedRing"]:
        out: List[GradedRing] = []
        for p in self.parents:
            for a in [p] + p.ancestors():
                if all(a is not b for b in out):
                    out.append(a)
        return out

    def lift(self, x: "RingElement") -> "RingElement":
        """Pull an element back from a base or factor ring (match by name)."""
        if x.ring is self:
            return x
        if all(x.ring is not a for a in self.ancestors()):
            raise RingError(f"{x.ring.name} is not a base or factor of {self.name}")
        key = id(x.ring)
        if key not in self._lift_cache:
            self._lift_cache[key] = x.ring.hom(
                self, {g: self.gen(g) for g in x.ring.gen_names}, check=False)
        return self._lift_cache[key](x)

    def integrate(self, x: "RingElement") -> ParamPoly:
        return integrate(x)

    # -- text -----------------------------------------------------------
    def dump(self) -> str:
        lines = [f"ring {self.name}", f"  dim {self.dimension}"]
        for g, d in zip(self.gen_names, self.gen_degrees):
            lines.append(f"  gen {g} : {d}")
        for r in self.relations:
            lines.append(f"  rel {self.render_monomial(r.lead)} = "
                         f"{self._render_terms(r.replacement)}")
        for deg in range(self.dimension + 1):
            mons = ", ".join(self.render_monomial(m) for m in self.basis.get(deg, []))
            lines.append(f"  basis {deg}: {mons}")
        lines.append(f"  fundamental {self.render_monomial(self.fundamental_monomial)}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"<GradedRing {self.name} dim={self.dimension} gens={self.gen_names}>"


class RingElement:
    """Immutable element; ``terms`` maps normal monomials to ParamPoly."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: GradedRing, terms: Mapping[Monomial, ParamPoly]):
        self.ring = ring
        self._terms = {m: c for m, c in terms.items() if c}

    @property
    def terms(self) -> Dict[Monomial, ParamPoly]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set:
        return {self.ring.mono_degree(m) for m in self._terms}

    def is_homogeneous(self, deg: Optional[int] = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (deg is None or deg in ds)

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise DegreeError("element is zero or not homogeneous")
        return ds.pop()

    def coefficient(self, m: Monomial) -> ParamPoly:
        return self._terms.get(tuple(m), ParamPoly.zero(self.ring.params))

    def _other(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise RingError(
                    f"elements of different rings: {self.ring.name} vs {other.ring.name}")
            return other
        return self.ring.scalar(other)

    def __add__(self, other):
        other = self._other(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return RingElement(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, RingElement):
            c = to_param(other, self.ring.params)
            return RingElement(self.ring, {m: v * c for m, v in self._terms.items()})
        other = self._other(other)
        raw: Dict[Monomial, ParamPoly] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                raw[m] = raw[m] + c1 * c2 if m in raw else c1 * c2
        return RingElement(self.ring, self.ring.reduce(raw))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / to_param(c, self.ring.params).constant_value())

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("powers must be nonnegative integers")
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring is other.ring and self._terms == other._terms
        try:
            return self == self.ring.scalar(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        ring = self.ring
        out = ""
        for m in sorted(self._terms, key=ring.order_key, reverse=True):
            c = self._terms[m]
            mono = ring.render_monomial(m)
            if c.is_constant():
                v = c.constant_value()
                sign, a = ("-" if v < 0 else "+"), abs(v)
                if mono == "1":
                    body = str(a)
                elif a == 1:
                    body = mono
                else:
                    body = f"{a}*{mono}"
            else:
                sign = "+"
                body = f"({c.expr()})" + ("" if mono == "1" else f"*{mono}")
            if not out:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"<{self.ring.name}: {self}>"


# -- operations ---------------------------------------------------------
def make_ring(p: GradedRingPresentation) -> GradedRing:
    return GradedRing(p)


def multiply(a: RingElement, b: RingElement) -> RingElement:
    if not isinstance(a, RingElement) or not isinstance(b, RingElement):
        raise TypeError("multiply expects ring elements")
    if a.ring is not b.ring:
        raise RingError(f"owner mismatch: {a.ring.name} vs {b.ring.name}")
    return a * b


def integrate(x: RingElement) -> ParamPoly:
    """Coefficient of the fundamental monomial of a top-degree element."""
    ring = x.ring
    if x.is_zero():
        return ParamPoly.zero(ring.params)
    if not x.is_homogeneous():
        raise DegreeError(f"cannot integrate non-homogeneous {x}")
    if x.degree() != ring.dimension:
        raise DegreeError(
            f"cannot integrate a degree-{x.degree()} class over the "
            f"{ring.dimension}-dimensional {ring.name}")
    return x.coefficient(ring.fundamental_monomial)


def projective_space(gen: str, dim: int, name: Optional[str] = None) -> GradedRing:
    lead = (dim + 1,)
    return make_ring(GradedRingPresentation(
        name or f"P{dim}_{gen}", [(gen, 1)], [Relation(lead, {})], dim))


def point(name: str = "pt") -> GradedRing:
    return make_ring(GradedRingPresentation(name, [], [], 0))


def projective_bundle(base: GradedRing, c1: RingElement, c2: RingElement,
                      gen: str = "zeta", name: Optional[str] = None) -> GradedRing:
    """P(E) for rank-2 E with zeta^2 = c1(E) zeta - c2(E)."""
    c1 = base.scalar(c1) if not isinstance(c1, RingElement) else c1
    c2 = base.scalar(c2) if not isinstance(c2, RingElement) else c2
    if c1.ring is not base or c2.ring is not base:
        raise RingError("Chern classes must live in the base ring")
    if not c1.is_zero() and not c1.is_homogeneous(1):
        raise DegreeError("c1 must be homogeneous of degree 1")
    if not c2.is_zero() and not c2.is_homogeneous(2):
        raise DegreeError("c2 must be homogeneous of degree 2")
    if gen in base.gen_names:
        raise RingError(f"generator name {gen!r} already used in {base.name}")
    pad = lambda m, e=0: tuple(m) + (e,)
    rels = [Relation(pad(r.lead), {pad(m): c for m, c in r.replacement.items()})
            for r in base.relations]
    repl: Dict[Monomial, ParamPoly] = {}
    for m, c in c1.terms.items():
        repl[pad(m, 1)] = c
    for m, c in c2.terms.items():
        repl[pad(m, 0)] = -c
    rels.append(Relation((0,) * base.ngens + (2,), repl))
    gens = list(zip(base.gen_names, base.gen_degrees)) + [(gen, 1)]
    return make_ring(GradedRingPresentation(
        name or f"P({base.name})", gens, rels, base.dimension + 1,
        fundamental_monomial=pad(base.fundamental_monomial, 1),
        params=base.params, parents=(base,)))


def product_ring(a: GradedRing, b: GradedRing, name: Optional[str] = None) -> GradedRing:
    clash = set(a.gen_names) & set(b.gen_names)
    if clash:
        raise RingError(f"generator names clash: {sorted(clash)}")
    if a.params != b.params:
        raise RingError("factors use different parameter sets")
    na, nb = a.ngens, b.ngens
    rels = [Relation(tuple(r.lead) + (0,) * nb,
                     {tuple(m) + (0,) * nb: c for m, c in r.replacement.items()})
            for r in a.relations]
    rels += [Relation((0,) * na + tuple(r.lead),
                      {(0,) * na + tuple(m): c for m, c in r.replacement.items()})
             for r in b.relations]
    gens = list(zip(a.gen_names, a.gen_degrees)) + list(zip(b.gen_names, b.gen_degrees))
    return make_ring(GradedRingPresentation(
        name or f"{a.name}x{b.name}", gens, rels, a.dimension + b.dimension,
        fundamental_monomial=tuple(a.fundamental_monomial) + tuple(b.fundamental_monomial),
        params=a.params, parents=(a, b)))


def free_ring(generators: Sequence[Tuple[str, int]], params=DEFAULT_PARAMS) -> GradedRing:
    """Polynomial ring without relations; only used to read relation text."""
    return GradedRing(GradedRingPresentation("free", list(generators), [], 0, params=params),
                      free=True)


def pairing_matrix(ring: GradedRing, k: int) -> List[List[ParamPoly]]:
    """Poincare pairing between normal monomials of degree k and dim - k."""
    low = [ring.element({m: 1}) for m in ring.basis[k]]
    high = [ring.element({m: 1}) for m in ring.basis[ring.dimension - k]]
    return [[integrate(a * b) for b in high] for a in low]
