"""Formal group laws, their derived series, and morphisms between them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Any, Callable, Sequence

from .errors import (
    IncompatibleMorphisms,
    NonInvertibleLeadingCoefficient,
    RingMismatch,
    TruncationError,
    ZeroSeries,
)
from .scalars import (
    QQ,
    ModP,
    PolyRing,
    Ring,
    RingMap,
    Scalar,
    base_ring,
    localize,
    with_base,
)
from .series import INF, TruncSeries, VarTable, grlex_key, reversion

XY = VarTable.of("x", "y")
X = VarTable.of("x")
XYZ = VarTable.of("x", "y", "z")


@dataclass(frozen=True, eq=False)
class FormalGroupLaw:
    """F(x, y) = sum a_ij x^i y^j, truncated at total degree ``trunc``."""

    F: TruncSeries
    name: str = ""

    def __post_init__(self):
        if self.F.vars != XY:
            raise ValueError("an FGL is a series in (x, y)")

    @property
    def ring(self) -> Ring:
        return self.F.ring

    @property
    def trunc(self):
        return self.F.trunc

    def a(self, i: int, j: int):
        return self.F[(i, j)]

    def coeff(self, i: int, j: int) -> Scalar:
        return self.F.coeff((i, j))

    def a_table(self) -> dict[tuple[int, int], Any]:
        return {e: c for e, c in self.F.terms.items()}

    def __call__(self, u: TruncSeries, v: TruncSeries) -> TruncSeries:
        return formal_sum(self, u, v)

    def truncate(self, n) -> "FormalGroupLaw":
        return FormalGroupLaw(self.F.truncate(n), self.name)

    def change_ring(self, f: RingMap | Ring) -> "FormalGroupLaw":
        """Push coefficients along a ring map (or the canonical map into a ring)."""
        if isinstance(f, Ring):
            return FormalGroupLaw(self.F.change_ring(f), self.name)
        if f.source != self.ring:
            raise RingMismatch("ring map does not start at the coefficient ring")
        return FormalGroupLaw(self.F.map_coefficients(f, f.target), self.name)

    def x(self) -> TruncSeries:
        return TruncSeries.var(self.ring, X, "x", self.trunc)

    def __str__(self):
        return str(self.F)

    def to_json(self) -> dict:
        return {"name": self.name, "F": self.F.to_json()}

    @classmethod
    def from_json(cls, obj) -> "FormalGroupLaw":
        return cls(TruncSeries.from_json(obj["F"]), obj.get("name", ""))


def additive_fgl(ring: Ring, trunc: int) -> FormalGroupLaw:
    one = ring.one()
    return FormalGroupLaw(TruncSeries(ring, XY, trunc, {(1, 0): one, (0, 1): one}), "additive")


def multiplicative_fgl(ring: Ring, trunc: int, c: int = -1) -> FormalGroupLaw:
    """x + y + c*x*y (c = -1 is the K-theory convention)."""
    one = ring.one()
    F = TruncSeries(ring, XY, trunc, {(1, 0): one, (0, 1): one, (1, 1): ring.from_int(c)})
    return FormalGroupLaw(F, "multiplicative")


def fgl_from_series(F: TruncSeries, name: str = "") -> FormalGroupLaw:
    if F.vars != XY:
        F = F.rename(dict(zip(F.vars.names, ("x", "y"))))
    return FormalGroupLaw(F, name)


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class FglCheck:
    ok: bool
    axiom: str | None = None
    monomial: tuple | None = None
    failures: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def check_fgl(F: FormalGroupLaw) -> FglCheck:
    """Check unit, commutativity and associativity to truncation.

    ``axiom``/``monomial`` name the first failing axiom (in that order) and its
    lowest offending monomial in graded-lex order; ``failures`` lists all.
    """
    S = F.F
    ring = S.ring
    failures = {}
    x = TruncSeries.var(ring, XY, "x")
    y = TruncSeries.var(ring, XY, "y")
    zero = TruncSeries.zero(ring, XY)
    d1 = S.substitute({"x": x, "y": zero}).first_difference(x)
    d2 = S.substitute({"x": zero, "y": y}).first_difference(y)
    if d1 is not None or d2 is not None:
        cands = [d for d in (d1, d2) if d is not None]
        failures["unit"] = min(cands, key=lambda e: grlex_key(sum(e), e))
    swapped = S.substitute({"x": y, "y": x})
    d = S.first_difference(swapped)
    if d is not None:
        failures["commutativity"] = d
    xs = {n: TruncSeries.var(ring, XYZ, n) for n in "xyz"}
    Fxy = S.substitute({"x": xs["x"], "y": xs["y"]}, XYZ)
    Fyz = S.substitute({"x": xs["y"], "y": xs["z"]}, XYZ)
    left = S.substitute({"x": Fxy, "y": xs["z"]})
    right = S.substitute({"x": xs["x"], "y": Fyz})
    d = left.first_difference(right)
    if d is not None:
        failures["associativity"] = d
    if not failures:
        return FglCheck(True)
    first = next(a for a in ("unit", "commutativity", "associativity") if a in failures)
    return FglCheck(False, first, failures[first], failures)


# ---------------------------------------------------------------------------
# derived series


def formal_sum(F: FormalGroupLaw, u: TruncSeries, v: TruncSeries) -> TruncSeries:
    return F.F.substitute({"x": u, "y": v})


def formal_inverse(F: FormalGroupLaw) -> TruncSeries:
    """chi(x) with F(x, chi(x)) = 0, solved degree by degree."""
    ring, T = F.ring, F.trunc
    if T == INF:
        raise TruncationError("formal inverse needs a finite truncation")
    x = TruncSeries.var(ring, X, "x", T)
    chi = TruncSeries(ring, X, T, {(1,): ring.neg(ring.one())})
    for k in range(2, T + 1):
        r = formal_sum(F.truncate(k), x.truncate(k), chi.truncate(k))[(k,)]
        if not ring.is_zero(r):
            terms = dict(chi.terms)
            terms[(k,)] = ring.neg(r)
            chi = TruncSeries(ring, X, T, terms)
    return chi


def n_series(F: FormalGroupLaw, n: int) -> TruncSeries:
    """[n]_F(x) from [0] = 0, [a+b] = F([a], [b]) and [-n] = chi([n])."""
    ring, T = F.ring, F.trunc
    x = TruncSeries.var(ring, X, "x", T)
    if n == 0:
        return TruncSeries.zero(ring, X, T)
    if n < 0:
        return formal_inverse(F).compose(n_series(F, -n))
    result = None
    power = x
    k = n
    while k:
        if k & 1:
            result = power if result is None else formal_sum(F, result, power)
        k >>= 1
        if k:
            power = formal_sum(F, power, power)
    return result


def _rational_ring(ring: Ring) -> Ring:
    b = base_ring(ring)
    if isinstance(b, ModP):
        return ring
    return with_base(ring, QQ)


def invariant_form(F: FormalGroupLaw) -> TruncSeries:
    """w(x) = (dF/dy (x, 0))^{-1}, so that w(x) dx is the invariant differential."""
    ring, T = F.ring, F.trunc
    d = {(i,): c for (i, j), c in F.F.terms.items() if j == 1}
    return TruncSeries(ring, X, T - 1, d).inverse()


def logarithm(F: FormalGroupLaw) -> TruncSeries:
    """log_F = integral of the invariant form (coefficients moved to a Q-algebra)."""
    R = _rational_ring(F.ring)
    G = F.change_ring(R) if R != F.ring else F
    w = invariant_form(G)
    terms = {}
    for (n,), c in w.terms.items():
        terms[(n + 1,)] = R.divexact(c, R.from_int(n + 1))
    return TruncSeries(R, X, w.trunc + 1, terms)


def exponential(F: FormalGroupLaw) -> TruncSeries:
    return reversion(logarithm(F))


# ---------------------------------------------------------------------------
# reparametrization


def reparametrize(F: FormalGroupLaw, gamma: TruncSeries) -> FormalGroupLaw:
    """F^gamma(x, y) = gamma(F(gamma^{-1} x, gamma^{-1} y))."""
    if gamma.ring != F.ring:
        raise RingMismatch("gamma lives over another ring")
    g = gamma.rename({gamma.vars.names[0]: "x"}) if gamma.vars != X else gamma
    T = min(F.trunc, g.trunc)
    g = g.truncate(T)
    delta = reversion(g)
    xs = {n: TruncSeries.var(F.ring, XY, n) for n in "xy"}
    dx = delta.substitute({"x": xs["x"]}, XY)
    dy = delta.substitute({"x": xs["y"]}, XY)
    inner = F.truncate(T).F.substitute({"x": dx, "y": dy})
    return FormalGroupLaw(g.substitute({"x": inner}))


@dataclass(frozen=True)
class IntegralityCheck:
    ok: bool
    offender: tuple | None = None  # ((i, j), coefficient as Scalar over the localization)
    fgl: FormalGroupLaw | None = None

    def __bool__(self):
        return self.ok


def shifted_fgl_integral(F: FormalGroupLaw, gamma: TruncSeries) -> IntegralityCheck:
    """Is F^gamma, computed with b0 inverted, defined over the original ring?

    Supported when b0 is a nonzero integer (possibly inside a polynomial
    ring) or a unit.
    """
    ring = F.ring
    b0 = gamma[(1,)]
    if ring.is_zero(b0):
        raise NonInvertibleLeadingCoefficient("b0 = 0")
    if ring.is_unit(b0):
        G = reparametrize(F, gamma)
        return IntegralityCheck(True, None, G)
    n = _as_integer(ring, b0)
    if n is None:
        raise NonInvertibleLeadingCoefficient("b0 must be an integer or a unit for this test")
    L = localize(ring, [n])
    G = reparametrize(F.change_ring(L), gamma.change_ring(L))
    for e, c in G.F.sorted_terms():
        try:
            ring.coerce(c, L)
        except Exception:
            return IntegralityCheck(False, (e, Scalar(L, c)), G)
    return IntegralityCheck(True, None, G)


def _as_integer(ring: Ring, c) -> int | None:
    if isinstance(ring, PolyRing):
        if set(c) != {ring.zero_exp}:
            return None
        return _as_integer(ring.base, c[ring.zero_exp])
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else None
    if isinstance(c, int) and not isinstance(ring, ModP):
        return c
    return None


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class ComposedMap:
    """``second`` after ``first`` for coefficient-ring maps."""

    first: Any
    second: Any

    @property
    def source(self):
        return self.first.source

    @property
    def target(self):
        return self.second.target

    def __call__(self, a):
        return self.second(self.first(a))

    def __eq__(self, other):
        return isinstance(other, ComposedMap) and self.first == other.first and self.second == other.second

    def __hash__(self):
        return hash((self.first, self.second))


@dataclass(frozen=True, eq=False)
class FglMorphism:
    """(phi, gamma): F_src -> F_tgt with phi(F_src)(gamma(u), gamma(v)) = gamma(F_tgt(u, v))."""

    source: FormalGroupLaw
    target: FormalGroupLaw
    phi: Callable
    gamma: TruncSeries

    def __post_init__(self):
        if self.gamma.ring != self.target.ring:
            raise RingMismatch("gamma must live over the target ring")
        if not self.gamma.ring.is_zero(self.gamma.constant_term()):
            raise ValueError("gamma must have zero constant term")

    @property
    def b0(self):
        return self.gamma[(1,)]

    def phi_fgl(self) -> FormalGroupLaw:
        """phi(F_src), a law over the target ring."""
        return FormalGroupLaw(self.source.F.map_coefficients(self.phi, self.target.ring))


def identity_morphism(F: FormalGroupLaw) -> FglMorphism:
    return FglMorphism(F, F, RingMap.identity(F.ring), F.x())


def adams_morphism(F: FormalGroupLaw, k: int) -> FglMorphism:
    return FglMorphism(F, F, RingMap.identity(F.ring), n_series(F, k))


@dataclass(frozen=True)
class MorphismCheck:
    ok: bool
    monomial: tuple | None = None

    def __bool__(self):
        return self.ok


def morphism_check(m: FglMorphism) -> MorphismCheck:
    G = m.phi_fgl()
    ring = m.target.ring
    xs = {n: TruncSeries.var(ring, XY, n) for n in "xy"}
    g = m.gamma
    gx = g.substitute({"x": xs["x"]}, XY)
    gy = g.substitute({"x": xs["y"]}, XY)
    lhs = G.F.substitute({"x": gx, "y": gy})
    rhs = g.substitute({"x": m.target.F})
    d = lhs.first_difference(rhs)
    return MorphismCheck(d is None, d)


def compose_morphisms(h: FglMorphism, g: FglMorphism) -> FglMorphism:
    """h after g: (phi_h o phi_g, phi_h(gamma_g)(gamma_h(x)))."""
    if g.target is not h.source and not _same_fgl(g.target, h.source):
        raise IncompatibleMorphisms("target of g is not the source of h")
    ring = h.target.ring
    gg = g.gamma.map_coefficients(h.phi, ring)
    gamma = gg.compose(h.gamma)
    phi = _compose_maps(g.phi, h.phi)
    return FglMorphism(g.source, h.target, phi, gamma)


def _compose_maps(first, second):
    if isinstance(first, RingMap) and isinstance(second, RingMap):
        if first.source == first.target and not first.images:
            return second
        if second.source == second.target and not second.images:
            return first
        return first.then(second)
    return ComposedMap(first, second)


def add_morphisms(g: FglMorphism, h: FglMorphism) -> FglMorphism:
    """(phi, beta) + (phi, gamma) = (phi, phi(F_src)(beta(x), gamma(x)))."""
    if not (_same_fgl(g.source, h.source) and _same_fgl(g.target, h.target)):
        raise IncompatibleMorphisms("morphisms have different source or target")
    if not (g.phi == h.phi):
        raise IncompatibleMorphisms("addition needs identical coefficient maps")
    G = g.phi_fgl()
    return FglMorphism(g.source, g.target, g.phi, formal_sum(G, g.gamma, h.gamma))


def _same_fgl(a: FormalGroupLaw, b: FormalGroupLaw) -> bool:
    return a is b or (a.ring == b.ring and a.F == b.F and a.trunc == b.trunc)


def is_stable(m: FglMorphism) -> bool:
    """A multiplicative operation is stable exactly when b0 = 1."""
    return m.target.ring.eq(m.b0, m.target.ring.one())


# ---------------------------------------------------------------------------
# characteristic p and arithmetic helpers


def frobenius_height(gamma: TruncSeries) -> tuple[int, TruncSeries]:
    """Largest k with gamma(x) = delta(x^(p^k)); returns (k, delta)."""
    p = gamma.ring.characteristic
    if not p:
        raise ValueError("frobenius_height needs a ring of positive characteristic")
    if gamma.is_zero():
        raise ZeroSeries("gamma = 0")
    k = None
    for (e,) in gamma.terms:
        v = 0
        while e % p == 0:
            e //= p
            v += 1
        k = v if k is None else min(k, v)
    q = p ** k
    delta = TruncSeries(gamma.ring, gamma.vars, gamma.trunc // q if gamma.trunc != INF else INF,
                        {(e // q,): c for (e,), c in gamma.terms.items()})
    return k, delta


def dr_gcd(r: int) -> int:
    """gcd of binom(r, i) for 0 < i < r."""
    if r < 2:
        raise ValueError("r >= 2 required")
    g = 0
    for i in range(1, r):
        g = gcd(g, comb(r, i))
    return g


def dr_closed_form(r: int) -> int:
    """p if r is a power of the prime p, else 1."""
    n = r
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    while n % p == 0:
        n //= p
    return p if n == 1 else 1


def todd_series(gamma: TruncSeries, roots: Sequence[TruncSeries]) -> TruncSeries:
    """prod_i (gamma(x)/x)(lambda_i)."""
    ring = gamma.ring
    if not ring.is_unit(gamma[(1,)]):
        raise NonInvertibleLeadingCoefficient("leading coefficient of gamma is not a unit")
    if not roots:
        raise ValueError("at least one root needed")
    h = TruncSeries(ring, X, gamma.trunc - 1, {(e - 1,): c for (e,), c in gamma.terms.items()})
    vt = roots[0].vars
    out = TruncSeries.one(ring, vt)
    for lam in roots:
        hx = h.substitute({"x": lam}) if h.trunc != INF else _eval_poly(h, lam)
        out = out * hx
    return out


def _eval_poly(h: TruncSeries, lam: TruncSeries) -> TruncSeries:
    one = TruncSeries.one(h.ring, lam.vars)
    acc = TruncSeries.zero(h.ring, lam.vars)
    for (e,), c in sorted(h.terms.items()):
        acc = acc + (lam ** e if e else one).scale(c)
    return acc
