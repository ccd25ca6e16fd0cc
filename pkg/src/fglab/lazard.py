"""The Lazard ring, realized inside Z[b1, b2, ...].

Twisting the additive law by ``beta(x) = x + b1 x^2 + ... + bN x^(N+1)``
gives a law ``F_U = beta(beta^{-1} x + beta^{-1} y)`` whose coefficients
generate a subring isomorphic to the Lazard ring (in degrees <= N).  All
questions about Lazard elements become integer linear algebra in the
b-monomial basis, degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import IndexOutOfRange, InexactDivision, NonHomogeneous, NotInLattice, RingMismatch
from .fgl import (
    X,
    XY,
    FglMorphism,
    FormalGroupLaw,
    invariant_form,
    reparametrize,
    shifted_fgl_integral,
)
from .lattice import IntegerLattice, hnf, hnf_with_transform, lattice_member
from .scalars import QQ, ZZ, PolyRing, Ring, Scalar, localize
from .series import TruncSeries, reversion

AMono = tuple  # tuple of (i, j) pairs, sorted


def twist_series(ring: PolyRing, N: int, prefix: str = "b") -> TruncSeries:
    """x + b1 x^2 + ... + bN x^(N+1) over ``ring``."""
    terms = {(1,): ring.one()}
    for k in range(1, N + 1):
        terms[(k + 1,)] = ring.gen(f"{prefix}{k}")
    return TruncSeries(ring, X, N + 1, terms)


def _partitions(n: int, maxpart: int):
    """Partitions of n with parts <= maxpart, as multiplicity vectors."""
    out = []

    def rec(rest, k, mult):
        if rest == 0:
            out.append(tuple(mult))
            return
        if k == 0:
            return
        for c in range(rest // k, -1, -1):
            mult[k - 1] = c
            rec(rest - c * k, k - 1, mult)
        mult[k - 1] = 0

    rec(n, maxpart, [0] * maxpart)
    return out


@dataclass(eq=False)
class LazardCtx:
    trunc: int
    ring: PolyRing
    F_U: FormalGroupLaw
    pn: dict
    _lattices: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    # -- generators and monomials ---------------------------------------
    def a(self, i: int, j: int):
        return self.F_U.a(i, j)

    @property
    def a_table(self) -> dict:
        return {(i, j): Scalar(self.ring, c) for (i, j), c in sorted(self.F_U.F.terms.items())}

    def generators(self, max_degree: int | None = None) -> list[tuple[int, int]]:
        """a_ij with 1 <= i <= j and degree i + j - 1 <= max_degree."""
        top = self.trunc if max_degree is None else max_degree
        return [(i, d + 1 - i) for d in range(1, top + 1) for i in range(1, (d + 1) // 2 + 1)]

    def b_monomials(self, n: int) -> list[tuple]:
        key = ("bmon", n)
        if key not in self._cache:
            self._check_degree(n)
            mons = _partitions(n, self.trunc) if self.trunc else ([()] if n == 0 else [])
            self._cache[key] = sorted(mons, key=lambda e: tuple(-k for k in e))
        return self._cache[key]

    def _bindex(self, n: int) -> dict:
        key = ("bidx", n)
        if key not in self._cache:
            self._cache[key] = {e: k for k, e in enumerate(self.b_monomials(n))}
        return self._cache[key]

    def a_monomials(self, n: int) -> list[AMono]:
        """Monomials in the a_ij (i <= j) of total degree n, in a fixed order."""
        key = ("amon", n)
        if key not in self._cache:
            self._check_degree(n)
            gens = self.generators(n)
            out = []

            def rec(rest, start, acc):
                if rest == 0:
                    out.append(tuple(acc))
                    return
                for k in range(start, len(gens)):
                    i, j = gens[k]
                    d = i + j - 1
                    if d <= rest:
                        acc.append(gens[k])
                        rec(rest - d, k, acc)
                        acc.pop()

            rec(n, 0, [])
            self._cache[key] = out
        return self._cache[key]

    def a_monomial_poly(self, mono: AMono):
        key = ("apoly", mono)
        c = self._cache
        if key not in c:
            if not mono:
                c[key] = self.ring.one()
            else:
                c[key] = self.ring.mul(self.a_monomial_poly(mono[:-1]), self.a(*mono[-1]))
        return c[key]

    def _check_degree(self, n: int):
        if n < 0 or n > self.trunc:
            raise IndexOutOfRange(f"degree {n} outside 0..{self.trunc}")

    # -- vectors ---------------------------------------------------------
    def vector(self, x, n: int | None = None) -> list:
        """Coefficient vector of a homogeneous polynomial in the b-monomial basis."""
        x = _raw(x)
        if not x:
            return [0] * len(self.b_monomials(n or 0))
        degs = {self.ring.deg(e) for e in x}
        if len(degs) != 1:
            raise NonHomogeneous("element is not homogeneous")
        d = degs.pop()
        if n is not None and d != n:
            raise NonHomogeneous(f"element has degree {d}, expected {n}")
        idx = self._bindex(d)
        v = [0] * len(idx)
        for e, c in x.items():
            v[idx[e]] = c
        return v

    def from_vector(self, v: Sequence, n: int, ring: Ring | None = None):
        ring = ring or self.ring
        out = {}
        for e, c in zip(self.b_monomials(n), v):
            if c:
                if isinstance(c, Fraction) and c.denominator != 1:
                    out[e] = ring.base.coerce(c, QQ)
                else:
                    out[e] = ring.base.from_int(int(c))
        return out

    # -- lattices --------------------------------------------------------
    def _solver(self, n: int):
        key = ("solver", n)
        if key not in self._cache:
            monos = self.a_monomials(n)
            vecs = [self.vector(self.a_monomial_poly(m), n) for m in monos]
            chosen: list[int] = []
            rows: list = []
            dim = len(self.b_monomials(n))
            for k, v in enumerate(vecs):
                if not any(v):
                    continue
                if rows and lattice_member(v, IntegerLattice(dim, tuple(map(tuple, rows)))):
                    continue
                chosen.append(k)
                rows = hnf(rows + [v])
            H, U = hnf_with_transform([vecs[k] for k in chosen]) if chosen else ([], [])
            self._cache[key] = ([monos[k] for k in chosen], H, U)
            if n not in self._lattices:
                self._lattices[n] = IntegerLattice(dim, tuple(tuple(r) for r in H), n)
        return self._cache[key]

    def lattice(self, n: int) -> IntegerLattice:
        if n not in self._lattices:
            self._check_degree(n)
            self._solver(n)
        return self._lattices[n]

    @property
    def lattices(self) -> dict[int, IntegerLattice]:
        return {n: self.lattice(n) for n in range(self.trunc + 1)}

    def basis(self, n: int) -> list:
        """Z-basis of the degree-n part, as polynomials (HNF rows)."""
        return [self.from_vector(row, n) for row in self.lattice(n).basis]

    def coordinates(self, x, n: int | None = None) -> list[Fraction] | None:
        x = _raw(x)
        if not x:
            return [Fraction(0)] * self.lattice(n or 0).rank
        if n is None:
            n = self.ring.deg(next(iter(x)))
        self._check_degree(n)
        return self.lattice(n).coordinates(self.vector(x, n))

    def to_json(self) -> dict:
        return {
            "trunc": self.trunc,
            "b_ring": self.ring.descriptor(),
            "a_table": [[i, j, self.ring.to_json(c)] for (i, j), c in sorted(self.F_U.F.terms.items())],
            "pn": [[n, self.ring.to_json(c)] for n, c in sorted(self.pn.items())],
            "lattices": [self.lattice(n).to_json() for n in range(self.trunc + 1)],
        }

    @classmethod
    def from_json(cls, obj) -> "LazardCtx":
        N = int(obj["trunc"])
        ring = PolyRing.graded(ZZ, "b", N)
        terms = {(int(i), int(j)): ring.from_json(c) for i, j, c in obj["a_table"]}
        F = FormalGroupLaw(TruncSeries(ring, XY, N + 1, terms), "universal")
        pn = {int(n): ring.from_json(c) for n, c in obj["pn"]}
        lats = {}
        for lj in obj.get("lattices", []):
            lat = IntegerLattice.from_json(lj)
            lats[lat.degree] = lat
        return cls(N, ring, F, pn, lats)


def _raw(x):
    return x.value if isinstance(x, Scalar) else x


def build_ctx(N: int) -> LazardCtx:
    if N < 0:
        raise ValueError("N >= 0 required")
    ring = PolyRing.graded(ZZ, "b", N)
    beta = twist_series(ring, N)
    binv = reversion(beta)
    u = binv.substitute({"x": TruncSeries.var(ring, XY, "x")}, XY)
    v = binv.substitute({"x": TruncSeries.var(ring, XY, "y")}, XY)
    F = beta.substitute({"x": u + v})
    F_U = FormalGroupLaw(F, "universal")
    w = invariant_form(F_U)
    pn = {n: w[(n,)] for n in range(N + 1)}
    ctx = LazardCtx(N, ring, F_U, pn)
    for n in range(N + 1):
        ctx.lattice(n)
    return ctx


def lazard_rank(ctx: LazardCtx, n: int) -> int:
    return ctx.lattice(n).rank


def member(ctx: LazardCtx, x, inverted: Iterable[int] = ()) -> bool:
    """Is x (over Z, Q or a localization, in the b variables) in Lazard ⊗ Z[1/S]?"""
    x = _raw(x)
    if not x:
        return True
    n = _homogeneous_degree(ctx, x)
    return lattice_member(ctx.vector(x, n), ctx.lattice(n), tuple(inverted))


def _homogeneous_degree(ctx: LazardCtx, x) -> int:
    degs = {ctx.ring.deg(e) for e in x}
    if len(degs) != 1:
        raise NonHomogeneous("element is not homogeneous")
    n = degs.pop()
    ctx._check_degree(n)
    return n


def homogeneous_parts(ctx: LazardCtx, x) -> dict[int, dict]:
    return ctx.ring.homogeneous_parts(_raw(x))


def express_in_a_monomials(ctx: LazardCtx, x) -> dict[AMono, int]:
    """An integer combination of a-monomials equal to x.

    The solution is the one read off the Hermite form transform of a greedily
    chosen generating subset of a-monomials, so it is deterministic.
    """
    x = _raw(x)
    if not x:
        return {}
    n = _homogeneous_degree(ctx, x)
    monos, H, U = ctx._solver(n)
    coords = ctx.lattice(n).coordinates(ctx.vector(x, n))
    if coords is None or any(c.denominator != 1 for c in coords):
        raise NotInLattice(f"{ctx.ring.fmt(x)} is not in the Lazard ring")
    out: dict = {}
    for ci, row in zip(coords, U):
        ci = int(ci)
        if ci:
            for k, u in enumerate(row):
                if u:
                    out[monos[k]] = out.get(monos[k], 0) + ci * u
    return {m: c for m, c in out.items() if c}


def evaluate_a_combination(ctx: LazardCtx, combo: Mapping[AMono, int]):
    ring = ctx.ring
    acc = ring.zero()
    for m, c in combo.items():
        acc = ring.add(acc, ring.scale_int(ctx.a_monomial_poly(m), c))
    return acc


# ---------------------------------------------------------------------------
# ring maps out of the Lazard ring


@dataclass(frozen=True, eq=False)
class LazardPhi:
    """A homomorphism from the Lazard ring, given by the images of the a_ij."""

    ctx: LazardCtx
    target: Ring
    images: Mapping  # (i, j) -> raw target value

    @property
    def source(self) -> Ring:
        return self.ctx.ring

    def __eq__(self, other):
        if not isinstance(other, LazardPhi):
            return NotImplemented
        if other.ctx is not self.ctx or other.target != self.target:
            return False
        keys = set(self.images) | set(other.images)
        z = self.target.zero()
        return all(self.target.eq(self.images.get(k, z), other.images.get(k, z)) for k in keys)

    def __hash__(self):
        return hash((id(self.ctx), self.target))

    def image(self, i: int, j: int):
        if i > j:
            i, j = j, i
        if (i, j) not in self.images:
            raise IndexOutOfRange(f"no image for a_{i},{j} (degree beyond truncation)")
        return self.images[(i, j)]

    def monomial_image(self, mono: AMono):
        cache = self.__dict__.setdefault("_mcache", {})
        if mono not in cache:
            if not mono:
                cache[mono] = self.target.one()
            else:
                cache[mono] = self.target.mul(self.monomial_image(mono[:-1]), self.image(*mono[-1]))
        return cache[mono]

    def __call__(self, x):
        x = _raw(x)
        T = self.target
        acc = T.zero()
        for n, part in sorted(self.ctx.ring.homogeneous_parts(x).items()):
            for m, c in express_in_a_monomials(self.ctx, part).items():
                acc = T.add(acc, T.scale_int(self.monomial_image(m), c))
        return acc


def lazard_phi(ctx: LazardCtx, target: FormalGroupLaw, gamma: TruncSeries, inverted: Iterable[int] = ()) -> LazardPhi:
    """phi(a_ij) = coefficients of target^gamma (the law making gamma a morphism)."""
    ring = target.ring
    b0 = gamma[(1,)]
    inverted = tuple(inverted)
    if ring.is_unit(b0):
        G = reparametrize(target, gamma)
        out_ring = ring
    elif not inverted:
        chk = shifted_fgl_integral(target, gamma)
        if not chk.ok:
            raise InexactDivision(f"shifted law has denominators at {chk.offender[0]}: {chk.offender[1]}")
        G = chk.fgl
        out_ring = ring
    else:
        out_ring = localize(ring, inverted)
        G = reparametrize(target.change_ring(out_ring), gamma.change_ring(out_ring))
    src = G.ring
    images = {}
    for i, j in ctx.generators(min(ctx.trunc, G.trunc - 1)):
        images[(i, j)] = out_ring.coerce(G.a(i, j), src)
    return LazardPhi(ctx, out_ring, images)


def lazard_morphism(ctx: LazardCtx, target: FormalGroupLaw, gamma: TruncSeries, inverted: Iterable[int] = ()) -> FglMorphism:
    phi = lazard_phi(ctx, target, gamma, inverted)
    if phi.target != target.ring:
        target = target.change_ring(phi.target)
        gamma = gamma.change_ring(phi.target)
    return FglMorphism(ctx.F_U, target, phi, gamma)


def apply_phi(ctx: LazardCtx, m: FglMorphism, x) -> Scalar:
    """phi_m(x) for a Lazard element x, via an a-monomial expression."""
    if m.source is not ctx.F_U and m.source.F != ctx.F_U.F:
        raise RingMismatch("morphism does not start at the universal law of this context")
    phi = m.phi
    if not isinstance(phi, LazardPhi):
        phi = lazard_phi(ctx, m.target, m.gamma)
    return Scalar(phi.target, phi(x))
