"""Additive operations as Lazard-linear functionals on Lazard[B1, B2, ...].

An additive operation G : Omega^n -> A^m (over Q) is psi o S, where S is the
total Landweber-Novikov operation and psi sends the monomial B^r to a value
in Lazard ⊗ Q of weight |r| - (m - n).  Whether G is integral can be tested
on the elements ``alpha z^I`` of products of projective spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from ..cobordism import ProjProductRing
from ..errors import NonHomogeneous, SingularSystem
from ..lazard import LazardCtx, _partitions, member
from ..scalars import QQ, PolyRing, Scalar
from .multiplicative import ln_morphism, ln_total

__all__ = [
    "PsiFunctional",
    "Certificate",
    "ClassifyResult",
    "counit",
    "psi_indicator",
    "rbar_weight",
    "multi_indices",
    "integrality_classify",
    "decompose_additive",
    "apply_psi_on_lazard",
]


def rbar_weight(r: tuple) -> int:
    return sum((k + 1) * c for k, c in enumerate(r))


def _norm(r: Iterable[int], N: int) -> tuple:
    r = tuple(int(c) for c in r)
    if any(r[N:]):
        raise ValueError("multi-index longer than the truncation")
    r = r[:N]
    return r + (0,) * (N - len(r))


def multi_indices(N: int, deg: int) -> list[tuple]:
    """All (r1..rN) with sum k r_k = deg, in a fixed order."""
    if deg == 0:
        return [(0,) * N]
    if N == 0:
        return []
    return [tuple(p) for p in sorted(_partitions(deg, N), key=lambda e: tuple(-c for c in e))]


def _qring(ctx: LazardCtx) -> PolyRing:
    return PolyRing(QQ, ctx.ring.gens, ctx.ring.weights, ctx.ring.trunc)


@dataclass(eq=False)
class PsiFunctional:
    """psi on B-monomials of weight <= ``bound``; missing monomials map to 0."""

    ctx: LazardCtx
    shift: int  # m - n
    values: dict = field(default_factory=dict)  # normalized rbar -> raw value over Q[b]
    bound: int | None = None

    def __post_init__(self):
        Q = _qring(self.ctx)
        N = self.ctx.trunc
        clean = {}
        for r, v in self.values.items():
            r = _norm(r, N)
            if isinstance(v, Scalar):
                v = Q.coerce(v.value, v.ring)
            elif isinstance(v, (int, Fraction)):
                v = Q.const(Fraction(v))
            elif v and not isinstance(next(iter(v.values())), Fraction):
                v = Q.coerce(v, self.ctx.ring)
            if Q.is_zero(v):
                continue
            want = rbar_weight(r) - self.shift
            degs = {Q.deg(e) for e in v}
            if degs != {want}:
                raise NonHomogeneous(f"psi(B^{r}) must be homogeneous of weight {want}")
            clean[r] = v
        self.values = clean
        if self.bound is None:
            self.bound = max((rbar_weight(r) for r in clean), default=0)

    @property
    def ring(self) -> PolyRing:
        return _qring(self.ctx)

    def __call__(self, r) -> object:
        r = _norm(r, self.ctx.trunc)
        return self.values.get(r, self.ring.zero())

    def to_json(self) -> dict:
        Q = self.ring
        return {
            "trunc": self.ctx.trunc,
            "shift": self.shift,
            "bound": self.bound,
            "values": [[list(r), Q.to_json(v)] for r, v in sorted(self.values.items())],
        }

    @classmethod
    def from_json(cls, ctx: LazardCtx, obj) -> "PsiFunctional":
        Q = _qring(ctx)
        vals = {}
        for r, v in obj["values"]:
            vals[tuple(r)] = Q.from_json(v) if not isinstance(v, (int, str)) else Q.const(Fraction(v))
        return cls(ctx, int(obj.get("shift", 0)), vals, obj.get("bound"))


def counit(ctx: LazardCtx) -> PsiFunctional:
    """1 on B^0, 0 elsewhere: the identity operation."""
    return PsiFunctional(ctx, 0, {(): 1})


def psi_indicator(ctx: LazardCtx, r, value=1) -> PsiFunctional:
    """``value`` on B^r and 0 elsewhere; with value 1 this is S^r."""
    r = _norm(r, ctx.trunc)
    return PsiFunctional(ctx, rbar_weight(r) - _value_weight(ctx, value), {r: value})


def _value_weight(ctx: LazardCtx, value) -> int:
    if isinstance(value, (int, Fraction)):
        return 0
    raw = value.value if isinstance(value, Scalar) else value
    degs = {ctx.ring.deg(e) for e in raw}
    if len(degs) != 1:
        raise NonHomogeneous("value must be homogeneous")
    return degs.pop()


# ---------------------------------------------------------------------------
# the classifier


@dataclass(frozen=True)
class Certificate:
    r: int
    exponents: tuple
    alpha_index: tuple  # (weight, index in the lattice basis)
    monomial: tuple
    vector: tuple  # coordinates in the b-monomial basis (rational)
    value: str

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "exponents": list(self.exponents),
            "alpha": list(self.alpha_index),
            "monomial": list(self.monomial),
            "vector": [str(c) for c in self.vector],
            "value": self.value,
        }


@dataclass(frozen=True)
class ClassifyResult:
    ok: bool
    certificate: Certificate | None
    bounds: dict
    checked: int

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "verdict": "pass" if self.ok else "certificate",
            "bounds": self.bounds,
            "checked": self.checked,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
        }


def _compositions(total: int, parts: int):
    """Exponent vectors with ``parts`` entries, each >= 1, summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total - parts + 1, 0, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _ln_split(ctx: LazardCtx, key, make):
    cache = ctx._cache.setdefault("ln_split", {})
    if key not in cache:
        cache[key] = make()
    return cache[key]


def _ln_data(ctx: LazardCtx, r: int, I: tuple, w: int, k: int, top: int):
    """For alpha_k z^I: {z-monomial J: {rbar: raw Lazard coefficient}} with |J| <= top."""

    def make():
        R = ProjProductRing.make(ctx.F_U, [top] * r, trunc=top)
        alpha = ctx.basis(w)[k]
        e = R.element({I: alpha})
        tot = ln_total(ctx, e)
        nb = len(ctx.ring.gens)
        out: dict = {}
        for J, c in tot.poly.terms.items():
            split: dict = {}
            for ex, v in c.items():
                rb = ex[nb:]
                d = split.setdefault(rb, {})
                d[ex[:nb]] = v
            out[J] = split
        return out

    return _ln_split(ctx, (r, I, w, k, top), make)


def integrality_classify(ctx: LazardCtx, psi: PsiFunctional, n: int, m: int, r_max: int, deg_max: int,
                         jobs: int = 1) -> ClassifyResult:
    """Test psi o S on alpha z^I for r <= r_max factors, alpha of weight <= deg_max.

    Only output monomials of degree <= n + deg_max are examined, so only psi
    on B-monomials of weight <= deg_max matters.  A certificate is definitive;
    a pass holds up to the stated bounds.  The first failure in the order
    (r, I, alpha) is reported.
    """
    if psi.shift != m - n:
        raise ValueError(f"psi has degree shift {psi.shift}, expected {m - n}")
    need = max(deg_max, n + deg_max - m)
    if ctx.trunc < need:
        raise ValueError(f"context truncation {ctx.trunc} is below the required {need}")
    Q = psi.ring
    bounds = {"n": n, "m": m, "r_max": r_max, "deg_max": deg_max, "trunc": ctx.trunc}
    checked = 0
    tasks = []
    for r in range(0, r_max + 1):
        for w in range(0, deg_max + 1):
            size = n + w
            if size < 0 or (r == 0 and size != 0) or (r > 0 and size < r):
                continue
            for I in _compositions(size, r):
                for k in range(len(ctx.basis(w))):
                    tasks.append((r, I, w, k))
    tasks.sort(key=lambda t: (t[0], tuple(-c for c in t[1]), t[2], t[3]))

    def run(task):
        r, I, w, k = task
        top = n + deg_max
        data = _ln_data(ctx, r, I, w, k, top)
        for J in sorted(data, key=lambda J: (sum(J), tuple(-c for c in J))):
            acc = Q.zero()
            for rb, lam in data[J].items():
                v = psi(rb)
                if not Q.is_zero(v):
                    acc = Q.add(acc, Q.mul(v, Q.coerce(lam, ctx.ring)))
            if Q.is_zero(acc):
                continue
            if not member(ctx, acc):
                wt = Q.deg(next(iter(acc)))
                vec = tuple(ctx.vector(acc, wt))
                return Certificate(r, I, (w, k), J, vec, Q.fmt(acc))
        return None

    for task in tasks:
        checked += 1
        cert = run(task)
        if cert is not None:
            return ClassifyResult(False, cert, bounds, checked)
    return ClassifyResult(True, None, bounds, checked)


# ---------------------------------------------------------------------------
# recovering psi from an operation on the coefficient ring


def _phi_ln_on_b(ctx: LazardCtx):
    """b_k -> e_k(b, B), where beta_B(beta_b(x)) = x + sum e_k x^(k+1), over Q."""
    key = ("ln_on_b",)
    if key not in ctx._cache:
        from ..lazard import twist_series
        from .multiplicative import ln_ring

        TR = ln_ring(ctx)
        TQ = PolyRing(QQ, TR.gens, TR.weights, ctx.trunc)
        N = ctx.trunc
        bb = twist_series(TQ, N, "b")
        BB = twist_series(TQ, N, "B")
        comp = BB.substitute({"x": bb})
        ctx._cache[key] = (TQ, [comp[(k + 1,)] for k in range(1, N + 1)])
    return ctx._cache[key]


def _image_of_b_monomial(ctx: LazardCtx, s: tuple):
    TQ, es = _phi_ln_on_b(ctx)
    acc = TQ.one()
    for k, c in enumerate(s):
        for _ in range(c):
            acc = TQ.mul(acc, es[k])
    return TQ, acc


def decompose_additive(ctx: LazardCtx, G: Callable, shift: int, D: int) -> PsiFunctional:
    """The functional psi with psi o S = G on the Lazard ring, up to weight D.

    ``G`` maps a Lazard element (raw, over Z) of weight w to an element of
    weight w - shift (raw over Z or Q, or a Scalar).  G is extended to
    Lazard ⊗ Q = Q[b] linearly; since S(b^s) = e(b, B)^s has the single
    weight-zero term B^s, the system is unitriangular and solved by
    induction on |s|.
    """
    if D > ctx.trunc:
        raise ValueError("D exceeds the context truncation")
    Q = _qring(ctx)
    N = ctx.trunc
    nb = len(ctx.ring.gens)
    psi_vals: dict = {}

    def g_on(x, w):
        coords = ctx.coordinates(x, w)
        acc = Q.zero()
        if coords is None:
            raise SingularSystem("element outside the rational span of the lattice")
        for c, bvec in zip(coords, ctx.basis(w)):
            if c:
                y = G(bvec)
                y = y.value if isinstance(y, Scalar) else y
                y = Q.coerce(y, _src_ring(ctx, y))
                acc = Q.add(acc, Q.scale(y, Fraction(c)))
        return acc

    for d in range(0, D + 1):
        for s in multi_indices(N, d):
            bmono = {s: 1}
            rhs = g_on(bmono, d)
            TQ, img = _image_of_b_monomial(ctx, s)
            diag = None
            for ex, c in img.items():
                rb, bx = ex[nb:], ex[:nb]
                if rb == s:
                    if any(bx):
                        raise SingularSystem("unexpected b-dependence on the diagonal")
                    diag = c
                    continue
                if rbar_weight(rb) >= d:
                    if c:
                        raise SingularSystem(f"off-diagonal term B^{rb} of weight >= {d}")
                    continue
                if rb in psi_vals:
                    rhs = Q.sub(rhs, Q.mul(psi_vals[rb], {bx: c}))
            if diag is None or diag == 0:
                raise SingularSystem(f"no diagonal entry for B^{s}")
            val = Q.divexact(rhs, Q.const(Fraction(diag)))
            if not Q.is_zero(val):
                psi_vals[s] = val
    return PsiFunctional(ctx, shift, psi_vals, D)


def _src_ring(ctx: LazardCtx, y):
    if y and isinstance(next(iter(y.values())), Fraction):
        return _qring(ctx)
    return ctx.ring


def apply_psi_on_lazard(ctx: LazardCtx, psi: PsiFunctional, x):
    """(psi o S)(x) for a Lazard element x, over Q[b]."""
    Q = psi.ring
    m = ln_morphism(ctx)
    img = m.phi(x.value if isinstance(x, Scalar) else x)
    nb = len(ctx.ring.gens)
    acc = Q.zero()
    for ex, c in img.items():
        v = psi(ex[nb:])
        if not Q.is_zero(v):
            acc = Q.add(acc, Q.mul(v, {ex[:nb]: Fraction(c)}))
    return acc
