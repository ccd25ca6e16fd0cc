"""Multiplicative operations from morphisms of formal group laws.

A morphism ``(phi, gamma)`` acts on ``A*(P^n1 x ... x P^nr)`` by mapping
coefficients through ``phi`` and substituting ``z_i -> gamma(z_i)``.
"""

from __future__ import annotations

import weakref
from typing import Sequence

from ..cobordism import CobElement, ProjProductRing, to_chern_basis
from ..errors import MorphismInvalid, RingMismatch
from ..fgl import FglMorphism, FormalGroupLaw, adams_morphism, is_stable, morphism_check
from ..lazard import LazardCtx, lazard_phi, twist_series
from ..scalars import PolyRing, ZZ
from ..series import INF, TruncSeries, VarTable

__all__ = [
    "mult_op_from_morphism",
    "ln_morphism",
    "ln_ring",
    "ln_total",
    "ln_component",
    "ln_geometric",
    "adams",
    "is_stable",
]

_checked: "weakref.WeakKeyDictionary[FglMorphism, bool]" = weakref.WeakKeyDictionary()


def _z_image(gamma: TruncSeries, name: str, vt: VarTable) -> TruncSeries:
    """gamma(z) in the variables ``vt``; exact when the cap on z lies within gamma's precision."""
    g = gamma.rename({gamma.vars.names[0]: name}).embed(vt)
    cap = vt.cap_of(name)
    if cap is not None and cap <= gamma.trunc:
        return TruncSeries(g.ring, vt, INF, g.terms)
    return g


def mult_op_from_morphism(m: FglMorphism, e: CobElement, check: bool = True) -> CobElement:
    """H(f(z_1..z_r)) = phi(f)(gamma(z_1), ..., gamma(z_r))."""
    R = e.ring
    src = R.theory
    if src is not m.source and (src.ring != m.source.ring or src.F != m.source.F):
        raise RingMismatch("element does not live over the source theory of the morphism")
    if check:
        ok = _checked.get(m)
        if ok is None:
            ok = bool(morphism_check(m))
            _checked[m] = ok
        if not ok:
            raise MorphismInvalid("the pair (phi, gamma) is not a morphism of formal group laws")
    S = ProjProductRing(m.target, R.bounds, R.trunc, R.names)
    vt = S.vars
    poly = e.poly.map_coefficients(m.phi, m.target.ring)
    binds = {n: _z_image(m.gamma, n, vt) for n in R.names}
    return S.from_series(poly.substitute(binds, vt) if binds else poly)


# ---------------------------------------------------------------------------
# Landweber-Novikov


def ln_ring(ctx: LazardCtx, prefix: str = "B") -> PolyRing:
    """Z[b1..bN, B1..BN]: Lazard coefficients plus the operation parameters."""
    N = ctx.trunc
    gens = tuple(ctx.ring.gens) + tuple(f"{prefix}{k}" for k in range(1, N + 1))
    weights = tuple(ctx.ring.weights) + tuple(range(1, N + 1))
    return PolyRing(ZZ, gens, weights)


def ln_morphism(ctx: LazardCtx) -> FglMorphism:
    """(phi_LN, x + B1 x^2 + ... + BN x^(N+1)) from the universal law to itself over Z[b][B]."""
    key = ("ln_morphism",)
    if key not in ctx._cache:
        T = ln_ring(ctx)
        target = ctx.F_U.change_ring(T)
        beta = twist_series(T, ctx.trunc, "B")
        phi = lazard_phi(ctx, target, beta)
        ctx._cache[key] = FglMorphism(ctx.F_U, target, phi, beta)
    return ctx._cache[key]


def ln_total(ctx: LazardCtx, e: CobElement) -> CobElement:
    """Total Landweber-Novikov operation; coefficients land in Lazard[B1, B2, ...]."""
    return mult_op_from_morphism(ln_morphism(ctx), e)


def _split_B(ctx: LazardCtx, T: PolyRing, raw, rbar: tuple):
    nb = len(ctx.ring.gens)
    want = tuple(rbar) + (0,) * (len(T.gens) - nb - len(rbar))
    out = {}
    for ex, c in raw.items():
        if ex[nb:] == want:
            out[ex[:nb]] = c
    return out


def ln_component(ctx: LazardCtx, rbar: Sequence[int], e: CobElement) -> CobElement:
    """S^rbar(e): the coefficient of B^rbar in the total operation.

    ``rbar = (r1, r2, ...)`` is the exponent vector of (B1, B2, ...).
    """
    rbar = tuple(rbar)
    if len(rbar) > ctx.trunc and any(rbar[ctx.trunc:]):
        raise ValueError("multi-index longer than the truncation of the context")
    rbar = rbar[: ctx.trunc]
    tot = ln_total(ctx, e)
    T = tot.ring.scalars
    out = {}
    for ex, c in tot.poly.terms.items():
        part = _split_B(ctx, T, c, rbar)
        if part:
            out[ex] = part
    R = e.ring
    return CobElement(R, TruncSeries(ctx.ring, R.vars, tot.poly.trunc, out))


def ln_geometric(ctx: LazardCtx, roots: Sequence[str], rbar: Sequence[int], prefix: str = "c") -> TruncSeries:
    """Coefficient of B^rbar in prod_j (1 + l_j B1 + l_j^2 B2 + ...), in Chern classes of the roots.

    Pushing this class forward along v gives S^rbar([v]) when the roots are
    those of the virtual normal bundle of v.
    """
    rbar = tuple(rbar)
    deg = sum((k + 1) * r for k, r in enumerate(rbar))
    roots = list(roots)
    vt = VarTable.of(*roots)
    ring = ZZ
    Bs = len(rbar)
    # expand in B one variable at a time: the B^rbar coefficient of
    # prod_j sum_k l_j^k B_k is a sum over assignments of B-factors to roots
    acc = {(0,) * Bs: TruncSeries.one(ring, vt)}
    for name in roots:
        lam = TruncSeries.var(ring, vt, name)
        pw = {0: TruncSeries.one(ring, vt)}
        new = {}
        for key, s in acc.items():
            for k in range(Bs + 1):
                if k == 0:
                    nk = key
                else:
                    if key[k - 1] >= rbar[k - 1]:
                        continue
                    nk = key[: k - 1] + (key[k - 1] + 1,) + key[k:]
                if k not in pw:
                    pw[k] = lam ** k
                term = s * pw[k]
                new[nk] = new[nk] + term if nk in new else term
        acc = new
    res = acc.get(rbar, TruncSeries.zero(ring, vt))
    res = res.truncate(deg)
    return to_chern_basis(res, roots, prefix)


# ---------------------------------------------------------------------------
# Adams


def adams(F: FormalGroupLaw, k: int, e: CobElement) -> CobElement:
    """Psi_k: coefficients fixed, z -> [k](z)."""
    return mult_op_from_morphism(adams_morphism(F, k), e, check=False)
