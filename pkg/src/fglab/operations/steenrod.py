"""Total Steenrod operations St(i), the symmetric operation and tom Dieck's Sq.

Everything is homogeneous once t has degree 1 and b_k has degree -k, so the
computations run with t = 1 over ``Z[1/m][b1..bN]`` truncated in b-weight N
and the powers of t are restored afterwards: a term ``c z^J`` with c of
b-weight s in the image of an element of degree n gets ``t^(p n + s - |J|)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from ..cobordism import CobElement
from ..errors import BadRepresentatives, InexactDivision, TruncationError
from ..fgl import X, FormalGroupLaw, n_series
from ..lazard import LazardCtx, LazardPhi, member
from ..scalars import PolyRing, Ring, ZZ, localize, reduce_mod, specialize_to_zero
from ..series import INF, LaurentSeries, TruncSeries, VarTable

__all__ = [
    "LaurentOpValue",
    "SqValue",
    "default_reps",
    "check_reps",
    "steenrod_ring",
    "steenrod_gamma",
    "steenrod_st",
    "symmetric_phi",
    "tom_dieck_sq",
    "divide_by_D",
    "chp_gamma",
    "chp_specialize",
]

XT = VarTable.of("x", "t")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def default_reps(p: int, generator: int | None = None) -> tuple[int, ...]:
    """{-1} for p = 2, {1, -1} for p = 3, else g, g^2, ..., g^(p-1) mod p."""
    if p == 2:
        return (-1,)
    if p == 3:
        return (1, -1)
    if generator is None:
        raise BadRepresentatives(f"p = {p} needs a generator of (Z/{p})^*")
    return check_reps(p, tuple(pow(generator, k, p) for k in range(1, p)))


def check_reps(p: int, reps: Sequence[int]) -> tuple[int, ...]:
    if not _is_prime(p):
        raise BadRepresentatives(f"{p} is not prime")
    reps = tuple(int(i) for i in reps)
    if len(reps) != p - 1 or sorted(i % p for i in reps) != list(range(1, p)):
        raise BadRepresentatives(f"{reps} is not a set of representatives of the nonzero residues mod {p}")
    return reps


@dataclass(frozen=True, eq=False)
class _StData:
    p: int
    reps: tuple[int, ...]
    ring: PolyRing  # Z[1/m][b], truncated at weight N
    gamma1: TruncSeries  # gamma at t = 1, a polynomial in x
    phi: LazardPhi
    D: tuple  # raw coefficients d_0 = p, d_1, ..., d_N of [p](t)/t


def steenrod_ring(ctx: LazardCtx, reps: Sequence[int]) -> PolyRing:
    m = prod(reps)
    base: Ring = ZZ if abs(m) == 1 else localize(ZZ, [m])
    return PolyRing(base, ctx.ring.gens, ctx.ring.weights, ctx.trunc)


def _data(ctx: LazardCtx, p: int, reps: Sequence[int] | None) -> _StData:
    reps = check_reps(p, default_reps(p) if reps is None else reps)
    key = ("steenrod", p, reps)
    if key in ctx._cache:
        return ctx._cache[key]
    N = ctx.trunc
    R = steenrod_ring(ctx, reps)
    F = ctx.F_U.change_ring(R)
    one = R.one()
    gamma = TruncSeries.var(R, X, "x")
    for i in reps:
        c = n_series(F, i).evaluate_unchecked("x", one, trunc=INF).constant_term()
        # terms of F beyond its truncation carry b-weight > N and vanish in R
        factor = F.F.evaluate_unchecked("y", c, trunc=INF)
        gamma = gamma * factor
    G = _reparametrize_t1(F, gamma, N + 1)
    images = {(i, j): G[(i, j)] for i, j in ctx.generators(N)}
    phi = LazardPhi(ctx, R, images)
    pser = n_series(ctx.F_U, p)
    D = tuple(R.coerce(pser[(k + 1,)], ctx.ring) for k in range(N + 1))
    data = _StData(p, reps, R, gamma, phi, D)
    ctx._cache[key] = data
    return data


def _reparametrize_t1(F: FormalGroupLaw, gamma: TruncSeries, T: int) -> TruncSeries:
    from ..fgl import reparametrize

    return reparametrize(F, gamma.truncate(T)).F


def _rehomogenize(R: PolyRing, s: TruncSeries, pn: int, shift: int = 0) -> dict:
    """Terms (l, J) -> coefficient for a t = 1 series of degree pn."""
    out: dict = {}
    for J, c in s.terms.items():
        dz = sum(J)
        for w, part in R.homogeneous_parts(c).items():
            l = pn + w - dz + shift
            key = (l,) + J
            out[key] = R.add(out[key], part) if key in out else part
    return {k: v for k, v in out.items() if not R.is_zero(v)}


def steenrod_gamma(ctx: LazardCtx, p: int, reps: Sequence[int] | None = None) -> TruncSeries:
    """gamma(x) = x prod_j (x +_F [i_j](t)) as a series in (x, t), known to degree p + N."""
    d = _data(ctx, p, reps)
    R = d.ring
    out = {}
    for (a,), c in d.gamma1.terms.items():
        for w, part in R.homogeneous_parts(c).items():
            l = p + w - a
            if l < 0:
                raise AssertionError("gamma acquired a negative power of t")
            out[(a, l)] = part
    return TruncSeries(R, XT, p + ctx.trunc, out)


@dataclass(frozen=True)
class LaurentOpValue:
    """Value of an operation in A*(X)[1/m]((t)); ``series`` has t first."""

    series: LaurentSeries
    p: int
    reps: tuple[int, ...]

    @property
    def min_exp(self):
        return self.series.min_exp()

    def coefficient(self, l: int) -> TruncSeries:
        return self.series.coefficient(l)

    def negative_part(self) -> LaurentSeries:
        return self.series.negative_part()

    def __str__(self):
        return str(self.series)

    def to_json(self) -> dict:
        return {"p": self.p, "reps": list(self.reps), "series": self.series.to_json()}


def _homogeneous_groups(e: CobElement) -> dict[int, dict]:
    """Split e into pieces of fixed cohomological degree n = |I| - weight."""
    ring = e.ring.scalars
    groups: dict = {}
    for I, c in e.poly.terms.items():
        for w, part in ring.homogeneous_parts(c).items():
            n = sum(I) - w
            g = groups.setdefault(n, {})
            g[I] = ring.add(g[I], part) if I in g else part
    return groups


def _check_finite(e: CobElement):
    R = e.ring
    if sum(R.bounds) > R.trunc:
        raise TruncationError("Steenrod operations need a product of finite projective spaces")


def steenrod_st(ctx: LazardCtx, p: int, reps: Sequence[int] | None, e: CobElement) -> LaurentOpValue:
    """St(i)(e), the multiplicative operation with gamma = prod_j (x +_F [i_j] t), i_0 = 0."""
    _check_finite(e)
    d = _data(ctx, p, reps)
    R = d.ring
    body = e.ring.vars
    N = ctx.trunc
    terms: dict = {}
    T = INF
    binds = {}
    for name in body.names:
        g = d.gamma1.rename({"x": name}).embed(body)
        binds[name] = TruncSeries(R, body, INF, g.terms)
    for n, part in sorted(_homogeneous_groups(e).items()):
        s = TruncSeries(ctx.ring, body, INF, part).map_coefficients(d.phi, R)
        if binds:
            s = s.substitute(binds, body)
        for k, v in _rehomogenize(R, s, p * n).items():
            terms[k] = R.add(terms[k], v) if k in terms else v
        T = min(T, p * n + N)
    if T == INF:
        T = N
    L = LaurentSeries.build(R, "t", body, T, {k: v for k, v in terms.items() if not R.is_zero(v)})
    return LaurentOpValue(L, d.p, d.reps)


def _D_series(d: _StData, vars: VarTable, N: int) -> LaurentSeries:
    z = (0,) * (len(vars.names) - 1)
    return LaurentSeries._raw(d.ring, vars, N, {(j,) + z: c for j, c in enumerate(d.D) if not d.ring.is_zero(c)})


def divide_by_D(d: _StData, L: LaurentSeries, upto: int) -> LaurentSeries:
    """Q with (L - D Q) free of t-exponents below ``upto``; divisions by p must be exact."""
    R = d.ring
    p = R.from_int(d.p)
    lo = L.min_exp()
    q: dict[int, TruncSeries] = {}
    if lo is not None:
        for l in range(lo, upto):
            acc = L.coefficient(l)
            for j in range(1, len(d.D)):
                if l - j in q and not R.is_zero(d.D[j]):
                    acc = acc - q[l - j].scale(d.D[j])
            out = {}
            for ex, c in acc.terms.items():
                try:
                    out[ex] = R.divexact(c, p)
                except InexactDivision as err:
                    raise InexactDivision(
                        f"coefficient of t^{l}*{acc.vars.fmt_monomial(ex)} is not divisible by {d.p}: {R.fmt(c)}"
                    ) from err
            q[l] = TruncSeries(R, acc.vars, acc.trunc, out)
    return LaurentSeries.from_coefficients(R, L.t, L.body, q, L.trunc)


def symmetric_phi(ctx: LazardCtx, p: int, reps: Sequence[int] | None, e: CobElement) -> LaurentOpValue:
    """Phi(i)(e): the strictly negative series with St(e) - D Phi(e) free of negative powers of t."""
    st = steenrod_st(ctx, p, reps, e)
    d = _data(ctx, p, reps)
    Phi = divide_by_D(d, st.series, 0)
    rest = st.series - _D_series(d, st.series.vars, ctx.trunc) * Phi
    if not rest.negative_part().is_zero():
        raise InexactDivision("St - D Phi still has negative powers of t")
    return LaurentOpValue(Phi, d.p, d.reps)


@dataclass(frozen=True)
class SqValue:
    """Representative St - D Phi of Sq(e) modulo D, with the integrality audit."""

    series: LaurentSeries
    p: int
    reps: tuple[int, ...]
    integral: bool
    offender: tuple | None = None  # (t-exponent, z-monomial, coefficient string)

    def __str__(self):
        return str(self.series)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "reps": list(self.reps),
            "series": self.series.to_json(),
            "integral": self.integral,
            "offender": None if self.offender is None else list(self.offender),
        }


def tom_dieck_sq(ctx: LazardCtx, p: int, reps: Sequence[int] | None, e: CobElement) -> SqValue:
    st = steenrod_st(ctx, p, reps, e)
    d = _data(ctx, p, reps)
    Phi = divide_by_D(d, st.series, 0)
    sq = st.series - _D_series(d, st.series.vars, ctx.trunc) * Phi
    if not sq.negative_part().is_zero():
        raise InexactDivision("St - D Phi still has negative powers of t")
    R = d.ring
    for ex, c in sq.sorted_terms():
        for w, part in sorted(R.homogeneous_parts(c).items()):
            if not member(ctx, part):
                mono = sq.vars.subtable(sq.vars.names[1:]).fmt_monomial(ex[1:])
                return SqValue(sq, d.p, d.reps, False, (ex[0], mono, R.fmt(part)))
    return SqValue(sq, d.p, d.reps, True)


def sq_agrees_with_st(ctx: LazardCtx, p: int, reps: Sequence[int] | None, e: CobElement) -> bool:
    """St(e) - Sq(e) lies in the ideal generated by D (exact division, zero remainder)."""
    st = steenrod_st(ctx, p, reps, e)
    sq = tom_dieck_sq(ctx, p, reps, e)
    d = _data(ctx, p, reps)
    diff = st.series - sq.series
    top = int(diff.trunc) + 1
    try:
        Q = divide_by_D(d, diff, top)
    except InexactDivision:
        return False
    rem = diff - _D_series(d, diff.vars, ctx.trunc) * Q
    return rem.is_zero()


__all__.append("sq_agrees_with_st")


# ---------------------------------------------------------------------------
# characteristic p


def chp_gamma(p: int) -> TruncSeries:
    """-t^(p-1) x + x^p over Z/p."""
    from ..scalars import ModP

    F = ModP(p)
    return TruncSeries(F, XT, INF, {(p, 0): 1, (1, p - 1): F.from_int(-1)})


def chp_specialize(s: TruncSeries, p: int) -> TruncSeries:
    """Send every b_k to 0 and reduce modulo p."""
    R = s.ring
    kill = specialize_to_zero(R)
    s0 = s.map_coefficients(kill, kill.target)
    red = reduce_mod(kill.target, p)
    return s0.map_coefficients(red, red.target)
