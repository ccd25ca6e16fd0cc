"""Cohomology of products of projective spaces for a chosen formal group law.

``A*(P^{n_1} x ... x P^{n_r}) = A[z_1, ..., z_r] / (z_i^(n_i + 1))`` with
``z_i`` the first Chern class of ``O(1)`` on the i-th factor.  Infinite
projective spaces are modeled by the bound ``trunc``.  Factor indices in this
module are 0-based; variable names default to ``z1, ..., zr``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import (
    BoundExceeded,
    IndexOutOfRange,
    NonSymmetricResult,
    RingMismatch,
    TruncationError,
    VarMismatch,
)
from .fgl import FormalGroupLaw, formal_inverse, invariant_form
from .scalars import Ring, Scalar
from .series import INF, LaurentSeries, TruncSeries, VarTable, laurent_invert


@dataclass(frozen=True, eq=False)
class ProjProductRing:
    theory: FormalGroupLaw
    bounds: tuple[int, ...]
    trunc: int
    names: tuple[str, ...]

    @classmethod
    def make(cls, theory: FormalGroupLaw, bounds: Sequence[int | None], trunc: int | None = None,
             names: Sequence[str] | None = None) -> "ProjProductRing":
        """``None`` in ``bounds`` means an infinite projective space (bound = trunc)."""
        if trunc is None:
            if any(b is None for b in bounds):
                raise ValueError("a truncation is needed for infinite factors")
            trunc = sum(bounds)
        bounds = tuple(trunc if b is None else min(int(b), trunc) for b in bounds)
        if any(b < 0 for b in bounds):
            raise ValueError("bounds must be nonnegative")
        names = tuple(names) if names is not None else tuple(f"z{i + 1}" for i in range(len(bounds)))
        if len(names) != len(bounds):
            raise ValueError("one name per factor")
        return cls(theory, bounds, int(trunc), names)

    @property
    def scalars(self) -> Ring:
        return self.theory.ring

    @property
    def vars(self) -> VarTable:
        return VarTable.of(*self.names, caps={n: b for n, b in zip(self.names, self.bounds)})

    @property
    def rank(self) -> int:
        return len(self.bounds)

    def __eq__(self, other):
        return (
            isinstance(other, ProjProductRing)
            and self.bounds == other.bounds
            and self.trunc == other.trunc
            and self.names == other.names
            and self.theory.ring == other.theory.ring
            and self.theory.F == other.theory.F
        )

    __hash__ = None

    def element(self, terms: Mapping) -> "CobElement":
        ring = self.scalars
        out = {}
        for e, c in terms.items():
            e = (e,) if isinstance(e, int) else tuple(e)
            out[e] = _coerce(ring, c)
        return CobElement(self, TruncSeries(ring, self.vars, self.trunc, out))

    def from_series(self, s: TruncSeries) -> "CobElement":
        if s.vars != self.vars:
            s = TruncSeries(s.ring, self.vars, s.trunc, {_reindex(s.vars, self.vars, e): c for e, c in s.terms.items()})
        return CobElement(self, s.truncate(self.trunc))

    def one(self) -> "CobElement":
        return CobElement(self, TruncSeries.one(self.scalars, self.vars, self.trunc))

    def zero(self) -> "CobElement":
        return CobElement(self, TruncSeries.zero(self.scalars, self.vars, self.trunc))

    def z(self, i: int) -> "CobElement":
        self._check(i)
        return CobElement(self, TruncSeries.var(self.scalars, self.vars, self.names[i], self.trunc))

    def _check(self, i: int):
        if not 0 <= i < len(self.bounds):
            raise IndexOutOfRange(f"factor {i} out of range 0..{len(self.bounds) - 1}")

    def basis(self, max_degree: int | None = None) -> list[tuple[int, ...]]:
        """Exponent vectors of the monomial basis (optionally of degree <= max_degree)."""
        top = self.trunc if max_degree is None else min(max_degree, self.trunc)
        out = []

        def rec(i, acc, rest):
            if i == len(self.bounds):
                out.append(tuple(acc))
                return
            for k in range(0, min(self.bounds[i], rest) + 1):
                acc.append(k)
                rec(i + 1, acc, rest - k)
                acc.pop()

        rec(0, [], top)
        return sorted(out, key=lambda e: (sum(e), tuple(-k for k in e)))

    def to_json(self) -> dict:
        return {"bounds": list(self.bounds), "trunc": self.trunc, "names": list(self.names)}


def _coerce(ring: Ring, c):
    if isinstance(c, Scalar):
        return ring.coerce(c.value, c.ring)
    if isinstance(c, int):
        return ring.from_int(c)
    if isinstance(c, Fraction):
        from .scalars import QQ

        return ring.coerce(c, QQ)
    return c


def _reindex(src: VarTable, dst: VarTable, e):
    out = [0] * len(dst.names)
    for n, k in zip(src.names, e):
        out[dst.index(n)] = k
    return tuple(out)


class CobElement:
    __slots__ = ("ring", "poly")

    def __init__(self, ring: ProjProductRing, poly: TruncSeries):
        if poly.vars != ring.vars:
            raise VarMismatch("element variables do not match the ring")
        self.ring = ring
        self.poly = poly

    def _other(self, o):
        if isinstance(o, CobElement):
            if o.ring != self.ring:
                raise RingMismatch("elements of different rings")
            return o.poly
        return o

    def __add__(self, o):
        return CobElement(self.ring, self.poly + self._other(o))

    __radd__ = __add__

    def __sub__(self, o):
        return CobElement(self.ring, self.poly - self._other(o))

    def __neg__(self):
        return CobElement(self.ring, -self.poly)

    def __mul__(self, o):
        return CobElement(self.ring, (self.poly * self._other(o)).truncate(self.ring.trunc))

    __rmul__ = __mul__

    def scale(self, c) -> "CobElement":
        return CobElement(self.ring, self.poly.scale(_coerce(self.ring.scalars, c)))

    def __pow__(self, k: int):
        return CobElement(self.ring, (self.poly ** k).truncate(self.ring.trunc))

    def __eq__(self, o):
        if isinstance(o, CobElement):
            return self.ring == o.ring and self.poly == o.poly
        return self.poly == o

    __hash__ = None

    def coefficient(self, e) -> Scalar:
        e = (e,) if isinstance(e, int) else tuple(e)
        return self.poly.coeff(e)

    @property
    def terms(self) -> dict:
        return self.poly.terms

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"CobElement<{self.poly}>"

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "poly": self.poly.to_json()}


# ---------------------------------------------------------------------------
# pull-backs


def _new_ring(e: CobElement, bounds, names) -> ProjProductRing:
    return ProjProductRing(e.ring.theory, tuple(bounds), e.ring.trunc, tuple(names))


def _fresh(names: Sequence[str], base: str) -> str:
    k = 1
    while f"{base}{k}" in names:
        k += 1
    return f"{base}{k}"


def pullback_segre(e: CobElement, k: int, bounds: tuple[int, int] | None = None,
                   names: tuple[str, str] | None = None) -> CobElement:
    """Pull back along a Segre map onto factor k: ``z_k -> F(x, y)``.

    Factor k is replaced by two factors (inserted at positions k, k + 1).
    For an infinite factor the new ones are infinite as well; a finite factor
    P^n needs explicit bounds (a, b) with a + b <= n.
    """
    R = e.ring
    R._check(k)
    n = R.bounds[k]
    if bounds is None:
        if n < R.trunc:
            raise BoundExceeded("give bounds (a, b) with a + b <= n for a finite factor")
        bounds = (R.trunc, R.trunc)
    a, b = bounds
    if n < R.trunc and a + b > n:
        raise BoundExceeded(f"Segre map P^{a} x P^{b} does not land in P^{n}")
    old = list(R.names)
    if names is None:
        rest = [x for i, x in enumerate(old) if i != k]
        n1 = _fresh(rest, old[k] + "_")
        n2 = _fresh(rest + [n1], old[k] + "_")
        names = (n1, n2)
    new_names = old[:k] + list(names) + old[k + 1:]
    new_bounds = list(R.bounds[:k]) + [a, b] + list(R.bounds[k + 1:])
    S = _new_ring(e, new_bounds, new_names)
    vt, ring = S.vars, S.scalars
    x = TruncSeries.var(ring, vt, names[0], S.trunc)
    y = TruncSeries.var(ring, vt, names[1], S.trunc)
    fxy = R.theory.F.substitute({"x": x, "y": y})
    binds = {old[k]: fxy}
    for i, nm in enumerate(old):
        if i != k:
            binds[nm] = TruncSeries.var(ring, vt, nm, S.trunc)
    return S.from_series(e.poly.substitute(binds, vt))


def pullback_diagonal(e: CobElement, i: int, j: int) -> CobElement:
    """Restrict to the diagonal of factors i and j (factor j is removed)."""
    R = e.ring
    R._check(i)
    R._check(j)
    if i == j:
        raise IndexOutOfRange("diagonal needs two different factors")
    bounds = list(R.bounds)
    bounds[i] = min(bounds[i], bounds[j])
    names = list(R.names)
    del bounds[j]
    keep = names[j]
    del names[j]
    S = _new_ring(e, bounds, names)
    vt, ring = S.vars, S.scalars
    binds = {nm: TruncSeries.var(ring, vt, nm) for nm in names}
    binds[keep] = TruncSeries.var(ring, vt, R.names[i])
    return S.from_series(e.poly.substitute(binds, vt))


def pullback_projection(e: CobElement, k: int, bound: int | None = None, name: str | None = None) -> CobElement:
    """Pull back along the projection forgetting a new factor inserted at position k."""
    R = e.ring
    if not 0 <= k <= R.rank:
        raise IndexOutOfRange(f"insertion point {k} out of range")
    bound = R.trunc if bound is None else bound
    name = name or _fresh(R.names, "w")
    names = list(R.names[:k]) + [name] + list(R.names[k:])
    bounds = list(R.bounds[:k]) + [bound] + list(R.bounds[k:])
    S = _new_ring(e, bounds, names)
    return S.from_series(e.poly.embed(S.vars))


def pullback_point(e: CobElement, k: int) -> CobElement:
    """Restrict factor k to a point (``z_k -> 0``); the factor is removed."""
    R = e.ring
    R._check(k)
    names = [n for i, n in enumerate(R.names) if i != k]
    bounds = [b for i, b in enumerate(R.bounds) if i != k]
    S = _new_ring(e, bounds, names)
    kept = {ex[:k] + ex[k + 1:]: c for ex, c in e.poly.terms.items() if ex[k] == 0}
    return CobElement(S, TruncSeries(S.scalars, S.vars, e.poly.trunc, kept))


def pullback_permutation(e: CobElement, perm: Sequence[int]) -> CobElement:
    """New factor i is old factor perm[i]."""
    R = e.ring
    if sorted(perm) != list(range(R.rank)):
        raise IndexOutOfRange("not a permutation of the factors")
    names = [R.names[p] for p in perm]
    bounds = [R.bounds[p] for p in perm]
    S = _new_ring(e, bounds, names)
    return S.from_series(e.poly)


# ---------------------------------------------------------------------------
# push-forwards


def pushforward_hyperplane(e: CobElement, i: int, k: int) -> CobElement:
    """Push forward along a codimension-k linear subspace of factor i: multiply by z_i^k."""
    R = e.ring
    R._check(i)
    if k < 0 or k > R.bounds[i]:
        raise BoundExceeded(f"codimension {k} exceeds the dimension of factor {i}")
    return e * (R.z(i) ** k)


def projective_space_classes(F: FormalGroupLaw) -> dict[int, object]:
    """[P^n] for n < trunc, read off the invariant form."""
    w = invariant_form(F)
    return {n: w[(n,)] for n in range(int(w.trunc) + 1)}


def pushforward_to_point(e: CobElement) -> Scalar:
    """Push forward along the structure map of a product of finite projective spaces."""
    R = e.ring
    if any(b >= R.trunc for b in R.bounds) and R.rank > 1 or (R.rank == 1 and R.bounds[0] > R.trunc):
        raise BoundExceeded("push-forward to a point needs finite factors")
    pn = projective_space_classes(R.theory)
    ring = R.scalars
    total = ring.zero()
    for ex, c in e.poly.terms.items():
        term = c
        for b, k in zip(R.bounds, ex):
            if b - k not in pn:
                raise TruncationError(f"[P^{b - k}] is beyond the truncation of the theory")
            term = ring.mul(term, pn[b - k])
        total = ring.add(total, term)
    return Scalar(ring, total)


def _laurent_vars(ring: Ring, t: str, body: VarTable) -> VarTable:
    if t in body.names:
        raise VarMismatch(f"{t!r} clashes with a body variable")
    return LaurentSeries.build(ring, t, body, INF).vars


def _to_laurent(s: TruncSeries, vt: VarTable, rename: Mapping[str, str] | None = None) -> LaurentSeries:
    if rename:
        s = s.rename(rename)
    return LaurentSeries.from_series(s.embed(vt) if s.vars != vt else s)


def _root_factor(F: FormalGroupLaw, lam: TruncSeries, vt: VarTable) -> LaurentSeries:
    """t +_F lambda as a Laurent series."""
    ring = F.ring
    t = TruncSeries.var(ring, vt, vt.names[0])
    if lam.is_zero() and lam.trunc == INF:
        return LaurentSeries.from_series(t)
    lam_e = lam.embed(vt)
    return LaurentSeries.from_series(F.F.substitute({"x": t, "y": lam_e}, vt))


def _check_roots(roots: Sequence[TruncSeries]) -> VarTable:
    if not roots:
        raise ValueError("at least one root needed")
    body = roots[0].vars
    for r in roots:
        if r.vars != body:
            raise VarMismatch("roots must share one variable table")
        if not r.ring.is_zero(r.constant_term()):
            raise ValueError("roots must be nilpotent (zero constant term)")
    return body


def pushforward_projbundle(F: FormalGroupLaw, f: TruncSeries | None, roots: Sequence[TruncSeries],
                           t: str = "t") -> TruncSeries:
    """pi_*(f(xi)) for P(V) -> X with Chern roots ``roots``.

    Computed as the residue at t = 0 of f(t) w(t) / prod_i (t +_F lambda_i),
    with w the invariant form.  ``f`` is a series in ``t`` and (optionally)
    the body variables; ``None`` means 1.
    """
    body = _check_roots(roots)
    ring = F.ring
    vt = _laurent_vars(ring, t, body)
    denom = _root_factor(F, roots[0], vt)
    for lam in roots[1:]:
        denom = denom * _root_factor(F, lam, vt)
    inv = laurent_invert(denom)
    w = _to_laurent(invariant_form(F), vt, {"x": t})
    integrand = w * inv
    if f is not None:
        integrand = _to_laurent(f, vt) * integrand
    res = integrand.residue()
    if res.trunc < 0:
        raise TruncationError("truncation of the theory is too small for this push-forward")
    return res


def blowup_correction(F: FormalGroupLaw, roots: Sequence[TruncSeries], t: str = "t") -> TruncSeries:
    """Res_t [ (t / chi(t)) w(t) / (t prod_i (t +_F lambda_i)) ].

    This is the push-forward from the exceptional divisor's projective bundle
    (normal bundle plus a trivial summand) of c1(O(1)) / c1(O(-1)).
    """
    body = _check_roots(roots)
    ring = F.ring
    vt = _laurent_vars(ring, t, body)
    chi = formal_inverse(F)
    h = TruncSeries(ring, chi.vars, chi.trunc - 1, {(e - 1,): c for (e,), c in chi.terms.items()})
    t_over_chi = _to_laurent(h.inverse(), vt, {"x": t})
    w = _to_laurent(invariant_form(F), vt, {"x": t})
    denom = LaurentSeries.from_series(TruncSeries.var(ring, vt, t))
    for lam in roots:
        denom = denom * _root_factor(F, lam, vt)
    res = (t_over_chi * w * laurent_invert(denom)).residue()
    if res.trunc < 0:
        raise TruncationError("truncation of the theory is too small for this blow-up")
    return res


def blowup_class(F: FormalGroupLaw, roots: Sequence[TruncSeries], t: str = "t") -> TruncSeries:
    """Restriction to the center of pi_*(1) for the blow-up along it.

    Equals 1 + c_d(N) * blowup_correction, with c_d(N) = prod lambda_i.
    """
    inner = blowup_correction(F, roots, t)
    top = roots[0]
    for lam in roots[1:]:
        top = top * lam
    return TruncSeries.one(F.ring, inner.vars) + top * inner


# ---------------------------------------------------------------------------
# Chern classes


def elementary_symmetric(ring: Ring, vars: VarTable, names: Sequence[str], k: int) -> TruncSeries:
    acc = TruncSeries.zero(ring, vars)
    for combo in combinations(names, k):
        e = [0] * len(vars.names)
        for n in combo:
            e[vars.index(n)] = 1
        acc = acc + TruncSeries(ring, vars, INF, {tuple(e): ring.one()})
    return acc


def to_chern_basis(s: TruncSeries, roots: Sequence[str], prefix: str = "c") -> TruncSeries:
    """Rewrite a series symmetric in ``roots`` through elementary symmetric polynomials.

    The result lives in variables ``c1..cd`` (weights 1..d) followed by the
    non-root variables of ``s``.
    """
    roots = list(roots)
    d = len(roots)
    if not s.is_symmetric(roots):
        raise NonSymmetricResult("series is not symmetric in the roots")
    ring, vt = s.ring, s.vars
    ridx = [vt.index(r) for r in roots]
    others = [i for i in range(len(vt.names)) if i not in ridx]
    cnames = [f"{prefix}{k}" for k in range(1, d + 1)]
    if set(cnames) & {vt.names[i] for i in others}:
        raise VarMismatch("Chern class names clash with other variables")
    out_vt = VarTable.of(*cnames, *[vt.names[i] for i in others],
                         weights=list(range(1, d + 1)) + [vt.weights[i] for i in others])
    elem = [elementary_symmetric(ring, vt, roots, k) for k in range(1, d + 1)]
    powers: dict = {}

    def epow(k, m):
        if (k, m) not in powers:
            powers[(k, m)] = elem[k] ** m
        return powers[(k, m)]

    rest = s
    out = {}
    guard = 0
    while rest.terms:
        guard += 1
        if guard > 100000:
            raise NonSymmetricResult("reduction did not terminate")
        lead = max(rest.terms, key=lambda e: ([e[i] for i in ridx], [e[i] for i in others]))
        a = [lead[i] for i in ridx]
        if any(a[k] < a[k + 1] for k in range(d - 1)):
            raise NonSymmetricResult("leading monomial is not sorted; input not symmetric")
        c = rest.terms[lead]
        cexp = [a[k] - (a[k + 1] if k + 1 < d else 0) for k in range(d)]
        oexp = [lead[i] for i in others]
        mono_e = [0] * len(vt.names)
        for i, k in zip(others, oexp):
            mono_e[i] = k
        term = TruncSeries(ring, vt, INF, {tuple(mono_e): c})
        for k, m in enumerate(cexp):
            if m:
                term = term * epow(k, m)
        rest = (rest - term).truncate(s.trunc)
        key = tuple(cexp + oexp)
        out[key] = ring.add(out[key], c) if key in out else c
    return TruncSeries(ring, out_vt, s.trunc, out)
