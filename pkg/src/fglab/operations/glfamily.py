"""Families g_l describing an additive operation on products of P^infinity.

For an additive operation G : A^n -> B^m, ``g_l(alpha) = G(alpha z_1 ... z_l)``
for alpha in A^(n-l).  Such families satisfy three axioms:

* (a_i)   g_l(alpha) is symmetric in z_1..z_l;
* (a_ii)  g_l(alpha) is divisible by z_1 ... z_l;
* (a_iii) g_l(alpha)(x +_B y, z_2, ...) =
          sum_{i,j} g_{l+i+j-1}(alpha a^A_ij)(x,..,x, y,..,y, z_2, ...)
          with x repeated i times and y repeated j times.

All identities are checked modulo total degree > min(L, trunc).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable, Mapping

from ..cobordism import ProjProductRing
from ..errors import InexactDivision, RingMismatch
from ..fgl import FormalGroupLaw
from ..lazard import LazardCtx
from ..scalars import Ring, is_torsion_free
from ..series import INF, TruncSeries, VarTable

__all__ = [
    "GlFamily",
    "GlVerdict",
    "lazard_levels",
    "constant_levels",
    "family_from_operation",
    "gl_validate",
    "gl_constants",
    "gl_reconstruct",
]


def _zvars(l: int) -> VarTable:
    return VarTable.of(*[f"z{i}" for i in range(1, l + 1)])


@dataclass(eq=False)
class GlFamily:
    """Data of a family up to level L.

    ``basis[l]`` lists (key, alpha) with alpha a raw element of the source
    coefficient ring spanning A^(n-l); ``maps[l][key]`` is g_l(alpha) as a
    series in z1..zl over the target ring.  ``coords(l, x)`` expresses a
    source coefficient x in ``basis[l]`` (None when x is not in the span).
    """

    source: FormalGroupLaw
    target: FormalGroupLaw
    L: int
    trunc: int
    basis: dict
    maps: dict
    coords: Callable = field(repr=False)
    kind: str = "constant"
    n: int = 0

    @property
    def T(self) -> int:
        return min(self.L, self.trunc)

    def value(self, l: int, x) -> TruncSeries | None:
        """g_l(x) for any source coefficient x of the right degree, by linearity."""
        ring = self.target.ring
        vt = _zvars(l)
        if l > self.L:
            return None
        c = self.coords(l, x)
        if c is None:
            return None
        acc = TruncSeries.zero(ring, vt, self.T)
        for key, coef in c.items():
            if coef:
                acc = acc + self.maps[l][key].scale(_to_target(ring, coef))
        return acc.truncate(self.T)

    def copy(self) -> "GlFamily":
        return GlFamily(self.source, self.target, self.L, self.trunc,
                        {l: list(b) for l, b in self.basis.items()},
                        {l: dict(m) for l, m in self.maps.items()},
                        self.coords, self.kind, self.n)

    def to_json(self) -> dict:
        S = self.source.ring
        return {
            "kind": self.kind,
            "n": self.n,
            "L": self.L,
            "trunc": self.trunc,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "basis": {str(l): [[_key_json(k), S.to_json(a)] for k, a in b] for l, b in sorted(self.basis.items())},
            "maps": {
                str(l): [[_key_json(k), s.to_json()] for k, s in sorted(m.items())]
                for l, m in sorted(self.maps.items())
            },
        }

    @classmethod
    def from_json(cls, obj, ctx: LazardCtx | None = None) -> "GlFamily":
        source = FormalGroupLaw.from_json(obj["source"])
        target = FormalGroupLaw.from_json(obj["target"])
        L, trunc, n = int(obj["L"]), int(obj["trunc"]), int(obj.get("n", 0))
        kind = obj.get("kind", "constant")
        if kind == "lazard":
            if ctx is None:
                raise ValueError("a Lazard context is needed for this family")
            basis, coords = lazard_levels(ctx, n, L)
        else:
            S = source.ring
            basis = {int(l): [(_key_from(k), S.from_json(a)) for k, a in b] for l, b in obj["basis"].items()}
            _, coords = constant_levels(source, sorted(basis), basis)
        maps = {
            int(l): {_key_from(k): TruncSeries.from_json(s) for k, s in m}
            for l, m in obj["maps"].items()
        }
        return cls(source, target, L, trunc, basis, maps, coords, kind, n)


def _key_json(k):
    return list(k) if isinstance(k, tuple) else k


def _key_from(k):
    return tuple(k) if isinstance(k, list) else k


def _to_target(ring: Ring, c):
    if isinstance(c, Fraction):
        if c.denominator != 1:
            raise InexactDivision("non-integral coordinate")
        c = int(c)
    if isinstance(c, int):
        return ring.from_int(c)
    return c


# ---------------------------------------------------------------------------
# bases of the source coefficient ring


def lazard_levels(ctx: LazardCtx, n: int, L: int):
    """Source = universal law: A^(n-l) has the lattice basis of weight l - n."""
    basis = {}
    for l in range(1, L + 1):
        w = l - n
        basis[l] = [((w, k), b) for k, b in enumerate(ctx.basis(w))] if 0 <= w <= ctx.trunc else []

    def coords(l, x):
        w = l - n
        raw = x.value if hasattr(x, "value") else x
        if not raw:
            return {}
        if not 0 <= w <= ctx.trunc:
            return None
        try:
            c = ctx.coordinates(raw, w)
        except Exception:
            return None
        if c is None:
            return None
        return {(w, k): v for k, v in enumerate(c) if v}

    return basis, coords


def constant_levels(source: FormalGroupLaw, levels, basis=None):
    """Source coefficients concentrated in the ring's constants: basis {1} at each listed level."""
    S = source.ring
    if basis is None:
        basis = {l: [("1", S.one())] for l in levels}

    def coords(l, x):
        raw = x.value if hasattr(x, "value") else x
        if S.is_zero(raw):
            return {}
        if l not in basis or not basis[l]:
            return None
        key, one = basis[l][0]
        try:
            c = S.divexact(raw, one)
        except Exception:
            return None
        return {key: c}

    return basis, coords


def family_from_operation(op: Callable, source: FormalGroupLaw, target: FormalGroupLaw, basis, coords,
                          L: int, trunc: int | None = None, kind: str = "constant", n: int = 0) -> GlFamily:
    """g_l(alpha) = op(alpha z_1 ... z_l), the element computed on (P^T)^l."""
    T = L if trunc is None else trunc
    maps = {}
    for l in range(1, L + 1):
        R = ProjProductRing.make(source, [T] * l, trunc=T, names=[f"z{i}" for i in range(1, l + 1)])
        mono = (1,) * l
        maps[l] = {}
        for key, alpha in basis.get(l, []):
            val = op(R.element({mono: alpha}))
            s = val.poly
            if s.ring != target.ring:
                raise RingMismatch("operation does not land in the target ring")
            maps[l][key] = TruncSeries(s.ring, _zvars(l), min(T, s.trunc), s.terms)
    return GlFamily(source, target, L, T, dict(basis), maps, coords, kind, n)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class GlVerdict:
    ok: bool
    axiom: str | None = None
    level: int | None = None
    key: object = None
    monomial: tuple | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "verdict": "pass" if self.ok else "fail",
            "axiom": self.axiom,
            "level": self.level,
            "key": _key_json(self.key),
            "monomial": None if self.monomial is None else list(self.monomial),
        }


def _plug(g: TruncSeries, slots, vt: VarTable, T) -> TruncSeries:
    """Substitute z_k -> slots[k-1] (variable names of vt)."""
    ring = g.ring
    binds = {f"z{k}": TruncSeries.var(ring, vt, name) for k, name in enumerate(slots, start=1)}
    return TruncSeries(ring, g.vars, INF, g.terms).substitute(binds, vt).truncate(T)


def gl_validate(f: GlFamily) -> GlVerdict:
    T = f.T
    ring = f.target.ring
    for l in sorted(f.maps):
        names = [f"z{i}" for i in range(1, l + 1)]
        for key, g in sorted(f.maps[l].items(), key=lambda kv: str(kv[0])):
            g = g.truncate(T)
            if not g.is_symmetric(names):
                mono = next((e for e, _ in g.sorted_terms()
                             if any(not ring.eq(g[p], g[e]) for p in set(permutations(e)))), None)
                return GlVerdict(False, "a_i", l, key, mono)
            for e, _ in g.sorted_terms():
                if any(k == 0 for k in e):
                    return GlVerdict(False, "a_ii", l, key, e)
    S = f.source
    for l in sorted(f.maps):
        for key, alpha in f.basis.get(l, []):
            bad = _check_a_iii(f, l, key, alpha, S, T)
            if bad is not None:
                return GlVerdict(False, "a_iii", l, key, bad)
    return GlVerdict(True)


def _check_a_iii(f: GlFamily, l: int, key, alpha, S: FormalGroupLaw, T) -> tuple | None:
    ring = f.target.ring
    others = [f"z{i}" for i in range(2, l + 1)]
    vt = VarTable.of("x", "y", *others)
    g = f.maps[l][key]
    x = TruncSeries.var(ring, vt, "x")
    y = TruncSeries.var(ring, vt, "y")
    binds = {n: TruncSeries.var(ring, vt, n) for n in others}
    binds["z1"] = f.target.F.substitute({"x": x, "y": y}, vt)
    lhs = TruncSeries(ring, g.vars, INF, g.terms).substitute(binds, vt).truncate(T)
    rhs = TruncSeries.zero(ring, vt, T)
    Sr = S.ring
    for (i, j), a in S.F.sorted_terms():
        lvl = l + i + j - 1
        if lvl > T:
            continue
        coef = Sr.mul(alpha, a)
        if Sr.is_zero(coef):
            continue
        val = f.value(lvl, coef)
        if val is None:
            return ("missing", lvl, i, j)
        slots = ["x"] * i + ["y"] * j + others
        rhs = rhs + _plug(val, slots, vt, T)
    return lhs.truncate(T).first_difference(rhs.truncate(T))


# ---------------------------------------------------------------------------
# reconstruction from constant terms


def gl_constants(f: GlFamily) -> dict:
    """The coefficients of z_1 ... z_l in every g_l(alpha)."""
    out = {}
    for l, m in f.maps.items():
        mono = (1,) * l
        out[l] = {k: s[mono] for k, s in m.items()}
    return out


def gl_reconstruct(source: FormalGroupLaw, target: FormalGroupLaw, basis, coords, constants: Mapping,
                   L: int, kind: str = "constant", n: int = 0) -> GlFamily:
    """Rebuild a family from its constant terms (target coefficients torsion-free).

    The coefficient of z_1^k z_2^c2 ... in g_l(alpha), k >= 2, is read off
    the x^(k-1) y part of axiom (a_iii): it appears there with multiplier k
    next to terms of lower excess degree, so it is obtained by an exact
    division by k.  Symmetry fills in the remaining exponent orders.
    """
    ring = target.ring
    if not is_torsion_free(ring):
        raise InexactDivision("reconstruction needs a torsion-free target ring")
    T = L
    Sr = source.ring
    # coefficients of F_B(x, y)^k at x^(a) y^1
    XYv = VarTable.of("x", "y")
    FB = TruncSeries(ring, XYv, T, target.F.truncate(T).terms)
    Fpow = {0: TruncSeries.one(ring, XYv, T)}
    for k in range(1, T + 1):
        Fpow[k] = (Fpow[k - 1] * FB).truncate(T)

    coeffs: dict = {}  # (l, key) -> {exponent: raw}
    for l in range(1, L + 1):
        for key, _ in basis.get(l, []):
            c = constants.get(l, {}).get(key, ring.zero())
            coeffs[(l, key)] = {(1,) * l: c} if not ring.is_zero(c) else {}

    def coef_of(l, x, e):
        """Coefficient at exponent e of g_l(x) for arbitrary source x."""
        c = coords(l, x)
        if c is None:
            raise InexactDivision(f"{Sr.fmt(x)} is outside the span of the level-{l} basis")
        acc = ring.zero()
        for key, v in c.items():
            if v:
                acc = ring.add(acc, ring.mul(_to_target(ring, v), coeffs[(l, key)].get(tuple(sorted(e, reverse=True)), ring.zero())))
        return acc

    def compositions(total, parts):
        if parts == 0:
            if total == 0:
                yield ()
            return
        for first in range(1, total - parts + 2):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    def partitions_desc(total, parts, top):
        if parts == 0:
            if total == 0:
                yield ()
            return
        for first in range(min(top, total - parts + 1), 0, -1):
            for rest in partitions_desc(total - first, parts - 1, first):
                yield (first,) + rest

    a_i1 = {i: Sr.coerce(source.F[(i, 1)], Sr) for i in range(1, T + 1)}
    for excess in range(1, T):
        for l in range(1, L + 1):
            if l + excess > T:
                continue
            for key, alpha in basis.get(l, []):
                for e in partitions_desc(l + excess, l, l + excess):
                    k, rest = e[0], e[1:]
                    if k < 2:
                        continue
                    # right side: sum_i g_{l+i}(alpha a_{i,1}) at (u_1..u_i, 1, rest), sum u = k - 1
                    rhs = ring.zero()
                    for i in range(1, k):
                        lvl = l + i
                        if lvl > L or Sr.is_zero(a_i1.get(i, Sr.zero())):
                            continue
                        beta = Sr.mul(alpha, a_i1[i])
                        for u in compositions(k - 1, i):
                            rhs = ring.add(rhs, coef_of(lvl, beta, u + (1,) + rest))
                    # left side: sum_{k' <= k} h_{k', rest} [x^(k-1) y] F^k'
                    lower = ring.zero()
                    for kp in range(1, k):
                        ep = (kp,) + rest
                        h = coef_of_basis(coeffs, l, key, ep, ring)
                        if not ring.is_zero(h):
                            lower = ring.add(lower, ring.mul(h, Fpow[kp][(k - 1, 1)]))
                    num = ring.sub(rhs, lower)
                    mult = Fpow[k][(k - 1, 1)]
                    try:
                        val = ring.divexact(num, mult)
                    except InexactDivision as err:
                        raise InexactDivision(f"coefficient at level {l}, exponent {e} is not divisible by {k}") from err
                    if not ring.is_zero(val):
                        coeffs[(l, key)][tuple(sorted(e, reverse=True))] = val
    maps = {}
    for l in range(1, L + 1):
        vt = _zvars(l)
        maps[l] = {}
        for key, _ in basis.get(l, []):
            terms = {}
            for e, c in coeffs[(l, key)].items():
                for p in set(permutations(e)):
                    terms[p] = c
            maps[l][key] = TruncSeries(ring, vt, T, terms)
    return GlFamily(source, target, L, T, dict(basis), maps, coords, kind, n)


def coef_of_basis(coeffs, l, key, e, ring):
    return coeffs[(l, key)].get(tuple(sorted(e, reverse=True)), ring.zero())
