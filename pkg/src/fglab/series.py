"""Truncated multivariate power series and Laurent series.

Precision model
---------------
Every variable has a positive weight.  A series carries ``trunc``: all terms
of weighted total degree <= trunc are known exactly, nothing is known above
(``math.inf`` marks an exact polynomial).  A ``VarTable`` may also carry
*caps*: monomial relations such as ``z^(n+1) = 0`` which hold exactly, so
capped terms are simply absent rather than unknown.

Laurent series reuse the same model with one distinguished first variable
``t`` allowed to have negative exponents; ``t^a * m`` has degree
``a + deg(m)``.  With this convention the precision of products and inverses
degrades by a predictable amount (see ``TruncSeries.__mul__`` and
``LaurentSeries.invert``).
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    NonInvertibleLeadingCoefficient,
    NonNilpotentSubstitution,
    NotInvertible,
    RingMismatch,
    TruncationError,
    VarMismatch,
    ZeroSeries,
)
from .scalars import Ring, Scalar, ring_from_descriptor

INF = math.inf
_add = operator.add


def grlex_key(degree, e):
    """Graded lex: by degree, then larger exponents of earlier variables first."""
    return (degree, tuple(-k for k in e))


@dataclass(frozen=True)
class VarTable:
    names: tuple[str, ...]
    weights: tuple[int, ...]
    caps: tuple[tuple[tuple[int, ...], int], ...] = ()
    _degs: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "caps", tuple((tuple(ix), int(m)) for ix, m in self.caps))
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")

    @classmethod
    def of(cls, *names: str, weights: Sequence[int] | None = None, caps: Mapping | None = None) -> "VarTable":
        """``caps`` maps a name (or tuple of names) to the largest allowed degree."""
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        cl = []
        for key, m in (caps or {}).items():
            key = (key,) if isinstance(key, str) else tuple(key)
            cl.append((tuple(names.index(k) for k in key), m))
        return cls(tuple(names), weights, tuple(cl))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise VarMismatch(f"no variable {name!r} in {self.names}") from None

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.names)

    def unit(self, name: str) -> tuple:
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return tuple(e)

    def deg(self, e) -> int:
        d = self._degs.get(e)
        if d is None:
            d = sum(map(operator.mul, e, self.weights))
            self._degs[e] = d
        return d

    def killed(self, e) -> bool:
        w = self.weights
        for ix, m in self.caps:
            if sum(e[i] * w[i] for i in ix) > m:
                return True
        return False

    def cap_of(self, name: str) -> int | None:
        i = self.index(name)
        best = None
        for ix, m in self.caps:
            if i in ix:
                best = m if best is None else min(best, m)
        return best

    def cap_names(self) -> list[tuple[tuple[str, ...], int]]:
        return [(tuple(self.names[i] for i in ix), m) for ix, m in self.caps]

    def subtable(self, names: Sequence[str]) -> "VarTable":
        """Restrict to ``names`` keeping caps that only involve them."""
        idx = {n: k for k, n in enumerate(names)}
        caps = {}
        for ix, m in self.caps:
            nm = tuple(self.names[i] for i in ix)
            if all(x in idx for x in nm):
                caps[nm] = m
        return VarTable.of(*names, weights=[self.weights[self.index(n)] for n in names], caps=caps)

    def fmt_monomial(self, e) -> str:
        return "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)

    def to_json(self):
        return {
            "names": list(self.names),
            "weights": list(self.weights),
            "caps": [[list(n), m] for n, m in self.cap_names()],
        }

    @classmethod
    def from_json(cls, obj) -> "VarTable":
        return cls.of(*obj["names"], weights=obj["weights"], caps={tuple(n): m for n, m in obj.get("caps", [])})


def _mul_terms(ring: Ring, vt: VarTable, a: dict, b: dict, T) -> dict:
    """Product of term dicts, dropping degree > T and capped monomials."""
    if not a or not b:
        return {}
    deg = vt.deg
    la = sorted(((deg(e), e, c) for e, c in a.items()), key=lambda x: x[0])
    lb = sorted(((deg(e), e, c) for e, c in b.items()), key=lambda x: x[0])
    caps = bool(vt.caps)
    killed = vt.killed
    out: dict = {}
    if ring.native:
        get = out.get
        for d1, e1, c1 in la:
            for d2, e2, c2 in lb:
                if d1 + d2 > T:
                    break
                e = tuple(map(_add, e1, e2))
                if caps and killed(e):
                    continue
                out[e] = get(e, 0) + c1 * c2
        red = ring.reduce
        res = {}
        for e, c in out.items():
            c = red(c)
            if c:
                res[e] = c
        return res
    rm, ra, rz = ring.mul, ring.add, ring.is_zero
    for d1, e1, c1 in la:
        for d2, e2, c2 in lb:
            if d1 + d2 > T:
                break
            e = tuple(map(_add, e1, e2))
            if caps and killed(e):
                continue
            p = rm(c1, c2)
            out[e] = ra(out[e], p) if e in out else p
    return {e: c for e, c in out.items() if not rz(c)}


def _add_terms(ring: Ring, a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    ra, rz, rn = ring.add, ring.is_zero, ring.neg
    for e, c in b.items():
        if sign < 0:
            c = rn(c)
        if e in out:
            s = ra(out[e], c)
            if rz(s):
                del out[e]
            else:
                out[e] = s
        else:
            out[e] = c
    return out


class TruncSeries:
    """A power series over ``ring`` in the variables of ``vars``."""

    __slots__ = ("ring", "vars", "trunc", "terms")

    def __init__(self, ring: Ring, vars: VarTable, trunc, terms: Mapping | None = None):
        self.ring = ring
        self.vars = vars
        self.trunc = trunc
        clean = {}
        rz = ring.is_zero
        for e, c in (terms or {}).items():
            e = (e,) if isinstance(e, int) else tuple(e)
            if len(e) != len(vars.names):
                raise VarMismatch(f"exponent {e} does not match variables {vars.names}")
            if rz(c) or vars.deg(e) > trunc or vars.killed(e):
                continue
            clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, vars, trunc, terms):
        obj = cls.__new__(cls)
        obj.ring, obj.vars, obj.trunc, obj.terms = ring, vars, trunc, terms
        return obj

    def _like(self, terms, trunc):
        return type(self)._raw(self.ring, self.vars, trunc, terms)

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ring, vars, trunc=INF):
        return cls._raw(ring, vars, trunc, {})

    @classmethod
    def const(cls, ring, vars, c, trunc=INF):
        return cls(ring, vars, trunc, {vars.zero: c})

    @classmethod
    def one(cls, ring, vars, trunc=INF):
        return cls.const(ring, vars, ring.one(), trunc)

    @classmethod
    def var(cls, ring, vars, name, trunc=INF):
        return cls(ring, vars, trunc, {vars.unit(name): ring.one()})

    @classmethod
    def univariate(cls, ring, coeffs: Sequence | Mapping, name: str = "x", trunc=None):
        """From a coefficient list ``[c0, c1, ...]`` (ints are coerced)."""
        vt = VarTable.of(name)
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        terms = {(k,): _to_ring(ring, c) for k, c in items}
        if trunc is None:
            trunc = (max(coeffs) if isinstance(coeffs, Mapping) else len(coeffs) - 1) if coeffs else 0
        return cls(ring, vt, trunc, terms)

    # basic access -------------------------------------------------------
    def __getitem__(self, e):
        e = (e,) if isinstance(e, int) else tuple(e)
        return self.terms.get(e, self.ring.zero())

    def coeff(self, e) -> Scalar:
        return Scalar(self.ring, self[e])

    def is_zero(self) -> bool:
        return not self.terms

    def order(self):
        """Smallest degree of a nonzero term (``trunc + 1`` for a zero series)."""
        if not self.terms:
            return self.trunc + 1
        d = self.vars.deg
        return min(d(e) for e in self.terms)

    def degree(self):
        if not self.terms:
            raise ZeroSeries("degree of zero series")
        d = self.vars.deg
        return max(d(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get(self.vars.zero, self.ring.zero())

    def sorted_terms(self):
        d = self.vars.deg
        return sorted(self.terms.items(), key=lambda t: grlex_key(d(t[0]), t[0]))

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            raise TypeError("expected a series")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if other.vars != self.vars:
            raise VarMismatch(f"{self.vars.names} vs {other.vars.names}")

    def _coerce_other(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        if isinstance(other, Scalar):
            return self.const(self.ring, self.vars, self.ring.coerce(other.value, other.ring))
        if isinstance(other, (int, Fraction)):
            return self.const(self.ring, self.vars, _to_ring(self.ring, other))
        return None

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        T = min(self.trunc, o.trunc)
        terms = _add_terms(self.ring, self.terms, o.terms)
        if T < max(self.trunc, o.trunc):
            d = self.vars.deg
            terms = {e: c for e, c in terms.items() if d(e) <= T}
        return self._like(terms, T)

    __radd__ = __add__

    def __neg__(self):
        rn = self.ring.neg
        return self._like({e: rn(c) for e, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            o = self._coerce_other(other)
            return self.scale(o.constant_term())
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        T = min(self.trunc + o.order(), o.trunc + self.order())
        return self._like(_mul_terms(self.ring, self.vars, self.terms, o.terms, T), T)

    __rmul__ = __mul__

    def mul_trunc(self, other: "TruncSeries", T) -> "TruncSeries":
        """Product, additionally truncated at degree ``T``."""
        self._check(other)
        T = min(T, self.trunc + other.order(), other.trunc + self.order())
        return self._like(_mul_terms(self.ring, self.vars, self.terms, other.terms, T), T)

    def scale(self, c) -> "TruncSeries":
        """Multiply by a raw ring value."""
        rm, rz = self.ring.mul, self.ring.is_zero
        out = {}
        for e, x in self.terms.items():
            y = rm(x, c)
            if not rz(y):
                out[e] = y
        return self._like(out, self.trunc)

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = type(self).one(self.ring, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, n) -> "TruncSeries":
        if n >= self.trunc:
            return self
        d = self.vars.deg
        return self._like({e: c for e, c in self.terms.items() if d(e) <= n}, n)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            o = self._coerce_other(other)
            if o is None:
                return NotImplemented
            other = o
        if other.ring != self.ring or other.vars != self.vars:
            return False
        T = min(self.trunc, other.trunc)
        d = self.vars.deg
        a = {e: c for e, c in self.terms.items() if d(e) <= T}
        b = {e: c for e, c in other.terms.items() if d(e) <= T}
        if a.keys() != b.keys():
            return False
        req = self.ring.eq
        return all(req(c, b[e]) for e, c in a.items())

    __hash__ = None

    def first_difference(self, other: "TruncSeries"):
        """Lowest (degree, exponent) where the two series differ, or None."""
        self._check(other)
        T = min(self.trunc, other.trunc)
        diff = (self - other).truncate(T)
        st = diff.sorted_terms()
        return st[0][0] if st else None

    # calculus -----------------------------------------------------------
    def derivative(self, name: str) -> "TruncSeries":
        i = self.vars.index(name)
        w = self.vars.weights[i]
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                y = self.ring.scale_int(c, k)
                if not self.ring.is_zero(y):
                    out[ne] = y
        return self._like(out, self.trunc - w)

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be a unit."""
        c = self.constant_term()
        if not self.ring.is_unit(c):
            raise NotInvertible("constant term is not a unit")
        cinv = self.ring.inverse(c)
        eps = (self - self.const(self.ring, self.vars, c)).scale(cinv)
        if eps.is_zero() and eps.trunc == INF:
            return self.const(self.ring, self.vars, cinv)
        if self.trunc == INF:
            raise TruncationError("inverse of an exact non-constant series needs a truncation")
        T = self.trunc
        term = self.one(self.ring, self.vars, T)
        total = term
        neg = -eps
        while term.terms:
            term = term.mul_trunc(neg, T)
            total = total + term
        return total.scale(cinv).truncate(T)

    # substitution -------------------------------------------------------
    def substitute(self, bindings: Mapping[str, "TruncSeries"], vars: VarTable | None = None) -> "TruncSeries":
        """Replace variables by series over a common target ``VarTable``.

        Unbound variables map to the same-named target variable.  Images must
        have zero constant term unless ``self`` is an exact polynomial.
        """
        if vars is None:
            vars = next(iter(bindings.values())).vars if bindings else self.vars
        imgs = []
        for name in self.vars.names:
            if name in bindings:
                g = bindings[name]
                if g.ring != self.ring:
                    raise RingMismatch("substituted series lives over another ring")
                if g.vars != vars:
                    raise VarMismatch("substituted series use different variables")
            else:
                g = TruncSeries.var(self.ring, vars, name)
            imgs.append(g)
        T = min([g.trunc for g in imgs] + [INF])
        if self.trunc != INF:
            ratio = INF
            for g, w in zip(imgs, self.vars.weights):
                if g.terms or g.trunc != INF:
                    o = g.order()
                    if o <= 0:
                        raise NonNilpotentSubstitution("image has a nonzero constant term")
                    ratio = min(ratio, Fraction(o) / w if o != INF else INF)
            if ratio != INF:
                T = min(T, math.ceil(ratio * (self.trunc + 1)) - 1)
        return self._subst_core(imgs, vars, T)

    def _subst_core(self, imgs, vars, T):
        ring = self.ring
        cls = TruncSeries
        powers: dict = {}

        def pw(i, k):
            key = (i, k)
            if key not in powers:
                if k == 1:
                    powers[key] = imgs[i].truncate(T)
                else:
                    h = k // 2
                    powers[key] = pw(i, h).mul_trunc(pw(i, k - h), T)
            return powers[key]

        n = len(self.vars.names)
        zero = vars.zero

        def rec(items, i):
            if i == n:
                c = ring.sum(c for _, c in items)
                return cls(ring, vars, T, {zero: c})
            groups: dict = {}
            for e, c in items:
                groups.setdefault(e[i], []).append((e, c))
            acc = cls._raw(ring, vars, T, {})
            for k in sorted(groups):
                sub = rec(groups[k], i + 1)
                if k:
                    sub = sub.mul_trunc(pw(i, k), T)
                acc = acc + sub
            return acc

        out = rec(list(self.terms.items()), 0) if self.terms else cls._raw(ring, vars, T, {})
        return cls._raw(ring, vars, T, out.truncate(T).terms)

    def compose(self, g: "TruncSeries") -> "TruncSeries":
        """Univariate composition ``self(g)``."""
        if len(self.vars) != 1:
            raise VarMismatch("compose needs a univariate outer series")
        return self.substitute({self.vars.names[0]: g})

    def evaluate_unchecked(self, name: str, value, trunc=None) -> "TruncSeries":
        """Plug a ring value into a variable, keeping the other variables.

        The caller vouches that the result is meaningful; typically the ring
        is itself truncated so that the omitted high-degree terms vanish.
        """
        i = self.vars.index(name)
        rest = [n for j, n in enumerate(self.vars.names) if j != i]
        vt = self.vars.subtable(rest)
        pows = {0: self.ring.one()}
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k not in pows:
                for j in range(1, k + 1):
                    if j not in pows:
                        pows[j] = self.ring.mul(pows[j - 1], value)
            ne = e[:i] + e[i + 1:]
            v = self.ring.mul(c, pows[k])
            out[ne] = self.ring.add(out[ne], v) if ne in out else v
        return TruncSeries(self.ring, vt, self.trunc if trunc is None else trunc, out)

    # reshaping ----------------------------------------------------------
    def map_coefficients(self, f, ring: Ring) -> "TruncSeries":
        out = {}
        for e, c in self.terms.items():
            y = f(c)
            if not ring.is_zero(y):
                out[e] = y
        return type(self)(ring, self.vars, self.trunc, out)

    def change_ring(self, ring: Ring) -> "TruncSeries":
        src = self.ring
        return self.map_coefficients(lambda c: ring.coerce(c, src), ring)

    def rename(self, mapping: Mapping[str, str]) -> "TruncSeries":
        vt = self.vars
        names = tuple(mapping.get(n, n) for n in vt.names)
        nv = VarTable(names, vt.weights, vt.caps)
        return type(self)._raw(self.ring, nv, self.trunc, dict(self.terms))

    def embed(self, vars: VarTable) -> "TruncSeries":
        """View as a series in a larger variable table (by name)."""
        idx = [vars.index(n) for n in self.vars.names]
        for n, w in zip(self.vars.names, self.vars.weights):
            if vars.weights[vars.index(n)] != w:
                raise VarMismatch(f"weight of {n} changes")
        m = len(vars.names)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * m
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        return TruncSeries(self.ring, vars, self.trunc, out)

    def restrict(self, vars: VarTable) -> "TruncSeries":
        """Keep only terms in the variables of ``vars``, which must be a subset."""
        idx = [self.vars.index(n) for n in vars.names]
        others = [i for i in range(len(self.vars.names)) if i not in idx]
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in others):
                continue
            out[tuple(e[i] for i in idx)] = c
        return TruncSeries(self.ring, vars, self.trunc, out)

    def split(self, name: str) -> dict[int, "TruncSeries"]:
        """Coefficients along one variable, as series in the remaining ones."""
        i = self.vars.index(name)
        w = self.vars.weights[i]
        rest = [n for j, n in enumerate(self.vars.names) if j != i]
        vt = self.vars.subtable(rest)
        groups: dict[int, dict] = {}
        for e, c in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: TruncSeries(self.ring, vt, self.trunc - k * w, t) for k, t in sorted(groups.items())}

    def is_symmetric(self, names: Sequence[str]) -> bool:
        idx = [self.vars.index(n) for n in names]
        for a, b in zip(idx, idx[1:]):
            for e, c in self.terms.items():
                f = list(e)
                f[a], f[b] = f[b], f[a]
                f = tuple(f)
                if f not in self.terms or not self.ring.eq(self.terms[f], c):
                    return False
        return True

    # output -------------------------------------------------------------
    def __str__(self):
        parts = []
        for e, c in self.sorted_terms():
            mono = self.vars.fmt_monomial(e)
            cs = self.ring.fmt(c)
            if " " in cs.strip("-") or ("+" in cs or "-" in cs[1:]):
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        s = " + ".join(parts) if parts else "0"
        s = s.replace("+ -", "- ")
        if self.trunc != INF:
            s += f" + O(deg>{self.trunc})"
        return s

    def __repr__(self):
        return f"{type(self).__name__}<{self}>"

    def to_json(self) -> dict:
        return {
            "ring": self.ring.descriptor(),
            "vars": self.vars.to_json(),
            "trunc": None if self.trunc == INF else self.trunc,
            "terms": [[list(e), self.ring.to_json(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj) -> "TruncSeries":
        ring = ring_from_descriptor(obj["ring"])
        vt = VarTable.from_json(obj["vars"])
        T = INF if obj.get("trunc") is None else int(obj["trunc"])
        return cls(ring, vt, T, {tuple(e): ring.from_json(c) for e, c in obj["terms"]})


def _to_ring(ring: Ring, c):
    if isinstance(c, Scalar):
        return ring.coerce(c.value, c.ring)
    if isinstance(c, int):
        return ring.from_int(c)
    if isinstance(c, Fraction):
        from .scalars import QQ

        return ring.coerce(c, QQ)
    return c


# ---------------------------------------------------------------------------
# univariate helpers


def reversion(g: TruncSeries) -> TruncSeries:
    """Compositional inverse of a univariate series ``b0 x + ...`` with b0 a unit."""
    if len(g.vars) != 1:
        raise VarMismatch("reversion needs a univariate series")
    if not g.ring.is_zero(g.constant_term()):
        raise NonNilpotentSubstitution("series has a constant term")
    if g.trunc == INF:
        raise TruncationError("reversion needs a finite truncation")
    ring, vt, T = g.ring, g.vars, g.trunc
    b0 = g[(1,)]
    if not ring.is_unit(b0):
        raise NonInvertibleLeadingCoefficient("linear coefficient is not a unit")
    binv = ring.inverse(b0)
    delta = TruncSeries(ring, vt, T, {(1,): binv})
    for k in range(2, T + 1):
        r = g.truncate(k).compose(delta.truncate(k))[(k,)]
        if not ring.is_zero(r):
            terms = dict(delta.terms)
            terms[(k,)] = ring.neg(ring.mul(r, binv))
            delta = TruncSeries._raw(ring, vt, T, terms)
    return delta


# ---------------------------------------------------------------------------
# Laurent series


class LaurentSeries(TruncSeries):
    """Series in ``t`` (first variable, weight 1, may be negative) over a body.

    The body variables are the remaining ones; the precision model is the
    total-degree one described in the module docstring.
    """

    __slots__ = ()

    @classmethod
    def build(cls, ring: Ring, t: str, body: VarTable, trunc, terms: Mapping | None = None):
        names = (t,) + body.names
        caps = tuple((tuple(i + 1 for i in ix), m) for ix, m in body.caps)
        vt = VarTable(names, (1,) + body.weights, caps)
        return cls(ring, vt, trunc, terms)

    @classmethod
    def from_series(cls, s: TruncSeries, t: str | None = None) -> "LaurentSeries":
        t = s.vars.names[0] if t is None else t
        if s.vars.names[0] != t or s.vars.weights[0] != 1:
            raise VarMismatch("the Laurent variable must come first with weight 1")
        return cls._raw(s.ring, s.vars, s.trunc, dict(s.terms))

    @property
    def t(self) -> str:
        return self.vars.names[0]

    @property
    def body(self) -> VarTable:
        return self.vars.subtable(self.vars.names[1:])

    def min_exp(self):
        if not self.terms:
            return None
        return min(e[0] for e in self.terms)

    def exponents(self) -> list[int]:
        return sorted({e[0] for e in self.terms})

    def coefficient(self, a: int) -> TruncSeries:
        out = {e[1:]: c for e, c in self.terms.items() if e[0] == a}
        return TruncSeries(self.ring, self.body, self.trunc - a, out)

    def residue(self) -> TruncSeries:
        return self.coefficient(-1)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        return self._like({(e[0] + k,) + e[1:]: c for e, c in self.terms.items()}, self.trunc + k)

    def negative_part(self) -> "LaurentSeries":
        return self._like({e: c for e, c in self.terms.items() if e[0] < 0}, self.trunc)

    def nonnegative_part(self) -> "LaurentSeries":
        return self._like({e: c for e, c in self.terms.items() if e[0] >= 0}, self.trunc)

    @classmethod
    def from_coefficients(cls, ring, t, body: VarTable, coeffs: Mapping[int, TruncSeries], trunc) -> "LaurentSeries":
        terms = {}
        for a, s in coeffs.items():
            for e, c in s.terms.items():
                terms[(a,) + e] = c
        return cls.build(ring, t, body, trunc, terms)

    def invert(self) -> "LaurentSeries":
        return laurent_invert(self)


def laurent_invert(u: LaurentSeries) -> LaurentSeries:
    """Inverse of a Laurent series whose lowest unit coefficient dominates.

    Let ``k`` be the smallest exponent whose coefficient has a unit constant
    term; all lower coefficients must be nilpotent (built from capped body
    variables).  Writing ``u = c t^k (1 + eps)``, the geometric series in
    ``eps`` terminates; the result is reliable to degree ``trunc(u) - 2k``.
    """
    ring = u.ring
    exps = u.exponents()
    if not exps:
        raise NotInvertible("zero Laurent series")
    k = None
    for a in exps:
        c0 = u.coefficient(a).constant_term()
        if not ring.is_zero(c0):
            if ring.is_unit(c0):
                k = a
                break
            raise NotInvertible(f"coefficient of t^{a} has a non-unit constant term")
    if k is None:
        raise NotInvertible("no coefficient with a unit constant term")
    c0 = u.coefficient(k).constant_term()
    cinv = ring.inverse(c0)
    v = u.shift(-k).scale(cinv)
    one = LaurentSeries._raw(ring, u.vars, INF, {u.vars.zero: ring.one()})
    eps = v - one
    if eps.is_zero():
        return LaurentSeries._raw(ring, u.vars, u.trunc - 2 * k, {(-k,) + u.vars.zero[1:]: cinv})
    if eps.order() < 0:
        raise NotInvertible("correction term has negative order; precision would be lost without bound")
    if v.trunc == INF and any(e[0] > 0 for e in eps.terms):
        raise TruncationError("exact input with infinitely many inverse terms; give a truncation")
    body_caps = {i for ix, _ in u.vars.caps for i in ix}
    for e in eps.terms:
        if e[0] <= 0 and not all(e[i] == 0 or i in body_caps for i in range(1, len(e))):
            raise NotInvertible("lower coefficients are not nilpotent (uncapped body variable)")
    T = v.trunc
    bound = (0 if T == INF else int(T) + 1) + sum(m for _, m in u.vars.caps) + 2
    term = one
    total = one
    neg = -eps
    n = 0
    while term.terms:
        term = term.mul_trunc(neg, T)
        total = total + term
        n += 1
        if n > bound:
            raise NotInvertible("geometric series did not terminate")
    return LaurentSeries.from_series(total.scale(cinv).shift(-k))


def laurent_from_series(s: TruncSeries, t: str) -> LaurentSeries:
    """Move variable ``t`` to the front and view as a Laurent series."""
    names = (t,) + tuple(n for n in s.vars.names if n != t)
    body = s.vars.subtable(names[1:])
    vt = LaurentSeries.build(s.ring, t, body, s.trunc).vars
    return LaurentSeries.from_series(s.embed(vt) if s.vars != vt else s)


def residue(u: LaurentSeries) -> TruncSeries:
    return u.residue()
