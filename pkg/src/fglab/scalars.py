"""Exact coefficient rings.

Ring objects are immutable descriptors; the values they act on are plain
Python objects:

* ``Integers``           -> ``int``
* ``Rationals``          -> ``Fraction``
* ``ModP(p)``            -> ``int`` in ``range(p)``
* ``Localized(primes)``  -> ``Fraction`` whose denominator only involves ``primes``
* ``PolyRing(...)``      -> ``dict`` mapping exponent tuples to base values

Polynomial values are treated as immutable: no method mutates its arguments.
``Scalar`` wraps a (ring, value) pair with operator overloading for
interactive use and tests.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable

from .errors import InexactDivision, NotInvertible, RingMismatch


def prime_factors(n: int) -> tuple[int, ...]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _strip_primes(n: int, primes: Iterable[int]) -> int:
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n


class Ring:
    """Common interface. Subclasses override what differs."""

    native = False  # values support + - * directly (followed by ``reduce``)
    characteristic = 0

    # construction -------------------------------------------------------
    def zero(self):
        return 0

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def reduce(self, a):
        return a

    # arithmetic ---------------------------------------------------------
    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def mul(self, a, b):
        return self.reduce(a * b)

    def scale_int(self, a, n: int):
        return self.mul(a, self.from_int(n))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inverse(a), -k)
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def sum(self, items: Iterable):
        return reduce(self.add, items, self.zero())

    def is_zero(self, a) -> bool:
        return not a

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def divexact(self, a, b):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    # conversion ---------------------------------------------------------
    def coerce(self, a, source: "Ring"):
        if source == self:
            return a
        return self._coerce(a, source)

    def _coerce(self, a, source: "Ring"):
        if isinstance(source, PolyRing):
            if not a:
                return self.zero()
            if set(a) != {source.zero_exp}:
                raise RingMismatch(f"cannot map non-constant {source.fmt(a)} into {self}")
            return self.coerce(a[source.zero_exp], source.base)
        raise RingMismatch(f"no canonical map {source} -> {self}")

    def fmt(self, a) -> str:
        return str(a)

    def to_json(self, a):
        return str(a)

    def from_json(self, obj):
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def scalar(self, a) -> "Scalar":
        return Scalar(self, a)

    def __str__(self):
        return self.fmt_ring()

    def fmt_ring(self) -> str:
        return type(self).__name__


# ---------------------------------------------------------------------------
# Z, Q, Z/p, Z[S^-1]


@dataclass(frozen=True)
class Integers(Ring):
    native = True

    def from_int(self, n):
        return int(n)

    def divexact(self, a, b):
        if b == 0 or a % b:
            raise InexactDivision(f"{a} / {b} is not an integer")
        return a // b

    def is_unit(self, a):
        return a in (1, -1)

    def inverse(self, a):
        if a not in (1, -1):
            raise NotInvertible(f"{a} is not a unit of Z")
        return a

    def _coerce(self, a, source):
        if isinstance(source, (Rationals, Localized)):
            if a.denominator != 1:
                raise InexactDivision(f"{a} is not an integer")
            return int(a.numerator)
        return super()._coerce(a, source)

    def from_json(self, obj):
        return int(obj)

    def descriptor(self):
        return {"kind": "Integers"}

    def fmt_ring(self):
        return "Z"


def _fraction_json(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


@dataclass(frozen=True)
class Rationals(Ring):
    native = True

    def zero(self):
        return Fraction(0)

    def from_int(self, n):
        return Fraction(n)

    def divexact(self, a, b):
        if not b:
            raise InexactDivision("division by zero")
        return Fraction(a) / b

    def is_unit(self, a):
        return bool(a)

    def inverse(self, a):
        if not a:
            raise NotInvertible("0 is not a unit")
        return 1 / Fraction(a)

    def _coerce(self, a, source):
        if isinstance(source, (Integers, Localized)):
            return Fraction(a)
        return super()._coerce(a, source)

    def fmt(self, a):
        return _fraction_json(Fraction(a))

    def to_json(self, a):
        return _fraction_json(Fraction(a))

    def from_json(self, obj):
        return Fraction(obj)

    def descriptor(self):
        return {"kind": "Rationals"}

    def fmt_ring(self):
        return "Q"


@dataclass(frozen=True)
class ModP(Ring):
    p: int
    native = True

    def __post_init__(self):
        if self.p < 2 or prime_factors(self.p) != (self.p,):
            raise ValueError(f"ModP needs a prime, got {self.p}")

    @property
    def characteristic(self):
        return self.p

    def from_int(self, n):
        return n % self.p

    def reduce(self, a):
        return a % self.p

    def divexact(self, a, b):
        return (a * self.inverse(b)) % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def inverse(self, a):
        if a % self.p == 0:
            raise InexactDivision(f"0 is not invertible mod {self.p}")
        return pow(a, -1, self.p)

    def _coerce(self, a, source):
        if isinstance(source, Integers):
            return a % self.p
        if isinstance(source, (Rationals, Localized)):
            a = Fraction(a)
            if a.denominator % self.p == 0:
                raise InexactDivision(f"{a} has {self.p} in its denominator")
            return a.numerator * pow(a.denominator, -1, self.p) % self.p
        return super()._coerce(a, source)

    def from_json(self, obj):
        return int(obj) % self.p

    def descriptor(self):
        return {"kind": "ModP", "p": self.p}

    def fmt_ring(self):
        return f"Z/{self.p}"


@dataclass(frozen=True)
class Localized(Ring):
    """Z with the primes in ``primes`` inverted. Build with ``localize``."""

    primes: tuple[int, ...]
    native = True

    def zero(self):
        return Fraction(0)

    def from_int(self, n):
        return Fraction(n)

    def contains(self, a) -> bool:
        return _strip_primes(Fraction(a).denominator, self.primes) == 1

    def from_fraction(self, a):
        a = Fraction(a)
        if not self.contains(a):
            raise InexactDivision(f"{a} is not in {self.fmt_ring()}")
        return a

    def divexact(self, a, b):
        if not b:
            raise InexactDivision("division by zero")
        return self.from_fraction(Fraction(a) / b)

    def is_unit(self, a):
        a = Fraction(a)
        return bool(a) and _strip_primes(a.numerator, self.primes) == 1

    def inverse(self, a):
        if not self.is_unit(a):
            raise NotInvertible(f"{a} is not a unit of {self.fmt_ring()}")
        return 1 / Fraction(a)

    def _coerce(self, a, source):
        if isinstance(source, Integers):
            return Fraction(a)
        if isinstance(source, (Rationals, Localized)):
            return self.from_fraction(a)
        return super()._coerce(a, source)

    def fmt(self, a):
        return _fraction_json(Fraction(a))

    def to_json(self, a):
        return _fraction_json(Fraction(a))

    def from_json(self, obj):
        return self.from_fraction(Fraction(obj))

    def descriptor(self):
        return {"kind": "Localized", "base": {"kind": "Integers"}, "inverted": list(self.primes)}

    def fmt_ring(self):
        return "Z[1/" + ",".join(map(str, self.primes)) + "]"


ZZ = Integers()
QQ = Rationals()


def localize(ring: Ring, elements: Iterable[int]) -> Ring:
    """Invert the given integers in ``ring`` (recursing into polynomial bases)."""
    primes = set()
    for n in elements:
        if n == 0:
            raise ValueError("cannot invert 0")
        primes.update(prime_factors(n))
    if isinstance(ring, PolyRing):
        return PolyRing(localize(ring.base, primes), ring.gens, ring.weights, ring.trunc)
    if not primes or isinstance(ring, (Rationals, ModP)):
        if isinstance(ring, ModP) and ring.p in primes:
            raise NotInvertible(f"{ring.p} is zero in {ring.fmt_ring()}")
        return ring
    if isinstance(ring, Integers):
        return Localized(tuple(sorted(primes)))
    if isinstance(ring, Localized):
        return Localized(tuple(sorted(primes | set(ring.primes))))
    raise RingMismatch(f"cannot localize {ring}")


# ---------------------------------------------------------------------------
# weighted polynomial rings


@dataclass(frozen=True)
class PolyRing(Ring):
    """base[gens] with integer weights.

    With ``trunc`` set this is the quotient by all monomials of weighted
    degree > trunc; elements with a unit constant term are then invertible.
    """

    base: Ring
    gens: tuple[str, ...]
    weights: tuple[int, ...]
    trunc: int | None = None
    _degs: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.gens) != len(self.weights):
            raise ValueError("gens and weights differ in length")
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("duplicate generator names")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")

    @classmethod
    def graded(cls, base: Ring, prefix: str, n: int, trunc: int | None = None) -> "PolyRing":
        """``base[prefix1, ..., prefixn]`` with ``prefixk`` of weight k."""
        return cls(base, tuple(f"{prefix}{k}" for k in range(1, n + 1)), tuple(range(1, n + 1)), trunc)

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def zero_exp(self) -> tuple:
        return (0,) * len(self.gens)

    def zero(self):
        return {}

    def from_int(self, n):
        c = self.base.from_int(n)
        return {} if self.base.is_zero(c) else {self.zero_exp: c}

    def const(self, c):
        return {} if self.base.is_zero(c) else {self.zero_exp: c}

    def gen(self, name: str):
        i = self.gens.index(name)
        e = [0] * len(self.gens)
        e[i] = 1
        return self._cut({tuple(e): self.base.one()})

    def monomial(self, exp, c=None):
        c = self.base.one() if c is None else c
        exp = tuple(exp)
        return self._cut({exp: c}) if not self.base.is_zero(c) else {}

    def deg(self, e) -> int:
        d = self._degs.get(e)
        if d is None:
            d = sum(map(operator.mul, e, self.weights))
            self._degs[e] = d
        return d

    def _cut(self, a):
        if self.trunc is None:
            return a
        return {e: c for e, c in a.items() if self.deg(e) <= self.trunc}

    def reduce(self, a):
        return a

    # arithmetic ---------------------------------------------------------
    def add(self, a, b):
        if not b:
            return a
        if not a:
            return b
        out = dict(a)
        badd, bz = self.base.add, self.base.is_zero
        for e, c in b.items():
            if e in out:
                s = badd(out[e], c)
                if bz(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return out

    def neg(self, a):
        bn = self.base.neg
        return {e: bn(c) for e, c in a.items()}

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, a, c):
        """Multiply by a base-ring value."""
        bm, bz = self.base.mul, self.base.is_zero
        out = {}
        for e, x in a.items():
            y = bm(x, c)
            if not bz(y):
                out[e] = y
        return out

    def scale_int(self, a, n):
        return self.scale(a, self.base.from_int(n))

    def mul(self, a, b):
        if not a or not b:
            return {}
        if len(b) == 1 and self.zero_exp in b:
            return self.scale(a, b[self.zero_exp])
        if len(a) == 1 and self.zero_exp in a:
            return self.scale(b, a[self.zero_exp])
        deg, T = self.deg, self.trunc
        out: dict = {}
        get = out.get
        add = operator.add
        if self.base.native:
            for e1, c1 in a.items():
                d1 = deg(e1)
                for e2, c2 in b.items():
                    if T is not None and d1 + deg(e2) > T:
                        continue
                    e = tuple(map(add, e1, e2))
                    out[e] = get(e, 0) + c1 * c2
            red = self.base.reduce
            res = {}
            for e, c in out.items():
                c = red(c)
                if c:
                    res[e] = c
            return res
        bm, ba, bz = self.base.mul, self.base.add, self.base.is_zero
        for e1, c1 in a.items():
            d1 = deg(e1)
            for e2, c2 in b.items():
                if T is not None and d1 + deg(e2) > T:
                    continue
                e = tuple(map(add, e1, e2))
                p = bm(c1, c2)
                out[e] = ba(out[e], p) if e in out else p
        return {e: c for e, c in out.items() if not bz(c)}

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        if len(a) != len(b):
            return False
        beq = self.base.eq
        for e, c in a.items():
            if e not in b or not beq(c, b[e]):
                return False
        return True

    def constant_term(self, a):
        return a.get(self.zero_exp, self.base.zero())

    def is_unit(self, a):
        if self.trunc is None:
            return set(a) == {self.zero_exp} and self.base.is_unit(a[self.zero_exp])
        return self.base.is_unit(self.constant_term(a))

    def inverse(self, a):
        c = self.constant_term(a)
        if not self.base.is_unit(c):
            raise NotInvertible(f"{self.fmt(a)} is not a unit")
        cinv = self.base.inverse(c)
        nil = {e: v for e, v in a.items() if e != self.zero_exp}
        if not nil:
            return self.const(cinv)
        if self.trunc is None:
            raise NotInvertible(f"{self.fmt(a)} is not a unit")
        # c^{-1} * sum (-c^{-1} nil)^k, finite because nil has positive degree
        q = self.scale(self.neg(nil), cinv)
        term = self.const(cinv)
        total = term
        while term:
            term = self.mul(term, q)
            total = self.add(total, term)
        return total

    def divexact(self, a, b):
        if not b:
            raise InexactDivision("division by zero")
        if set(b) == {self.zero_exp}:
            c = b[self.zero_exp]
            bd = self.base.divexact
            return {e: bd(x, c) for e, x in a.items()}
        if self.trunc is not None:
            if self.is_unit(b):
                return self.mul(a, self.inverse(b))
            raise InexactDivision(f"{self.fmt(b)} is not a unit of the truncated ring")
        # exact division by leading terms (graded lex)
        key = lambda e: (self.deg(e), e)  # noqa: E731
        lb = max(b, key=key)
        cb = b[lb]
        q: dict = {}
        r = a
        while r:
            lr = max(r, key=key)
            if any(x < y for x, y in zip(lr, lb)):
                raise InexactDivision(f"{self.fmt(b)} does not divide {self.fmt(a)}")
            e = tuple(x - y for x, y in zip(lr, lb))
            t = {e: self.base.divexact(r[lr], cb)}
            q = self.add(q, t)
            r = self.sub(r, self.mul(t, b))
        return q

    # grading ------------------------------------------------------------
    def degree(self, a) -> int:
        if not a:
            raise ValueError("degree of zero")
        return max(self.deg(e) for e in a)

    def homogeneous_parts(self, a) -> dict[int, dict]:
        parts: dict[int, dict] = {}
        for e, c in a.items():
            parts.setdefault(self.deg(e), {})[e] = c
        return parts

    def is_homogeneous(self, a) -> bool:
        return len({self.deg(e) for e in a}) <= 1

    def truncate(self, a, n: int):
        return {e: c for e, c in a.items() if self.deg(e) <= n}

    def sorted_terms(self, a):
        return sorted(a.items(), key=lambda t: (self.deg(t[0]), tuple(-k for k in t[0])))

    # conversion ---------------------------------------------------------
    def _coerce(self, a, source):
        if isinstance(source, PolyRing):
            try:
                idx = [self.gens.index(g) for g in source.gens]
            except ValueError:
                if source.base == self and source.gens == ():
                    return a.get((), self.zero())
                raise RingMismatch(f"generators of {source} are not all in {self}") from None
            n = len(self.gens)
            out = {}
            for e, c in a.items():
                ne = [0] * n
                for i, k in zip(idx, e):
                    ne[i] = k
                ne = tuple(ne)
                if self.trunc is not None and self.deg(ne) > self.trunc:
                    continue
                c = self.base.coerce(c, source.base)
                if not self.base.is_zero(c):
                    out[ne] = c
            return out
        return self.const(self.base.coerce(a, source))

    def fmt(self, a) -> str:
        if not a:
            return "0"
        parts = []
        nested = isinstance(self.base, PolyRing)
        for e, c in self.sorted_terms(a):
            mono = "*".join(
                g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k
            )
            cs = self.base.fmt(c)
            if nested and len(c) > 1:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def to_json(self, a):
        return [[list(e), self.base.to_json(c)] for e, c in self.sorted_terms(a)]

    def from_json(self, obj):
        out = {}
        for e, c in obj:
            e = tuple(int(k) for k in e)
            if len(e) != len(self.gens):
                raise ValueError("exponent vector has wrong length")
            c = self.base.from_json(c)
            if not self.base.is_zero(c):
                out[e] = self.base.add(out[e], c) if e in out else c
        return self._cut({e: c for e, c in out.items() if not self.base.is_zero(c)})

    def descriptor(self):
        return {
            "kind": "Poly",
            "base": self.base.descriptor(),
            "generators": [[g, w] for g, w in zip(self.gens, self.weights)],
            "trunc": self.trunc,
        }

    def fmt_ring(self):
        t = "" if self.trunc is None else f"/(deg>{self.trunc})"
        return f"{self.base.fmt_ring()}[{','.join(self.gens)}]{t}"


def ring_from_descriptor(d: dict) -> Ring:
    kind = d["kind"]
    if kind == "Integers":
        return ZZ
    if kind == "Rationals":
        return QQ
    if kind == "ModP":
        return ModP(int(d["p"]))
    if kind == "Localized":
        base = ring_from_descriptor(d.get("base", {"kind": "Integers"}))
        return localize(base, [int(x) for x in d["inverted"]])
    if kind == "Poly":
        base = ring_from_descriptor(d["base"])
        gens = d["generators"]
        return PolyRing(base, tuple(g for g, _ in gens), tuple(int(w) for _, w in gens), d.get("trunc"))
    raise ValueError(f"unknown ring kind {kind!r}")


def base_ring(ring: Ring) -> Ring:
    """Innermost non-polynomial ring."""
    while isinstance(ring, PolyRing):
        ring = ring.base
    return ring


def with_base(ring: Ring, new_base: Ring) -> Ring:
    """Replace the innermost coefficient ring."""
    if isinstance(ring, PolyRing):
        return PolyRing(with_base(ring.base, new_base), ring.gens, ring.weights, ring.trunc)
    return new_base


def is_torsion_free(ring: Ring) -> bool:
    return base_ring(ring).characteristic == 0


# ---------------------------------------------------------------------------
# ring homomorphisms


@dataclass(frozen=True, eq=False)
class RingMap:
    """A ring homomorphism.

    For polynomial sources, ``images`` assigns target values to generators;
    generators without an image go to the same-named target generator.
    Coefficients travel along the canonical map of base rings.
    """

    source: Ring
    target: Ring
    images: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))

    def __eq__(self, other):
        if not isinstance(other, RingMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        a, b = dict(self.images), dict(other.images)
        return a.keys() == b.keys() and all(self.target.eq(a[k], b[k]) for k in a)

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(dict(self.images)))))

    @classmethod
    def identity(cls, ring: Ring) -> "RingMap":
        return cls(ring, ring)

    def __call__(self, a):
        src, tgt = self.source, self.target
        if not isinstance(src, PolyRing) or not self.images:
            return tgt.coerce(a, src)
        images = dict(self.images)
        imgs = []
        for g in src.gens:
            if g in images:
                imgs.append(images[g])
            elif isinstance(tgt, PolyRing) and g in tgt.gens:
                imgs.append(tgt.gen(g))
            else:
                raise RingMismatch(f"no image for generator {g}")
        powers: dict = {}

        def pw(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = imgs[i] if k == 1 else tgt.mul(pw(i, k - 1), imgs[i])
            return powers[key]

        total = tgt.zero()
        for e, c in src.sorted_terms(a):
            term = tgt.coerce(c, src.base)
            for i, k in enumerate(e):
                if k:
                    term = tgt.mul(term, pw(i, k))
            total = tgt.add(total, term)
        return total

    def then(self, other: "RingMap") -> "RingMap":
        """``other`` after ``self``."""
        if other.target is None or self.target != other.source:
            raise RingMismatch("maps do not compose")
        if not isinstance(self.source, PolyRing):
            return RingMap(self.source, other.target)
        imgs = tuple((g, other(self(self.source.gen(g)))) for g in self.source.gens)
        return RingMap(self.source, other.target, imgs)


def specialize_to_zero(ring: PolyRing, names: Iterable[str] | None = None) -> RingMap:
    """The map killing the named generators (all of them by default)."""
    names = list(ring.gens if names is None else names)
    keep = [(g, w) for g, w in zip(ring.gens, ring.weights) if g not in names]
    if keep:
        tgt: Ring = PolyRing(ring.base, tuple(g for g, _ in keep), tuple(w for _, w in keep), ring.trunc)
    else:
        tgt = ring.base
    return RingMap(ring, tgt, tuple((g, tgt.zero()) for g in names))


def reduce_mod(ring: Ring, p: int) -> RingMap:
    """Reduction of coefficients modulo the prime ``p``."""
    return RingMap(ring, with_base(ring, ModP(p)))


# ---------------------------------------------------------------------------
# boxed values


class Scalar:
    """An element of a ring, with arithmetic operators."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value: Any):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                return self.ring.coerce(other.value, other.ring)
            return other.value
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, Fraction):
            return self.ring.coerce(other, QQ)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.ring, self.ring.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.ring, self.ring.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.ring, self.ring.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.ring, self.ring.mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def __pow__(self, k: int):
        return Scalar(self.ring, self.ring.pow(self.value, k))

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.ring, self.ring.divexact(self.value, o))

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self.ring.eq(self.value, o)

    def __hash__(self):
        return hash(repr(self.ring.to_json(self.value)))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def __str__(self):
        return self.ring.fmt(self.value)

    def __repr__(self):
        return f"Scalar({self.ring.fmt(self.value)} in {self.ring.fmt_ring()})"
