"""Chow groups modulo p: Steenrod basis, the ring of additive series, Adams exponents."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from ..errors import Unstabilized
from ..scalars import ModP
from ..series import TruncSeries

__all__ = [
    "chp_steenrod_basis",
    "additive_to_frobenius",
    "ChpRingCheck",
    "chp_mult_ring_check",
    "random_additive_series",
    "adams_exponent",
]


def chp_steenrod_basis(p: int, n: int, m: int) -> list[tuple[int, ...]]:
    """Partitions of m - n into at most n parts of the form p^r - 1 (r >= 1), largest part first."""
    total = m - n
    if total < 0:
        return []
    parts = []
    q = p
    while q - 1 <= total:
        parts.append(q - 1)
        q *= p
    parts.sort(reverse=True)
    out = []

    def rec(rest, start, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        if len(acc) == n:
            return
        for k in range(start, len(parts)):
            if parts[k] <= rest:
                acc.append(parts[k])
                rec(rest - parts[k], k, acc)
                acc.pop()

    rec(total, 0, [])
    return sorted(out, reverse=True)


def additive_to_frobenius(gamma: TruncSeries) -> dict[int, int]:
    """sum c_r x^(p^r) -> {r: c_r}; raises ValueError for a non-additive series."""
    ring = gamma.ring
    p = ring.characteristic
    out = {}
    for (e,), c in gamma.terms.items():
        r, q = 0, 1
        while q < e:
            q *= p
            r += 1
        if q != e:
            raise ValueError(f"x^{e} is not a power x^(p^r); the series is not additive")
        out[r] = c
    return out


@dataclass(frozen=True)
class ChpRingCheck:
    ok: bool
    pairs: int
    failure: tuple | None = None  # (i, j, reason)

    def __bool__(self):
        return self.ok


def _fr_mul(a: dict, b: dict, p: int, top: int) -> dict:
    out: dict = {}
    for r, c in a.items():
        for s, d in b.items():
            if r + s <= top:
                out[r + s] = (out.get(r + s, 0) + c * d) % p
    return {k: v for k, v in out.items() if v}


def chp_mult_ring_check(p: int, samples: Sequence[TruncSeries]) -> ChpRingCheck:
    """Composition of additive series commutes and matches multiplication in Z/p[[Fr]].

    Frobenius acts trivially on Z/p, so ``(sum c_r Fr^r)(sum d_s Fr^s)`` is
    the composite; addition of series is addition of coefficients.
    """
    ring = ModP(p)
    for s in samples:
        if s.ring != ring:
            raise ValueError(f"samples must live over Z/{p}")
        if not s.ring.is_zero(s.constant_term()):
            raise ValueError("samples must have zero constant term")
    frs = [additive_to_frobenius(s) for s in samples]
    pairs = 0
    for i, a in enumerate(samples):
        for j, b in enumerate(samples):
            if j < i:
                continue
            pairs += 1
            ab = a.compose(b)
            ba = b.compose(a)
            if not ab == ba:
                return ChpRingCheck(False, pairs, (i, j, "composition does not commute"))
            T = min(ab.trunc, ba.trunc)
            top = 0
            while p ** (top + 1) <= T:
                top += 1
            if additive_to_frobenius(ab.truncate(T)) != _fr_mul(frs[i], frs[j], p, top):
                return ChpRingCheck(False, pairs, (i, j, "composition is not the product in Z/p[[Fr]]"))
            if additive_to_frobenius((a + b)) != {k: v for k, v in
                                                  ((r, (frs[i].get(r, 0) + frs[j].get(r, 0)) % p)
                                                   for r in set(frs[i]) | set(frs[j])) if v}:
                return ChpRingCheck(False, pairs, (i, j, "sum is not the sum in Z/p[[Fr]]"))
    return ChpRingCheck(True, pairs)


def random_additive_series(rng, p: int, trunc: int, unit: bool = False) -> TruncSeries:
    """A random sum of c_r x^(p^r) with p^r <= trunc; ``unit`` forces c_0 != 0."""
    ring = ModP(p)
    terms = {}
    q, r = 1, 0
    while q <= trunc:
        c = rng.randrange(p)
        if r == 0 and unit and c == 0:
            c = 1 + rng.randrange(p - 1)
        if c:
            terms[(q,)] = c
        q *= p
        r += 1
    from ..fgl import X

    return TruncSeries(ring, X, trunc, terms)


def adams_exponent(n: int, r: int, k_bound: int = 100) -> int:
    """e(n, r) = gcd over 2 <= k <= k_bound of k^n (k^(r-1) - 1).

    The gcd must already be reached in the first half of the range, otherwise
    Unstabilized is raised.
    """
    if r < 2:
        raise ValueError("r >= 2 required")
    if k_bound < 10:
        raise ValueError("k_bound >= 10 required")
    g = 0
    half = None
    mid = k_bound // 2
    for k in range(2, k_bound + 1):
        g = gcd(g, k ** n * (k ** (r - 1) - 1))
        if k == mid:
            half = g
    if g != half:
        raise Unstabilized(f"gcd changed after k = {mid}; raise k_bound")
    return g
