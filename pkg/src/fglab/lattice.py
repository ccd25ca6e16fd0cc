"""Integer lattices in Hermite normal form.

Row convention: a basis is a list of integer rows, upper triangular, with
positive pivots and every entry above a pivot reduced into ``[0, pivot)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch
from .scalars import prime_factors


def _hnf(rows: list[list[int]], track: bool):
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    ncols = len(A[0]) if A else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None

    def combine(i, j, q):  # row_i -= q * row_j
        if q:
            Ai, Aj = A[i], A[j]
            for c in range(ncols):
                Ai[c] -= q * Aj[c]
            if track:
                Ui, Uj = U[i], U[j]
                for c in range(m):
                    Ui[c] -= q * Uj[c]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def negate(i):
        A[i] = [-x for x in A[i]]
        if track:
            U[i] = [-x for x in U[i]]

    r = 0
    pivots = []
    for col in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][col]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(A[i][col]), i))
            if k != r:
                swap(k, r)
            done = True
            for i in range(r + 1, m):
                if A[i][col]:
                    combine(i, r, A[i][col] // A[r][col])
                    if A[i][col]:
                        done = False
            if done:
                break
        if not A[r][col]:
            continue
        if A[r][col] < 0:
            negate(r)
        piv = A[r][col]
        for i in range(r):
            combine(i, r, A[i][col] // piv)
        pivots.append(col)
        r += 1
    H = A[:r]
    return H, (U[:r] if track else None), pivots


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Hermite normal form of the lattice spanned by ``rows`` (zero rows dropped)."""
    return _hnf([list(r) for r in rows], False)[0]


def hnf_with_transform(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Return ``(H, U)`` with ``H[k] = sum_r U[k][r] * rows[r]``."""
    H, U, _ = _hnf([list(r) for r in rows], True)
    return H, U


@dataclass(frozen=True)
class IntegerLattice:
    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]
    degree: int | None = None

    @classmethod
    def span(cls, rows: Sequence[Sequence[int]], ambient_rank: int, degree: int | None = None):
        for r in rows:
            if len(r) != ambient_rank:
                raise DimensionMismatch("row length differs from ambient rank")
        return cls(ambient_rank, tuple(tuple(r) for r in hnf(rows)), degree)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(row) if x) for row in self.basis]

    def coordinates(self, v: Sequence) -> list[Fraction] | None:
        """Rational coordinates of ``v`` in the basis, or None outside the Q-span."""
        if len(v) != self.ambient_rank:
            raise DimensionMismatch("vector length differs from ambient rank")
        res = [Fraction(x) for x in v]
        coords = []
        for row, c in zip(self.basis, self.pivots):
            x = res[c] / row[c]
            coords.append(x)
            if x:
                for j in range(c, self.ambient_rank):
                    if row[j]:
                        res[j] -= x * row[j]
        if any(res):
            return None
        return coords

    def contains(self, v: Sequence, inverted: Sequence[int] = ()) -> bool:
        return lattice_member(v, self, inverted)

    def index(self) -> int:
        """Index in Z^rank when the lattice has full rank, else 0."""
        if self.rank != self.ambient_rank:
            return 0
        out = 1
        for row, c in zip(self.basis, self.pivots):
            out *= row[c]
        return out

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "ambient_rank": self.ambient_rank,
            "basis": [[str(x) for x in row] for row in self.basis],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IntegerLattice":
        return cls(
            int(obj["ambient_rank"]),
            tuple(tuple(int(x) for x in row) for row in obj["basis"]),
            obj.get("degree"),
        )


def lattice_member(v: Sequence, lat: IntegerLattice, inverted: Sequence[int] = ()) -> bool:
    """Is ``v`` in ``lat`` tensored with Z[1/s : s in inverted]?"""
    coords = lat.coordinates(v)
    if coords is None:
        return False
    primes = set()
    for s in inverted:
        primes.update(prime_factors(s))
    for x in coords:
        d = x.denominator
        for p in primes:
            while d % p == 0:
                d //= p
        if d != 1:
            return False
    return True
