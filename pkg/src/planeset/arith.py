"""Exact integer arithmetic: factor tables, divisors, squarefree parts."""

from __future__ import annotations

import math
from dataclasses import dataclass


def isqrt(m: int) -> int:
    """Floor of the square root of a nonnegative integer of any size."""
    if m < 0:
        raise ValueError("isqrt of negative integer")
    return math.isqrt(m)


def is_perfect_square(m: int) -> bool:
    if m < 0:
        return False
    r = math.isqrt(m)
    return r * r == m


def sqrt_exact(m: int) -> int | None:
    """Integer square root of m, or None when m is not a perfect square."""
    if m < 0:
        return None
    r = math.isqrt(m)
    return r if r * r == m else None


@dataclass(frozen=True)
class Factorization:
    """Prime-power factorization with strictly increasing primes."""

    prime_powers: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.prime_powers:
            out *= p**e
        return out

    def tau(self) -> int:
        out = 1
        for _, e in self.prime_powers:
            out *= e + 1
        return out

    def squarefree_part(self) -> int:
        out = 1
        for p, e in self.prime_powers:
            if e % 2:
                out *= p
        return out

    def divisors(self) -> list[int]:
        """All positive divisors, sorted ascending."""
        divs = [1]
        for p, e in self.prime_powers:
            pk = 1
            block = []
            for _ in range(e):
                pk *= p
                block.extend(d * pk for d in divs)
            divs.extend(block)
        divs.sort()
        return divs

    def multiply(self, other: "Factorization") -> "Factorization":
        merged: dict[int, int] = dict(self.prime_powers)
        for p, e in other.prime_powers:
            merged[p] = merged.get(p, 0) + e
        return Factorization(tuple(sorted(merged.items())))

    def divide_exact(self, other: "Factorization") -> "Factorization":
        """Quotient self/other; raises when other does not divide self."""
        merged: dict[int, int] = dict(self.prime_powers)
        for p, e in other.prime_powers:
            left = merged.get(p, 0) - e
            if left < 0:
                raise ValueError("factorization does not divide")
            if left == 0:
                del merged[p]
            else:
                merged[p] = left
        return Factorization(tuple(sorted(merged.items())))


def _trial_factor(m: int) -> Factorization:
    """Plain trial-division factorization (2, 3, then 6k+-1 wheel)."""
    if m < 1:
        raise ValueError("factorization requires m >= 1")
    pp = []
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            pp.append((p, e))
    d = 5
    while d * d <= m:
        for p in (d, d + 2):
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                pp.append((p, e))
        d += 6
    if m > 1:
        pp.append((m, 1))
    pp.sort()
    return Factorization(tuple(pp))


class FactorTable:
    """Smallest-prime-factor sieve up to `limit`.

    Immutable after construction; safe to share across workers.  Integers
    above the limit fall back to trial division, which stays cheap because
    the numbers factored in practice are products of factors at or below
    the limit.
    """

    def __init__(self, limit: int):
        limit = max(int(limit), 3)
        spf = list(range(limit + 1))
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == p:
                for q in range(p * p, limit + 1, p):
                    if spf[q] == q:
                        spf[q] = p
        self.limit = limit
        self.smallest_prime_factor = spf

    def factorize(self, m: int) -> Factorization:
        if m < 1:
            raise ValueError("factorization requires m >= 1")
        if m <= self.limit:
            return Factorization(tuple(self._factor_small(m).items()))
        return _trial_factor(m)

    def _factor_small(self, m: int) -> dict[int, int]:
        spf = self.smallest_prime_factor
        out: dict[int, int] = {}
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
        return out

    def squarefree_part(self, m: int) -> int:
        if m < 1:
            raise ValueError("squarefree_part requires m >= 1")
        if m > self.limit:
            return _trial_factor(m).squarefree_part()
        spf = self.smallest_prime_factor
        out = 1
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e ^= 1
            if e:
                out *= p
        return out

    def squarefree_part_of_product(self, factors: tuple[int, ...] | list[int]) -> int:
        """Squarefree part of a product given by factors <= limit each."""
        spf = self.smallest_prime_factor
        parity: dict[int, int] = {}
        for m in factors:
            if m > self.limit:
                f = _trial_factor(m)
                for p, e in f.prime_powers:
                    parity[p] = parity.get(p, 0) ^ (e & 1)
                continue
            while m > 1:
                p = spf[m]
                e = 0
                while m % p == 0:
                    m //= p
                    e ^= 1
                if e:
                    parity[p] = parity.get(p, 0) ^ 1
        out = 1
        for p, odd in parity.items():
            if odd:
                out *= p
        return out

    def tau(self, m: int) -> int:
        return self.factorize(m).tau()

    def divisors(self, m: int) -> list[int]:
        return self.factorize(m).divisors()

    def divisor_pairs(self, m: int) -> list[tuple[int, int]]:
        return divisor_pairs(m, self)


def factorize(m: int, table: FactorTable | None = None) -> Factorization:
    if table is not None:
        return table.factorize(m)
    return _trial_factor(m)


def squarefree_part(m: int, table: FactorTable | None = None) -> int:
    """The unique squarefree k with m = w**2 * k."""
    if m < 1:
        raise ValueError("squarefree_part requires m >= 1")
    if table is not None:
        return table.squarefree_part(m)
    return _trial_factor(m).squarefree_part()


def tau(m: int, table: FactorTable | None = None) -> int:
    """Number of positive divisors of m."""
    return factorize(m, table).tau()


def divisors(m: int, table: FactorTable | None = None) -> list[int]:
    return factorize(m, table).divisors()


def divisor_pairs(m: int, table: FactorTable | None = None) -> list[tuple[int, int]]:
    """All unordered factorizations m = X * Y with X >= Y, sorted by Y."""
    if m < 1:
        raise ValueError("divisor_pairs requires m >= 1")
    ds = factorize(m, table).divisors()
    return [(m // y, y) for y in ds if y * y <= m]
