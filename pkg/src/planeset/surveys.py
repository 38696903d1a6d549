"""Quantitative surveys: triangle counts by characteristic, the number of
distinct characteristics per diameter with its prime-pair witnesses, the
five-parameter triangle parameterization, and extension counts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import FactorTable, squarefree_part
from .geometry import (
    GeometryError,
    Triangle,
    characteristic,
    characteristic_pairs,
    sqrt_fraction,
)


def psi_histogram(d: int, table: FactorTable | None = None) -> dict[int, int]:
    """Ordered-pair counts per characteristic at diameter d.

    Counts pairs (a, b) in {1..d}^2 with a + b > d; these are in bijection
    with the semi-canonical triangle matrices of diameter d.
    """
    return {
        k: len(pairs) for k, pairs in characteristic_pairs(d, table).items()
    }


def psi(
    d: int, k: int, table: FactorTable | None = None, ordered: bool = True
) -> int:
    """Number of diameter-d triangles with characteristic k.

    Ordered counting (the default) counts (a, b) and (b, a) separately;
    unordered counting collapses them to congruence classes.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if k < 1 or squarefree_part(k) != k:
        return 0
    pairs = characteristic_pairs(d, table).get(k, [])
    if ordered:
        return len(pairs)
    return sum(1 for a, b in pairs if a >= b)


def psi_tilde(d: int, table: FactorTable | None = None) -> tuple[int, int]:
    """Characteristic maximizing psi(d, .) (smallest on ties) and the maximum."""
    hist = psi_histogram(d, table)
    best_k = min(
        hist, key=lambda k: (-hist[k], k)
    )
    return best_k, hist[best_k]


def count_characteristics(d: int, table: FactorTable | None = None) -> int:
    """Number of distinct characteristics among diameter-d triangles."""
    return len(psi_histogram(d, table))


def _primes_in(lo: int, hi: int, table: FactorTable) -> list[int]:
    """Primes p with lo < p < hi (open interval)."""
    out = []
    spf = table.smallest_prime_factor
    for p in range(max(2, lo + 1), hi):
        if p <= table.limit:
            if spf[p] == p:
                out.append(p)
        else:  # beyond the sieve: trial division
            if all(p % q for q in range(2, math.isqrt(p) + 1)):
                out.append(p)
    return out


def prime_pair_triangles(
    d: int, table: FactorTable | None = None
) -> list[tuple[Triangle, int, int]]:
    """Witness triangles whose characteristic is divisible by a fresh prime
    pair: a = d, b = (p1+p2)/2 - d, c = (p1-p2)/2 over primes
    p1 in (9d/4, 10d/4) and p2 in (5d/4, 6d/4)."""
    if table is None:
        table = FactorTable(3 * d)
    p1s = [p for p in _primes_in(9 * d // 4, (10 * d + 3) // 4, table) if 4 * p > 9 * d and 4 * p < 10 * d]
    p2s = [p for p in _primes_in(5 * d // 4, (6 * d + 3) // 4, table) if 4 * p > 5 * d and 4 * p < 6 * d]
    out = []
    for p1 in p1s:
        for p2 in p2s:
            if (p1 + p2) % 2:
                continue
            b = (p1 + p2) // 2 - d
            c = (p1 - p2) // 2
            if not (d > b > c >= 1 and b + c > d):
                continue
            t = Triangle(d, b, c)
            k = characteristic(t, table)
            if k % (p1 * p2) != 0:
                raise AssertionError(
                    f"characteristic {k} not divisible by {p1}*{p2} at d={d}"
                )
            out.append((t, p1, p2))
    return out


@dataclass(frozen=True)
class ParameterTuple:
    """Five-integer parameterization of a triangle with characteristic k."""

    p: int
    q: int
    h: int
    i: int
    j: int


class ParameterSearchExceeded(RuntimeError):
    """The bounded parameter search ended without a witness."""


def parameterized_triangle(k: int, t: ParameterTuple) -> Triangle | None:
    """Evaluate the parameterization; None when it does not produce a valid
    positive integer triangle with characteristic k.

    The shape is carried by (h, i, j) and the similarity scale by p/q,
    applied to all three sides.
    """
    p, q, h, i, j = t.p, t.q, t.h, t.i, t.j
    if q <= 0 or math.gcd(p, q) != 1 or math.gcd(math.gcd(h, i), j) != 1:
        return None
    if i < h or i * h <= k * j * j:
        return None
    a = Fraction(p * h * (i * i + k * j * j), q)
    b = Fraction(p * i * (h * h + k * j * j), q)
    c = Fraction(p * (i + h) * (i * h - k * j * j), q)
    for v in (a, b, c):
        if v.denominator != 1 or v <= 0:
            return None
    tri_sides = sorted((a.numerator, b.numerator, c.numerator), reverse=True)
    if tri_sides[1] + tri_sides[2] <= tri_sides[0]:
        return None
    tri = Triangle(*tri_sides)
    if characteristic(tri) != k:
        return None
    return tri


def _direct_parameters(t: Triangle, k: int) -> ParameterTuple | None:
    """Reconstruct (p, q, h, i, j) from the altitude geometry.

    Dropping the apex onto the base at foot f with height w*sqrt(k), the
    ratios i/j = k*w/(a - c + f) and h/j = k*w/(b - f) recover the
    parameters; the scale p/q follows from matching the base side.
    """
    sides = t.sides
    for c_role in range(3):
        c = sides[c_role]
        rest = [sides[idx] for idx in range(3) if idx != c_role]
        a, b = max(rest), min(rest)
        f = Fraction(b * b + c * c - a * a, 2 * c)
        w = sqrt_fraction((Fraction(b * b) - f * f) / k)
        if w is None or w == 0:
            continue
        ti = k * w / (a - c + f)
        th = k * w / (b - f)
        if ti <= 0 or th <= 0:
            continue
        j = math.lcm(ti.denominator, th.denominator)
        i = ti.numerator * (j // ti.denominator)
        h = th.numerator * (j // th.denominator)
        g = math.gcd(math.gcd(h, i), j)
        h, i, j = h // g, i // g, j // g
        if i < h or i * h <= k * j * j:
            continue
        a0 = h * (i * i + k * j * j)
        ratio = Fraction(a, a0)
        cand = ParameterTuple(ratio.numerator, ratio.denominator, h, i, j)
        if parameterized_triangle(k, cand) == t:
            return cand
    return None


def find_parameters(t: Triangle, search_bound: int | None = None) -> ParameterTuple:
    """A parameter tuple reproducing the triangle.

    Tries the direct altitude construction per base side, then a bounded
    brute-force sweep (h, i up to twice the largest side, j up to the
    largest side); exceeding the bound raises rather than failing silently.
    """
    if t.is_degenerate():
        raise GeometryError("degenerate triangles are not parameterizable")
    k = characteristic(t)
    direct = _direct_parameters(t, k)
    if direct is not None:
        return direct
    bound = search_bound if search_bound is not None else 2 * t.a
    for j in range(1, t.a + 1):
        kj2 = k * j * j
        for h in range(1, bound + 1):
            for i in range(max(h, kj2 // h + 1), bound + 1):
                if math.gcd(math.gcd(h, i), j) != 1 or i * h <= kj2:
                    continue
                a0 = h * (i * i + kj2)
                b0 = i * (h * h + kj2)
                c0 = (i + h) * (i * h - kj2)
                if sorted((a0, b0, c0), reverse=True)[0] == 0:
                    continue
                ratio = Fraction(t.a, max(a0, b0, c0))
                cand = ParameterTuple(ratio.numerator, ratio.denominator, h, i, j)
                if parameterized_triangle(k, cand) == t:
                    return cand
    raise ParameterSearchExceeded(
        f"no parameter tuple within bound {bound} for {t}"
    )


def upsilon(base: Triangle, d: int, table: FactorTable | None = None) -> int:
    """Number of canonical 4-point semi-general extensions of the base
    triangle with diameter <= d."""
    from .canonical import CANONICAL, classify4_rows
    from .clique import candidate_points

    if base.a > d:
        raise GeometryError("base diameter exceeds d")
    if base.is_degenerate():
        return 0
    a, b, c = base.sides
    keys = set()
    for v in candidate_points(base, d, table=table):
        ra, rb, rc = v.corner_distances
        key = (a, b, c, ra, rb, rc)
        if key in keys:
            continue
        rows = (
            (0, a, b, ra),
            (a, 0, c, rb),
            (b, c, 0, rc),
            (ra, rb, rc, 0),
        )
        if classify4_rows(rows, key) == CANONICAL:
            keys.add(key)
    return len(keys)


def upsilon_bar(d: int, table: FactorTable | None = None) -> tuple[Triangle, int]:
    """Maximum of upsilon over base triangles with diameter exactly d
    (smallest triangle on ties)."""
    if table is None:
        table = FactorTable(3 * d)
    best: tuple[Triangle, int] | None = None
    for b in range(1, d + 1):
        for c in range(max(1, d - b + 1), b + 1):
            t = Triangle(d, b, c)
            val = upsilon(t, d, table)
            if best is None or val > best[1]:
                best = (t, val)
    assert best is not None
    return best
