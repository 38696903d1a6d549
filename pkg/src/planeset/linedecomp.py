"""Integral points on a triangle's base line via two-factor decompositions
of the decomposition number, and the divisor-rich heuristic for upper
bounds on the minimum diameter of sets with n-1 collinear points."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import FactorTable, Factorization, factorize
from .geometry import (
    DistanceMatrix,
    GeometryError,
    PointSet,
    heron_factors,
)


@dataclass(frozen=True)
class DecompositionProfile:
    """Base-line data of a triangle: base a, apex distances b (left end)
    and c (right end), decomposition number D = g**2 * h**2 with g the
    denominator-clearing factor of the altitude foot."""

    a: int
    b: int
    c: int
    D: int
    g: int
    foot: Fraction
    height_sq: Fraction
    d_factorization: Factorization

    @property
    def sides(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


def decomposition_profile(
    a: int, b: int, c: int, table: FactorTable | None = None
) -> DecompositionProfile:
    """Profile of the triangle with designated base a and apex distances b, c."""
    sides = sorted((a, b, c), reverse=True)
    if sides[1] + sides[2] <= sides[0]:
        raise GeometryError(f"degenerate or invalid triangle ({a}, {b}, {c})")
    s = b * b - c * c + a * a
    gg = math.gcd(s, 2 * a)
    g = 2 * a // gg
    foot = Fraction(s, 2 * a)
    height_sq = Fraction(b * b) - foot * foot
    fs = heron_factors(*sides)
    heron = fs[0] * fs[1] * fs[2] * fs[3]
    d_number = heron // (gg * gg)
    if d_number * gg * gg != heron:
        raise AssertionError("decomposition number is not integral")
    if g * g * height_sq != d_number:
        raise AssertionError("g**2 * h**2 != decomposition number")
    f = factorize(fs[0], table)
    for x in fs[1:]:
        f = f.multiply(factorize(x, table))
    gf = factorize(gg, table)
    f = f.divide_exact(gf).divide_exact(gf)
    return DecompositionProfile(a, b, c, d_number, g, foot, height_sq, f)


@dataclass(frozen=True)
class LineConfiguration:
    """Sorted integer positions on the base line (origin at the left base
    endpoint) with integral apex distances; the apex plus the line points
    form an integral point set."""

    profile: DecompositionProfile
    positions: tuple[int, ...]
    apex_distances: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.positions) + 1

    def to_point_set(self, table: FactorTable | None = None) -> PointSet:
        """Matrix of apex + line points (apex first)."""
        if len(self.positions) < 2:
            raise GeometryError("need at least two line points")
        pos = self.positions
        apex = self.apex_distances
        m = len(pos) + 1
        rows = [[0] * m for _ in range(m)]
        for i, r in enumerate(apex, start=1):
            rows[0][i] = rows[i][0] = r
        for i in range(len(pos)):
            for j in range(i + 1, len(pos)):
                dist = abs(pos[j] - pos[i])
                rows[i + 1][j + 1] = rows[j + 1][i + 1] = dist
        return PointSet.from_matrix(DistanceMatrix(rows), table)


def points_on_base(
    profile: DecompositionProfile,
    window: tuple[int, int] | None = None,
) -> LineConfiguration:
    """All integer base-line positions with integral apex distance.

    Each position comes from a factorization D = X * Y with X and Y of
    equal parity: u = (X+Y)/2 scaled apex distance, v = (X-Y)/2 scaled
    offset from the altitude foot.  Base endpoints appear on their own.
    """
    a = profile.a
    if window is None:
        window = (-3 * a, 4 * a)
    lo, hi = window
    g = profile.g
    gfoot = profile.foot * g
    assert gfoot.denominator == 1
    gfoot = gfoot.numerator
    found: dict[int, int] = {}
    divs = profile.d_factorization.divisors()
    d_number = profile.D
    for y in divs:
        if y * y > d_number:
            break
        x = d_number // y
        if (x - y) % 2:
            continue
        u = (x + y) // 2
        v = (x - y) // 2
        if u % g:
            continue
        r = u // g
        for num in (gfoot + v, gfoot - v):
            if num % g:
                continue
            pos = num // g
            if lo <= pos <= hi:
                found[pos] = r
    positions = tuple(sorted(found))
    return LineConfiguration(
        profile, positions, tuple(found[p] for p in positions)
    )


def tau_necessary_check(cfg: LineConfiguration) -> bool:
    """Each line position consumes a two-factor decomposition of D (up to
    sign), so the position count can never exceed tau(D) + 1."""
    return cfg.profile.d_factorization.tau() + 1 >= len(cfg.positions)


def theorem_bound_many_collinear(n: float, delta: float, epsilon: float) -> float:
    """Numeric value of the collinear-points diameter lower bound
    n ** (delta * loglog(n) / (4 * ln2 * (1 + epsilon))); reporting only."""
    if n < 3:
        raise ValueError("n must be at least 3")
    if not (0 < delta <= 1) or epsilon <= 0:
        raise ValueError("need 0 < delta <= 1 and epsilon > 0")
    loglog = math.log(math.log(n))
    exponent = delta * loglog / (4 * math.log(2) * (1 + epsilon))
    return n**exponent


def smooth_candidates(
    n: int,
    tau_min: int | None = None,
    d_limit: int | None = None,
    primes: tuple[int, ...] = (2, 3, 5, 7, 11, 13),
) -> list[tuple[int, int, Factorization]]:
    """(D, g) candidates for the heuristic: smooth numbers with enough
    divisors to host n-1 line positions; g=2 requires odd D.

    tau(D) + 1 bounds the admissible positions, so tau(D) >= n - 2 is the
    weakest useful filter and the default.
    """
    if tau_min is None:
        tau_min = n - 2
    if d_limit is None:
        d_limit = 10**6
    smooth: list[Factorization] = [Factorization(())]
    for p in primes:
        extended = []
        for f in smooth:
            v = f.value
            e = 0
            while v <= d_limit:
                if e:
                    extended.append(Factorization(tuple(sorted((*f.prime_powers, (p, e))))))
                v *= p
                e += 1
        smooth.extend(extended)
    out = []
    for f in smooth:
        d_number = f.value
        if f.tau() < tau_min:
            continue
        if d_number % 4 == 2:
            continue  # u**2 - v**2 = D is unsolvable
        out.append((d_number, 1, f))
        if d_number % 2:
            out.append((d_number, 2, f))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


@dataclass(frozen=True)
class HeuristicRecord:
    """One diameter-optimal configuration found by the heuristic."""

    n: int
    D: int
    g: int
    diameter: int
    positions: tuple[int, ...]
    apex_distances: tuple[int, ...]


@dataclass(frozen=True)
class HeuristicResult:
    n: int
    diameter: int
    best: PointSet
    optima: tuple[HeuristicRecord, ...]

    @property
    def optimal_pairs(self) -> set[tuple[int, int]]:
        return {(r.D, r.g) for r in self.optima}


def _offsets_for(f: Factorization, d_number: int, g: int):
    """Scaled offsets (g * offset, apex distance) admitted by (D, g)."""
    out = {}
    divs = f.divisors()
    for y in divs:
        if y * y > d_number:
            break
        x = d_number // y
        if (x - y) % 2:
            continue
        u = (x + y) // 2
        v = (x - y) // 2
        if u % g:
            continue
        r = u // g
        out[v] = r
        out[-v] = r
    return sorted(out.items())


def _evaluate_candidate(n: int, d_number: int, g: int, f: Factorization):
    """Best window of n-1 consecutive admissible offsets, or None."""
    offsets = _offsets_for(f, d_number, g)
    m = n - 1
    if len(offsets) < m:
        return None
    best = None
    for i in range(len(offsets) - m + 1):
        window = offsets[i : i + m]
        scaled_span = window[-1][0] - window[0][0]
        if scaled_span % g:
            continue
        span = scaled_span // g
        diameter = max(span, window[0][1], window[-1][1])
        left = window[0][0]
        positions = tuple((v - left) // g for v, _ in window)
        apex = tuple(r for _, r in window)
        cand = (diameter, len(set(apex)), positions, apex)
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    diameter, _, positions, apex = best
    return HeuristicRecord(n, d_number, g, diameter, positions, apex)


def heuristic_min_diameter(
    n: int,
    candidates: list[tuple[int, int, Factorization]] | None = None,
    tau_min: int | None = None,
    d_limit: int | None = None,
    table: FactorTable | None = None,
) -> HeuristicResult:
    """Diameter-minimal apex-plus-collinear configuration over the
    candidate (D, g) values; reports every candidate achieving the
    minimum."""
    if n < 4:
        raise ValueError("heuristic needs n >= 4")
    if candidates is None:
        candidates = smooth_candidates(n, tau_min, d_limit)
    records = []
    for d_number, g, f in candidates:
        rec = _evaluate_candidate(n, d_number, g, f)
        if rec is not None:
            records.append(rec)
    if not records:
        raise ValueError("no candidate admits n-1 line positions")
    best_diam = min(r.diameter for r in records)
    optima = tuple(
        sorted(
            (r for r in records if r.diameter == best_diam),
            key=lambda r: (len(set(r.apex_distances)), r.positions, r.D, r.g),
        )
    )
    chosen = optima[0]
    profile = decomposition_profile(
        chosen.positions[-1],
        chosen.apex_distances[0],
        chosen.apex_distances[-1],
        table,
    )
    cfg = LineConfiguration(profile, chosen.positions, chosen.apex_distances)
    return HeuristicResult(n, best_diam, cfg.to_point_set(table), optima)
