"""Isomorph-free exhaustive generation of integral point sets by combining
pairs of q-point sets that share a (q-1)-point restriction.

Levels are kept per characteristic: only matrices with equal characteristic
can combine to a planar set, so the search space splits cleanly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .arith import FactorTable, isqrt, sqrt_exact
from .canonical import CANONICAL, NONE, classify, classify4_rows
from .geometry import (
    GENERAL,
    SEMI_GENERAL,
    DistanceMatrix,
    GeometryError,
    PointSet,
    SurdPoint,
    embed,
    heron_factors,
)


@dataclass
class Level:
    """Complete sorted list of semi-canonical q-point matrices for one
    characteristic and diameter cap (stored as upper-triangle keys)."""

    q: int
    characteristic: int
    dmax: int
    keys: list[tuple[int, ...]]
    canonical_flags: list[bool]
    complete: bool = True

    def matrices(self) -> list[DistanceMatrix]:
        return [DistanceMatrix.from_key(self.q, k) for k in self.keys]

    def canonical_keys(self) -> list[tuple[int, ...]]:
        return [k for k, f in zip(self.keys, self.canonical_flags) if f]

    def __len__(self) -> int:
        return len(self.keys)


def seed_triangles(dmax: int, table: FactorTable | None = None) -> dict[int, Level]:
    """All semi-canonical triangle matrices with diameter <= dmax, by characteristic.

    For each diameter d and each ordered pair (d13, d23) of the remaining
    sides the matrix (d, d13, d23) is semi-canonical; the one with
    d13 >= d23 is the canonical labeling.
    """
    if dmax < 1:
        raise ValueError("dmax must be positive")
    if table is None:
        table = FactorTable(3 * dmax)
    buckets: dict[int, list[tuple[int, int, int]]] = {}
    for d in range(1, dmax + 1):
        for b in range(1, d + 1):
            for c in range(d - b + 1, b + 1):
                k = table.squarefree_part_of_product(heron_factors(d, b, c))
                bucket = buckets.setdefault(k, [])
                bucket.append((d, b, c))
                if b != c:
                    bucket.append((d, c, b))
    out: dict[int, Level] = {}
    for k, keys in sorted(buckets.items()):
        keys.sort()
        flags = [key[1] >= key[2] for key in keys]
        out[k] = Level(3, k, dmax, keys, flags)
    return out


def _member_aux(keys: list[tuple[int, ...]], k: int) -> list[tuple[int, int]]:
    """Scaled coordinates (X, w) of each triangle's apex: the point is
    (X/(2a), (w/(2a))*sqrt(k)) over the base P1=(0,0), P2=(a,0)."""
    aux = []
    for a, b, c in keys:
        x_s = a * a + b * b - c * c
        y_sq = 4 * a * a * b * b - x_s * x_s
        w = isqrt(y_sq // k)
        aux.append((x_s, w))
    return aux


def _degenerate(a: int, b: int, c: int) -> bool:
    return 2 * max(a, b, c) == a + b + c


def _ptolemy_equal(p1: int, p2: int, p3: int) -> bool:
    return 2 * max(p1, p2, p3) == p1 + p2 + p3


def _combine_q3_keys(
    key1, key2, aux1, aux2, k: int, dmax: int, mode: str
) -> list[tuple[int, ...]]:
    """Star values for two triangles sharing their base side.

    Both triangles are embedded over the common base; the mirror freedom
    of the second apex yields at most two star candidates.
    """
    a, b1, c1 = key1
    _, b2, c2 = key2
    x1, w1 = aux1
    x2, w2 = aux2
    den = 4 * a * a
    dx2 = (x1 - x2) * (x1 - x2)
    out = []
    for wd in (w1 - w2, w1 + w2):
        num = dx2 + k * wd * wd
        if num == 0 or num % den:
            continue
        s_sq = num // den
        s = isqrt(s_sq)
        if s * s != s_sq or s > dmax:
            continue
        if _degenerate(b1, b2, s) or _degenerate(c1, c2, s):
            continue
        if mode == GENERAL and _ptolemy_equal(a * s, b1 * c2, b2 * c1):
            continue
        out.append((a, b1, c1, b2, c2, s))
    out.sort()
    return out


def _solve_new_point(
    common: list[SurdPoint], dists: tuple[int, ...]
) -> SurdPoint | None:
    """Unique point at the given distances from >= 3 non-collinear points."""
    from fractions import Fraction

    c0, c1, c2 = common[0], common[1], common[2]
    k = c0.k

    def norm(p):
        return p.x * p.x + k * p.y * p.y

    b1 = Fraction(dists[0] ** 2 - dists[1] ** 2) + norm(c1) - norm(c0)
    b2 = Fraction(dists[0] ** 2 - dists[2] ** 2) + norm(c2) - norm(c0)
    a11 = 2 * (c1.x - c0.x)
    a12 = 2 * k * (c1.y - c0.y)
    a21 = 2 * (c2.x - c0.x)
    a22 = 2 * k * (c2.y - c0.y)
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise GeometryError("reference points collinear")
    vx = (b1 * a22 - b2 * a12) / det
    vy = (a11 * b2 - a21 * b1) / det
    v = SurdPoint(vx, vy, k)
    for ci, ri in zip(common, dists):
        if v.squared_distance(ci) != ri * ri:
            return None
    return v


def _combine_general_keys(
    q: int,
    key1,
    key2,
    pts1: list[SurdPoint],
    dmax: int,
    mode: str,
    rows1,
) -> list[tuple[int, ...]]:
    """Star values for q >= 4: the common part is in semi-general position,
    so the second set's extra point has a unique placement."""
    t = (q - 1) * (q - 2) // 2
    r2 = key2[t:]
    common = pts1[: q - 1]
    u = pts1[q - 1]
    v = _solve_new_point(common, r2)
    if v is None:
        return []
    s_sq = u.squared_distance(v)
    if s_sq == 0 or s_sq.denominator != 1:
        return []
    s = sqrt_exact(s_sq.numerator)
    if s is None or s > dmax:
        return []
    r1 = key1[t:]
    for i in range(q - 1):
        if _degenerate(r1[i], r2[i], s):
            return []
    if mode == GENERAL:
        for i in range(q - 1):
            for j in range(i + 1, q - 1):
                if _ptolemy_equal(rows1[i][j] * s, r1[i] * r2[j], r1[j] * r2[i]):
                    return []
    return [key1 + r2 + (s,)]


def combine(
    l1: DistanceMatrix,
    l2: DistanceMatrix,
    dmax: int,
    table: FactorTable | None = None,
    mode: str = SEMI_GENERAL,
) -> list[DistanceMatrix]:
    """All (q+1)-point matrices extending l1 by l2's last point.

    Requires equal restrictions; the star distance must be integral, at
    most dmax, and must not create a degenerate triple (nor a concyclic
    quadruple in general mode).
    """
    if l1.n != l2.n:
        raise GeometryError("matrices must have equal point counts")
    q = l1.n
    t = (q - 1) * (q - 2) // 2
    if l1.key[:t] != l2.key[:t]:
        raise GeometryError("restrictions differ: matrices cannot be combined")
    if q == 3:
        from .geometry import Triangle, characteristic

        k1 = characteristic(Triangle.of(*l1.key), table)
        k2 = characteristic(Triangle.of(*l2.key), table)
        if k1 != k2:
            return []
        aux = _member_aux([l1.key, l2.key], k1)
        keys = _combine_q3_keys(l1.key, l2.key, aux[0], aux[1], k1, dmax, mode)
    else:
        pts1 = embed(l1, table)
        keys = _combine_general_keys(
            q, l1.key, l2.key, pts1, dmax, mode, l1.rows
        )
    return [DistanceMatrix.from_key(q + 1, key) for key in keys]


def generate_level(
    level: Level, table: FactorTable | None = None, mode: str = SEMI_GENERAL
) -> Level:
    """One pass of the orderly algorithm: combine canonical members with
    every member at most as large sharing their restriction, keep the
    semi-canonical results."""
    q = level.q
    dmax = level.dmax
    k = level.characteristic
    keys = level.keys
    flags = level.canonical_flags
    t = (q - 1) * (q - 2) // 2
    out_keys: list[tuple[int, ...]] = []
    out_flags: list[bool] = []

    if q == 3:
        aux = _member_aux(keys, k)

    i = 0
    n_members = len(keys)
    while i < n_members:
        j = i
        prefix = keys[i][:t]
        while j < n_members and keys[j][:t] == prefix:
            j += 1
        for i1 in range(i, j):
            if not flags[i1]:
                continue
            key1 = keys[i1]
            if q == 3:
                for i2 in range(i, i1 + 1):
                    cands = _combine_q3_keys(
                        key1, keys[i2], aux[i1], aux[i2], k, dmax, mode
                    )
                    for cand in cands:
                        rows = (
                            (0, cand[0], cand[1], cand[3]),
                            (cand[0], 0, cand[2], cand[4]),
                            (cand[1], cand[2], 0, cand[5]),
                            (cand[3], cand[4], cand[5], 0),
                        )
                        cls = classify4_rows(rows, cand)
                        if cls != NONE:
                            out_keys.append(cand)
                            out_flags.append(cls == CANONICAL)
            else:
                m1 = DistanceMatrix.from_key(q, key1)
                pts1 = embed(m1, table)
                for i2 in range(i, i1 + 1):
                    cands = _combine_general_keys(
                        q, key1, keys[i2], pts1, dmax, mode, m1.rows
                    )
                    for cand in cands:
                        m = DistanceMatrix.from_key(q + 1, cand)
                        cls = classify(m)
                        if cls != NONE:
                            out_keys.append(cand)
                            out_flags.append(cls == CANONICAL)
        i = j

    order = sorted(range(len(out_keys)), key=lambda idx: out_keys[idx])
    return Level(
        q + 1,
        k,
        dmax,
        [out_keys[idx] for idx in order],
        [out_flags[idx] for idx in order],
    )


def level_tower(
    seed: Level,
    nmax: int | None = None,
    table: FactorTable | None = None,
    mode: str = SEMI_GENERAL,
    checkpoint=None,
) -> list[Level]:
    """Generate levels upward from the seed until empty or nmax reached.

    `checkpoint` is an optional object with load(q, char) / save(level)
    used to resume interrupted runs.
    """
    levels = [seed]
    level = seed
    while level.keys and (nmax is None or level.q < nmax):
        nxt = None
        if checkpoint is not None:
            nxt = checkpoint.load(level.q + 1, level.characteristic)
        if nxt is None:
            nxt = generate_level(level, table, mode)
            if checkpoint is not None:
                checkpoint.save(nxt)
        levels.append(nxt)
        level = nxt
    return levels


def enumerate_point_sets(
    dmax: int,
    nmax: int | None = None,
    mode: str = SEMI_GENERAL,
    table: FactorTable | None = None,
    jobs: int = 1,
    checkpoint=None,
) -> Iterator[PointSet]:
    """Stream every canonical point set with diameter <= dmax, by
    characteristic (ascending), then point count, then matrix order."""
    if mode not in (SEMI_GENERAL, GENERAL):
        raise ValueError(f"orderly generation does not support mode {mode!r}")
    if table is None:
        table = FactorTable(3 * dmax)
    seeds = seed_triangles(dmax, table)

    if jobs > 1:
        from .parallel import pmap

        items = sorted(seeds)
        towers = pmap(
            _tower_worker,
            [(seeds[k], nmax, mode, 3 * dmax) for k in items],
            jobs,
        )
        for k, tower_keys in zip(items, towers):
            for q, key in tower_keys:
                m = DistanceMatrix.from_key(q, key)
                yield PointSet.from_matrix(m, table)
        return

    for k in sorted(seeds):
        levels = level_tower(seeds[k], nmax, table, mode, checkpoint)
        for lvl in levels:
            for key in lvl.canonical_keys():
                m = DistanceMatrix.from_key(lvl.q, key)
                yield PointSet.from_matrix(m, table)


def _tower_worker(args):
    seed, nmax, mode, limit = args
    table = FactorTable(limit)
    levels = level_tower(seed, nmax, table, mode)
    out = []
    for lvl in levels:
        out.extend((lvl.q, key) for key in lvl.canonical_keys())
    return out
