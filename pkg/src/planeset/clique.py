"""Hybrid search: for a base triangle, build the graph of integrally
distant extension points and read candidate point sets off its cliques.

Coordinates are scaled by 2a (a the base side) so that every vertex is an
integer pair (X, W) representing the point (X/(2a), (W/(2a))*sqrt(k)).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .arith import FactorTable, isqrt
from .canonical import canonical_form
from .geometry import (
    ARBITRARY,
    GENERAL,
    SEMI_GENERAL,
    DistanceMatrix,
    GeometryError,
    PointSet,
    Triangle,
    characteristic,
    characteristic_pairs,
    heron_factors,
    is_degenerate_triple,
    position_class,
)
from .linedecomp import decomposition_profile, points_on_base


@dataclass(frozen=True)
class Vertex:
    """Extension point with scaled coordinates and corner distances."""

    x_scaled: int
    w_scaled: int
    corner_distances: tuple[int, int, int]


@dataclass
class ExtensionGraph:
    base: Triangle
    diameter: int
    mode: str
    characteristic: int
    scale: int
    vertices: tuple[Vertex, ...]
    adjacency: list[int]

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2


def candidate_points(
    base: Triangle,
    d: int,
    mode: str = SEMI_GENERAL,
    table: FactorTable | None = None,
    char_pairs: dict[int, list[tuple[int, int]]] | None = None,
) -> list[Vertex]:
    """All points with integral distances <= d to the three corners.

    Off-line points come from the (r_A, r_B) loop filtered by matching
    characteristic; in arbitrary mode the base-line points are added from
    the divisor scan of the decomposition number.
    """
    a, b, c = base.sides
    if base.is_degenerate():
        raise GeometryError("base triangle must be non-degenerate")
    if a > d:
        raise GeometryError("base diameter exceeds the search diameter")
    if table is None:
        table = FactorTable(3 * d)
    k = characteristic(base, table)
    xc = a * a + b * b - c * c
    wc_sq = 4 * a * a * b * b - xc * xc
    wc = isqrt(wc_sq // k)
    den = 4 * a * a
    out: list[Vertex] = []

    if char_pairs is not None and a == d:
        pair_iter = char_pairs.get(k, [])
    else:
        pair_iter = _matching_pairs(a, d, k, table)

    for ra, rb in pair_iter:
        x = a * a + ra * ra - rb * rb
        w_sq = 4 * a * a * ra * ra - x * x
        w = isqrt(w_sq // k)
        for ws in (w, -w):
            num = (x - xc) ** 2 + k * (ws - wc) ** 2
            if num == 0 or num % den:
                continue
            rc_sq = num // den
            rc = isqrt(rc_sq)
            if rc * rc != rc_sq or rc > d:
                continue
            if mode != ARBITRARY:
                if is_degenerate_triple(ra, rc, b) or is_degenerate_triple(rb, rc, c):
                    continue
            out.append(Vertex(x, ws, (ra, rb, rc)))

    if mode == ARBITRARY:
        profile = decomposition_profile(a, b, c, table)
        cfg = points_on_base(profile, (a - d, d))
        for pos, rc in zip(cfg.positions, cfg.apex_distances):
            if pos in (0, a) or rc > d:
                continue
            out.append(Vertex(2 * a * pos, 0, (abs(pos), abs(pos - a), rc)))

    out.sort(key=lambda v: (v.x_scaled, v.w_scaled))
    return out


def _matching_pairs(a: int, d: int, k: int, table: FactorTable):
    """Ordered (r_A, r_B) pairs over 1..d whose triangle with the base
    side has the base characteristic."""
    for ra in range(1, d + 1):
        lo = max(1, ra - a + 1, a - ra + 1)
        hi = min(d, ra + a - 1)
        for rb in range(lo, hi + 1):
            if table.squarefree_part_of_product(heron_factors(a, ra, rb)) == k:
                yield (ra, rb)


def build_graph(
    base: Triangle,
    d: int,
    bound: int = 4,
    mode: str = SEMI_GENERAL,
    table: FactorTable | None = None,
    char_pairs: dict[int, list[tuple[int, int]]] | None = None,
) -> ExtensionGraph:
    """Extension graph with iterated low-degree pruning.

    A set of at least `bound` points uses each non-corner point adjacent
    to the other bound-4 or more, so vertices of degree at most bound-5
    cannot participate and are removed until a fixed point.
    """
    if table is None:
        table = FactorTable(3 * d)
    a = base.a
    k = characteristic(base, table)
    verts = candidate_points(base, d, mode, table, char_pairs)
    den = 4 * a * a
    n = len(verts)
    adj = [0] * n
    for i in range(n):
        vi = verts[i]
        for j in range(i + 1, n):
            vj = verts[j]
            num = (vi.x_scaled - vj.x_scaled) ** 2 + k * (
                vi.w_scaled - vj.w_scaled
            ) ** 2
            if num == 0 or num % den:
                continue
            s_sq = num // den
            s = isqrt(s_sq)
            if s * s != s_sq or s > d:
                continue
            if mode != ARBITRARY:
                ri, rj = vi.corner_distances, vj.corner_distances
                if any(
                    is_degenerate_triple(s, ri[t], rj[t]) for t in range(3)
                ):
                    continue
            adj[i] |= 1 << j
            adj[j] |= 1 << i

    threshold = bound - 5
    if threshold >= 0 and n:
        alive = (1 << n) - 1
        while True:
            removed = 0
            m = alive
            while m:
                bit = m & -m
                i = bit.bit_length() - 1
                if (adj[i] & alive).bit_count() <= threshold:
                    removed |= bit
                m &= m - 1
            if not removed:
                break
            alive &= ~removed
        if alive != (1 << n) - 1:
            keep = [i for i in range(n) if (alive >> i) & 1]
            remap = {old: new for new, old in enumerate(keep)}
            new_adj = []
            for old in keep:
                mask = adj[old] & alive
                nm = 0
                while mask:
                    bit = mask & -mask
                    nm |= 1 << remap[bit.bit_length() - 1]
                    mask &= mask - 1
                new_adj.append(nm)
            verts = [verts[i] for i in keep]
            adj = new_adj

    return ExtensionGraph(base, d, mode, k, 2 * a, tuple(verts), adj)


def enumerate_cliques(graph: ExtensionGraph, minsize: int = 1):
    """All maximal cliques of size >= minsize (pivoting Bron-Kerbosch)."""
    adj = graph.adjacency
    n = len(graph.vertices)
    if n == 0:
        return
    results: list[int] = []

    def bk(r_mask: int, r_count: int, p_mask: int, x_mask: int):
        if p_mask == 0 and x_mask == 0:
            if r_count >= minsize:
                results.append(r_mask)
            return
        if r_count + p_mask.bit_count() < minsize:
            return
        px = p_mask | x_mask
        best_u = -1
        best_cnt = -1
        m = px
        while m:
            u = (m & -m).bit_length() - 1
            cnt = (p_mask & adj[u]).bit_count()
            if cnt > best_cnt:
                best_cnt = cnt
                best_u = u
            m &= m - 1
        cand = p_mask & ~adj[best_u]
        while cand:
            vbit = cand & -cand
            v = vbit.bit_length() - 1
            bk(r_mask | vbit, r_count + 1, p_mask & adj[v], x_mask & adj[v])
            p_mask &= ~vbit
            x_mask |= vbit
            cand &= ~vbit

    bk(0, 0, (1 << n) - 1, 0)
    for mask in results:
        idx = []
        while mask:
            bit = mask & -mask
            idx.append(bit.bit_length() - 1)
            mask &= mask - 1
        yield tuple(idx)


def reconstruct(
    graph: ExtensionGraph,
    vertex_indices: tuple[int, ...],
    mode: str | None = None,
    table: FactorTable | None = None,
) -> PointSet | None:
    """Point set of the base corners plus the chosen clique vertices,
    canonical-form normalized; None when the mode's position rules fail.
    """
    if mode is None:
        mode = graph.mode
    base = graph.base
    a, b, c = base.sides
    k = graph.characteristic
    den = graph.scale * graph.scale
    verts = [graph.vertices[i] for i in vertex_indices]
    m = 3 + len(verts)
    rows = [[0] * m for _ in range(m)]
    rows[0][1] = rows[1][0] = a
    rows[0][2] = rows[2][0] = b
    rows[1][2] = rows[2][1] = c
    for i, v in enumerate(verts, start=3):
        rows[0][i] = rows[i][0] = v.corner_distances[0]
        rows[1][i] = rows[i][1] = v.corner_distances[1]
        rows[2][i] = rows[i][2] = v.corner_distances[2]
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            vi, vj = verts[i], verts[j]
            num = (vi.x_scaled - vj.x_scaled) ** 2 + k * (
                vi.w_scaled - vj.w_scaled
            ) ** 2
            if num == 0 or num % den:
                return None
            s_sq = num // den
            s = isqrt(s_sq)
            if s * s != s_sq:
                return None
            rows[3 + i][3 + j] = rows[3 + j][3 + i] = s

    if mode != ARBITRARY and len(verts) >= 3:
        for i, j, l in combinations(range(len(verts)), 3):
            if is_degenerate_triple(
                rows[3 + i][3 + j], rows[3 + i][3 + l], rows[3 + j][3 + l]
            ):
                return None
    matrix = canonical_form(DistanceMatrix(rows))
    if mode == GENERAL and position_class(matrix) != GENERAL:
        return None
    return PointSet.from_matrix(matrix, table)


def _expand_subsets(cliques, minsize: int) -> list[tuple[int, ...]]:
    subs = set()
    for clique in cliques:
        for r in range(minsize, len(clique) + 1):
            subs.update(combinations(clique, r))
    return sorted(subs)


def search_base(
    base: Triangle,
    d: int,
    nmin: int,
    mode: str,
    table: FactorTable,
    char_pairs=None,
) -> list[PointSet]:
    """All point sets over one base triangle (subsets of maximal cliques)."""
    graph_mode = ARBITRARY if mode == ARBITRARY else SEMI_GENERAL
    graph = build_graph(base, d, nmin, graph_mode, table, char_pairs)
    if len(graph.vertices) < nmin - 3:
        return []
    out = []
    for sub in _expand_subsets(enumerate_cliques(graph, nmin - 3), nmin - 3):
        ps = reconstruct(graph, sub, mode, table)
        if ps is not None:
            out.append(ps)
    return out


_WORKER_CACHE: dict[int, tuple[FactorTable, dict]] = {}


def _search_base_worker(args):
    sides, d, nmin, mode = args
    ent = _WORKER_CACHE.get(d)
    if ent is None:
        table = FactorTable(3 * d)
        ent = (table, characteristic_pairs(d, table))
        _WORKER_CACHE[d] = ent
    table, char_pairs = ent
    return search_base(Triangle(*sides), d, nmin, mode, table, char_pairs)


def search_diameter_exact(
    d: int,
    nmin: int,
    mode: str = ARBITRARY,
    table: FactorTable | None = None,
    jobs: int = 1,
) -> list[PointSet]:
    """All point sets with diameter exactly d and at least nmin points,
    up to isomorphism.

    Any such set contains a triangle whose largest side is d (the
    diameter pair plus a point off their line), so looping over those
    base triangles is exhaustive.
    """
    if nmin < 4:
        raise ValueError("nmin must be at least 4")
    if d < 1:
        raise ValueError("d must be positive")
    if table is None or table.limit < 3 * d:
        table = FactorTable(3 * d)
    _WORKER_CACHE[d] = (table, characteristic_pairs(d, table))
    bases = [
        (d, b, c)
        for b in range(1, d + 1)
        for c in range(max(1, d - b + 1), b + 1)
    ]
    from .parallel import pmap

    per_base = pmap(
        _search_base_worker,
        [(sides, d, nmin, mode) for sides in bases],
        jobs,
    )
    found: dict[tuple, PointSet] = {}
    for results in per_base:
        for ps in results:
            found.setdefault(ps.matrix.key, ps)
    return sorted(found.values(), key=PointSet.sort_key)
