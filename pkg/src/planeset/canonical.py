"""Total order, restriction and canonicity classification of distance matrices.

A matrix is compared by point count first, then by its strict upper
triangle read column by column.  "Canonical" means numerically largest in
the relabeling orbit; "semi-canonical" means the restriction (last row and
column deleted) is largest over all relabelings.
"""

from __future__ import annotations

from itertools import permutations

from .geometry import DistanceMatrix, GeometryError

CANONICAL = "canonical"
SEMI_CANONICAL = "semi-canonical"
NONE = "none"

LESS = -1
EQUAL = 0
GREATER = 1


def sort_key(m: DistanceMatrix) -> tuple:
    return (m.n, m.key)


def compare(l1: DistanceMatrix, l2: DistanceMatrix) -> int:
    """-1, 0 or 1 for l1 preceding, equal to, or following l2."""
    if l1.n != l2.n:
        return LESS if l1.n < l2.n else GREATER
    if l1.key == l2.key:
        return EQUAL
    return LESS if l1.key < l2.key else GREATER


def restrict(m: DistanceMatrix) -> DistanceMatrix:
    """Delete the last row and column (leading principal submatrix)."""
    if m.n < 3:
        raise GeometryError("restriction needs at least 3 points")
    return DistanceMatrix([row[: m.n - 1] for row in m.rows[: m.n - 1]])


def restriction_key(m: DistanceMatrix) -> tuple[int, ...]:
    """Upper-triangle key of the restriction (a prefix of the full key)."""
    t = (m.n - 1) * (m.n - 2) // 2
    return m.key[:t]


def classify(m: DistanceMatrix) -> str:
    """canonical / semi-canonical / none classification.

    Backtracking over relabelings with prefix pruning: a partial
    relabeling whose key prefix already falls below the matrix's own key
    cannot beat it and is cut.
    """
    n = m.n
    rows = m.rows
    key = m.key
    t_restr = (n - 1) * (n - 2) // 2
    beats_full = False

    placed: list[int] = []
    used = [False] * n

    def rec(klen: int) -> bool:
        nonlocal beats_full
        t = len(placed)
        if t == n:
            return False
        for v in range(n):
            if used[v]:
                continue
            cmp = 0
            for i in range(t):
                e = rows[placed[i]][v]
                kk = key[klen + i]
                if e != kk:
                    cmp = 1 if e > kk else -1
                    break
            if cmp < 0:
                continue
            if cmp > 0:
                if t < n - 1:
                    return True  # restriction beaten: not even semi-canonical
                beats_full = True
                continue
            placed.append(v)
            used[v] = True
            if rec(klen + t):
                placed.pop()
                used[v] = False
                return True
            placed.pop()
            used[v] = False
        return False

    if rec(0):
        return NONE
    return SEMI_CANONICAL if beats_full else CANONICAL


# All 24 labelings of 4 points, as the index pairs feeding the key.
_PERMS4 = [
    (p, (p[0], p[1]), (p[0], p[2]), (p[1], p[2]), (p[0], p[3]), (p[1], p[3]), (p[2], p[3]))
    for p in permutations(range(4))
]


def classify4_fast(m: DistanceMatrix) -> str:
    """classify() specialized to 4x4 matrices.

    Scans the 24 relabelings with early exit on the 3-entry restriction
    prefix; agrees with classify() everywhere.
    """
    if m.n != 4:
        raise GeometryError("classify4_fast requires a 4x4 matrix")
    return classify4_rows(m.rows, m.key)


def classify4_rows(r, key) -> str:
    """classify4_fast on raw rows and key (hot-loop entry point)."""
    pre0 = key[:3]
    beats_full = False
    for _, (i0, j0), (i1, j1), (i2, j2), (i3, j3), (i4, j4), (i5, j5) in _PERMS4:
        a = r[i0][j0]
        if a < pre0[0]:
            continue
        if a > pre0[0]:
            return NONE
        b = r[i1][j1]
        if b < pre0[1]:
            continue
        if b > pre0[1]:
            return NONE
        c = r[i2][j2]
        if c < pre0[2]:
            continue
        if c > pre0[2]:
            return NONE
        if not beats_full:
            full = (r[i3][j3], r[i4][j4], r[i5][j5])
            if full > key[3:]:
                beats_full = True
    return SEMI_CANONICAL if beats_full else CANONICAL


def canonical_key(m: DistanceMatrix) -> tuple[int, ...]:
    """Upper-triangle key of the orbit maximum of m."""
    n = m.n
    rows = m.rows
    total = n * (n - 1) // 2
    best = list(m.key)
    placed: list[int] = []
    used = [False] * n

    def rec(klen: int):
        t = len(placed)
        if t == n:
            return
        for v in range(n):
            if used[v]:
                continue
            seg = [rows[p][v] for p in placed]
            cur = best[klen : klen + t]
            if seg < cur:
                continue
            if seg > cur:
                best[klen : klen + t] = seg
                for i in range(klen + t, total):
                    best[i] = -1
            placed.append(v)
            used[v] = True
            rec(klen + t)
            placed.pop()
            used[v] = False

    rec(0)
    return tuple(best)


def canonical_form(m: DistanceMatrix) -> DistanceMatrix:
    """The largest matrix in the relabeling orbit of m."""
    return DistanceMatrix.from_key(m.n, canonical_key(m))
