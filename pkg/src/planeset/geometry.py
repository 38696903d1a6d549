"""Exact planar geometry over Q(sqrt(k)): distance matrices, triangles,
characteristics, embeddings, and position-class predicates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arith import FactorTable, sqrt_exact, squarefree_part

ARBITRARY = "arbitrary"
SEMI_GENERAL = "semi-general"
GENERAL = "general"

POSITION_CLASSES = (ARBITRARY, SEMI_GENERAL, GENERAL)


class GeometryError(ValueError):
    """Invalid geometric input (non-embeddable matrix, degenerate triangle...)."""


@dataclass(frozen=True, order=True)
class Triangle:
    """Integer side triple with a >= b >= c >= 1.

    Degenerate triples (b + c == a) are representable; operations that
    need a proper triangle reject them explicitly.
    """

    a: int
    b: int
    c: int

    def __post_init__(self):
        if not (self.a >= self.b >= self.c >= 1):
            raise GeometryError(f"sides must satisfy a >= b >= c >= 1: {self}")
        if self.b + self.c < self.a:
            raise GeometryError(f"triangle inequality violated: {self}")

    @classmethod
    def of(cls, x: int, y: int, z: int) -> "Triangle":
        a, b, c = sorted((x, y, z), reverse=True)
        return cls(a, b, c)

    @property
    def sides(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def diameter(self) -> int:
        return self.a

    def is_degenerate(self) -> bool:
        return self.b + self.c == self.a


def heron_product(t: Triangle) -> int:
    """(a+b+c)(a+b-c)(a-b+c)(-a+b+c), i.e. 16 times the squared area."""
    a, b, c = t.sides
    return (a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c)


def heron_factors(a: int, b: int, c: int) -> tuple[int, int, int, int]:
    return (a + b + c, a + b - c, a - b + c, -a + b + c)


def characteristic(t: Triangle, table: FactorTable | None = None) -> int:
    """Squarefree part of the Heron product of a non-degenerate triangle."""
    if t.is_degenerate():
        raise GeometryError(f"degenerate triangle has no characteristic: {t}")
    fs = heron_factors(*t.sides)
    if table is not None:
        return table.squarefree_part_of_product(fs)
    out = 1
    for f in fs:
        out *= f
    return squarefree_part(out)


def is_degenerate_triple(d12: int, d13: int, d23: int) -> bool:
    """True when three pairwise distances describe three collinear points."""
    m = max(d12, d13, d23)
    return 2 * m == d12 + d13 + d23


class DistanceMatrix:
    """Symmetric integer matrix of pairwise distances, immutable."""

    __slots__ = ("n", "rows", "_key")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if n < 2:
            raise GeometryError("need at least 2 points")
        for i in range(n):
            if len(rows[i]) != n or rows[i][i] != 0:
                raise GeometryError("malformed distance matrix")
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise GeometryError("distance matrix not symmetric")
                if rows[i][j] <= 0:
                    raise GeometryError("off-diagonal distances must be positive")
        self.n = n
        self.rows = rows
        self._key = None

    @property
    def key(self) -> tuple[int, ...]:
        """Strict upper triangle read column by column (the total-order key)."""
        if self._key is None:
            rows = self.rows
            self._key = tuple(
                rows[i][j] for j in range(1, self.n) for i in range(j)
            )
        return self._key

    @classmethod
    def from_key(cls, n: int, key) -> "DistanceMatrix":
        rows = [[0] * n for _ in range(n)]
        it = iter(key)
        for j in range(1, n):
            for i in range(j):
                v = next(it)
                rows[i][j] = v
                rows[j][i] = v
        return cls(rows)

    @classmethod
    def from_upper_row_major(cls, n: int, upper) -> "DistanceMatrix":
        rows = [[0] * n for _ in range(n)]
        it = iter(upper)
        for i in range(n):
            for j in range(i + 1, n):
                v = next(it)
                rows[i][j] = v
                rows[j][i] = v
        return cls(rows)

    def upper_row_major(self) -> list[int]:
        return [self.rows[i][j] for i in range(self.n) for j in range(i + 1, self.n)]

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    @property
    def diameter(self) -> int:
        return max(self.key)

    def triangle(self, i: int, j: int, k: int) -> Triangle:
        return Triangle.of(self.rows[i][j], self.rows[i][k], self.rows[j][k])

    def __eq__(self, other):
        return isinstance(other, DistanceMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"DistanceMatrix(n={self.n}, key={self.key})"


def triangle_matrix(t: Triangle) -> DistanceMatrix:
    """Canonical 3x3 matrix of a triangle (d12 >= d13 >= d23)."""
    return DistanceMatrix.from_key(3, t.sides)


def check_triangle_inequalities(m: DistanceMatrix) -> tuple[int, int, int] | None:
    """First triple violating the non-strict triangle inequality, or None."""
    rows = m.rows
    for i, j, k in combinations(range(m.n), 3):
        a, b, c = rows[i][j], rows[i][k], rows[j][k]
        if 2 * max(a, b, c) > a + b + c:
            return (i, j, k)
    return None


def _det_bareiss(mat: list[list[int]]) -> int:
    """Exact integer determinant via fraction-free elimination."""
    m = [row[:] for row in mat]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def cayley_menger_det(m: DistanceMatrix, quad: tuple[int, int, int, int]) -> int:
    """Order-5 Cayley-Menger determinant of four points (0 iff coplanar)."""
    i, j, k, l = quad
    rows = m.rows

    def d2(x, y):
        return rows[x][y] * rows[x][y]

    mat = [
        [0, 1, 1, 1, 1],
        [1, 0, d2(i, j), d2(i, k), d2(i, l)],
        [1, d2(i, j), 0, d2(j, k), d2(j, l)],
        [1, d2(i, k), d2(j, k), 0, d2(k, l)],
        [1, d2(i, l), d2(j, l), d2(k, l), 0],
    ]
    return _det_bareiss(mat)


def planarity_violation(m: DistanceMatrix) -> tuple[int, int, int, int] | None:
    """First 4-subset with nonvanishing Cayley-Menger determinant, or None."""
    for quad in combinations(range(m.n), 4):
        if cayley_menger_det(m, quad) != 0:
            return quad
    return None


def characteristic_of_set(m: DistanceMatrix, table: FactorTable | None = None) -> int:
    """Common characteristic of all non-degenerate sub-triangles.

    Checks every triple; mixed characteristics mean the matrix cannot be
    realized in the plane and are rejected.
    """
    rows = m.rows
    k_common = None
    for i, j, l in combinations(range(m.n), 3):
        a, b, c = rows[i][j], rows[i][l], rows[j][l]
        if 2 * max(a, b, c) == a + b + c:
            continue
        k = characteristic(Triangle.of(a, b, c), table)
        if k_common is None:
            k_common = k
        elif k != k_common:
            raise GeometryError(
                f"mixed characteristics {k_common} and {k} at triple {(i, j, l)}"
            )
    if k_common is None:
        raise GeometryError("all points collinear: no characteristic")
    return k_common


def is_concyclic_quad(
    d12: int, d13: int, d14: int, d23: int, d24: int, d34: int
) -> bool:
    """Four-point concyclicity from the six pairwise distances.

    Among the three pairings of opposite products the largest must equal
    the sum of the other two.  All four triples must be non-degenerate;
    quadruples with collinear triples are rejected.
    """
    for t in (
        (d12, d13, d23),
        (d12, d14, d24),
        (d13, d14, d34),
        (d23, d24, d34),
    ):
        if is_degenerate_triple(*t):
            raise GeometryError("degenerate triple in concyclicity test")
    p1 = d12 * d34
    p2 = d13 * d24
    p3 = d14 * d23
    m = max(p1, p2, p3)
    return 2 * m == p1 + p2 + p3


def _concyclic_entries(rows, i, j, k, l) -> bool:
    p1 = rows[i][j] * rows[k][l]
    p2 = rows[i][k] * rows[j][l]
    p3 = rows[i][l] * rows[j][k]
    m = max(p1, p2, p3)
    return 2 * m == p1 + p2 + p3


def position_class(m: DistanceMatrix) -> str:
    """arbitrary / semi-general / general classification of a matrix."""
    rows = m.rows
    for i, j, k in combinations(range(m.n), 3):
        if is_degenerate_triple(rows[i][j], rows[i][k], rows[j][k]):
            return ARBITRARY
    for quad in combinations(range(m.n), 4):
        if _concyclic_entries(rows, *quad):
            return SEMI_GENERAL
    return GENERAL


@dataclass(frozen=True)
class SurdPoint:
    """Planar point (x, y*sqrt(k)) with rational x, y and squarefree k."""

    x: Fraction
    y: Fraction
    k: int

    def squared_distance(self, other: "SurdPoint") -> Fraction:
        if self.k != other.k:
            raise GeometryError("points live over different characteristics")
        dx = self.x - other.x
        dy = self.y - other.y
        return dx * dx + self.k * dy * dy


def sqrt_fraction(v: Fraction) -> Fraction | None:
    """Rational square root of a nonnegative rational, or None."""
    if v < 0:
        return None
    num = sqrt_exact(v.numerator)
    if num is None:
        return None
    den = sqrt_exact(v.denominator)
    if den is None:
        return None
    return Fraction(num, den)


def integral_distance(p: SurdPoint, q: SurdPoint) -> int | None:
    """Integer distance between two points, or None.

    None covers three cases: non-integral distance, non-square rational,
    and coincident points (zero distance is not a valid distance).
    """
    s = p.squared_distance(q)
    if s == 0:
        return None
    if s.denominator != 1:
        return None
    r = sqrt_exact(s.numerator)
    return r if r and r > 0 else None


def embed(m: DistanceMatrix, table: FactorTable | None = None) -> list[SurdPoint]:
    """Exact planar embedding: P1=(0,0), P2=(d12,0), y-coordinates in sqrt(k).

    Points are internally reordered so the frame triple is non-degenerate,
    then returned in the original indexing.  Inconsistent matrices raise
    with the offending point index.
    """
    n = m.n
    rows = m.rows
    k = characteristic_of_set(m, table)

    frame = None
    for i, j, l in combinations(range(n), 3):
        if not is_degenerate_triple(rows[i][j], rows[i][l], rows[j][l]):
            frame = [i, j, l]
            break
    if frame is None:
        raise GeometryError("all points collinear: cannot embed")
    order = frame + [p for p in range(n) if p not in frame]

    d12 = rows[order[0]][order[1]]
    placed: list[SurdPoint] = [
        SurdPoint(Fraction(0), Fraction(0), k),
        SurdPoint(Fraction(d12), Fraction(0), k),
    ]
    for t in range(2, n):
        pt = order[t]
        r1 = rows[order[0]][pt]
        r2 = rows[order[1]][pt]
        x = Fraction(r1 * r1 - r2 * r2 + d12 * d12, 2 * d12)
        y2 = Fraction(r1 * r1) - x * x
        if y2 < 0:
            raise GeometryError(f"point {pt}: inconsistent distances")
        ycoef = sqrt_fraction(y2 / k) if y2 else Fraction(0)
        if ycoef is None:
            raise GeometryError(f"point {pt}: distances incompatible with k={k}")
        cand = SurdPoint(x, ycoef, k)
        if t == 2:
            placed.append(cand)
            continue
        chosen = None
        for p in (cand, SurdPoint(x, -ycoef, k)):
            if p.squared_distance(placed[2]) == rows[order[2]][pt] ** 2:
                chosen = p
                break
        if chosen is None:
            raise GeometryError(f"point {pt}: inconsistent distances")
        for s in range(3, t):
            if chosen.squared_distance(placed[s]) != rows[order[s]][pt] ** 2:
                raise GeometryError(f"point {pt}: inconsistent distances")
        placed.append(chosen)

    out: list[SurdPoint] = [None] * n  # type: ignore[list-item]
    for pos, orig in enumerate(order):
        out[orig] = placed[pos]
    return out


def circumradius_class(
    m: DistanceMatrix, table: FactorTable | None = None
) -> tuple[int, int] | None:
    """(z, k) with circumradius (z/k)*sqrt(k) for a fully concyclic set.

    Returns None when the common circumradius is not of that shape.
    Non-concyclic input is rejected.
    """
    rows = m.rows
    for i, j, l in combinations(range(m.n), 3):
        if is_degenerate_triple(rows[i][j], rows[i][l], rows[j][l]):
            raise GeometryError("collinear triple: not a concyclic set")
    for quad in combinations(range(m.n), 4):
        if not _concyclic_entries(rows, *quad):
            raise GeometryError(f"quadruple {quad} not concyclic")

    k = characteristic_of_set(m, table)
    r_sq = None
    for i, j, l in combinations(range(m.n), 3):
        t = Triangle.of(rows[i][j], rows[i][l], rows[j][l])
        cur = Fraction((t.a * t.b * t.c) ** 2, heron_product(t))
        if r_sq is None:
            r_sq = cur
        elif cur != r_sq:
            raise GeometryError("triangles disagree on the circumradius")
    assert r_sq is not None
    z_sq = r_sq * k
    if z_sq.denominator != 1:
        return None
    z = sqrt_exact(z_sq.numerator)
    if z is None:
        return None
    return (z, k)


def distinct_triangle_count(m: DistanceMatrix) -> int:
    """Number of congruence classes of non-degenerate sub-triangles."""
    rows = m.rows
    seen = set()
    for i, j, l in combinations(range(m.n), 3):
        a, b, c = rows[i][j], rows[i][l], rows[j][l]
        if 2 * max(a, b, c) == a + b + c:
            continue
        seen.add(tuple(sorted((a, b, c), reverse=True)))
    return len(seen)


def characteristic_pairs(
    d: int, table: FactorTable | None = None
) -> dict[int, list[tuple[int, int]]]:
    """Ordered pairs (a, b) of triangles with largest side exactly d, by characteristic.

    Covers all (a, b) in {1..d}^2 with a + b > d; each non-degenerate
    triangle (d, a, b) is binned under its squarefree characteristic.
    """
    if table is None or table.limit < 3 * d:
        table = FactorTable(3 * d)
    out: dict[int, list[tuple[int, int]]] = {}
    for a in range(1, d + 1):
        for b in range(max(1, d - a + 1), a + 1):
            k = table.squarefree_part_of_product(heron_factors(d, a, b))
            bucket = out.setdefault(k, [])
            bucket.append((a, b))
            if a != b:
                bucket.append((b, a))
    for bucket in out.values():
        bucket.sort()
    return out


def max_collinear(m: DistanceMatrix) -> int:
    """Size of the largest collinear subset of points."""
    rows = m.rows
    n = m.n
    best = 2 if n >= 2 else n
    for i in range(n):
        for j in range(i + 1, n):
            cnt = 2
            for l in range(n):
                if l in (i, j):
                    continue
                if is_degenerate_triple(rows[i][j], rows[i][l], rows[j][l]):
                    cnt += 1
            best = max(best, cnt)
    return best


def is_fully_concyclic(m: DistanceMatrix) -> bool:
    """True when every quadruple satisfies the concyclicity equality.

    Triangles count as concyclic (three points always lie on a circle
    unless collinear).
    """
    rows = m.rows
    for i, j, l in combinations(range(m.n), 3):
        if is_degenerate_triple(rows[i][j], rows[i][l], rows[j][l]):
            return False
    for quad in combinations(range(m.n), 4):
        if not _concyclic_entries(rows, *quad):
            return False
    return True


@dataclass(frozen=True)
class PointSet:
    """A plane integral point set: matrix plus derived attributes."""

    matrix: DistanceMatrix
    characteristic: int
    position_class: str
    diameter: int
    coordinates: tuple[SurdPoint, ...] | None = None

    @property
    def n(self) -> int:
        return self.matrix.n

    @classmethod
    def from_matrix(
        cls,
        m: DistanceMatrix,
        table: FactorTable | None = None,
        with_coordinates: bool = False,
    ) -> "PointSet":
        coords = tuple(embed(m, table)) if with_coordinates else None
        return cls(
            matrix=m,
            characteristic=characteristic_of_set(m, table),
            position_class=position_class(m),
            diameter=m.diameter,
            coordinates=coords,
        )

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "upper_triangle": self.matrix.upper_row_major(),
            "characteristic": self.characteristic,
            "position_class": self.position_class,
            "diameter": self.diameter,
        }
        if self.coordinates is not None:
            out["coordinates"] = [
                {
                    "x": f"{p.x.numerator}/{p.x.denominator}",
                    "y_coeff": f"{p.y.numerator}/{p.y.denominator}",
                    "k": p.k,
                }
                for p in self.coordinates
            ]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "PointSet":
        n = int(data["n"])
        m = DistanceMatrix.from_upper_row_major(n, data["upper_triangle"])
        coords = None
        if data.get("coordinates") is not None:
            coords = tuple(
                SurdPoint(
                    _parse_fraction(c["x"]),
                    _parse_fraction(c["y_coeff"]),
                    int(c["k"]),
                )
                for c in data["coordinates"]
            )
        return cls(
            matrix=m,
            characteristic=int(data["characteristic"]),
            position_class=str(data["position_class"]),
            diameter=int(data["diameter"]),
            coordinates=coords,
        )

    def sort_key(self):
        return (self.n, self.matrix.key)


def _parse_fraction(s: str) -> Fraction:
    return Fraction(s)
