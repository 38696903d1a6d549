import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from planeset.arith import FactorTable
from planeset.geometry import (
    ARBITRARY,
    GENERAL,
    SEMI_GENERAL,
    DistanceMatrix,
    GeometryError,
    PointSet,
    SurdPoint,
    Triangle,
    cayley_menger_det,
    characteristic,
    characteristic_of_set,
    characteristic_pairs,
    circumradius_class,
    distinct_triangle_count,
    embed,
    heron_product,
    integral_distance,
    is_concyclic_quad,
    is_degenerate_triple,
    is_fully_concyclic,
    max_collinear,
    planarity_violation,
    position_class,
    triangle_matrix,
)

PAPER4 = DistanceMatrix(
    [(0, 100, 89, 21), (100, 0, 21, 89), (89, 21, 0, 82), (21, 89, 82, 0)]
)


def test_heron_product_examples():
    assert heron_product(Triangle(1, 1, 1)) == 3
    assert heron_product(Triangle(5, 4, 3)) == 576
    assert heron_product(Triangle(3, 2, 1)) == 0


def test_characteristic_examples():
    assert characteristic(Triangle(1, 1, 1)) == 3
    assert characteristic(Triangle(5, 4, 3)) == 1
    assert characteristic(Triangle(4, 3, 2)) == 15
    with pytest.raises(GeometryError):
        characteristic(Triangle(3, 2, 1))


def test_triangle_validation():
    with pytest.raises(GeometryError):
        Triangle(1, 2, 3)
    with pytest.raises(GeometryError):
        Triangle(5, 2, 2)
    assert Triangle.of(3, 5, 4).sides == (5, 4, 3)


def test_characteristic_of_set():
    assert characteristic_of_set(triangle_matrix(Triangle(1, 1, 1))) == 3
    k = characteristic_of_set(PAPER4)
    ks = {
        characteristic(PAPER4.triangle(i, j, l))
        for i, j, l in combinations(range(4), 3)
    }
    assert ks == {k}


def test_characteristic_of_set_rejects_mixed():
    # triangles (3,2,2) char 15 and (3,3,2) char 2 cannot coexist: fake matrix
    rows = [
        [0, 3, 2, 3],
        [3, 0, 2, 3],
        [2, 2, 0, 2],
        [3, 3, 2, 0],
    ]
    with pytest.raises(GeometryError):
        characteristic_of_set(DistanceMatrix(rows))


def test_characteristic_of_set_rejects_collinear():
    rows = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    with pytest.raises(GeometryError):
        characteristic_of_set(DistanceMatrix(rows))


def test_is_degenerate_triple():
    assert is_degenerate_triple(3, 1, 2)
    assert not is_degenerate_triple(5, 4, 3)
    assert is_degenerate_triple(2, 1, 1)


def test_is_concyclic_quad():
    # 3x4 rectangle with diagonal 5: d12=3, d13=5, d14=4, d23=4, d24=5, d34=3
    assert is_concyclic_quad(3, 5, 4, 4, 5, 3)
    r = PAPER4.rows
    assert not is_concyclic_quad(
        r[0][1], r[0][2], r[0][3], r[1][2], r[1][3], r[2][3]
    )
    with pytest.raises(GeometryError):
        is_concyclic_quad(2, 1, 1, 3, 3, 4)  # degenerate triple present


def test_embed_examples():
    pts = embed(triangle_matrix(Triangle(1, 1, 1)))
    assert pts[2] == SurdPoint(Fraction(1, 2), Fraction(1, 2), 3)
    pts = embed(triangle_matrix(Triangle(5, 4, 3)))
    assert pts[2] == SurdPoint(Fraction(16, 5), Fraction(12, 5), 1)


def test_embed_collinear_point_gets_zero_y():
    rows = [[0, 2, 1, 2], [2, 0, 1, 2], [1, 1, 0, 1], [2, 2, 1, 0]]
    # point 3 collinear with nothing here; craft a genuine on-line example:
    # base 0-1 length 4 with midpoint... use a 4-point set with a degenerate triple
    rows = [
        [0, 4, 2, 3],
        [4, 0, 2, 5],
        [2, 2, 0, 0],
        [3, 5, 0, 0],
    ]
    # above is invalid (zero distances); instead: apex + 3 collinear points
    rows = [
        [0, 3, 3, 5],
        [3, 0, 3, 4],
        [3, 3, 0, 5],
        [5, 4, 5, 0],
    ]
    # points 0,1,2 cannot be collinear (3,3,3); fallback to linedecomp-backed test
    m = DistanceMatrix(
        [
            [0, 4, 4, 2],
            [4, 0, 8, 6],
            [4, 8, 0, 2],
            [2, 6, 2, 0],
        ]
    )
    # 1,2 through 0? d(1,2)=8=4+4 so 0 lies between 1 and 2; 3 on same line
    pts = embed(m)
    ys = [p.y for p in pts]
    assert ys.count(0) >= 3


def test_embed_round_trip_random_sets():
    table = FactorTable(200)
    m = PAPER4
    pts = embed(m, table)
    for i in range(4):
        for j in range(i + 1, 4):
            assert integral_distance(pts[i], pts[j]) == m.rows[i][j]


def test_embed_rejects_inconsistent():
    rows = [r[:] for r in PAPER4.rows]
    rows[2][3] = rows[3][2] = 81  # perturb
    with pytest.raises(GeometryError):
        embed(DistanceMatrix(rows))


def test_integral_distance():
    p = SurdPoint(Fraction(0), Fraction(0), 3)
    q = SurdPoint(Fraction(3), Fraction(0), 3)
    assert integral_distance(p, q) == 3
    u = SurdPoint(Fraction(1, 2), Fraction(1, 2), 3)
    v = SurdPoint(Fraction(1, 2), Fraction(-1, 2), 3)
    assert integral_distance(u, v) is None  # distance sqrt(3)
    assert integral_distance(p, p) is None  # coincident
    with pytest.raises(GeometryError):
        integral_distance(p, SurdPoint(Fraction(1), Fraction(1), 5))


def test_position_class():
    assert position_class(triangle_matrix(Triangle(1, 1, 1))) == GENERAL
    rect = DistanceMatrix(
        [(0, 3, 5, 4), (3, 0, 4, 5), (5, 4, 0, 3), (4, 5, 3, 0)]
    )
    assert position_class(rect) == SEMI_GENERAL
    collinear = DistanceMatrix(
        [
            [0, 4, 4, 2],
            [4, 0, 8, 6],
            [4, 8, 0, 2],
            [2, 6, 2, 0],
        ]
    )
    assert position_class(collinear) == ARBITRARY


def test_circumradius_class():
    assert circumradius_class(triangle_matrix(Triangle(1, 1, 1))) == (1, 3)
    assert circumradius_class(triangle_matrix(Triangle(5, 4, 3))) is None
    with pytest.raises(GeometryError):
        circumradius_class(PAPER4)  # not concyclic


def test_distinct_triangle_count():
    assert distinct_triangle_count(triangle_matrix(Triangle(1, 1, 1))) == 1
    tris = {
        tuple(sorted((PAPER4.rows[i][j], PAPER4.rows[i][l], PAPER4.rows[j][l]), reverse=True))
        for i, j, l in combinations(range(4), 3)
    }
    assert distinct_triangle_count(PAPER4) == len(tris)


def test_cayley_menger_planarity():
    assert planarity_violation(PAPER4) is None
    rows = [r[:] for r in PAPER4.rows]
    rows[2][3] = rows[3][2] = 83
    m = DistanceMatrix(rows)
    assert planarity_violation(m) == (0, 1, 2, 3)
    assert cayley_menger_det(m, (0, 1, 2, 3)) != 0


def test_ptolemy_agrees_with_coordinate_circle_test():
    # small-scale oracle equivalence; the full sweep runs in acceptance
    table = FactorTable(100)
    from planeset.orderly import enumerate_point_sets

    for ps in enumerate_point_sets(20, nmax=4, table=table):
        if ps.n != 4:
            continue
        m = ps.matrix
        r = m.rows
        claim = is_concyclic_quad(r[0][1], r[0][2], r[0][3], r[1][2], r[1][3], r[2][3])
        assert claim == _concyclic_by_coordinates(m, table)


def _concyclic_by_coordinates(m, table):
    pts = embed(m, table)
    k = pts[0].k

    def norm(p):
        return p.x * p.x + k * p.y * p.y

    c0, c1, c2, c3 = pts
    a11 = 2 * (c1.x - c0.x)
    a12 = 2 * k * (c1.y - c0.y)
    b1 = norm(c1) - norm(c0)
    a21 = 2 * (c2.x - c0.x)
    a22 = 2 * k * (c2.y - c0.y)
    b2 = norm(c2) - norm(c0)
    det = a11 * a22 - a12 * a21
    assert det != 0
    ox = (b1 * a22 - b2 * a12) / det
    oy = (a11 * b2 - a21 * b1) / det
    center = SurdPoint(ox, oy, k)
    return center.squared_distance(c3) == center.squared_distance(c0)


def test_point_set_serialization_round_trip():
    table = FactorTable(400)
    ps = PointSet.from_matrix(PAPER4, table, with_coordinates=True)
    data = ps.to_dict()
    back = PointSet.from_dict(data)
    assert back.matrix == ps.matrix
    assert back.characteristic == ps.characteristic
    assert back.position_class == ps.position_class
    assert back.diameter == ps.diameter
    assert back.coordinates == ps.coordinates


def test_characteristic_pairs_is_exhaustive():
    table = FactorTable(60)
    for d in (1, 4, 9, 20):
        pairs = characteristic_pairs(d, table)
        total = sum(len(v) for v in pairs.values())
        brute = [
            (a, b)
            for a in range(1, d + 1)
            for b in range(1, d + 1)
            if a + b > d
        ]
        assert total == len(brute)
        for k, plist in pairs.items():
            for a, b in plist:
                assert characteristic(Triangle.of(d, a, b), table) == k


def test_max_collinear_and_concyclic():
    assert max_collinear(triangle_matrix(Triangle(5, 4, 3))) == 2
    assert is_fully_concyclic(triangle_matrix(Triangle(5, 4, 3)))
    collinear = DistanceMatrix(
        [
            [0, 4, 4, 2],
            [4, 0, 8, 6],
            [4, 8, 0, 2],
            [2, 6, 2, 0],
        ]
    )
    assert max_collinear(collinear) == 4  # wait: point 0 here is an apex?
