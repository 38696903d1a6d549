"""Minimum-diameter drivers, structural reports on witnesses, and
verification of serialized point sets."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import FactorTable
from .clique import search_diameter_exact
from .geometry import (
    ARBITRARY,
    GENERAL,
    SEMI_GENERAL,
    DistanceMatrix,
    GeometryError,
    PointSet,
    characteristic_of_set,
    check_triangle_inequalities,
    circumradius_class,
    embed,
    integral_distance,
    is_fully_concyclic,
    max_collinear,
    planarity_violation,
    position_class,
)
from .orderly import enumerate_point_sets
from .persist import DiameterCheckpoint, LevelCheckpoint

METHOD_ORDERLY = "orderly"
METHOD_CLIQUE = "clique"
METHOD_BOTH = "both"


@dataclass
class SearchResult:
    """Outcome of a minimum-diameter search; min_diameter None means the
    search cap was exhausted without a witness."""

    n: int
    mode: str
    min_diameter: int | None
    witnesses: list[PointSet]
    dmax_searched: int
    method: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "min_diameter": self.min_diameter,
            "witnesses": [ps.to_dict() for ps in self.witnesses],
            "dmax_searched": self.dmax_searched,
            "method": self.method,
        }


def default_method(mode: str) -> str:
    return METHOD_CLIQUE if mode == ARBITRARY else METHOD_ORDERLY


def _triangle_results(ns, mode, dmax, table):
    """n == 3 is mode-independent: the unit triangle wins at diameter 1."""
    out = {}
    if 3 in ns:
        ps = PointSet.from_matrix(DistanceMatrix([(0, 1, 1), (1, 0, 1), (1, 1, 0)]), table)
        out[3] = (1, [ps])
    return out


def _orderly_results(ns, mode, dmax, table, jobs, checkpoint_dir):
    lists_mode = SEMI_GENERAL if mode == ARBITRARY else mode
    if mode == ARBITRARY:
        raise ValueError("orderly method does not support arbitrary position")
    ckpt = None
    if checkpoint_dir:
        ckpt = LevelCheckpoint(checkpoint_dir, mode, dmax)
    best: dict[int, tuple[int, list[PointSet]]] = {}
    ns_set = set(ns)
    for ps in enumerate_point_sets(
        dmax, nmax=max(ns_set), mode=lists_mode, table=table, jobs=jobs, checkpoint=ckpt
    ):
        if ps.n not in ns_set:
            continue
        cur = best.get(ps.n)
        if cur is None or ps.diameter < cur[0]:
            best[ps.n] = (ps.diameter, [ps])
        elif ps.diameter == cur[0]:
            cur[1].append(ps)
    return best


def _clique_results(ns, mode, dmax, table, jobs, checkpoint_dir):
    best: dict[int, tuple[int, list[PointSet]]] = {}
    pending = {n for n in ns if n >= 4}
    best.update(_triangle_results(ns, mode, dmax, table))
    if not pending:
        return best
    nmin = min(pending)
    ckpt = None
    if checkpoint_dir:
        ckpt = DiameterCheckpoint(checkpoint_dir, mode, nmin)
    for d in range(1, dmax + 1):
        if not pending:
            break
        sets = ckpt.load(d) if ckpt else None
        if sets is None:
            sets = search_diameter_exact(d, nmin, mode, table, jobs)
            if ckpt:
                ckpt.save(d, sets)
        for n in sorted(pending):
            wit = [ps for ps in sets if ps.n == n]
            if wit:
                best[n] = (d, wit)
                pending.discard(n)
    return best


def min_diameter_multi(
    ns,
    mode: str,
    dmax: int,
    method: str | None = None,
    table: FactorTable | None = None,
    jobs: int = 1,
    checkpoint_dir: str | None = None,
) -> dict[int, SearchResult]:
    """Minimum diameters for several point counts in one pass."""
    ns = sorted(set(int(n) for n in ns))
    if not ns or ns[0] < 3:
        raise ValueError("point counts must be at least 3")
    if dmax < 1:
        raise ValueError("dmax must be positive")
    if mode not in (ARBITRARY, SEMI_GENERAL, GENERAL):
        raise ValueError(f"unknown mode {mode!r}")
    if method is None:
        method = default_method(mode)
    if method not in (METHOD_ORDERLY, METHOD_CLIQUE, METHOD_BOTH):
        raise ValueError(f"unknown method {method!r}")
    if method in (METHOD_ORDERLY, METHOD_BOTH) and mode == ARBITRARY:
        raise ValueError(
            "orderly generation cannot enumerate arbitrary position; use clique"
        )
    if table is None:
        table = FactorTable(3 * dmax)

    if method == METHOD_ORDERLY:
        best = {}
        best.update(_triangle_results(ns, mode, dmax, table))
        best.update({n: v for n, v in _orderly_results(ns, mode, dmax, table, jobs, checkpoint_dir).items()})
    elif method == METHOD_CLIQUE:
        best = _clique_results(ns, mode, dmax, table, jobs, checkpoint_dir)
    else:
        best_o = {}
        best_o.update(_triangle_results(ns, mode, dmax, table))
        best_o.update(_orderly_results(ns, mode, dmax, table, jobs, checkpoint_dir))
        best_c = _clique_results(ns, mode, dmax, table, jobs, None)
        for n in ns:
            vo = best_o.get(n)
            vc = best_c.get(n)
            ko = None if vo is None else (vo[0], sorted(ps.matrix.key for ps in vo[1]))
            kc = None if vc is None else (vc[0], sorted(ps.matrix.key for ps in vc[1]))
            if ko != kc:
                raise RuntimeError(
                    f"orderly and clique searches disagree at n={n}: {ko} vs {kc}"
                )
        best = best_o

    out = {}
    for n in ns:
        hit = best.get(n)
        if hit is None:
            out[n] = SearchResult(n, mode, None, [], dmax, method)
        else:
            d, wit = hit
            wit = sorted(wit, key=PointSet.sort_key)
            out[n] = SearchResult(n, mode, d, wit, dmax, method)
    return out


def min_diameter(
    n: int,
    mode: str,
    dmax: int,
    method: str | None = None,
    table: FactorTable | None = None,
    jobs: int = 1,
    checkpoint_dir: str | None = None,
) -> SearchResult:
    """Smallest diameter of an n-point set in the given position mode,
    searching diameters 1..dmax."""
    return min_diameter_multi(
        [n], mode, dmax, method, table, jobs, checkpoint_dir
    )[n]


@dataclass
class StructureReport:
    n: int
    diameter: int
    characteristic: int
    position_class: str
    max_collinear: int
    concyclic: bool
    circumradius: tuple[int, int] | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "diameter": self.diameter,
            "characteristic": self.characteristic,
            "position_class": self.position_class,
            "max_collinear": self.max_collinear,
            "concyclic": self.concyclic,
            "circumradius": list(self.circumradius) if self.circumradius else None,
        }


def structure_report(ps: PointSet, table: FactorTable | None = None) -> StructureReport:
    """Collinearity and circle structure of a point set."""
    m = ps.matrix
    concyclic = is_fully_concyclic(m)
    circ = circumradius_class(m, table) if concyclic else None
    return StructureReport(
        n=m.n,
        diameter=m.diameter,
        characteristic=characteristic_of_set(m, table),
        position_class=position_class(m),
        max_collinear=max_collinear(m),
        concyclic=concyclic,
        circumradius=circ,
    )


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def verify_point_set(ps: PointSet, table: FactorTable | None = None) -> list[CheckResult]:
    """Every invariant of a serialized point set, with the first
    counterexample identified per check."""
    m = ps.matrix
    checks: list[CheckResult] = []

    bad = check_triangle_inequalities(m)
    checks.append(
        CheckResult(
            "triangle-inequality",
            bad is None,
            "" if bad is None else f"violated at points {bad}",
        )
    )
    quad = planarity_violation(m) if bad is None else None
    checks.append(
        CheckResult(
            "planarity",
            bad is None and quad is None,
            f"Cayley-Menger determinant nonzero at points {quad}" if quad else "",
        )
    )
    try:
        k = characteristic_of_set(m, table)
        ok = k == ps.characteristic
        checks.append(
            CheckResult(
                "characteristic",
                ok,
                "" if ok else f"computed {k}, stored {ps.characteristic}",
            )
        )
    except GeometryError as exc:
        checks.append(CheckResult("characteristic", False, str(exc)))

    ok = m.diameter == ps.diameter
    checks.append(
        CheckResult(
            "diameter", ok, "" if ok else f"computed {m.diameter}, stored {ps.diameter}"
        )
    )
    cls = position_class(m)
    ok = cls == ps.position_class
    checks.append(
        CheckResult(
            "position-class",
            ok,
            "" if ok else f"computed {cls}, stored {ps.position_class}",
        )
    )
    try:
        pts = embed(m, table)
        bad_pair = None
        for i in range(m.n):
            for j in range(i + 1, m.n):
                if integral_distance(pts[i], pts[j]) != m.rows[i][j]:
                    bad_pair = (i, j)
                    break
            if bad_pair:
                break
        checks.append(
            CheckResult(
                "embedding",
                bad_pair is None,
                f"distance mismatch at {bad_pair}" if bad_pair else "",
            )
        )
    except GeometryError as exc:
        checks.append(CheckResult("embedding", False, str(exc)))

    if ps.coordinates is not None:
        detail = ""
        ok = len(ps.coordinates) == m.n
        if not ok:
            detail = "wrong number of coordinates"
        else:
            for i in range(m.n):
                for j in range(i + 1, m.n):
                    if integral_distance(ps.coordinates[i], ps.coordinates[j]) != m.rows[i][j]:
                        ok = False
                        detail = f"coordinates disagree with matrix at {(i, j)}"
                        break
                if not ok:
                    break
        checks.append(CheckResult("coordinates", ok, detail))
    return checks


@dataclass
class FileReport:
    path: str
    records: list[tuple[int, list[CheckResult]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for _, checks in self.records for c in checks)

    def failures(self) -> list[tuple[int, CheckResult]]:
        return [
            (idx, c)
            for idx, checks in self.records
            for c in checks
            if not c.passed
        ]


def verify_file(path: str, table: FactorTable | None = None) -> FileReport:
    """Validate every point set in a witness file (raises ParseError on
    malformed input)."""
    from .persist import load_point_sets

    sets = load_point_sets(path)
    report = FileReport(path)
    for idx, ps in enumerate(sets, start=1):
        report.records.append((idx, verify_point_set(ps, table)))
    return report
