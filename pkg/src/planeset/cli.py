"""planeset command line: minimum-diameter searches, enumeration, line
configurations, characteristic tables, and witness verification.

Exit codes: 0 success, 1 invariant violation found, 2 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .arith import FactorTable
from .geometry import (
    ARBITRARY,
    GENERAL,
    SEMI_GENERAL,
    GeometryError,
    PointSet,
    Triangle,
    characteristic,
)
from .parallel import effective_jobs

MODES = {"any": ARBITRARY, "semigeneral": SEMI_GENERAL, "general": GENERAL}

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_MALFORMED = 2


def _add_jobs(p):
    p.add_argument("--jobs", type=int, default=1, help="worker processes (PLANESET_JOBS overrides)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="planeset",
        description="Exact search engine for plane integral point sets.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("min-diameter", help="minimum diameter for n points")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--mode", choices=sorted(MODES), required=True)
    q.add_argument("--dmax", type=int, required=True)
    q.add_argument("--method", choices=["orderly", "clique", "both"], default=None)
    _add_jobs(q)
    q.add_argument("--checkpoint", metavar="DIR", default=None)
    q.add_argument("--out", metavar="FILE.json", default=None)

    q = sub.add_parser("enumerate", help="all point sets up to a diameter cap")
    q.add_argument("--dmax", type=int, required=True)
    q.add_argument("--mode", choices=sorted(MODES), required=True)
    q.add_argument("--nmin", type=int, required=True)
    _add_jobs(q)
    q.add_argument("--out", metavar="FILE.jsonl", default=None)

    q = sub.add_parser("extend-line", help="integral points on a triangle's base line")
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--window", metavar="lo:hi", default=None)
    q.add_argument("--csv", action="store_true")

    q = sub.add_parser("heuristic-line", help="divisor-rich upper bound for d(2,n)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--tau-min", type=int, default=None)
    q.add_argument("--d-limit", type=int, default=None)
    q.add_argument("--csv", action="store_true")
    q.add_argument("--plot", metavar="FILE.png", default=None)

    q = sub.add_parser("psi", help="triangle counts per characteristic")
    q.add_argument("--dmax", type=int, required=True)
    q.add_argument("--csv", action="store_true")
    q.add_argument("--chars", action="store_true", help="emit the characteristic-count table instead")
    q.add_argument("--plot", metavar="FILE.png", default=None)

    q = sub.add_parser("char", help="characteristic of one triangle")
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--c", type=int, required=True)

    q = sub.add_parser("verify", help="validate a witness file")
    q.add_argument("file")
    return p


def _cmd_min_diameter(args) -> int:
    from .search import min_diameter

    mode = MODES[args.mode]
    try:
        res = min_diameter(
            args.n,
            mode,
            args.dmax,
            method=args.method,
            jobs=effective_jobs(args.jobs),
            checkpoint_dir=args.checkpoint,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    payload = res.to_dict()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
    if res.min_diameter is None:
        print(f"n={args.n} mode={args.mode}: exceeds dmax={args.dmax}")
    else:
        print(
            f"n={args.n} mode={args.mode}: min diameter {res.min_diameter} "
            f"({len(res.witnesses)} witness(es), method {res.method})"
        )
        for ps in res.witnesses:
            print("  " + json.dumps(ps.to_dict(), sort_keys=True))
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    from .clique import search_diameter_exact
    from .orderly import enumerate_point_sets

    mode = MODES[args.mode]
    jobs = effective_jobs(args.jobs)
    if args.nmin < 3:
        print("error: --nmin must be at least 3", file=sys.stderr)
        return EXIT_MALFORMED
    sets: list[PointSet] = []
    if mode == ARBITRARY:
        table = FactorTable(3 * args.dmax)
        for d in range(1, args.dmax + 1):
            sets.extend(
                search_diameter_exact(d, max(args.nmin, 4), mode, table, jobs)
            )
    else:
        for ps in enumerate_point_sets(args.dmax, mode=mode, jobs=jobs):
            if ps.n >= args.nmin:
                sets.append(ps)
    sets.sort(key=PointSet.sort_key)
    lines = [json.dumps(ps.to_dict(), sort_keys=True) for ps in sets]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))
        print(f"{len(lines)} point sets written to {args.out}")
    else:
        for line in lines:
            print(line)
    return EXIT_OK


def _parse_window(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return (int(lo), int(hi))


def _cmd_extend_line(args) -> int:
    from .linedecomp import decomposition_profile, points_on_base

    try:
        window = _parse_window(args.window) if args.window else None
        profile = decomposition_profile(args.a, args.b, args.c)
    except (GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    cfg = points_on_base(profile, window)
    if args.csv:
        w = csv.writer(sys.stdout)
        w.writerow(["position", "apex_distance"])
        for pos, r in zip(cfg.positions, cfg.apex_distances):
            w.writerow([pos, r])
    else:
        print(
            f"base {args.a} (apex distances {args.b}, {args.c}): "
            f"D={profile.D} g={profile.g} foot={profile.foot}"
        )
        for pos, r in zip(cfg.positions, cfg.apex_distances):
            print(f"  position {pos:>6}  apex distance {r}")
    return EXIT_OK


def _cmd_heuristic_line(args) -> int:
    from .linedecomp import heuristic_min_diameter

    if args.n < 4:
        print("error: --n must be at least 4", file=sys.stderr)
        return EXIT_MALFORMED
    res = heuristic_min_diameter(args.n, tau_min=args.tau_min, d_limit=args.d_limit)
    if args.csv:
        w = csv.writer(sys.stdout)
        w.writerow(["n", "D", "g", "diameter", "positions", "apex_distances"])
        for rec in res.optima:
            w.writerow(
                [
                    rec.n,
                    rec.D,
                    rec.g,
                    rec.diameter,
                    ";".join(map(str, rec.positions)),
                    ";".join(map(str, rec.apex_distances)),
                ]
            )
    else:
        print(f"n={args.n}: best diameter {res.diameter} from {len(res.optima)} optimal (D, g) configuration(s)")
        for rec in res.optima:
            print(f"  D={rec.D} g={rec.g} positions={rec.positions} apex={rec.apex_distances}")
    if args.plot:
        from .plotting import save_line_configuration

        save_line_configuration(res.optima[0], args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def _cmd_psi(args) -> int:
    from .surveys import prime_pair_triangles, psi_histogram

    if args.dmax < 1:
        print("error: --dmax must be positive", file=sys.stderr)
        return EXIT_MALFORMED
    table = FactorTable(3 * args.dmax)
    rows = []
    char_rows = []
    for d in range(1, args.dmax + 1):
        hist = psi_histogram(d, table)
        for k in sorted(hist):
            rows.append((d, k, hist[k]))
        if args.chars:
            char_rows.append((d, len(hist), len(prime_pair_triangles(d, table))))
    w = csv.writer(sys.stdout) if args.csv else None
    if args.chars:
        if w:
            w.writerow(["d", "count", "witness_count"])
            w.writerows(char_rows)
        else:
            for d, cnt, wc in char_rows:
                print(f"d={d}: {cnt} characteristics ({wc} prime-pair witnesses)")
    else:
        if w:
            w.writerow(["d", "k", "psi"])
            w.writerows(rows)
        else:
            for d, k, v in rows:
                print(f"d={d} k={k} psi={v}")
    if args.plot:
        from .plotting import save_psi_scatter

        save_psi_scatter(rows, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def _cmd_char(args) -> int:
    try:
        t = Triangle.of(args.a, args.b, args.c)
        k = characteristic(t)
    except (GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    print(k)
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .persist import ParseError
    from .search import verify_file

    try:
        report = verify_file(args.file)
    except FileNotFoundError:
        print(f"error: no such file: {args.file}", file=sys.stderr)
        return EXIT_MALFORMED
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    for idx, checks in report.records:
        for c in checks:
            status = "ok" if c.passed else "FAIL"
            extra = f" ({c.detail})" if c.detail else ""
            print(f"record {idx}: {c.name}: {status}{extra}")
    if report.ok:
        print(f"{len(report.records)} record(s): all invariants hold")
        return EXIT_OK
    print(f"{len(report.failures())} failing check(s)", file=sys.stderr)
    return EXIT_INVARIANT


_COMMANDS = {
    "min-diameter": _cmd_min_diameter,
    "enumerate": _cmd_enumerate,
    "extend-line": _cmd_extend_line,
    "heuristic-line": _cmd_heuristic_line,
    "psi": _cmd_psi,
    "char": _cmd_char,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
