"""File formats: point-set JSON, enumeration JSON-lines, level checkpoints."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .geometry import DistanceMatrix, PointSet
from .orderly import Level


class ParseError(ValueError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message: str, line: int = 1):
        super().__init__(f"line {line}: {message}")
        self.line = line


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_point_set(path: str, ps: PointSet) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(ps.to_dict()) + "\n")


def write_point_sets(path: str, sets) -> None:
    with open(path, "w") as fh:
        for ps in sets:
            fh.write(dumps(ps.to_dict()) + "\n")


def load_point_sets(path: str) -> list[PointSet]:
    """Point sets from a JSON file (single object) or JSON-lines file."""
    with open(path) as fh:
        text = fh.read()
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty file")
    out = []
    if stripped.startswith("[") or "\n" not in stripped:
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno) from exc
        records = data if isinstance(data, list) else [data]
        for i, rec in enumerate(records, start=1):
            out.append(_point_set_from(rec, i))
        return out
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, lineno) from exc
        out.append(_point_set_from(rec, lineno))
    return out


def _point_set_from(rec, lineno: int) -> PointSet:
    if not isinstance(rec, dict):
        raise ParseError("expected a JSON object", lineno)
    missing = {
        "n",
        "upper_triangle",
        "characteristic",
        "position_class",
        "diameter",
    } - rec.keys()
    if missing:
        raise ParseError(f"missing fields {sorted(missing)}", lineno)
    try:
        return PointSet.from_dict(rec)
    except (ValueError, TypeError, KeyError) as exc:
        raise ParseError(str(exc), lineno) from exc


@dataclass
class LevelCheckpoint:
    """Per-level resume files: a JSON header line, then one serialized
    matrix per line."""

    directory: str
    mode: str
    dmax: int

    def _path(self, q: int, k: int) -> str:
        return os.path.join(
            self.directory, f"orderly_{self.mode}_k{k}_q{q}_d{self.dmax}.jsonl"
        )

    def save(self, level: Level) -> None:
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(level.q, level.characteristic)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            header = {
                "q": level.q,
                "characteristic": level.characteristic,
                "dmax": level.dmax,
                "complete": level.complete,
            }
            fh.write(dumps(header) + "\n")
            for key, flag in zip(level.keys, level.canonical_flags):
                m = DistanceMatrix.from_key(level.q, key)
                rec = {
                    "n": level.q,
                    "upper_triangle": m.upper_row_major(),
                    "canonical": flag,
                }
                fh.write(dumps(rec) + "\n")
        os.replace(tmp, path)

    def load(self, q: int, k: int) -> Level | None:
        path = self._path(q, k)
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            lines = fh.read().splitlines()
        if not lines:
            return None
        header = json.loads(lines[0])
        if not header.get("complete"):
            return None
        keys = []
        flags = []
        for line in lines[1:]:
            if not line.strip():
                continue
            rec = json.loads(line)
            m = DistanceMatrix.from_upper_row_major(rec["n"], rec["upper_triangle"])
            keys.append(m.key)
            flags.append(bool(rec["canonical"]))
        return Level(q, k, header["dmax"], keys, flags, complete=True)


@dataclass
class DiameterCheckpoint:
    """Per-diameter resume files for the ascending clique search."""

    directory: str
    mode: str
    nmin: int

    def _path(self, d: int) -> str:
        return os.path.join(
            self.directory, f"clique_{self.mode}_n{self.nmin}_d{d}.jsonl"
        )

    def save(self, d: int, sets: list[PointSet]) -> None:
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(d)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(dumps({"mode": self.mode, "d": d, "nmin": self.nmin, "complete": True}) + "\n")
            for ps in sets:
                fh.write(dumps(ps.to_dict()) + "\n")
        os.replace(tmp, path)

    def load(self, d: int) -> list[PointSet] | None:
        path = self._path(d)
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            lines = fh.read().splitlines()
        if not lines:
            return None
        header = json.loads(lines[0])
        if not header.get("complete"):
            return None
        return [PointSet.from_dict(json.loads(line)) for line in lines[1:] if line.strip()]
