"""Batch runs over many pairs: CSV records and cumulative-time survival data.

Survival data follows the usual recipe: drop pairs that timed out or
failed, sort the remaining runtimes ascending and emit the points
``(t1, 1), (t1 + t2, 2), ...``.
"""
from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .baformat import load_pair
from .engine import EngineOptions, Timeout, decide_inclusion

CSV_HEADER = ("name", "verdict", "time_ms", "queries", "stem_basis", "period_basis", "status")


@dataclass(frozen=True)
class BenchRecord:
    name: str
    verdict: str | None
    time_ms: float
    queries: int = 0
    stem_basis: int = 0
    period_basis: int = 0
    status: str = "ok"  # ok | timeout | error
    message: str = ""

    def __post_init__(self):
        if self.time_ms < 0:
            raise ValueError("time_ms must be >= 0")
        if self.status not in ("ok", "timeout", "error"):
            raise ValueError(f"unknown status {self.status!r}")
        if (self.verdict is not None) != (self.status == "ok"):
            raise ValueError("verdict must be present exactly when status is ok")

    def row(self) -> list:
        return [self.name, self.verdict or "", f"{self.time_ms:.3f}", self.queries,
                self.stem_basis, self.period_basis, self.status]


@dataclass(frozen=True)
class BenchPair:
    name: str
    path_a: Path
    path_b: Path


class ManifestError(ValueError):
    pass


def load_manifest(path: str | Path) -> list[BenchPair]:
    """Pairs from a manifest file or a directory.

    Manifest lines read ``name A.ba B.ba`` with paths relative to the
    manifest; blank lines and ``#`` comments are skipped. A directory
    contributes every ``<name>.A.ba`` that has a sibling ``<name>.B.ba``.
    """
    path = Path(path)
    if path.is_dir():
        pairs = []
        for a in sorted(path.glob("*.A.ba")):
            name = a.name[: -len(".A.ba")]
            b = a.with_name(f"{name}.B.ba")
            if b.exists():
                pairs.append(BenchPair(name, a, b))
        return pairs
    try:
        text = path.read_text()
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ManifestError(f"{path}:{lineno}: expected 'name A.ba B.ba'")
        name, a, b = parts
        pairs.append(BenchPair(name, path.parent / a, path.parent / b))
    return pairs


def run_pair(pair: BenchPair, opts: EngineOptions) -> BenchRecord:
    try:
        a, b = load_pair(pair.path_a, pair.path_b)
    except (OSError, ValueError) as exc:
        return BenchRecord(pair.name, None, 0.0, status="error", message=str(exc))
    start = time.monotonic()
    try:
        result = decide_inclusion(a, b, opts)
    except Timeout:
        spent = (time.monotonic() - start) * 1000.0
        return BenchRecord(pair.name, None, spent, status="timeout")
    except Exception as exc:  # noqa: BLE001 - a crashed pair is recorded, not fatal
        spent = (time.monotonic() - start) * 1000.0
        return BenchRecord(pair.name, None, spent, status="error", message=repr(exc))
    st = result.stats
    return BenchRecord(pair.name, result.verdict.value, st.elapsed_ms, st.queries,
                       st.stem_basis, st.period_basis)


def _run_star(args):
    return run_pair(*args)


def run_bench(pairs: Sequence[BenchPair], opts: EngineOptions | None = None,
              jobs: int = 1) -> list[BenchRecord]:
    """Run every pair; results come back in manifest order."""
    opts = replace(opts or EngineOptions(), collect_stats=True)
    if jobs <= 1 or len(pairs) <= 1:
        return [run_pair(p, opts) for p in pairs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_star, [(p, opts) for p in pairs]))


def survival_points(records: Iterable[BenchRecord]) -> list[tuple[float, int]]:
    times = sorted(r.time_ms for r in records if r.status == "ok")
    points, total = [], 0.0
    for i, t in enumerate(times, 1):
        total += t
        points.append((total, i))
    return points


def write_csv(records: Iterable[BenchRecord], dest: str | Path | TextIO) -> None:
    """Write the CSV to a path or an open text stream."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", newline="") as fh:
            write_csv(records, fh)
        return
    out = csv.writer(dest, lineterminator="\n")
    out.writerow(CSV_HEADER)
    for r in records:
        out.writerow(r.row())


def write_survival(records: Iterable[BenchRecord], path: str | Path) -> None:
    with open(path, "w") as fh:
        for total, count in survival_points(records):
            fh.write(f"{total:.3f} {count}\n")
