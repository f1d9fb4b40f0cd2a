"""Diameter-conjecture sweep: connectivity, diameter, girth across a range.

Results append to a CSV (schema ``kind,n,vertices,edges,connected,diameter,
girth,ms`` with ``inf`` for infinite values) one flushed line per record, so
an interrupted run resumes by skipping every (kind, n) already on disk.
Workers parallelize across n; records are emitted in sorted task order
regardless of completion order.
"""

from __future__ import annotations

import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError
from .graphs import build_graph, spec_from_kind
from .metrics import INFINITY, diameter, is_connected
from .oddsets import prime_flags_upto
from .structure import girth

CSV_HEADER = "kind,n,vertices,edges,connected,diameter,girth,ms"

SWEEP_KINDS = ("near-goldbach", "goldbach")


def _fmt_extent(value) -> str:
    return "inf" if math.isinf(value) else str(int(value))


def _parse_extent(text: str):
    return INFINITY if text == "inf" else int(text)


@dataclass(frozen=True)
class SweepRecord:
    kind: str
    n: int
    vertices: int
    edges: int
    connected: bool
    diameter: float
    girth: float
    ms: int

    def to_csv_line(self) -> str:
        return ",".join([
            self.kind, str(self.n), str(self.vertices), str(self.edges),
            "true" if self.connected else "false",
            _fmt_extent(self.diameter), _fmt_extent(self.girth), str(self.ms),
        ])

    @classmethod
    def from_csv_line(cls, line: str) -> "SweepRecord":
        kind, n, vertices, edges, connected, diam, g, ms = line.split(",")
        return cls(kind, int(n), int(vertices), int(edges),
                   connected == "true", _parse_extent(diam), _parse_extent(g),
                   int(ms))


@dataclass(frozen=True)
class SweepManifest:
    kinds: tuple[str, ...]
    n_lo: int
    n_hi: int
    step: int
    output: Path

    def __post_init__(self):
        if self.n_lo < 1 or self.n_hi < self.n_lo or self.step < 1:
            raise DomainError("manifest range is invalid")
        for kind in self.kinds:
            spec_from_kind(kind, 1)  # validates the kind string

    def tasks(self) -> list[tuple[str, int]]:
        ns = range(self.n_lo, self.n_hi + 1, self.step)
        return sorted((kind, n) for kind in self.kinds for n in ns)

    def save(self, path) -> None:
        payload = {"kinds": list(self.kinds), "n_lo": self.n_lo,
                   "n_hi": self.n_hi, "step": self.step,
                   "output": str(self.output)}
        Path(path).write_text(json.dumps(payload, indent=2) + "\n", "utf-8")

    @classmethod
    def load(cls, path) -> "SweepManifest":
        payload = json.loads(Path(path).read_text("utf-8"))
        return cls(tuple(payload["kinds"]), int(payload["n_lo"]),
                   int(payload["n_hi"]), int(payload.get("step", 1)),
                   Path(payload["output"]))


def compute_record(kind: str, n: int) -> SweepRecord:
    started = time.perf_counter()
    graph = build_graph(spec_from_kind(kind, n))
    diam = diameter(graph)
    cycle_len = girth(graph)
    ms = int(round((time.perf_counter() - started) * 1000))
    return SweepRecord(kind, n, graph.vertex_count, graph.edge_count,
                       math.isfinite(diam), diam, cycle_len, ms)


def _compute_task(task: tuple[str, int]) -> SweepRecord:
    return compute_record(*task)


def default_workers() -> int:
    cap = os.environ.get("GOLDBACH_LAB_THREADS", "")
    available = os.cpu_count() or 1
    if cap.strip():
        return max(1, min(available, int(cap)))
    return available


def completed_keys(output) -> set[tuple[str, int]]:
    """(kind, n) pairs already present in the CSV.

    The writer appends whole lines and flushes each, so everything before
    the final newline is trusted; a trailing fragment from a torn write is
    dropped (that record gets recomputed).
    """
    path = Path(output)
    if not path.exists():
        return set()
    text = path.read_text("utf-8")
    complete, _, torn = text.rpartition("\n")
    done = set()
    keep = []
    for line in complete.split("\n"):
        if not line:
            continue
        keep.append(line)
        if line == CSV_HEADER:
            continue
        try:
            record = SweepRecord.from_csv_line(line)
        except (ValueError, TypeError):
            raise DomainError(f"unreadable sweep record: {line!r}") from None
        done.add((record.kind, record.n))
    if torn:
        path.write_text(("\n".join(keep) + "\n") if keep else "", "utf-8")
    return done


def run_sweep(manifest: SweepManifest, workers: int | None = None,
              progress: bool = True) -> list[SweepRecord]:
    """Compute every task in the manifest not already on disk.

    Appends one CSV line per record (flushed immediately) in sorted task
    order and returns the newly computed records.
    """
    output = Path(manifest.output)
    done = completed_keys(output)
    todo = [task for task in manifest.tasks() if task not in done]
    if workers is None:
        workers = default_workers()
    new_records: list[SweepRecord] = []
    output.parent.mkdir(parents=True, exist_ok=True)
    fresh = not output.exists() or output.stat().st_size == 0
    with open(output, "a", encoding="utf-8") as sink:
        if fresh:
            sink.write(CSV_HEADER + "\n")
            sink.flush()
        if not todo:
            return []

        def emit(record: SweepRecord) -> None:
            sink.write(record.to_csv_line() + "\n")
            sink.flush()
            new_records.append(record)
            if progress:
                print(f"[sweep] {record.kind} n={record.n} "
                      f"diameter={_fmt_extent(record.diameter)} "
                      f"({record.ms} ms)", file=sys.stderr)

        if workers <= 1 or len(todo) < 4:
            for task in todo:
                emit(_compute_task(task))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for record in pool.map(_compute_task, todo, chunksize=16):
                    emit(record)
    return new_records


@dataclass(frozen=True)
class GoldbachConsistency:
    """Side-by-side report: graph connectivity vs the direct two-prime check.

    No equivalence between the two facts is asserted; both are logged for
    inspection.
    """

    n: int
    graph_connected: bool
    checked_range: tuple[int, int]
    all_sums_hold: bool
    failures: tuple[int, ...]


def goldbach_consistency(n: int) -> GoldbachConsistency:
    """Is every even number in [6, 2n] a sum of two odd primes, and is the
    vertex-0 graph at n connected?"""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    graph = build_graph(spec_from_kind("goldbach", n))
    connected = is_connected(graph)
    flags = prime_flags_upto(2 * n)
    if len(flags) > 2:
        flags[2] = False  # odd primes only
    odd_primes = np.flatnonzero(flags)
    failures = []
    for even in range(6, 2 * n + 1, 2):
        low = odd_primes[odd_primes <= even // 2]
        if low.size == 0 or not flags[even - low].any():
            failures.append(even)
    return GoldbachConsistency(
        n, connected, (6, 2 * n), not failures, tuple(failures))
