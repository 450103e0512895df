"""Timing grid for the two solvers, emitted as CSV."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass
from typing import Iterable

from .instance_gen import GenSpec, gen_random
from .interval import solve_interval
from .interval_model import NirForm, to_nir
from .proper import solve_proper

__all__ = ["BenchRow", "bench_instance", "time_solve", "run_bench", "to_csv", "CSV_HEADER"]

CSV_HEADER = ("n", "k", "class", "connected", "median_ns")

# Proper instances pack unit-length-16 intervals onto [0, n], so cliques hold
# about 16 nodes and the k-dependence of the DP is actually exercised.
PROPER_UNIT = 16


@dataclass(frozen=True)
class BenchRow:
    n: int
    k: int
    cls: str
    connected: bool
    median_ns: int


def bench_instance(n: int, cls: str, seed: int) -> NirForm:
    if cls == "proper":
        spec = GenSpec(n=n, cls="proper", seed=seed, hi=n, unit=PROPER_UNIT)
    else:
        spec = GenSpec(n=n, cls="interval", seed=seed)
    form, _ = to_nir(gen_random(spec))
    return form


def time_solve(f: NirForm, k: int, cls: str, connected: bool, reps: int) -> int:
    """Median wall time in nanoseconds over ``reps`` solves."""
    solve = solve_proper if cls == "proper" else solve_interval
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        solve(f, k, connected)
        samples.append(time.perf_counter_ns() - t0)
    return int(statistics.median(samples))


def run_bench(
    ns: Iterable[int],
    ks: Iterable[int],
    classes: Iterable[str] = ("proper", "interval"),
    connected: bool = False,
    reps: int = 5,
    seed: int = 0,
) -> list[BenchRow]:
    ks = list(ks)
    rows = []
    for cls in classes:
        for n in ns:
            f = bench_instance(n, cls, seed)
            for k in ks:
                if k > n:
                    continue
                rows.append(BenchRow(n, k, cls, connected, time_solve(f, k, cls, connected, reps)))
    return rows


def to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow((r.n, r.k, r.cls, str(r.connected).lower(), r.median_ns))
    return buf.getvalue()
