"""Runtime scaling of the O(n log n) path against the quadratic oracle."""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Literal

import numpy as np

from fasttau import oracle
from fasttau.core import PairedSample, kendall_tau, validate_sample
from fasttau.errors import CutoffExceeded, InsufficientSizes

NAIVE_CUTOFF = 20_000
DEFAULT_SIZES = (10_000, 20_000, 50_000, 100_000)
DEFAULT_NAIVE_SIZES = (1_000, 2_000, 4_000)
CSV_HEADER = ("n", "fast_median_s", "naive_median_s", "reps")


@dataclass(frozen=True)
class BenchEntry:
    n: int
    fast_median_seconds: float
    naive_median_seconds: float | None
    reps: int


@dataclass(frozen=True)
class BenchReport:
    entries: list[BenchEntry]
    fitted_loglog_slope_fast: float
    seed: int
    fitted_loglog_slope_naive: float | None = None
    naive_cutoff: int = field(default=NAIVE_CUTOFF)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for e in self.entries:
            naive = "" if e.naive_median_seconds is None else repr(e.naive_median_seconds)
            writer.writerow([e.n, repr(e.fast_median_seconds), naive, e.reps])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def generate_random_sample(n: int, seed: int) -> PairedSample:
    """Two independent standard normal vectors of length n.

    Drawn from numpy's PCG64 generator seeded with ``seed`` (x first, then y),
    so a given ``(n, seed)`` yields the same sample on every platform.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    x = rng.standard_normal(n)
    y = rng.standard_normal(n)
    return validate_sample(x, y)


def _fast(sample):
    return kendall_tau(sample).tau


def _naive(sample):
    return oracle.brute_force_tau(sample)


def time_tau(
    sample: PairedSample,
    reps: int = 5,
    which: Literal["fast", "naive"] = "fast",
    naive_cutoff: int = NAIVE_CUTOFF,
) -> float:
    """Median wall time in seconds over ``reps`` runs, after one untimed warmup.

    Every run must produce the same tau; a mismatch raises ``RuntimeError``.
    """
    if reps < 3:
        raise ValueError(f"reps must be at least 3, got {reps}")
    if which == "fast":
        fn = _fast
    elif which == "naive":
        if sample.n > naive_cutoff:
            raise CutoffExceeded(f"naive timing limited to n <= {naive_cutoff}, got {sample.n}")
        fn = _naive
    else:
        raise ValueError(f"which must be 'fast' or 'naive', got {which!r}")

    expected = fn(sample)
    times = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        value = fn(sample)
        times.append(time.perf_counter_ns() - t0)
        if value != expected:
            raise RuntimeError(f"non-deterministic tau: {value!r} != {expected!r}")
    return statistics.median(times) * 1e-9


def loglog_slope(sizes, seconds) -> float:
    """Least-squares slope of log(seconds) against log(n)."""
    lx = np.log(np.asarray(sizes, dtype=float))
    ly = np.log(np.asarray(seconds, dtype=float))
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)


def scaling_report(sizes, reps: int = 5, seed: int = 1, naive_cutoff: int = NAIVE_CUTOFF) -> BenchReport:
    """Time both paths across ``sizes`` and fit the log-log slope.

    Requires at least 3 distinct sizes spanning a factor of 10 or more. The
    naive path is timed only for sizes up to ``naive_cutoff``.
    """
    sizes = sorted(set(int(n) for n in sizes))
    if len(sizes) < 3 or sizes[-1] < 10 * sizes[0]:
        raise InsufficientSizes(
            f"need at least 3 distinct sizes spanning 10x, got {sizes}"
        )
    entries = []
    for n in sizes:
        sample = generate_random_sample(n, seed)
        fast = time_tau(sample, reps, "fast")
        naive = time_tau(sample, reps, "naive", naive_cutoff) if n <= naive_cutoff else None
        entries.append(BenchEntry(n, fast, naive, reps))

    naive_points = [(e.n, e.naive_median_seconds) for e in entries if e.naive_median_seconds]
    naive_slope = None
    if len(naive_points) >= 2:
        naive_slope = loglog_slope(*zip(*naive_points))
    return BenchReport(
        entries=entries,
        fitted_loglog_slope_fast=loglog_slope(sizes, [e.fast_median_seconds for e in entries]),
        seed=seed,
        fitted_loglog_slope_naive=naive_slope,
        naive_cutoff=naive_cutoff,
    )

