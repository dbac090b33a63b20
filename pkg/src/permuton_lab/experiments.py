"""Seeded sweeps: sample target-class permutations, measure them, and stream
one CSV row per sample.

Sample s of size n uses the RNG stream equal to its global sample index,
so results do not depend on worker count or completion order.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .layers import goodness
from .measure import DEFAULT_GRID, WRegionSpec, mu_w, rect_sup_distance, w_minus, w_plus
from .perms import ClassSpec, Perm
from .sampling import DEFAULT_MAX_N, make_rng, sample_av_increasing
from .bwx import pipeline

SCHEMA_VERSION = 1
QUANTILES = (0.1, 0.5, 0.9)


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    spec: ClassSpec = field(default_factory=lambda: ClassSpec(2, 1, 1))
    ns: tuple[int, ...] = (50, 200, 800)
    samples: int = 50
    seed: int = 7
    epsilons: tuple[float, ...] = (0.2,)
    grid: int = DEFAULT_GRID
    goodness_eps: float = 0.05
    cache_dir: str | None = None
    out: str | None = None
    summary: str | None = None
    workers: int = 1
    strategy: str = "auto"
    max_n: int = DEFAULT_MAX_N

    def validate(self) -> "ExperimentConfig":
        if not self.ns:
            raise ConfigError("n list is empty")
        if list(self.ns) != sorted(set(self.ns)) or self.ns[0] < 1:
            raise ConfigError(f"n list must be positive and strictly ascending: {self.ns}")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if not self.epsilons or any(not (0.0 < e < 1.0) for e in self.epsilons):
            raise ConfigError(f"epsilons must lie in (0, 1): {self.epsilons}")
        if not (0.0 < self.goodness_eps < 0.5):
            raise ConfigError("goodness epsilon must lie in (0, 1/2)")
        if self.grid < 2:
            raise ConfigError("grid must be >= 2")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.ns[-1] > self.max_n:
            raise ConfigError(f"n={self.ns[-1]} exceeds the sampler bound {self.max_n}")
        return self

    def tasks(self) -> Iterator[tuple[int, int, int]]:
        """(n, sample id, stream) in output order."""
        stream = 0
        for n in self.ns:
            for s in range(self.samples):
                yield n, s, stream
                stream += 1


@dataclass
class ConvergenceRecord:
    n: int
    sample: int
    seed: int
    stream: int
    w: dict[float, float]        # epsilon -> mu(W_eps)
    rect_sup: float
    good: bool
    wall_time: float

    def row(self, cfg: ExperimentConfig) -> list:
        return ([SCHEMA_VERSION, self.n, self.sample, self.seed, self.stream]
                + [repr(self.w[e]) for e in cfg.epsilons]
                + [repr(self.rect_sup), int(self.good), f"{self.wall_time:.4f}"])


def eps_label(e: float) -> str:
    return f"{e:g}"


def convergence_header(cfg: ExperimentConfig) -> list[str]:
    return (["schema_version", "n", "sample", "seed", "stream"]
            + [f"w_{eps_label(e)}" for e in cfg.epsilons]
            + [f"rect_sup_m{cfg.grid}", "good", "wall_time"])


def run_one(cfg: ExperimentConfig, n: int, sample: int, stream: int) -> ConvergenceRecord:
    t0 = time.perf_counter()
    rng = make_rng(cfg.seed, stream)
    sigma = sample_av_increasing(n, cfg.spec.d, rng, cfg.max_n, cfg.cache_dir)
    pi = pipeline(sigma, cfg.spec, cfg.strategy, check=False).pi
    w = {e: mu_w(pi, WRegionSpec(e, "both")) for e in cfg.epsilons}
    rs = rect_sup_distance(pi, cfg.grid)
    good = goodness(sigma, cfg.goodness_eps, cfg.spec.d).all_good
    return ConvergenceRecord(n, sample, cfg.seed, stream, w, rs, good, time.perf_counter() - t0)


def _run_task(args) -> ConvergenceRecord:
    cfg, n, sample, stream = args
    return run_one(cfg, n, sample, stream)


def _map(fn, items: Iterable, workers: int) -> Iterator:
    # results come back in submission order either way
    if workers == 1:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, items, chunksize=1)


def run_convergence(cfg: ExperimentConfig, progress=None) -> list[ConvergenceRecord]:
    """Run every sample; rows are written and flushed as they arrive."""
    cfg.validate()
    records = []
    out = open(cfg.out, "w", newline="") if cfg.out else None
    try:
        writer = csv.writer(out) if out else None
        if writer:
            writer.writerow(convergence_header(cfg))
            out.flush()
        tasks = [(cfg, n, s, stream) for n, s, stream in cfg.tasks()]
        for rec in _map(_run_task, tasks, cfg.workers):
            records.append(rec)
            if writer:
                writer.writerow(rec.row(cfg))
                out.flush()
            if progress:
                progress(rec)
    finally:
        if out:
            out.close()
    summary = summarize(cfg, records)
    if cfg.summary:
        write_summary(cfg.summary, summary)
    return records


def summarize(cfg: ExperimentConfig, records: list[ConvergenceRecord]) -> list[dict]:
    """Per-n medians and quantiles of every scalar column, plus the good fraction."""
    rows = []
    for n in cfg.ns:
        recs = [r for r in records if r.n == n]
        if not recs:
            continue
        row: dict = {"schema_version": SCHEMA_VERSION, "n": n, "samples": len(recs)}
        cols = {f"w_{eps_label(e)}": [r.w[e] for r in recs] for e in cfg.epsilons}
        cols[f"rect_sup_m{cfg.grid}"] = [r.rect_sup for r in recs]
        for name, vals in cols.items():
            qs = np.quantile(np.asarray(vals), QUANTILES)
            for q, v in zip(QUANTILES, qs):
                row[f"{name}_q{int(q * 100)}"] = float(v)
        row["good_fraction"] = sum(r.good for r in recs) / len(recs)
        rows.append(row)
    return rows


def write_summary(path: str | Path, rows: list[dict]) -> None:
    if not rows:
        return
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)


# -- goodness sweep -----------------------------------------------------------

GOODNESS_HEADER = ["schema_version", "n", "seed", "stream", "eps", "c1", "c2", "c3", "c4", "c5", "all_good"]


@dataclass
class GoodnessRecord:
    n: int
    seed: int
    stream: int
    eps: float
    flags: tuple[bool, ...]

    @property
    def all_good(self) -> bool:
        return all(self.flags)

    def row(self) -> list:
        return [SCHEMA_VERSION, self.n, self.seed, self.stream, self.eps, *map(int, self.flags), int(self.all_good)]


def _goodness_task(args) -> GoodnessRecord:
    n, d, eps, seed, stream, max_n, cache_dir = args
    sigma = sample_av_increasing(n, d, make_rng(seed, stream), max_n, cache_dir)
    return GoodnessRecord(n, seed, stream, eps, goodness(sigma, eps, d).condition_flags)


def run_goodness(ns, d: int, eps: float, samples: int, seed: int, out=None, workers: int = 1,
                 max_n: int = DEFAULT_MAX_N, cache_dir=None) -> dict[int, float]:
    """Fraction of good uniform samples of Av_n(I_{d+1}) for each n."""
    tasks, stream = [], 0
    for n in ns:
        for _ in range(samples):
            tasks.append((n, d, eps, seed, stream, max_n, cache_dir))
            stream += 1
    fh = open(out, "w", newline="") if out else None
    good: dict[int, int] = {n: 0 for n in ns}
    try:
        writer = csv.writer(fh) if fh else None
        if writer:
            writer.writerow(GOODNESS_HEADER)
        for rec in _map(_goodness_task, tasks, workers):
            good[rec.n] += rec.all_good
            if writer:
                writer.writerow(rec.row())
                fh.flush()
    finally:
        if fh:
            fh.close()
    return {n: good[n] / samples for n in ns}


# -- measure report -----------------------------------------------------------

MEASURE_HEADER = ["schema_version", "n", "seed", "stream", "epsilon", "w_plus", "w_minus", "w_both", "rect_sup_m64"]


def measure_row(pi: Perm, epsilon: float, seed: int | str = "", stream: int | str = "") -> list:
    WRegionSpec(epsilon)  # validates epsilon
    wp, wm = w_plus(pi, epsilon), w_minus(pi, epsilon)
    return [SCHEMA_VERSION, len(pi), seed, stream, epsilon, repr(wp), repr(wm), repr(wp + wm),
            repr(rect_sup_distance(pi, 64))]
