"""Exact uniform sampling from Av_n(I_{d+1}) and from the target classes.

A uniform element of Av_n(I_{d+1}) is drawn by choosing an RSK shape
lambda (at most d columns) with probability f_lambda^2 / total, two
independent uniform tableaux of that shape by the hook walk, and applying
inverse RSK.  All arithmetic on weights is exact.
"""

from __future__ import annotations

import gzip
import json
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import accumulate, permutations
from math import comb
from pathlib import Path

import numpy as np

from .bwx import pipeline
from .errors import BoundExceeded
from .growth import cache_dir_from_env, conjugate, hook_walk_sample, inverse_rsk, write_bytes_atomic
from .perms import ClassSpec, Perm, format_perm, lis

DEFAULT_MAX_N = 1000
MAX_D = 6
# shape tables above this many entries are refused rather than built
MAX_TABLE = 2_000_000
# tables whose weights exceed this many hex digits in total stay in memory only
DISK_CACHE_LIMIT = 20_000_000


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """PCG64 keyed by (seed, stream); identical draws on every platform."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


def randbelow(rng: np.random.Generator, bound: int) -> int:
    """Uniform integer in [0, bound) for arbitrarily large ``bound``."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    bits = bound.bit_length()
    words = (bits + 63) // 64
    excess = words * 64 - bits
    while True:
        raw = rng.integers(0, 2**64, size=words, dtype=np.uint64, endpoint=False)
        value = 0
        for w in raw:
            value = (value << 64) | int(w)
        value >>= excess
        if value < bound:
            return value


def _few_row_partitions(n: int, d: int):
    """Partitions of n with at most d parts, largest part first."""
    def rec(rem: int, cap: int, slots: int, acc: tuple[int, ...]):
        if rem == 0:
            yield acc
            return
        if slots == 0 or rem > cap * slots:
            return
        for part in range(min(rem, cap), 0, -1):
            yield from rec(rem - part, part, slots - 1, acc + (part,))
    yield from rec(n, n, d, ())


def _estimate_table_size(n: int, d: int) -> float:
    # partitions of n into at most d parts grow like n^(d-1) / ((d-1)! d!)
    from math import factorial
    return (n + d) ** (d - 1) / (factorial(d - 1) * factorial(d))


@dataclass(frozen=True)
class ShapeDistribution:
    n: int
    d: int
    conjugates: tuple[tuple[int, ...], ...]   # conjugates of the RSK shapes, at most d parts
    weights: tuple[int, ...]              # f_lambda^2
    total: int
    cumulative: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self.cumulative:
            object.__setattr__(self, "cumulative", tuple(accumulate(self.weights)))

    def sample_shape(self, rng: np.random.Generator) -> tuple[int, ...]:
        u = randbelow(rng, self.total)
        return conjugate(self.conjugates[bisect_right(self.cumulative, u)])

    @property
    def shapes(self) -> list[tuple[int, ...]]:
        """RSK shapes (first part <= d); built on demand."""
        return [conjugate(c) for c in self.conjugates]


def _dist_cache_path(cache_dir: Path, n: int, d: int) -> Path:
    return cache_dir / "shape_dist" / f"n{n}_d{d}.json.gz"


def _hook_numbers(n: int, d: int):
    """Yield (rows, f_lambda) for every partition of n with at most d parts.

    With rows padded to length d and l_i = rows_i + d - 1 - i,
    f = n! V(l) / prod(l_i!) where V is the Vandermonde product.  Inside a
    run where only the last two parts move, consecutive values differ by a
    ratio of small integers, so most steps cost one short multiplication.
    """
    if d == 1 or n == 0:
        yield (n,) if n else (), 1
        return
    N = n + d * (d - 1) // 2
    scale = 1
    for x in range(n + 1, N + 1):
        scale *= x

    def start_value(ls: list[int]) -> int:
        g, r = 1, N
        for l in ls[:-1]:
            g *= comb(r, l)
            r -= l
        for i in range(d):
            for j in range(i + 1, d):
                g *= ls[i] - ls[j]
        return g

    def prefixes(rem: int, cap: int, acc: tuple[int, ...]):
        if len(acc) == d - 2:
            yield acc, rem, cap
            return
        for part in range(min(rem, cap), -1, -1):
            if rem - part <= part * (d - 1 - len(acc)):
                yield from prefixes(rem - part, part, acc + (part,))

    for head, rem, cap in prefixes(n, n, ()):
        x = min(cap, rem)
        y = rem - x
        if y > x:
            continue
        ls = [v + d - 1 - i for i, v in enumerate(head + (x, y))]
        g = start_value(ls)
        while True:
            rows = tuple(v for v in head + (x, y) if v)
            yield rows, g // scale
            if x - 1 < y + 1:
                break
            num, den = (x + 1) * (x - y - 1), (y + 1) * (x + 1 - y)
            for i in range(d - 2):
                num *= (ls[i] - ls[d - 2] + 1) * (ls[i] - ls[d - 1] - 1)
                den *= (ls[i] - ls[d - 2]) * (ls[i] - ls[d - 1])
            g = g * num // den
            x, y = x - 1, y + 1
            ls[d - 2] -= 1
            ls[d - 1] += 1


def _build(n: int, d: int) -> ShapeDistribution:
    conjugates, weights = [], []
    for rows, f in _hook_numbers(n, d):
        conjugates.append(rows)
        weights.append(f * f)
    return ShapeDistribution(n, d, tuple(conjugates), tuple(weights), sum(weights))


@lru_cache(maxsize=32)
def _shape_distribution(n: int, d: int, cache_dir: Path | None) -> ShapeDistribution:
    if cache_dir is not None:
        path = _dist_cache_path(cache_dir, n, d)
        if path.exists():
            data = json.loads(gzip.decompress(path.read_bytes()))
            weights = tuple(int(w, 16) for w in data["weights"])
            return ShapeDistribution(n, d, tuple(tuple(s) for s in data["conjugates"]), weights, sum(weights))
    dist = _build(n, d)
    if cache_dir is not None:
        hexes = [format(w, "x") for w in dist.weights]
        if sum(map(len, hexes)) <= DISK_CACHE_LIMIT:
            payload = json.dumps({"n": n, "d": d, "conjugates": dist.conjugates, "weights": hexes})
            write_bytes_atomic(_dist_cache_path(cache_dir, n, d), gzip.compress(payload.encode()))
    return dist


def shape_distribution(n: int, d: int, max_n: int = DEFAULT_MAX_N, cache_dir=None) -> ShapeDistribution:
    """All RSK shapes of Av_n(I_{d+1}) weighted by f_lambda^2."""
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    if n > max_n:
        raise BoundExceeded(f"n={n} exceeds sampler bound {max_n}")
    if d > MAX_D:
        raise BoundExceeded(f"d={d} exceeds {MAX_D}")
    if _estimate_table_size(n, d) > MAX_TABLE:
        raise BoundExceeded(f"shape table for n={n}, d={d} is too large to enumerate")
    return _shape_distribution(n, d, cache_dir_from_env(cache_dir))


def sample_av_increasing(n: int, d: int, rng: np.random.Generator, max_n: int = DEFAULT_MAX_N,
                         cache_dir=None) -> Perm:
    """Exactly uniform element of Av_n(I_{d+1})."""
    dist = shape_distribution(n, d, max_n, cache_dir)
    shape = dist.sample_shape(rng)
    P = hook_walk_sample(shape, rng)
    Q = hook_walk_sample(shape, rng)
    sigma = inverse_rsk(P, Q)
    assert lis(sigma) <= d
    return sigma


def sample_by_rejection(n: int, d: int, rng: np.random.Generator, max_n: int = 9) -> Perm:
    """Uniform S_n draws until one avoids I_{d+1}; an independent oracle for small n."""
    if n > max_n:
        raise BoundExceeded(f"rejection sampling limited to n <= {max_n}")
    while True:
        sigma = tuple(int(v) + 1 for v in rng.permutation(n))
        if lis(sigma) <= d:
            return sigma


@lru_cache(maxsize=200_000)
def _pipeline_image(sigma: Perm, spec: ClassSpec, strategy: str) -> Perm:
    return pipeline(sigma, spec, strategy).pi


def sample_target_class(n: int, spec: ClassSpec, rng: np.random.Generator, strategy: str = "auto",
                        max_n: int = DEFAULT_MAX_N, cache_dir=None) -> Perm:
    """Uniform element of Av_n(J_k1 + I_k2 + J_k3): a uniform Av_n(I_{d+1})
    sample pushed through the bijective pipeline."""
    sigma = sample_av_increasing(n, spec.d, rng, max_n, cache_dir)
    return _pipeline_image(sigma, spec, strategy)


def sample_record(n: int, spec: ClassSpec, seed: int, stream: int, perm: Perm) -> str:
    return json.dumps({"n": n, "spec": spec.as_list(), "seed": seed, "stream": stream,
                       "perm": format_perm(perm)})


def all_of_size(n: int) -> list[Perm]:
    return [tuple(p) for p in permutations(range(1, n + 1))]
