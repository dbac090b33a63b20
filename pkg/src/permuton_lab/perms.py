"""Permutations in one-line notation, pattern containment and avoidance classes.

Permutations are plain tuples of 1-based integers, e.g. ``(3, 1, 4, 2)``.
The empty tuple is the permutation of size 0 and avoids every pattern.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import BoundExceeded

Perm = tuple[int, ...]

DEFAULT_EXHAUSTIVE_BOUND = 10


def parse_perm(text: str) -> Perm:
    """Parse ``"3,1,4,2"``; a comma-free string of digits such as ``"2413"`` is
    read one digit per entry."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        values = tuple(int(tok) for tok in text.split(","))
    else:
        values = tuple(int(ch) for ch in text)
    return as_perm(values)


def format_perm(p: Sequence[int]) -> str:
    return ",".join(str(v) for v in p)


def as_perm(values: Iterable[int]) -> Perm:
    p = tuple(int(v) for v in values)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of 1..{len(p)}: {p}")
    return p


def standardize(values: Sequence[int]) -> Perm:
    """Replace distinct values by their ranks."""
    order = sorted(range(len(values)), key=values.__getitem__)
    out = [0] * len(values)
    for rank, idx in enumerate(order, 1):
        out[idx] = rank
    return tuple(out)


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p, 1):
        out[v - 1] = i
    return tuple(out)


def reverse(p: Sequence[int]) -> Perm:
    return tuple(reversed(p))


def complement(p: Sequence[int]) -> Perm:
    n = len(p)
    return tuple(n + 1 - v for v in p)


def reverse_complement(p: Sequence[int]) -> Perm:
    n = len(p)
    return tuple(n + 1 - v for v in reversed(p))


def direct_sum(*parts: Sequence[int]) -> Perm:
    out: list[int] = []
    for part in parts:
        shift = len(out)
        out.extend(shift + v for v in part)
    return tuple(out)


def skew_sum(*parts: Sequence[int]) -> Perm:
    total = sum(len(part) for part in parts)
    out: list[int] = []
    for part in parts:
        total -= len(part)
        out.extend(total + v for v in part)
    return tuple(out)


def increasing(k: int) -> Perm:
    """The pattern I_k = 1 2 ... k."""
    return tuple(range(1, k + 1))


def decreasing(k: int) -> Perm:
    """The pattern J_k = k ... 2 1."""
    return tuple(range(k, 0, -1))


def monotone(k: int, direction: str) -> Perm:
    if direction in ("I", "inc", "increasing"):
        return increasing(k)
    if direction in ("J", "dec", "decreasing"):
        return decreasing(k)
    raise ValueError(f"unknown direction {direction!r}")


@dataclass(frozen=True)
class ClassSpec:
    """Parameters (k1, k2, k3) of the class Av(J_k1 + I_k2 + J_k3)."""

    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        if self.k1 < 1 or self.k3 < 1 or self.k2 < 0:
            raise ValueError(f"need k1 >= 1, k2 >= 0, k3 >= 1; got {self}")

    @property
    def d(self) -> int:
        return self.k1 + self.k2 + self.k3 - 1

    def pattern(self, first: str = "J", last: str = "J") -> Perm:
        """J_k1 + I_k2 + J_k3 by default; ``first``/``last`` switch the outer
        blocks between ``"I"`` and ``"J"`` for the intermediate classes."""
        return direct_sum(monotone(self.k1, first), increasing(self.k2), monotone(self.k3, last))

    def as_list(self) -> list[int]:
        return [self.k1, self.k2, self.k3]

    @classmethod
    def parse(cls, text: str) -> "ClassSpec":
        k1, k2, k3 = (int(t) for t in text.split(","))
        return cls(k1, k2, k3)


def class_pattern(spec: ClassSpec) -> Perm:
    return spec.pattern()


def _search(values: Sequence[int], pattern: Sequence[int], anchor_first: bool) -> bool:
    """Depth-first embedding of ``pattern`` into ``values`` (distinct numbers).

    Pattern positions are matched left to right; position t must take a value
    strictly inside the interval set by the already matched positions whose
    pattern values are the nearest below and above pattern[t].
    """
    m, n = len(pattern), len(values)
    if m == 0:
        return True
    if m > n:
        return False
    below: list[int] = []
    above: list[int] = []
    for t in range(m):
        lo = hi = -1
        for s in range(t):
            if pattern[s] < pattern[t] and (lo < 0 or pattern[s] > pattern[lo]):
                lo = s
            if pattern[s] > pattern[t] and (hi < 0 or pattern[s] < pattern[hi]):
                hi = s
        below.append(lo)
        above.append(hi)

    chosen = [0] * m

    def extend(t: int, start: int) -> bool:
        lo = chosen[below[t]] if below[t] >= 0 else float("-inf")
        hi = chosen[above[t]] if above[t] >= 0 else float("inf")
        last = n - (m - t)
        for pos in range(start, last + 1):
            v = values[pos]
            if lo < v < hi:
                chosen[t] = v
                if t + 1 == m or extend(t + 1, pos + 1):
                    return True
            if anchor_first and t == 0:
                break
        return False

    return extend(0, 0)


def contains(sigma: Sequence[int], pi: Sequence[int]) -> bool:
    """True iff some subsequence of ``sigma`` is order-isomorphic to ``pi``."""
    if len(pi) > len(sigma):
        return False
    k = len(pi)
    if pi == increasing(k):
        return k == 0 or lis(sigma) >= k
    if pi == decreasing(k):
        return lds(sigma) >= k
    return _search(sigma, pi, anchor_first=False)


def contains_ending_at_last(values: Sequence[int], pi: Sequence[int]) -> bool:
    """True iff an occurrence of ``pi`` uses the last entry of ``values``."""
    return _search(values[::-1], pi[::-1], anchor_first=True)


def contains_naive(sigma: Sequence[int], pi: Sequence[int]) -> bool:
    """All-subsequences oracle."""
    target = tuple(pi)
    return any(standardize(sub) == target for sub in combinations(sigma, len(pi)))


def normalize_patterns(patterns: Iterable[Sequence[int]]) -> tuple[Perm, ...]:
    """Sort, deduplicate and drop any pattern that contains another one."""
    pats = sorted({as_perm(p) for p in patterns}, key=lambda p: (len(p), p))
    if not pats:
        raise ValueError("a pattern set needs at least one pattern")
    if any(len(p) == 0 for p in pats):
        raise ValueError("patterns must have size >= 1")
    kept: list[Perm] = []
    for p in pats:
        if not any(contains(p, q) for q in kept):
            kept.append(p)
    return tuple(kept)


def _as_pattern_set(patterns) -> tuple[Perm, ...]:
    if patterns and isinstance(patterns[0], int):
        return normalize_patterns([patterns])
    return normalize_patterns(patterns)


def avoids(sigma: Sequence[int], patterns) -> bool:
    """``patterns`` may be a single pattern or an iterable of patterns."""
    return not any(contains(sigma, p) for p in _as_pattern_set(patterns))


def enumerate_avoiders(n: int, patterns, bound: int = DEFAULT_EXHAUSTIVE_BOUND) -> Iterator[Perm]:
    """Yield Av_n(patterns) in lexicographic order by prefix-pruned backtracking."""
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds exhaustive bound {bound}")
    pats = _as_pattern_set(patterns)
    prefix: list[int] = []
    used = [False] * (n + 1)

    def grow() -> Iterator[Perm]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            prefix.append(v)
            if not any(contains_ending_at_last(prefix, p) for p in pats):
                used[v] = True
                yield from grow()
                used[v] = False
            prefix.pop()

    yield from grow()


def count_avoiders(n: int, patterns, bound: int = DEFAULT_EXHAUSTIVE_BOUND) -> int:
    return sum(1 for _ in enumerate_avoiders(n, patterns, bound))


def lis(sigma: Sequence[int]) -> int:
    """Longest increasing subsequence length (patience sorting)."""
    tops: list[int] = []
    for v in sigma:
        k = bisect_left(tops, v)
        if k == len(tops):
            tops.append(v)
        else:
            tops[k] = v
    return len(tops)


def lds(sigma: Sequence[int]) -> int:
    return lis([-v for v in sigma])
