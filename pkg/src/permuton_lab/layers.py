"""Layers of iterated left-to-right minima, their scaled paths, the
finite-n goodness conditions, increasing witnesses and SW regions.

Indices are 1-based throughout, matching one-line notation.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import LayerOverflow, PreconditionViolated
from .perms import Perm, lis


@dataclass(frozen=True)
class LayerPartition:
    n: int
    layers: tuple[tuple[int, ...], ...]   # A^1, A^2, ... as sorted index tuples
    layer_of: tuple[int, ...]             # layer_of[i-1] = l with i in A^l

    @property
    def d(self) -> int:
        return len(self.layers)

    def layer(self, l: int) -> tuple[int, ...]:
        """A^l, empty beyond the last nonempty layer."""
        return self.layers[l - 1] if 1 <= l <= len(self.layers) else ()


def layer_partition(sigma: Sequence[int]) -> LayerPartition:
    """A^1 = left-to-right minima; A^l = left-to-right minima of what is left.

    An entry joins the first layer whose current minimum exceeds it.  Layer
    minima increase with the layer index, so the search is a bisection.
    """
    tops: list[int] = []
    layers: list[list[int]] = []
    layer_of = []
    for i, v in enumerate(sigma, 1):
        l = bisect_left(tops, v)
        if l == len(tops):
            tops.append(v)
            layers.append([i])
        else:
            tops[l] = v
            layers[l].append(i)
        layer_of.append(l + 1)
    return LayerPartition(len(sigma), tuple(tuple(a) for a in layers), tuple(layer_of))


def layer_partition_naive(sigma: Sequence[int]) -> LayerPartition:
    """The recursive definition applied literally."""
    n = len(sigma)
    remaining = list(range(1, n + 1))
    layers = []
    while remaining:
        layer, rest, low = [], [], math.inf
        for i in remaining:
            if sigma[i - 1] < low:
                low = sigma[i - 1]
                layer.append(i)
            else:
                rest.append(i)
        layers.append(tuple(layer))
        remaining = rest
    layer_of = [0] * n
    for l, layer in enumerate(layers, 1):
        for i in layer:
            layer_of[i - 1] = l
    return LayerPartition(n, tuple(layers), tuple(layer_of))


def predecessor(sigma: Sequence[int], partition: LayerPartition, l: int, i: int) -> int:
    """j^l(i) = max{j < i : j in A^l}, or 0 when there is none."""
    if l < 1:
        raise ValueError("layers are numbered from 1")
    layer = partition.layer(l)
    k = bisect_left(layer, i)
    return layer[k - 1] if k else 0


@dataclass(frozen=True)
class PathFamily:
    n: int
    d: int
    paths: tuple[np.ndarray, ...]   # one (k, 2) array of (x, y) per layer

    def to_json(self) -> str:
        return json.dumps([[[float(x), float(y)] for x, y in p] for p in self.paths])


def paths(sigma: Sequence[int], d: int) -> PathFamily:
    """Polylines through (0,0), the scaled layer points and (1,0)."""
    n = len(sigma)
    if lis(sigma) > d:
        raise LayerOverflow(f"lis={lis(sigma)} exceeds d={d}")
    part = layer_partition(sigma)
    vals = np.asarray(sigma, dtype=np.float64)
    scale = math.sqrt(2 * d * n) if n else 1.0
    out = []
    for l in range(1, d + 1):
        idx = np.asarray(part.layer(l), dtype=np.int64)
        xs = idx / (n + 1)
        ys = (vals[idx - 1] + idx - (n + 1)) / scale
        pts = np.column_stack([np.concatenate([[0.0], xs, [1.0]]), np.concatenate([[0.0], ys, [0.0]])])
        out.append(pts)
    return PathFamily(n, d, tuple(out))


# -- goodness -----------------------------------------------------------------

CONDITIONS = (1, 2, 3, 4, 5)


@dataclass
class GoodnessReport:
    n: int
    d: int
    epsilon: float
    condition_flags: tuple[bool, bool, bool, bool, bool]
    witnesses: dict[int, tuple] = field(default_factory=dict)

    @property
    def all_good(self) -> bool:
        return all(self.condition_flags)


def window(n: int, epsilon: float) -> tuple[int, int]:
    """Integer indices i with eps*n <= i <= (1-eps)*n, as a closed range."""
    lo = math.ceil(epsilon * n - 1e-9)
    hi = math.floor((1 - epsilon) * n + 1e-9)
    return max(lo, 1), min(hi, n)


def _pair_mask(idx: np.ndarray, gap: float) -> tuple[np.ndarray, np.ndarray]:
    diff = idx[None, :] - idx[:, None]
    return diff, diff > gap


def goodness(sigma: Sequence[int], epsilon: float, d: int) -> GoodnessReport:
    """The five conditions checked literally at finite n; each failed
    condition records its first violating instance."""
    n = len(sigma)
    if not (0.0 < epsilon < 0.5):
        raise PreconditionViolated(f"epsilon must lie in (0, 1/2), got {epsilon}")
    if lis(sigma) > d:
        raise PreconditionViolated(f"sigma contains I_{d + 1}")
    part = layer_partition(sigma)
    vals = np.asarray(sigma, dtype=np.int64)
    pos = np.arange(1, n + 1, dtype=np.int64)
    lo, hi = window(n, epsilon)
    win = np.arange(lo, hi + 1, dtype=np.int64)
    witnesses: dict[int, tuple] = {}

    # 1: every point within n^.6 of the anti-diagonal
    dev = np.abs(vals + pos - n - 1)
    bad = np.nonzero(dev >= n ** 0.6)[0]
    if bad.size:
        i = int(bad[0]) + 1
        witnesses[1] = (i, int(dev[i - 1]))

    # 2: layer densities over window intervals longer than n^.1
    if win.size:
        diff, mask = _pair_mask(win, n ** 0.1)
        span = diff.astype(np.float64)
        for l in range(1, d + 1):
            if 2 in witnesses:
                break
            member = np.zeros(n + 1, dtype=np.int64)
            member[list(part.layer(l))] = 1
            prefix = np.cumsum(member)
            # |A^l cap [i, j]| = prefix[j] - prefix[i-1]
            counts = prefix[win][None, :] - prefix[win - 1][:, None]
            err = np.abs(counts - span / d)
            viol = mask & (err >= np.abs(span) ** 0.6)
            if viol.any():
                a, b = np.argwhere(viol)[0]
                witnesses[2] = (l, int(win[a]), int(win[b]), int(counts[a, b]))

    # 3: same-layer slopes in the window
    for l in range(1, d + 1):
        if 3 in witnesses:
            break
        idx = np.asarray([i for i in part.layer(l) if lo <= i <= hi], dtype=np.int64)
        if idx.size < 2:
            continue
        diff, mask = _pair_mask(idx, n ** 0.1)
        h = vals[idx - 1] + idx
        err = np.abs(h[:, None] - h[None, :])
        viol = mask & (err >= np.abs(diff).astype(np.float64) ** 0.6)
        if viol.any():
            a, b = np.argwhere(viol)[0]
            witnesses[3] = (l, int(idx[a]), int(idx[b]))

    # 4: every layer has a recent entry before each window index
    for l in range(1, d + 1):
        if 4 in witnesses or not win.size:
            break
        layer = np.asarray(part.layer(l), dtype=np.int64)
        k = np.searchsorted(layer, win, side="left")
        pred = np.where(k > 0, layer[np.maximum(k - 1, 0)], 0)
        viol = np.nonzero(win - pred >= n ** 0.2)[0]
        if viol.size:
            i = int(win[viol[0]])
            witnesses[4] = (l, i, int(pred[viol[0]]))

    # 5: the next layer's predecessor sits well above; a missing predecessor fails
    for l in range(1, d):
        if 5 in witnesses:
            break
        idx = np.asarray([i for i in part.layer(l) if lo <= i <= hi], dtype=np.int64)
        if not idx.size:
            continue
        nxt = np.asarray(part.layer(l + 1), dtype=np.int64)
        k = np.searchsorted(nxt, idx, side="left")
        has = k > 0
        pred = np.where(has, nxt[np.maximum(k - 1, 0)] if nxt.size else 0, 0)
        gap = np.where(has, vals[np.maximum(pred, 1) - 1] - vals[idx - 1], -n)
        viol = np.nonzero(~has | (gap <= n ** 0.4))[0]
        if viol.size:
            a = viol[0]
            witnesses[5] = (l, int(idx[a]), int(pred[a]))

    flags = tuple(c not in witnesses for c in CONDITIONS)
    return GoodnessReport(n, d, epsilon, flags, witnesses)


# -- increasing witnesses -----------------------------------------------------

def _greedy_witness(sigma, part: LayerPartition, l: int, i: int, d: int) -> list[int] | None:
    chain = [i]
    cur = i
    for k in range(l - 1, 0, -1):
        # latest earlier entry of A^k below the current value
        cands = [j for j in part.layer(k) if j < cur and sigma[j - 1] < sigma[cur - 1]]
        if not cands:
            return None
        cur = cands[-1]
        chain.insert(0, cur)
    cur = i
    for k in range(l + 1, d + 1):
        # earliest later entry of A^k above the current value
        cands = [j for j in part.layer(k) if j > cur and sigma[j - 1] > sigma[cur - 1]]
        if not cands:
            return None
        cur = cands[0]
        chain.append(cur)
    return chain


def _exact_witness(sigma, part: LayerPartition, l: int, i: int, d: int) -> list[int] | None:
    """Backward reachability per layer.  Inside a layer sigma decreases, so the
    admissible successors of j form one contiguous run of the next layer."""
    def run(layer: tuple[int, ...], j: int, above: bool) -> range:
        # positions p in layer with layer[p] > j and sigma above/below sigma(j)
        if above:
            start = bisect_right(layer, j)
            vals = [-sigma[t - 1] for t in layer]
            stop = bisect_left(vals, -sigma[j - 1], lo=start)
            return range(start, stop)
        stop = bisect_left(layer, j)
        vals = [-sigma[t - 1] for t in layer]
        start = bisect_right(vals, -sigma[j - 1], hi=stop)
        return range(start, stop)

    # upward: ok[k][p] says A^k[p] extends to layer d
    ok: dict[int, list[bool]] = {d: [True] * len(part.layer(d))}
    for k in range(d - 1, l - 1, -1):
        nxt = part.layer(k + 1)
        ok[k] = [any(ok[k + 1][q] for q in run(nxt, j, True)) for j in part.layer(k)]
    # downward: low[k][p] says A^k[p] is reached from layer 1
    low: dict[int, list[bool]] = {1: [True] * len(part.layer(1))}
    for k in range(2, l + 1):
        prv = part.layer(k - 1)
        low[k] = [any(low[k - 1][q] for q in run(prv, j, False)) for j in part.layer(k)]
    layer_l = part.layer(l)
    p = layer_l.index(i)
    if not (ok[l][p] and low[l][p]):
        return None
    chain = [i]
    cur, cp = i, p
    for k in range(l + 1, d + 1):
        layer = part.layer(k)
        cp = next(q for q in run(layer, cur, True) if ok[k][q])
        cur = layer[cp]
        chain.append(cur)
    cur = i
    for k in range(l - 1, 0, -1):
        layer = part.layer(k)
        cp = next(q for q in run(layer, cur, False) if low[k][q])
        cur = layer[cp]
        chain.insert(0, cur)
    return chain


def sequence_witness(sigma: Sequence[int], partition: LayerPartition, l: int, i: int,
                     d: int | None = None) -> list[int] | None:
    """Indices i_1 < ... < i_d with i_k in A^k, i_l = i and sigma increasing
    along them; None when no such sequence exists."""
    d = partition.d if d is None else d
    if i not in partition.layer(l):
        raise ValueError(f"index {i} is not in layer {l}")
    return _greedy_witness(sigma, partition, l, i, d) or _exact_witness(sigma, partition, l, i, d)


def is_witness(sigma: Sequence[int], partition: LayerPartition, chain: Sequence[int]) -> bool:
    return (all(partition.layer_of[j - 1] == k for k, j in enumerate(chain, 1))
            and all(a < b and sigma[a - 1] < sigma[b - 1] for a, b in zip(chain, chain[1:])))


# -- SW regions ---------------------------------------------------------------

@dataclass(frozen=True)
class SWRegion:
    """Union of the rectangles [0, i) x [0, sigma(i)) over i in C, stored as
    column heights.  Box (a, b) is the unit box with lower-left corner (a, b)."""
    n: int
    heights: tuple[int, ...]   # heights[a] = number of boxes in column a

    def contains_box(self, a: int, b: int) -> bool:
        return 0 <= a < self.n and 0 <= b < self.heights[a]

    def contains_point(self, c: int, e: int) -> bool:
        return self.contains_box(c, e)

    @property
    def size(self) -> int:
        return sum(self.heights)

    def is_young_diagram(self) -> bool:
        return all(x >= y for x, y in zip(self.heights, self.heights[1:]))


def sw_region(C: Iterable[int], sigma: Sequence[int]) -> SWRegion:
    n = len(sigma)
    best = [0] * (n + 1)
    for i in C:
        best[i - 1] = max(best[i - 1], sigma[i - 1])
    heights = [0] * n
    run = 0
    for a in range(n - 1, -1, -1):
        run = max(run, best[a])
        heights[a] = run
    return SWRegion(n, tuple(heights))
