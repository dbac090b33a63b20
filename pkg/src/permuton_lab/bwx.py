"""The coloring procedure, frozen regions and the induced bijection
Av(I_k + tau) <-> Av(J_k + tau), plus the four-stage pipeline
sigma -> rho -> rho^rc -> pi^rc -> pi.

Box ``(i, j)`` is column i, row j (1-based).  It is blue when some
occurrence of tau uses only points strictly to its north-east; blue boxes
are SW-closed, so a coloring is stored as one blue height per column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import InnerBijectionFailure, NotATraversal, PreconditionViolated
from .growth import forward_growth, inner_bijection
from .perms import (ClassSpec, Perm, contains, decreasing, direct_sum, increasing, lis,
                    reverse_complement, standardize)
from .shapes import DEFAULT_BOX_BOUND, FerrersShape, Traversal, format_shape, traversal_contains


# -- coloring -----------------------------------------------------------------

def _monotone_split(tau: Sequence[int]) -> tuple[int, int] | None:
    """Return (a, b) when tau = I_a + J_b, else None."""
    m = len(tau)
    for a in range(m + 1):
        if tuple(tau) == direct_sum(increasing(a), decreasing(m - a)):
            return a, m - a
    return None


def _decreasing_heights(pi: np.ndarray, b: int) -> np.ndarray:
    """M[i] (i = 0..n) = max over J_b occurrences in columns > i of their
    lowest value, 0 if none."""
    n = len(pi)
    M = np.zeros(n + 1, dtype=np.int64)
    if b == 0:
        M[:] = n + 1
        return M
    # start[p]: latest first index of a decreasing chain of length t ending at p
    start = np.arange(1, n + 1, dtype=np.int64)
    for _ in range(b - 1):
        nxt = np.zeros(n, dtype=np.int64)
        for p in range(n):
            mask = pi[:p] > pi[p]
            if mask.any():
                nxt[p] = start[:p][mask].max()
        start = nxt
    best = np.zeros(n + 2, dtype=np.int64)
    np.maximum.at(best, start, pi)
    best[0] = 0
    # M[i] = max best[s] for s > i
    suffix = np.maximum.accumulate(best[::-1])[::-1]
    M[:] = suffix[1:n + 2]
    return M


def _sum_heights(pi: np.ndarray, a: int, b: int) -> np.ndarray:
    """Coloring heights for tau = I_a + J_b."""
    n = len(pi)
    Mj = _decreasing_heights(pi, b)
    if a == 0:
        return Mj
    # flag[p]: a J_b occurrence lies strictly NE of point p
    flag = pi < Mj[1:]
    for _ in range(a - 1):
        vals = np.where(flag, pi, 0)
        after = np.zeros(n, dtype=np.int64)
        after[:-1] = np.maximum.accumulate(vals[::-1])[::-1][1:]
        flag = pi < after
    vals = np.where(flag, pi, 0)
    M = np.zeros(n + 1, dtype=np.int64)
    M[:n] = np.maximum.accumulate(vals[::-1])[::-1]
    return M


def _generic_heights(pi: Sequence[int], tau: Sequence[int]) -> np.ndarray:
    """Staircase walk: M is nonincreasing in i, so O(n) containment tests."""
    n = len(pi)
    M = np.zeros(n + 1, dtype=np.int64)
    j = 0
    for i in range(n - 1, -1, -1):
        while j < n:
            sub = [v for v in pi[i:] if v >= j + 1]
            if contains(sub, tau):
                j += 1
            else:
                break
        M[i] = j
    return M


def occurrence_heights(pi: Sequence[int], tau: Sequence[int]) -> np.ndarray:
    """M[i] for i = 0..n: the largest lowest-value of a tau occurrence in
    columns > i (0 if none; n+1 for empty tau)."""
    split = _monotone_split(tau)
    if split is not None:
        return _sum_heights(np.asarray(pi, dtype=np.int64), *split)
    return _generic_heights(pi, tau)


@dataclass(frozen=True)
class Coloring:
    n: int
    tau: Perm
    heights: tuple[int, ...]   # number of blue boxes in column i = 1..n

    def is_blue(self, i: int, j: int) -> bool:
        return 1 <= i <= self.n and 1 <= j <= self.heights[i - 1]

    @property
    def blue(self) -> set[tuple[int, int]]:
        return {(i, j) for i, h in enumerate(self.heights, 1) for j in range(1, h + 1)}

    def frozen(self) -> set[tuple[int, int]]:
        return {(i, j) for i in range(1, self.n + 1) for j in range(self.heights[i - 1] + 1, self.n + 1)}


def color_boxes(pi: Sequence[int], tau: Sequence[int]) -> Coloring:
    n = len(pi)
    M = occurrence_heights(pi, tau)
    heights = tuple(int(min(max(M[i] - 1, 0), n)) for i in range(1, n + 1))
    return Coloring(n, tuple(tau), heights)


def color_boxes_naive(pi: Sequence[int], tau: Sequence[int]) -> set[tuple[int, int]]:
    """Blue set straight from the definition (exponential; tests only)."""
    n, m = len(pi), len(tau)
    occ = [idx for idx in combinations(range(1, n + 1), m)
           if standardize([pi[i - 1] for i in idx]) == tuple(tau)]
    blue = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if m == 0 or any(idx[0] > i and min(pi[t - 1] for t in idx) > j for idx in occ):
                blue.add((i, j))
    return blue


def frozen_region(pi: Sequence[int], tau: Sequence[int]) -> set[tuple[int, int]]:
    return color_boxes(pi, tau).frozen()


# -- lambda extraction --------------------------------------------------------

@dataclass(frozen=True)
class LambdaExtraction:
    shape: FerrersShape
    traversal: Traversal
    row_map: tuple[int, ...]   # lambda row r -> original row row_map[r-1]
    col_map: tuple[int, ...]   # lambda column c -> original column col_map[c-1]
    coloring: Coloring


def extract_lambda(pi: Sequence[int], tau: Sequence[int], coloring: Coloring | None = None) -> LambdaExtraction:
    """Delete white boxes and the rows/columns of white points; the blue
    points then form a traversal of the remaining Ferrers shape."""
    col = coloring or color_boxes(pi, tau)
    hts = col.heights
    blue_cols = tuple(i for i, v in enumerate(pi, 1) if v <= hts[i - 1])
    blue_rows = tuple(sorted(pi[i - 1] for i in blue_cols))
    col_index = {c: k for k, c in enumerate(blue_cols, 1)}
    # heights are nonincreasing in the column, so each row length is a prefix count
    neg = -np.array([hts[c - 1] for c in blue_cols], dtype=np.int64)
    lengths = [int(v) for v in np.searchsorted(neg, -np.array(blue_rows, dtype=np.int64), side="right")]
    try:
        shape = FerrersShape(tuple(lengths))
    except ValueError as exc:
        raise NotATraversal(f"blue region is not a Ferrers shape: {exc}") from exc
    inv = {v: i for i, v in enumerate(pi, 1)}
    row_values = tuple(col_index[inv[r]] for r in blue_rows)
    trav = Traversal(shape, row_values)
    return LambdaExtraction(shape, trav, blue_rows, blue_cols, col)


# -- induced bijection --------------------------------------------------------

def _direction_patterns(k: int, direction: str) -> tuple[Perm, Perm]:
    if direction == "I->J":
        return increasing(k), decreasing(k)
    if direction == "J->I":
        return decreasing(k), increasing(k)
    raise ValueError(f"direction must be 'I->J' or 'J->I', got {direction!r}")


def traversal_avoids(t: Traversal, pattern: Perm) -> bool:
    """Avoidance in a traversal; monotone patterns on big shapes go through
    the growth labels (longest chains), everything else by search."""
    k = len(pattern)
    if t.shape.size > DEFAULT_BOX_BOUND and pattern in (increasing(k), decreasing(k)):
        border = forward_growth(t)
        if pattern == increasing(k):
            return max((p[0] for p in border.labels if p), default=0) < k
        return max((len(p) for p in border.labels), default=0) < k
    return not traversal_contains(t, pattern)


def avoids_monotone_sum(pi: Sequence[int], k: int, kind: str, tau: Sequence[int]) -> bool:
    """pi avoids M_k + tau (M = I or J) iff its blue traversal avoids M_k."""
    if k == 0:
        return not contains(pi, tau)
    ext = extract_lambda(pi, tau)
    pattern = increasing(k) if kind == "I" else decreasing(k)
    return traversal_avoids(ext.traversal, pattern)


@dataclass
class BWXStep:
    """Record of one application of the induced bijection."""

    source: Perm
    image: Perm
    k: int
    tau: Perm
    direction: str
    extraction: LambdaExtraction | None
    image_traversal: Traversal | None

    def to_json(self) -> dict:
        ext = self.extraction
        return {
            "source": ",".join(map(str, self.source)),
            "image": ",".join(map(str, self.image)),
            "k": self.k,
            "tau": ",".join(map(str, self.tau)),
            "direction": self.direction,
            "blue": sorted(f"({i},{j})" for i, j in ext.coloring.blue) if ext else [],
            "lambda": format_shape(ext.shape) if ext else "",
        }


def bwx_step(pi: Sequence[int], k: int, tau: Sequence[int], direction: str = "I->J",
             strategy: str = "auto", check: bool = True) -> BWXStep:
    """Replace the blue traversal of ``pi`` by its inner-bijection image.

    Points in white boxes never move.  With ``check`` the input/output class
    memberships, the fixed-point property and the stability of lambda under
    recoloring are all verified.
    """
    pi = tuple(pi)
    tau = tuple(tau)
    src, dst = _direction_patterns(k, direction)
    if k <= 1:
        # I_1 = J_1 (and I_0 = J_0): the map is the identity
        return BWXStep(pi, pi, k, tau, direction, None, None)
    ext = extract_lambda(pi, tau)
    if check and not traversal_avoids(ext.traversal, src):
        raise PreconditionViolated(
            f"{','.join(map(str, pi))} contains {direction[0]}_{k} + {','.join(map(str, tau))}")
    if ext.shape.size == 0:
        return BWXStep(pi, pi, k, tau, direction, ext, ext.traversal)
    image_t = inner_bijection(ext.traversal, k, direction, strategy)
    if image_t.shape != ext.shape:
        raise InnerBijectionFailure(f"inner bijection changed the shape {ext.shape.rows}")
    out = list(pi)
    for r_lam, c_lam in enumerate(image_t.row_values, 1):
        out[ext.col_map[c_lam - 1] - 1] = ext.row_map[r_lam - 1]
    image = tuple(out)
    if check:
        if not traversal_avoids(image_t, dst):
            raise InnerBijectionFailure(
                f"image traversal of {','.join(map(str, pi))} contains {direction[-1]}_{k}")
        hts = ext.coloring.heights
        for i in range(1, len(pi) + 1):
            frozen_before = pi[i - 1] > hts[i - 1]
            frozen_after = image[i - 1] > hts[i - 1]
            if (frozen_before or frozen_after) and pi[i - 1] != image[i - 1]:
                raise InnerBijectionFailure(f"frozen point in column {i} moved")
        again = color_boxes(image, tau)
        if again.heights != ext.coloring.heights:
            raise InnerBijectionFailure(
                f"lambda not stable: recoloring {','.join(map(str, image))} changed the blue region")
    return BWXStep(pi, image, k, tau, direction, ext, image_t)


def bwx_map(pi: Sequence[int], k: int, tau: Sequence[int], direction: str = "I->J",
            strategy: str = "auto", check: bool = True) -> Perm:
    """Av(I_k + tau) -> Av(J_k + tau) for ``direction="I->J"``, or back."""
    return bwx_step(pi, k, tau, direction, strategy, check).image


# -- pipeline -----------------------------------------------------------------

@dataclass
class PipelineTrace:
    spec: ClassSpec
    sigma: Perm
    rho: Perm
    rho_rc: Perm
    pi_rc: Perm
    pi: Perm
    steps: list[BWXStep] = field(default_factory=list)

    def to_json(self) -> str:
        fmt = lambda p: ",".join(map(str, p))  # noqa: E731
        return json.dumps({
            "spec": self.spec.as_list(),
            "sigma": fmt(self.sigma), "rho": fmt(self.rho), "rho_rc": fmt(self.rho_rc),
            "pi_rc": fmt(self.pi_rc), "pi": fmt(self.pi),
            "steps": [s.to_json() for s in self.steps],
        })


def stage_patterns(spec: ClassSpec) -> dict[str, Perm]:
    """The class each pipeline stage must avoid."""
    k1, k2, k3 = spec.k1, spec.k2, spec.k3
    I, J = increasing, decreasing
    return {
        "sigma": I(k1 + k2 + k3),
        "rho": direct_sum(J(k1), I(k2), I(k3)),
        "rho_rc": direct_sum(I(k3), I(k2), J(k1)),
        "pi_rc": direct_sum(J(k3), I(k2), J(k1)),
        "pi": direct_sum(J(k1), I(k2), J(k3)),
    }


def pipeline(sigma: Sequence[int], spec: ClassSpec, strategy: str = "auto", check: bool = True) -> PipelineTrace:
    sigma = tuple(sigma)
    k1, k2, k3 = spec.k1, spec.k2, spec.k3
    if lis(sigma) > spec.d:
        raise PreconditionViolated(f"input contains I_{spec.d + 1}")
    step1 = bwx_step(sigma, k1, increasing(k2 + k3), "I->J", strategy, check)
    rho = step1.image
    rho_rc = reverse_complement(rho)
    step2 = bwx_step(rho_rc, k3, direct_sum(increasing(k2), decreasing(k1)), "I->J", strategy, check)
    pi_rc = step2.image
    pi = reverse_complement(pi_rc)
    trace = PipelineTrace(spec, sigma, rho, rho_rc, pi_rc, pi, [step1, step2])
    if check and len(sigma) <= 10:
        pats = stage_patterns(spec)
        for name in ("rho", "rho_rc", "pi_rc", "pi"):
            if contains(getattr(trace, name), pats[name]):
                raise InnerBijectionFailure(f"stage {name} is not in Av({pats[name]})")
    return trace
