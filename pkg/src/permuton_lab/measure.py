"""Permutation-induced permutons on the unit square and their diagnostics.

The measure of a permutation sigma of size n spreads mass 1/n uniformly
over each box [(i-1)/n, i/n] x [(sigma(i)-1)/n, sigma(i)/n].  Everything
here is closed-form floating point; the anti-diagonal permuton mu_J and the
diagonal permuton mu_I serve as references.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidDelta, InvalidRect
from .perms import Perm, as_perm

DEFAULT_GRID = 64
# step of the epsilon grid used by the one-sided check
EPS_GRID_STEP = 1e-3


@dataclass(frozen=True)
class EmpiricalPermuton:
    base: Perm
    values: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        base = as_perm(self.base)
        if not base:
            raise ValueError("an empirical permuton needs n >= 1")
        object.__setattr__(self, "base", base)
        vals = np.asarray(base, dtype=np.int64)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.base)

    @classmethod
    def of(cls, sigma: Sequence[int]) -> "EmpiricalPermuton":
        return cls(tuple(sigma))


def _measure(mu) -> EmpiricalPermuton:
    return mu if isinstance(mu, EmpiricalPermuton) else EmpiricalPermuton(tuple(mu))


@dataclass(frozen=True)
class Rect:
    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        coords = (self.x0, self.x1, self.y0, self.y1)
        if any(not (0.0 <= c <= 1.0) for c in coords):
            raise InvalidRect(f"rectangle leaves the unit square: {coords}")
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise InvalidRect(f"rectangle has negative extent: {coords}")

    @classmethod
    def unit(cls) -> "Rect":
        return cls(0.0, 1.0, 0.0, 1.0)


SIDES = ("plus", "minus", "both")


@dataclass(frozen=True)
class WRegionSpec:
    """The corner regions {x+y > 1+eps} (plus), {x+y < 1-eps} (minus) or both."""
    epsilon: float
    side: str = "both"

    def __post_init__(self):
        if not (0.0 < self.epsilon <= 1.0):
            raise ValueError(f"epsilon must lie in (0, 1], got {self.epsilon}")
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")


def _overlap(lo: float, hi: float, starts: np.ndarray, n: int) -> np.ndarray:
    # length of [lo, hi] intersected with [start/n, (start+1)/n]
    return np.clip(np.minimum(hi, (starts + 1) / n) - np.maximum(lo, starts / n), 0.0, None)


def mu_rect(mu, r: Rect) -> float:
    mu = _measure(mu)
    n = mu.n
    a = max(0, math.floor(r.x0 * n) - 1)
    b = min(n, math.ceil(r.x1 * n) + 1)
    cols = np.arange(a, b)
    ox = _overlap(r.x0, r.x1, cols, n)
    oy = _overlap(r.y0, r.y1, mu.values[a:b] - 1, n)
    return float(n * np.sum(ox * oy))


def mu_J_rect(r: Rect) -> float:
    return max(0.0, min(r.x1, 1.0 - r.y0) - max(r.x0, 1.0 - r.y1))


def mu_I_rect(r: Rect) -> float:
    return max(0.0, min(r.x1, r.y1) - max(r.x0, r.y0))


def _area_above(s: np.ndarray) -> np.ndarray:
    """Area of the unit square [0,1]^2 above the line x + y = s."""
    s = np.clip(s, 0.0, 2.0)
    return np.where(s <= 1.0, 1.0 - s * s / 2.0, (2.0 - s) ** 2 / 2.0)


def _corner_sums(mu: EmpiricalPermuton) -> np.ndarray:
    # lower-left corner of box i in n-units is (i-1, sigma(i)-1)
    return np.arange(mu.n, dtype=np.float64) + (mu.values - 1)


def w_plus(mu, epsilon: float) -> float:
    mu = _measure(mu)
    n = mu.n
    s = (1.0 + epsilon) * n - _corner_sums(mu)
    return float(np.sum(_area_above(s)) / n)


def w_minus(mu, epsilon: float) -> float:
    mu = _measure(mu)
    n = mu.n
    s = (1.0 - epsilon) * n - _corner_sums(mu)
    # area below x + y = s equals the area above x + y = 2 - s
    return float(np.sum(_area_above(2.0 - s)) / n)


def mu_w(mu, spec: WRegionSpec) -> float:
    if spec.side == "plus":
        return w_plus(mu, spec.epsilon)
    if spec.side == "minus":
        return w_minus(mu, spec.epsilon)
    return w_plus(mu, spec.epsilon) + w_minus(mu, spec.epsilon)


def grid_cdf(mu, m: int) -> np.ndarray:
    """F[a, b] = mu([0, a/m] x [0, b/m]) for 0 <= a, b <= m."""
    mu = _measure(mu)
    n = mu.n
    ticks = np.arange(m + 1) / m
    cols = np.arange(n)
    ox = np.clip(np.minimum(ticks[:, None], (cols + 1) / n) - cols / n, 0.0, None)
    rows = mu.values - 1
    oy = np.clip(np.minimum(ticks[:, None], (rows + 1) / n) - rows / n, 0.0, None)
    return n * (ox @ oy.T)


def _rect_sup_from_diff(D: np.ndarray) -> float:
    # rectangle [a,b]x[c,e] has mass D[b,e]-D[a,e]-D[b,c]+D[a,c]; for fixed
    # (c,e) the best (a,b) is the spread of the column difference
    diffs = D[:, None, :] - D[:, :, None]
    return float(np.max(np.ptp(diffs, axis=0)))


def rect_sup_distance(mu, m: int = DEFAULT_GRID) -> float:
    """max |mu(R) - mu_J(R)| over rectangles with corners on the (m+1)^2 grid."""
    if m < 2:
        raise ValueError("grid needs m >= 2")
    ticks = np.arange(m + 1) / m
    FJ = np.clip(ticks[:, None] + ticks[None, :] - 1.0, 0.0, None)
    return _rect_sup_from_diff(grid_cdf(mu, m) - FJ)


def rect_sup_distance_naive(mu, m: int) -> float:
    """Direct loop over all grid rectangles; an oracle for small m."""
    ticks = [k / m for k in range(m + 1)]
    best = 0.0
    for a in range(m + 1):
        for b in range(a, m + 1):
            for c in range(m + 1):
                for e in range(c, m + 1):
                    r = Rect(ticks[a], ticks[b], ticks[c], ticks[e])
                    best = max(best, abs(mu_rect(mu, r) - mu_J_rect(r)))
    return best


def oneside_epsilon(delta: float, log_base: str = "e") -> float:
    """Smallest value on the 0.001 grid strictly above 2 / log(1/delta)."""
    threshold = 2.0 / _log_inv(delta, log_base)
    k = math.floor(threshold / EPS_GRID_STEP + 1e-9) + 1
    return round(k * EPS_GRID_STEP, 12)


def _log_inv(delta: float, log_base: str) -> float:
    if log_base == "e":
        return math.log(1.0 / delta)
    if log_base == "2":
        return math.log2(1.0 / delta)
    raise ValueError("log_base must be 'e' or '2'")


@dataclass
class StripDiagnostics:
    """Masses of the proof's strips for eps = 1/m, i = 0 .. m-2."""
    m: int
    h_minus: list[float]
    v_plus: list[float]
    bounds: list[float]          # 2^(i+1) delta

    @property
    def chain_holds(self) -> bool:
        return all(h < b for h, b in zip(self.h_minus, self.bounds))


@dataclass
class OneSideReport:
    delta: float
    epsilon: float
    log_base: str
    w_plus_delta: float
    w_minus_eps: float
    w_both_2eps: float
    strips: StripDiagnostics | None = None

    @property
    def hypothesis(self) -> bool:
        return self.w_plus_delta < self.delta

    @property
    def minus_ok(self) -> bool:
        return self.w_minus_eps < self.epsilon

    @property
    def both_ok(self) -> bool:
        return self.w_both_2eps < 2 * self.epsilon

    @property
    def violated(self) -> bool:
        return self.hypothesis and not (self.minus_ok and self.both_ok)


def strip_diagnostics(mu, delta: float, epsilon: float) -> StripDiagnostics:
    m = max(1, math.floor(1.0 / epsilon))
    e = 1.0 / m
    h_minus, v_plus, bounds = [], [], []
    for i in range(m - 1):
        top = min(1.0, (i + 1) * e + delta)
        h_minus.append(mu_rect(mu, Rect(0.0, max(0.0, 1 - (i + 1) * e), i * e, top)))
        v_plus.append(mu_rect(mu, Rect(max(0.0, 1 - (i + 1) * e), 1 - i * e, top, 1.0)))
        bounds.append(2.0 ** (i + 1) * delta)
    return StripDiagnostics(m, h_minus, v_plus, bounds)


def oneside_check(mu, delta: float, epsilon: float | None = None, log_base: str = "e",
                  strips: bool = False) -> OneSideReport:
    """Evaluate the hypothesis mu(W+_delta) < delta and both conclusions."""
    if not (0.0 < delta < 0.5):
        raise InvalidDelta(f"delta must lie in (0, 0.5), got {delta}")
    mu = _measure(mu)
    eps = oneside_epsilon(delta, log_base) if epsilon is None else float(epsilon)
    report = OneSideReport(
        delta=delta,
        epsilon=eps,
        log_base=log_base,
        w_plus_delta=w_plus(mu, delta),
        w_minus_eps=w_minus(mu, eps),
        w_both_2eps=mu_w(mu, WRegionSpec(min(1.0, 2 * eps), "both")),
    )
    if strips:
        report.strips = strip_diagnostics(mu, delta, eps)
    return report


def epsilon_grid(step: float = 0.05) -> list[float]:
    k = round(1.0 / step)
    return [round(j * step, 12) for j in range(1, k + 1)]


def weak_convergence_bound(mu, eps_grid: Sequence[float], m: int = DEFAULT_GRID) -> float | None:
    """3 eps + 2/m for the smallest eps such that every grid value >= eps
    has mu(W_eps) < eps; None when even the largest fails."""
    passing = None
    for eps in sorted(eps_grid, reverse=True):
        if mu_w(mu, WRegionSpec(eps, "both")) < eps:
            passing = eps
        else:
            break
    if passing is None:
        return None
    return 3 * passing + 2.0 / m
