"""Named property checks grouped into suites.

Every check returns a list of failure records (dicts); an empty list means
the property held on every instance tried.  The registry is compared with
``invariants.txt`` by the test suite so no property goes unchecked.
"""

from __future__ import annotations

import csv
import inspect
import io
import math
import random
import tempfile
import time
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations
from pathlib import Path
from typing import Callable

from .bwx import bwx_step, color_boxes, color_boxes_naive, pipeline, stage_patterns
from .growth import (border_conjugate_bijection, chain_lengths, conjugate, enumeration_bijection,
                     forward_growth, inverse_rsk, rsk)
from .layers import goodness, is_witness, layer_partition, layer_partition_naive, sw_region
from .measure import (Rect, WRegionSpec, epsilon_grid, mu_rect, mu_w, oneside_check, rect_sup_distance,
                      weak_convergence_bound, w_plus)
from .perms import (ClassSpec, avoids, complement, contains, contains_naive, count_avoiders, decreasing,
                    enumerate_avoiders, increasing, lis, reverse, reverse_complement)
from .sampling import make_rng, sample_av_increasing, shape_distribution
from .shapes import (FerrersShape, enumerate_traversals, partitions_up_to, shape_wilf_classes,
                     square_traversal, traversal_contains)

Failure = dict
Check = Callable[..., list[Failure]]

SHAPE_WILF_CLASSES = [[(1, 3, 2), (2, 1, 3)], [(1, 2, 3), (2, 3, 1), (3, 2, 1)], [(3, 1, 2)]]


def _perms(n: int):
    return permutations(range(1, n + 1))


def _patterns(max_size: int):
    for m in range(1, max_size + 1):
        yield from _perms(m)


# -- perm-core ----------------------------------------------------------------

def check_contains_oracle(max_n: int = 7, max_pattern: int = 4) -> list[Failure]:
    out = []
    pats = list(_patterns(max_pattern))
    for n in range(max_n + 1):
        for s in _perms(n):
            for p in pats:
                if contains(s, p) != contains_naive(s, p):
                    out.append({"sigma": s, "pattern": p})
    return out


def check_lis_avoidance(max_n: int = 8) -> list[Failure]:
    out = []
    for n in range(max_n + 1):
        for s in _perms(n):
            L = lis(s)
            for d in range(1, n + 1):
                if avoids(s, increasing(d + 1)) != (L <= d):
                    out.append({"sigma": s, "d": d})
    return out


def check_symmetries(max_n: int = 7, max_pattern: int = 4) -> list[Failure]:
    out = []
    pats = list(_patterns(max_pattern))
    for n in range(max_n + 1):
        for s in _perms(n):
            for f in (reverse, complement, reverse_complement):
                if f(f(s)) != s:
                    out.append({"sigma": s, "map": f.__name__})
            rc = reverse_complement(s)
            for p in pats:
                if contains(s, p) != contains(rc, reverse_complement(p)):
                    out.append({"sigma": s, "pattern": p})
    return out


def check_wilf_s3(max_n: int = 9) -> list[Failure]:
    out = []
    for n in range(1, max_n + 1):
        counts = {p: count_avoiders(n, p) for p in _perms(3)}
        if len(set(counts.values())) != 1:
            out.append({"n": n, "counts": counts})
    return out


# -- shape-traversal ----------------------------------------------------------

def check_square_containment(max_n: int = 6, max_pattern: int = 4) -> list[Failure]:
    out = []
    pats = list(_patterns(max_pattern))
    for n in range(1, max_n + 1):
        for s in _perms(n):
            t = square_traversal(s)
            for p in pats:
                if traversal_contains(t, p) != contains(s, p):
                    out.append({"sigma": s, "pattern": p})
    return out


def check_count_order_independent(max_boxes: int = 12, seed: int = 0) -> list[Failure]:
    out = []
    rnd = random.Random(seed)
    for shape in partitions_up_to(max_boxes):
        if not shape.admits_traversal():
            continue
        ts = list(enumerate_traversals(shape))
        shuffled = ts[:]
        rnd.shuffle(shuffled)
        for p in _perms(3):
            a = sum(not traversal_contains(t, p) for t in ts)
            b = sum(not traversal_contains(t, p) for t in reversed(shuffled))
            if a != b:
                out.append({"shape": shape.rows, "pattern": p, "counts": (a, b)})
    return out


def check_shape_wilf_classes(max_boxes: int = 9) -> list[Failure]:
    got = shape_wilf_classes(list(_perms(3)), max_boxes)
    want = sorted((sorted(c) for c in SHAPE_WILF_CLASSES), key=lambda g: (-len(g), g))
    got_sorted = sorted((sorted(c) for c in got), key=lambda g: (-len(g), g))
    if got_sorted != want:
        return [{"expected": want, "computed": got_sorted, "max_boxes": max_boxes}]
    return []


# -- growth-rsk ---------------------------------------------------------------

def _traversal_shapes(max_boxes: int):
    return [s for s in partitions_up_to(max_boxes) if s.admits_traversal()]


def check_greene_border(max_boxes: int = 12) -> list[Failure]:
    out = []
    for shape in _traversal_shapes(max_boxes):
        for t in enumerate_traversals(shape):
            border = forward_growth(t)
            for (x, y), lab in zip(border.path, border.labels):
                if x and y and (x, y) not in shape:
                    continue
                inc, dec = chain_lengths(t, x, y)
                if (lab[0] if lab else 0) != inc or len(lab) != dec:
                    out.append({"traversal": str(t), "corner": (x, y), "label": lab})
    return out


def check_rsk_roundtrip(max_n: int = 7) -> list[Failure]:
    out = []
    for n in range(max_n + 1):
        for s in _perms(n):
            P, Q = rsk(s)
            if inverse_rsk(P, Q) != s or P.shape != Q.shape or (n and P.shape[0] != lis(s)):
                out.append({"sigma": s})
    return out


# -- bwx-bijection ------------------------------------------------------------

def _inner_check(strategy: str, max_boxes: int) -> list[Failure]:
    out = []
    for shape in _traversal_shapes(max_boxes):
        ts = list(enumerate_traversals(shape))
        for k in (2, 3):
            src = [t for t in ts if not traversal_contains(t, increasing(k))]
            dst = {t for t in ts if not traversal_contains(t, decreasing(k))}
            if strategy == "growth":
                image = [border_conjugate_bijection(t) for t in src]
            else:
                image = [enumeration_bijection(t, k) for t in src]
            if set(image) != dst or len(set(image)) != len(src) or any(t.shape != shape for t in image):
                out.append({"strategy": strategy, "shape": shape.rows, "k": k})
        if strategy == "growth":
            for t in ts:
                if border_conjugate_bijection(border_conjugate_bijection(t)) != t:
                    out.append({"strategy": "growth", "not_involution": str(t)})
    return out


def check_growth_bijection(max_boxes: int = 12) -> list[Failure]:
    return _inner_check("growth", max_boxes)


def check_enumeration_bijection(max_boxes: int = 12) -> list[Failure]:
    return _inner_check("enumeration", max_boxes)


def check_blue_sw_closed(max_n: int = 8, max_tau: int = 3) -> list[Failure]:
    """Blue sets are SW-closed; the fast coloring matches the definition up to n = 6."""
    out = []
    for n in range(max_n + 1):
        for s in _perms(n):
            for tau in _patterns(max_tau):
                col = color_boxes(s, tau)
                if any(a < b for a, b in zip(col.heights, col.heights[1:])):
                    out.append({"sigma": s, "tau": tau})
                if n <= 6 and col.blue != color_boxes_naive(s, tau):
                    out.append({"sigma": s, "tau": tau, "naive": True})
    return out


BIJECTION_SPECS = ((2, 0, 2), (2, 1, 1), (3, 0, 1))


def check_pipeline_bijective(max_n: int = 8, specs=BIJECTION_SPECS) -> list[Failure]:
    """Injective into the target class with equal cardinality; each call runs
    with checks on, which asserts fixed frozen points and lambda stability."""
    out = []
    for k in specs:
        spec = ClassSpec(*k)
        pats = stage_patterns(spec)
        for n in range(max_n + 1):
            images = set()
            count = 0
            for s in enumerate_avoiders(n, pats["sigma"]):
                pi = pipeline(s, spec).pi
                count += 1
                if contains(pi, pats["pi"]):
                    out.append({"spec": k, "sigma": s, "pi": pi, "reason": "outside target class"})
                images.add(pi)
            target = count_avoiders(n, pats["pi"])
            if len(images) != count or count != target:
                out.append({"spec": k, "n": n, "images": len(images), "source": count, "target": target})
    return out


def check_fixed_points(max_n: int = 7) -> list[Failure]:
    """Points outside the blue region never move, for single steps with tau = I_a + J_b."""
    out = []
    for n in range(max_n + 1):
        for k, tau in ((2, increasing(1)), (2, increasing(2)), (3, (1,)), (2, (1, 3, 2))):
            for s in enumerate_avoiders(n, increasing(k) + tuple(v + k for v in tau)):
                step = bwx_step(s, k, tau, check=False)
                col = color_boxes(s, tau)
                for i, (a, b) in enumerate(zip(s, step.image), 1):
                    if (a > col.heights[i - 1] or b > col.heights[i - 1]) and a != b:
                        out.append({"sigma": s, "k": k, "tau": tau, "column": i})
    return out


def check_lambda_stability(max_n: int = 7) -> list[Failure]:
    out = []
    for n in range(max_n + 1):
        for k, tau in ((2, increasing(1)), (2, increasing(2)), (3, increasing(1)), (2, (2, 1))):
            for s in enumerate_avoiders(n, increasing(k) + tuple(v + k for v in tau)):
                image = bwx_step(s, k, tau, check=False).image
                if color_boxes(image, tau).heights != color_boxes(s, tau).heights:
                    out.append({"sigma": s, "k": k, "tau": tau})
    return out


def _bridge_failures(s, spec: ClassSpec) -> list[Failure]:
    part = layer_partition(s)
    C = [i for l in range(1, spec.k1 + 1) for i in part.layer(l)]
    sw = sw_region(C, s)
    col = color_boxes(s, increasing(spec.k2 + spec.k3))
    # blue box (i, j) must be the SW box with lower-left corner (i-1, j-1)
    bad = [i for i, h in enumerate(col.heights, 1) if h > sw.heights[i - 1]]
    return [{"sigma": s, "spec": spec.as_list(), "column": bad[0]}] if bad else []


def check_frozen_bridge(max_n: int = 8, sampled_n: int = 400, samples: int = 10, seed: int = 0) -> list[Failure]:
    """Frozen region contains the complement of SW(A^1 u ... u A^k1)."""
    out = []
    for k in BIJECTION_SPECS:
        spec = ClassSpec(*k)
        for n in range(max_n + 1):
            for s in enumerate_avoiders(n, increasing(spec.d + 1)):
                out += _bridge_failures(s, spec)
        for t in range(samples):
            s = sample_av_increasing(sampled_n, spec.d, make_rng(seed, t))
            out += _bridge_failures(s, spec)
    return out


# -- uniform-sampler ----------------------------------------------------------

def check_weights_total(max_n: int = 8) -> list[Failure]:
    out = []
    for d in (1, 2, 3):
        for n in range(max_n + 1):
            total = shape_distribution(n, d).total
            want = count_avoiders(n, increasing(d + 1))
            if total != want:
                out.append({"n": n, "d": d, "total": total, "count": want})
    return out


def chi_square_uniform(counts: Counter, support: list) -> float:
    """p-value of a chi-square uniformity test over ``support``."""
    from scipy.stats import chisquare
    observed = [counts.get(p, 0) for p in support]
    return float(chisquare(observed).pvalue)


def check_sampler_uniform(cases=((7, 2), (7, 3)), samples: int = 100_000, seed: int = 11,
                          alpha: float = 1e-3) -> list[Failure]:
    out = []
    for n, d in cases:
        support = list(enumerate_avoiders(n, increasing(d + 1)))
        rng = make_rng(seed, n * 10 + d)
        counts = Counter(sample_av_increasing(n, d, rng) for _ in range(samples))
        if set(counts) - set(support):
            out.append({"n": n, "d": d, "reason": "sample outside the class"})
        p = chi_square_uniform(counts, support)
        if p < alpha:
            out.append({"n": n, "d": d, "p_value": p})
    return out


def check_sampler_determinism(seed: int = 5) -> list[Failure]:
    out = []
    for n, d in ((10, 2), (50, 3), (200, 2)):
        a = sample_av_increasing(n, d, make_rng(seed, 3))
        b = sample_av_increasing(n, d, make_rng(seed, 3))
        if a != b:
            out.append({"n": n, "d": d})
    return out


# -- permuton-measure ---------------------------------------------------------

def _random_perm(rnd: random.Random, n: int) -> tuple[int, ...]:
    p = list(range(1, n + 1))
    rnd.shuffle(p)
    return tuple(p)


def check_marginals(cases: int = 1000, max_n: int = 10_000, seed: int = 1, tol: float = 1e-12) -> list[Failure]:
    out = []
    rnd = random.Random(seed)
    perms = [_random_perm(rnd, n) for n in (1, 2, 7, 100, max_n)]
    for t in range(cases):
        s = perms[t % len(perms)]
        a, b = sorted((rnd.random(), rnd.random()))
        if t % 4 == 0:
            n = len(s)
            a, b = sorted((rnd.randint(0, n) / n, rnd.randint(0, n) / n))
        for r, want in ((Rect(a, b, 0.0, 1.0), b - a), (Rect(0.0, 1.0, a, b), b - a)):
            got = mu_rect(s, r)
            if abs(got - want) > tol:
                out.append({"n": len(s), "rect": (r.x0, r.x1, r.y0, r.y1), "error": got - want})
    return out


def check_additivity(cases: int = 1000, max_n: int = 10_000, seed: int = 2, tol: float = 1e-12) -> list[Failure]:
    out = []
    rnd = random.Random(seed)
    perms = [_random_perm(rnd, n) for n in (3, 50, 1000, max_n)]
    for t in range(cases):
        s = perms[t % len(perms)]
        x0, xm, x1 = sorted(rnd.random() for _ in range(3))
        y0, ym, y1 = sorted(rnd.random() for _ in range(3))
        whole = mu_rect(s, Rect(x0, x1, y0, y1))
        parts = sum(mu_rect(s, Rect(a, b, c, e))
                    for a, b in ((x0, xm), (xm, x1)) for c, e in ((y0, ym), (ym, y1)))
        if abs(whole - parts) > tol:
            out.append({"n": len(s), "error": whole - parts})
    return out


def check_w_decomposition(cases: int = 1000, max_n: int = 10_000, seed: int = 3) -> list[Failure]:
    out = []
    rnd = random.Random(seed)
    perms = [_random_perm(rnd, n) for n in (1, 4, 100, max_n)] + [decreasing(500)]
    for t in range(cases):
        s = perms[t % len(perms)]
        eps = rnd.uniform(1e-3, 1.0)
        both = mu_w(s, WRegionSpec(eps, "both"))
        split = mu_w(s, WRegionSpec(eps, "plus")) + mu_w(s, WRegionSpec(eps, "minus"))
        if both != split:
            out.append({"n": len(s), "eps": eps, "error": both - split})
    return out


def check_weak_convergence_bound(ns=(50, 200, 800), samples: int = 5, seed: int = 4, m: int = 64) -> list[Failure]:
    out = []
    grid = epsilon_grid(0.05)
    for n in ns:
        for t in range(samples):
            sigma = sample_av_increasing(n, 3, make_rng(seed, t))
            for pi in (pipeline(sigma, ClassSpec(2, 1, 1), check=False).pi, decreasing(n)):
                bound = weak_convergence_bound(pi, grid, m)
                if bound is not None and rect_sup_distance(pi, m) > bound:
                    out.append({"n": n, "sample": t, "bound": bound})
    return out


# -- one-sided lemma ----------------------------------------------------------

ONESIDE_DELTAS = (math.exp(-8), math.exp(-10))


def check_oneside(max_n: int = 7, deltas=ONESIDE_DELTAS, epsilon_factor: float | None = 2.01) -> list[Failure]:
    """Hypothesis implies both conclusions on every mu_sigma, sigma in S_n."""
    out = []
    for delta in deltas:
        eps = None if epsilon_factor is None else epsilon_factor / math.log(1 / delta)
        for n in range(1, max_n + 1):
            for s in _perms(n):
                r = oneside_check(s, delta, eps)
                if r.violated:
                    out.append({"sigma": s, "delta": delta, "w_plus": r.w_plus_delta,
                                "w_minus": r.w_minus_eps, "w_both": r.w_both_2eps})
    return out


# -- layer-structure ----------------------------------------------------------

def check_layer_count(max_n: int = 8) -> list[Failure]:
    out = []
    for n in range(max_n + 1):
        for s in _perms(n):
            part = layer_partition(s)
            if part.d != lis(s) or (n <= 7 and part != layer_partition_naive(s)):
                out.append({"sigma": s})
    return out


def check_layers_partition(max_n: int = 8) -> list[Failure]:
    out = []
    for n in range(max_n + 1):
        for s in _perms(n):
            part = layer_partition(s)
            flat = sorted(i for layer in part.layers for i in layer)
            dec = all(s[a - 1] > s[b - 1] for layer in part.layers for a, b in zip(layer, layer[1:]))
            if flat != list(range(1, n + 1)) or not dec:
                out.append({"sigma": s})
    return out


def check_partial_chains(max_n: int = 8) -> list[Failure]:
    """Every i in A^l ends an increasing chain through A^1, ..., A^l."""
    from .layers import sequence_witness
    out = []
    for n in range(max_n + 1):
        for s in _perms(n):
            part = layer_partition(s)
            for l in range(2, part.d + 1):
                for i in part.layer(l):
                    w = sequence_witness(s, part, l, i, d=l)
                    if w is None or not is_witness(s, part, w):
                        out.append({"sigma": s, "l": l, "i": i})
    return out


def check_good_geometric(ns=(100, 400), samples: int = 10, d: int = 3, eps: float = 0.05, seed: int = 6) -> list[Failure]:
    out = []
    for n in ns:
        for t in range(samples):
            s = sample_av_increasing(n, d, make_rng(seed, t))
            if not goodness(s, eps, d).all_good:
                continue
            if max(abs(v + i - n - 1) for i, v in enumerate(s, 1)) >= n ** 0.6:
                out.append({"n": n, "sample": t, "reason": "deviation"})
            if n ** 0.6 < eps * n and w_plus(s, 2 * eps) != 0.0:
                out.append({"n": n, "sample": t, "reason": "mass in W+"})
    return out


# -- experiment-cli -----------------------------------------------------------

def _converge_csv(cfg) -> list[list[str]]:
    from .experiments import run_convergence
    with tempfile.TemporaryDirectory() as tmp:
        cfg.out = str(Path(tmp) / "out.csv")
        run_convergence(cfg)
        rows = list(csv.reader(io.StringIO(Path(cfg.out).read_text())))
    return [r[:-1] for r in rows]   # drop wall time


def check_reproducible_csv() -> list[Failure]:
    from .experiments import ExperimentConfig
    a = _converge_csv(ExperimentConfig(ns=(20, 40), samples=3, seed=9))
    b = _converge_csv(ExperimentConfig(ns=(20, 40), samples=3, seed=9, workers=2))
    return [] if a == b else [{"reason": "CSV differs between runs"}]


def check_row_flush() -> list[Failure]:
    """Each row is on disk before the next sample is computed."""
    from .experiments import ExperimentConfig, run_convergence
    out = []
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "out.csv"
        seen = []

        def progress(rec):
            seen.append(len(path.read_text().splitlines()))

        run_convergence(ExperimentConfig(ns=(10, 20), samples=2, seed=1, out=str(path)), progress)
        if seen != [2, 3, 4, 5]:
            out.append({"lines_on_disk": seen})
    return out


# -- registry -----------------------------------------------------------------

@dataclass
class Entry:
    suite: str
    check: Check
    doc: str


REGISTRY: dict[str, Entry] = {
    "core.contains_oracle": Entry("core", check_contains_oracle, "containment agrees with the all-subsequences oracle"),
    "core.lis_avoidance": Entry("core", check_lis_avoidance, "avoiding I_{d+1} iff lis <= d"),
    "core.symmetries": Entry("core", check_symmetries, "r, c, rc are involutions and rc preserves avoidance"),
    "core.wilf_s3": Entry("core", check_wilf_s3, "all patterns of length 3 are Wilf-equivalent"),
    "shapes.square_containment": Entry("shapes", check_square_containment, "square traversals contain what permutations contain"),
    "shapes.count_order_independent": Entry("shapes", check_count_order_independent, "avoider counts ignore enumeration order"),
    "shapes.wilf_classes": Entry("shapes", check_shape_wilf_classes, "shape-Wilf classes of S_3 over shapes with <= 9 boxes"),
    "greene.border_chains": Entry("greene", check_greene_border, "border labels record longest chains"),
    "greene.rsk_roundtrip": Entry("greene", check_rsk_roundtrip, "rsk and inverse_rsk are mutually inverse"),
    "bijection.growth_strategy": Entry("bijection", check_growth_bijection, "conjugation is a shape-preserving involution I_k <-> J_k"),
    "bijection.enumeration_strategy": Entry("bijection", check_enumeration_bijection, "index matching is a shape-preserving bijection"),
    "bijection.blue_sw_closed": Entry("bijection", check_blue_sw_closed, "blue sets are SW-closed and match the definition"),
    "bijection.fixed_points": Entry("bijection", check_fixed_points, "frozen points are fixed"),
    "bijection.pipeline_bijective": Entry("bijection", check_pipeline_bijective, "pipeline is a bijection onto the target class"),
    "bijection.lambda_stability": Entry("bijection", check_lambda_stability, "recoloring the image keeps lambda"),
    "bijection.frozen_bridge": Entry("bijection", check_frozen_bridge, "blue region lies inside SW of the first k1 layers"),
    "sampler.weights_total": Entry("sampler", check_weights_total, "shape weights sum to the class size"),
    "sampler.uniform": Entry("sampler", check_sampler_uniform, "support and chi-square uniformity"),
    "sampler.determinism": Entry("sampler", check_sampler_determinism, "seed and stream fix the sample"),
    "measure.marginals": Entry("measure", check_marginals, "uniform marginals to 1e-12"),
    "measure.additivity": Entry("measure", check_additivity, "2x2 splits add up to 1e-12"),
    "measure.w_decomposition": Entry("measure", check_w_decomposition, "W = W+ + W- exactly"),
    "measure.weak_convergence_bound": Entry("measure", check_weak_convergence_bound, "rect-sup <= 3 eps + 2/m"),
    "oneside.implication": Entry("oneside", check_oneside, "one-sided implication on all of S_n"),
    "layers.count_lis": Entry("layers", check_layer_count, "number of layers equals lis"),
    "layers.partition_decreasing": Entry("layers", check_layers_partition, "layers partition [n] and decrease"),
    "layers.partial_chains": Entry("layers", check_partial_chains, "increasing chains through the lower layers"),
    "layers.frozen_bridge": Entry("layers", check_frozen_bridge, "frozen region contains the SW complement"),
    "layers.good_geometric": Entry("layers", check_good_geometric, "good samples hug the anti-diagonal"),
    "cli.reproducible_csv": Entry("cli", check_reproducible_csv, "same config and seed give the same CSV"),
    "cli.row_flush": Entry("cli", check_row_flush, "rows reach disk one sample at a time"),
}

SUITES = tuple(sorted({e.suite for e in REGISTRY.values()}))

# reduced parameters for quick runs through the CLI
QUICK = {
    "core.contains_oracle": {"max_n": 6},
    "core.wilf_s3": {"max_n": 8},
    "bijection.pipeline_bijective": {"max_n": 7},
    "bijection.frozen_bridge": {"max_n": 7, "samples": 2},
    "layers.frozen_bridge": {"max_n": 7, "samples": 2},
    "greene.border_chains": {"max_boxes": 9},
    "bijection.growth_strategy": {"max_boxes": 9},
    "bijection.enumeration_strategy": {"max_boxes": 9},
    "shapes.count_order_independent": {"max_boxes": 9},
    "sampler.uniform": {"samples": 20_000},
    "bijection.blue_sw_closed": {"max_n": 7},
}


def manifest() -> list[str]:
    text = resources.files(__package__).joinpath("invariants.txt").read_text()
    return [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]


@dataclass
class SuiteResult:
    suite: str
    results: dict[str, list[Failure]] = field(default_factory=dict)
    seconds: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.results.values())

    def report(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": {name: {"ok": not fails, "failures": len(fails), "first": _jsonable(fails[:3]),
                              "seconds": round(self.seconds[name], 3)}
                       for name, fails in self.results.items()},
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)


def run_suite(suite: str, quick: bool = False, **overrides) -> SuiteResult:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    res = SuiteResult(suite)
    for name, entry in REGISTRY.items():
        if entry.suite != suite:
            continue
        kwargs = dict(QUICK.get(name, {})) if quick else {}
        params = inspect.signature(entry.check).parameters
        kwargs.update({k: v for k, v in overrides.items() if k in params})
        t0 = time.perf_counter()
        res.results[name] = entry.check(**kwargs)
        res.seconds[name] = time.perf_counter() - t0
    return res
