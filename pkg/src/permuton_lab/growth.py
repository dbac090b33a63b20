"""RSK, hook lengths, the hook walk, and growth diagrams on Ferrers shapes.

Partitions are tuples of positive parts.  Growth labels sit on lattice
corners ``(x, y)``; the label at ``(x, y)`` is the RSK shape of the points
in columns ``<= x`` and rows ``<= y``.
"""

from __future__ import annotations

import os
import tempfile
from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from pathlib import Path
from typing import Sequence

from .errors import ReconstructionFailure, ShapeMismatch, InnerBijectionFailure
from .perms import Perm, decreasing, increasing
from .shapes import (DEFAULT_BOX_BOUND, FerrersShape, Traversal, enumerate_avoiding_traversals,
                     format_shape)

Partition = tuple[int, ...]

CACHE_ENV = "PERMUTON_LAB_CACHE"


# -- partitions ---------------------------------------------------------------

def conjugate(p: Sequence[int]) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for part in p if part > i) for i in range(p[0]))


def add_box(p: Partition, row: int) -> Partition:
    """Add a box at the end of ``row`` (1-based)."""
    if row == len(p) + 1:
        return p + (1,)
    return p[:row - 1] + (p[row - 1] + 1,) + p[row:]


def remove_box(p: Partition, row: int) -> Partition:
    if p[row - 1] == 1:
        return p[:row - 1] + p[row:]
    return p[:row - 1] + (p[row - 1] - 1,) + p[row:]


def diff_row(big: Partition, small: Partition) -> int:
    """Row (1-based) of the single box of ``big / small``."""
    for r, part in enumerate(big):
        if r >= len(small) or small[r] != part:
            return r + 1
    raise ValueError(f"{big} does not exceed {small}")


def union(a: Partition, b: Partition) -> Partition:
    if len(a) < len(b):
        a, b = b, a
    return tuple(max(x, b[i]) if i < len(b) else x for i, x in enumerate(a))


def intersection(a: Partition, b: Partition) -> Partition:
    return tuple(min(x, y) for x, y in zip(a, b))


def partitions_of(n: int, max_part: int | None = None) -> list[Partition]:
    cap = n if max_part is None else max_part
    out: list[Partition] = []

    def rec(rem: int, cap: int, acc: tuple[int, ...]):
        if rem == 0:
            out.append(acc)
            return
        for part in range(min(rem, cap), 0, -1):
            rec(rem - part, part, acc + (part,))

    rec(n, cap, ())
    return out


# -- tableaux and RSK ---------------------------------------------------------

@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_standard(self) -> bool:
        if sorted(v for r in self.rows for v in r) != list(range(1, self.size + 1)):
            return False
        if any(len(a) < len(b) for a, b in zip(self.rows, self.rows[1:])):
            return False
        for r in self.rows:
            if any(x >= y for x, y in zip(r, r[1:])):
                return False
        for upper, lower in zip(self.rows, self.rows[1:]):
            if any(lower[c] <= upper[c] for c in range(len(lower))):
                return False
        return True

    def transpose(self) -> "StandardTableau":
        if not self.rows:
            return self
        return StandardTableau(tuple(tuple(r[c] for r in self.rows if len(r) > c)
                                     for c in range(len(self.rows[0]))))


def rsk(sigma: Sequence[int]) -> tuple[StandardTableau, StandardTableau]:
    """Row-insertion RSK; returns (insertion tableau P, recording tableau Q)."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, x in enumerate(sigma, 1):
        r = 0
        while True:
            if r == len(P):
                P.append([x])
                Q.append([step])
                break
            row = P[r]
            c = bisect_left(row, x)
            if c == len(row):
                row.append(x)
                Q[r].append(step)
                break
            row[c], x = x, row[c]
            r += 1
    return (StandardTableau(tuple(map(tuple, P))), StandardTableau(tuple(map(tuple, Q))))


def inverse_rsk(P: StandardTableau, Q: StandardTableau) -> Perm:
    if P.shape != Q.shape:
        raise ShapeMismatch(f"P has shape {P.shape}, Q has shape {Q.shape}")
    prow = [list(r) for r in P.rows]
    where = {}
    for r, row in enumerate(Q.rows):
        for c, v in enumerate(row):
            where[v] = r
    n = P.size
    out = [0] * n
    for k in range(n, 0, -1):
        r = where[k]
        x = prow[r].pop()
        for rr in range(r - 1, -1, -1):
            row = prow[rr]
            c = bisect_left(row, x) - 1
            row[c], x = x, row[c]
        out[k - 1] = x
        if not prow[r]:
            prow.pop()
    return tuple(out)


# -- hook lengths -------------------------------------------------------------

def hook_count(shape: Sequence[int]) -> int:
    """Number of standard tableaux of ``shape`` (exact integer)."""
    shape = tuple(shape)
    if len(shape) > (shape[0] if shape else 0):
        shape = conjugate(shape)
    d = len(shape)
    n = sum(shape)
    if d == 0:
        return 1
    # few-rows form: f = n! * prod_{i<j}(l_i - l_j) / prod l_i!,  l_i = shape_i + d - i
    ls = [shape[i] + d - 1 - i for i in range(d)]
    num = factorial(n) * prod(ls[i] - ls[j] for i in range(d) for j in range(i + 1, d))
    den = prod(factorial(l) for l in ls)
    return num // den


def hook_count_by_hooks(shape: Sequence[int]) -> int:
    """Textbook hook-product version, kept as an oracle for :func:`hook_count`."""
    cols = conjugate(tuple(shape))
    hooks = 1
    for i, r in enumerate(shape):
        for j in range(r):
            hooks *= (r - j - 1) + (cols[j] - i - 1) + 1
    return factorial(sum(shape)) // hooks


def hook_walk_sample(shape: Sequence[int], rng) -> StandardTableau:
    """Uniform standard tableau of ``shape`` by the Greene-Nijenhuis-Wilf hook walk.

    ``rng`` is a ``numpy.random.Generator``.  The walk runs on whichever of the
    shape and its conjugate has fewer rows and is transposed back.
    """
    shape = tuple(shape)
    flip = len(shape) > (shape[0] if shape else 0)
    work = conjugate(shape) if flip else shape
    rows = list(work)
    cols = list(conjugate(work))
    n = sum(rows)
    filling = [[0] * r for r in rows]
    integers = rng.integers
    for value in range(n, 0, -1):
        # uniform cell among the remaining ones
        target = int(integers(value))
        i = 0
        while target >= rows[i]:
            target -= rows[i]
            i += 1
        j = target
        while True:
            arm = rows[i] - j - 1
            leg = cols[j] - i - 1
            if arm + leg == 0:
                break
            step = int(integers(arm + leg)) + 1
            if step <= arm:
                j += step
            else:
                i += step - arm
        filling[i][j] = value
        rows[i] -= 1
        cols[j] -= 1
    t = StandardTableau(tuple(tuple(r) for r in filling))
    return t.transpose() if flip else t


# -- growth diagrams ----------------------------------------------------------

@dataclass(frozen=True)
class GrowthBorder:
    """Labels along the NE border path of a shape, from (0, h) to (w, 0)."""

    shape: FerrersShape
    path: tuple[tuple[int, int], ...]
    labels: tuple[Partition, ...]

    def label_at(self, corner: tuple[int, int]) -> Partition:
        return self.labels[self.path.index(corner)]

    def conjugated(self) -> "GrowthBorder":
        return GrowthBorder(self.shape, self.path, tuple(conjugate(p) for p in self.labels))


def border_path(shape: FerrersShape) -> list[tuple[int, int]]:
    rows = shape.rows
    h = len(rows)
    path = [(0, h)]
    x = 0
    for y in range(h, 0, -1):
        while x < rows[y - 1]:
            x += 1
            path.append((x, y))
        path.append((x, y - 1))
    return path


def _forward_rule(rho: Partition, mu: Partition, nu: Partition, one: bool) -> Partition:
    if one:
        return add_box(rho, 1)
    if mu == nu:
        if mu == rho:
            return rho
        return add_box(mu, diff_row(mu, rho) + 1)
    return union(mu, nu)


def forward_growth(t: Traversal, all_labels: bool = False):
    """Grow labels over every box of the shape, row by row from the bottom.

    Returns the :class:`GrowthBorder`; with ``all_labels`` a dict of every
    corner label is returned alongside it.
    """
    shape = t.shape
    rows = shape.rows
    h = len(rows)
    border: dict[tuple[int, int], Partition] = {}
    full: dict[tuple[int, int], Partition] = {}
    prev: list[Partition] = [()] * ((rows[0] if rows else 0) + 1)
    if all_labels:
        for x in range(len(prev)):
            full[(x, 0)] = ()
    if h == 0:
        border[(0, 0)] = ()
    for y in range(1, h + 1):
        width = rows[y - 1]
        one_at = t.row_values[y - 1]
        cur: list[Partition] = [()]
        for x in range(1, width + 1):
            cur.append(_forward_rule(prev[x - 1], cur[x - 1], prev[x], x == one_at))
        # corners at height y-1 right of this row lie on the border
        for x in range(width, len(prev)):
            border[(x, y - 1)] = prev[x]
        if y == h:
            for x in range(0, width + 1):
                border[(x, y)] = cur[x]
        if all_labels:
            for x, lab in enumerate(cur):
                full[(x, y)] = lab
        prev = cur
    path = tuple(border_path(shape))
    result = GrowthBorder(shape, path, tuple(border[c] for c in path))
    if all_labels:
        return result, full
    return result


def _inverse_rule(lam: Partition, mu: Partition, nu: Partition) -> tuple[Partition, bool]:
    if mu == nu:
        if mu == lam:
            return lam, False
        r = diff_row(lam, mu)
        if r == 1:
            return mu, True
        return remove_box(mu, r - 1), False
    return intersection(mu, nu), False


def _check_step(big: Partition, small: Partition) -> None:
    if sum(big) - sum(small) not in (0, 1) or any(s > b for s, b in zip(small, big)) or len(small) > len(big):
        raise ReconstructionFailure(f"labels {small} -> {big} are not a one-box step")


def traversal_from_border(border: GrowthBorder) -> Traversal:
    """Rebuild the filling from border labels by the inverse local rules."""
    shape = border.shape
    rows = shape.rows
    h = len(rows)
    lab = dict(zip(border.path, border.labels))
    if h == 0:
        return Traversal(shape, ())
    for a, b in zip(border.labels, border.labels[1:]):
        if abs(sum(a) - sum(b)) != 1:
            raise ReconstructionFailure(f"border labels {a}, {b} do not differ by one box")
    if lab[(0, h)] != () or lab[(rows[0], 0)] != ():
        raise ReconstructionFailure("border endpoints must carry the empty partition")
    row_values = [0] * h
    top: list[Partition] = [lab[(x, h)] for x in range(rows[h - 1] + 1)]
    for y in range(h, 0, -1):
        width = rows[y - 1]
        below_width = rows[y - 2] if y >= 2 else rows[0]
        bottom: list[Partition | None] = [None] * (max(width, below_width) + 1)
        for x in range(width, len(bottom)):
            bottom[x] = lab[(x, y - 1)]
        for x in range(width, 0, -1):
            lam, mu, nu = top[x], top[x - 1], bottom[x]
            _check_step(lam, mu)
            _check_step(lam, nu)
            rho, one = _inverse_rule(lam, mu, nu)
            _check_step(mu, rho)
            _check_step(nu, rho)
            if one:
                if row_values[y - 1]:
                    raise ReconstructionFailure(f"two points in row {y}")
                row_values[y - 1] = x
            bottom[x - 1] = rho
        if bottom[0] != () or (y == 1 and any(bottom)):
            raise ReconstructionFailure(f"edge labels at height {y - 1} are not empty")
        top = bottom
    try:
        return Traversal(shape, tuple(row_values))
    except Exception as exc:  # NotATraversal
        raise ReconstructionFailure(str(exc)) from exc


def border_conjugate_bijection(t: Traversal) -> Traversal:
    """Conjugate every border label and rebuild: an involution on traversals
    of a fixed shape exchanging S_lambda(I_k) and S_lambda(J_k)."""
    return traversal_from_border(forward_growth(t).conjugated())


def chain_lengths(t: Traversal, x: int, y: int) -> tuple[int, int]:
    """Brute-force longest increasing / decreasing chains of the points in
    columns <= x and rows <= y (oracle for the growth labels)."""
    pts = [(c, r) for c, r in t.points() if c <= x and r <= y]
    inc = [1] * len(pts)
    dec = [1] * len(pts)
    for a in range(len(pts)):
        for b in range(a):
            if pts[b][1] < pts[a][1]:
                inc[a] = max(inc[a], inc[b] + 1)
            else:
                dec[a] = max(dec[a], dec[b] + 1)
    return (max(inc, default=0), max(dec, default=0))


# -- enumeration-matched inner bijection (strategy B) -------------------------

def cache_dir_from_env(cache_dir: str | os.PathLike | None = None) -> Path | None:
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


@lru_cache(maxsize=4096)
def _avoider_lists(shape: FerrersShape, k: int) -> tuple[tuple[Traversal, ...], tuple[Traversal, ...]]:
    bound = max(shape.size, DEFAULT_BOX_BOUND)
    inc = tuple(enumerate_avoiding_traversals(shape, increasing(k), bound))
    dec = tuple(enumerate_avoiding_traversals(shape, decreasing(k), bound))
    if len(inc) != len(dec):
        raise InnerBijectionFailure(
            f"|S(I_{k})|={len(inc)} != |S(J_{k})|={len(dec)} on shape {shape.rows}")
    return inc, dec


def write_bytes_atomic(path: Path, data: bytes) -> None:
    """Write via a temporary file and ``os.replace`` so readers never see a partial file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_atomic(path: Path, text: str) -> None:
    write_bytes_atomic(path, text.encode())


def pairing_path(cache_dir: Path, shape: FerrersShape, k: int) -> Path:
    return cache_dir / "inner_pairs" / f"{format_shape(shape)}__k{k}.tsv"


@lru_cache(maxsize=4096)
def _pairing(shape: FerrersShape, k: int, cache_dir: Path | None) -> tuple[dict, dict]:
    inc, dec = _avoider_lists(shape, k)
    pairs = None
    if cache_dir is not None:
        path = pairing_path(cache_dir, shape, k)
        if path.exists():
            pairs = [tuple(int(v) for v in line.split("\t")) for line in path.read_text().splitlines() if line]
            if sorted(a for a, _ in pairs) != list(range(len(inc))) or \
                    sorted(b for _, b in pairs) != list(range(len(dec))):
                pairs = None
        if pairs is None:
            pairs = [(i, i) for i in range(len(inc))]
            write_atomic(path, "".join(f"{a}\t{b}\n" for a, b in pairs))
    if pairs is None:
        pairs = [(i, i) for i in range(len(inc))]
    forward = {inc[a]: dec[b] for a, b in pairs}
    backward = {dec[b]: inc[a] for a, b in pairs}
    return forward, backward


def enumeration_bijection(t: Traversal, k: int, direction: str = "I->J",
                          cache_dir: str | os.PathLike | None = None) -> Traversal:
    """Match S_lambda(I_k) and S_lambda(J_k) by lexicographic index."""
    cdir = cache_dir_from_env(cache_dir)
    forward, backward = _pairing(t.shape, k, cdir)
    table = forward if direction == "I->J" else backward
    try:
        return table[t]
    except KeyError:
        src = "I" if direction == "I->J" else "J"
        raise InnerBijectionFailure(f"traversal {t} is not in S_lambda({src}_{k})") from None


def inner_bijection(t: Traversal, k: int, direction: str = "I->J", strategy: str = "auto",
                    cache_dir: str | os.PathLike | None = None) -> Traversal:
    """Dispatch to growth conjugation ("growth") or index matching
    ("enumeration"); "auto" uses enumeration up to 16 boxes."""
    if strategy == "auto":
        strategy = "enumeration" if t.shape.size <= DEFAULT_BOX_BOUND else "growth"
    if strategy == "growth":
        return border_conjugate_bijection(t)
    if strategy == "enumeration":
        return enumeration_bijection(t, k, direction, cache_dir)
    raise ValueError(f"unknown inner strategy {strategy!r}")
