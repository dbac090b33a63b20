"""Ferrers shapes in French convention and their traversals.

Boxes are addressed ``(column, row)`` with row 1 at the bottom.  A shape is
its tuple of row lengths read bottom-up; box ``(i, j)`` belongs to it iff
``i <= rows[j-1]``.  A traversal stores, for each row, the column of its
unique 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import BoundExceeded, NotATraversal
from .perms import Perm, standardize

DEFAULT_BOX_BOUND = 16


@dataclass(frozen=True)
class FerrersShape:
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r <= 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must be positive and weakly decreasing: {rows}")
        object.__setattr__(self, "rows", rows)

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return self.rows[0] if self.rows else 0

    @property
    def size(self) -> int:
        return sum(self.rows)

    def __contains__(self, box) -> bool:
        i, j = box
        return 1 <= j <= len(self.rows) and 1 <= i <= self.rows[j - 1]

    def column_heights(self) -> tuple[int, ...]:
        return tuple(sum(1 for r in self.rows if r >= i) for i in range(1, self.width + 1))

    def boxes(self) -> Iterator[tuple[int, int]]:
        for j, r in enumerate(self.rows, 1):
            for i in range(1, r + 1):
                yield (i, j)

    def admits_traversal(self) -> bool:
        # rows filled top-down: the row of length rows[j] has rows[j] - (#rows above) free columns
        if self.height != self.width:
            return False
        return all(r > self.height - 1 - j for j, r in enumerate(self.rows))

    def count_traversals(self) -> int:
        if self.height != self.width:
            return 0
        total = 1
        for j, r in enumerate(self.rows):
            total *= max(0, r - (self.height - 1 - j))
        return total

    def __str__(self) -> str:
        return format_shape(self)

    @classmethod
    def square(cls, n: int) -> "FerrersShape":
        return cls((n,) * n)


def parse_shape(text: str) -> FerrersShape:
    text = text.strip()
    return FerrersShape(tuple(int(t) for t in text.split(",")) if text else ())


def format_shape(shape: FerrersShape) -> str:
    return ",".join(str(r) for r in shape.rows)


@dataclass(frozen=True)
class Traversal:
    shape: FerrersShape
    row_values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.row_values)
        object.__setattr__(self, "row_values", vals)
        shape = self.shape
        if len(vals) != shape.height or shape.height != shape.width:
            raise NotATraversal(f"{vals} does not fit shape {shape.rows}")
        if sorted(vals) != list(range(1, shape.width + 1)):
            raise NotATraversal(f"{vals} is not one 1 per column")
        for j, c in enumerate(vals, 1):
            if (c, j) not in shape:
                raise NotATraversal(f"point ({c},{j}) lies outside shape {shape.rows}")

    def points(self) -> list[tuple[int, int]]:
        """The 1s as ``(column, row)`` pairs sorted by column."""
        return sorted((c, j) for j, c in enumerate(self.row_values, 1))

    def column_rows(self) -> Perm:
        """Row of the 1 in each column; on a square this is the permutation."""
        out = [0] * len(self.row_values)
        for j, c in enumerate(self.row_values, 1):
            out[c - 1] = j
        return tuple(out)

    def __str__(self) -> str:
        return format_traversal(self)


def format_traversal(t: Traversal) -> str:
    return format_shape(t.shape) + ";" + ",".join(str(c) for c in t.row_values)


def parse_traversal(text: str) -> Traversal:
    shape_txt, _, vals = text.partition(";")
    return Traversal(parse_shape(shape_txt), tuple(int(v) for v in vals.split(",")) if vals.strip() else ())


def square_traversal(sigma: Sequence[int]) -> Traversal:
    """M_sigma: the traversal of the n x n square with a 1 at (i, sigma(i))."""
    n = len(sigma)
    rows = [0] * n
    for i, v in enumerate(sigma, 1):
        rows[v - 1] = i
    return Traversal(FerrersShape.square(n), tuple(rows))


def traversal_contains(t: Traversal, sigma: Sequence[int]) -> bool:
    """Pattern containment restricted to occurrences whose bounding rectangle
    lies inside the shape (equivalently its top-right box does)."""
    m = len(sigma)
    if m == 0:
        return True
    pts = t.points()
    n = len(pts)
    if m > n:
        return False
    rows = t.shape.rows
    below: list[int] = []
    above: list[int] = []
    for k in range(m):
        lo = hi = -1
        for s in range(k):
            if sigma[s] < sigma[k] and (lo < 0 or sigma[s] > sigma[lo]):
                lo = s
            if sigma[s] > sigma[k] and (hi < 0 or sigma[s] < sigma[hi]):
                hi = s
        below.append(lo)
        above.append(hi)
    chosen = [0] * m

    def extend(k: int, start: int, top: int) -> bool:
        lo = chosen[below[k]] if below[k] >= 0 else 0
        hi = chosen[above[k]] if above[k] >= 0 else n + 1
        for pos in range(start, n - (m - k) + 1):
            col, row = pts[pos]
            if not lo < row < hi:
                continue
            new_top = max(top, row)
            # columns only grow from here, so an escaped corner never comes back
            if col > rows[new_top - 1]:
                continue
            chosen[k] = row
            if k + 1 == m or extend(k + 1, pos + 1, new_top):
                return True
        return False

    return extend(0, 0, 0)


def traversal_contains_naive(t: Traversal, sigma: Sequence[int]) -> bool:
    pts = t.points()
    target = tuple(sigma)
    for sub in combinations(pts, len(sigma)):
        top = max(r for _, r in sub)
        right = sub[-1][0]
        if (right, top) in t.shape and standardize([r for _, r in sub]) == target:
            return True
    return False


def enumerate_traversals(shape: FerrersShape, bound: int = DEFAULT_BOX_BOUND) -> Iterator[Traversal]:
    """All traversals of ``shape``, lexicographic in ``row_values``."""
    if shape.size > bound:
        raise BoundExceeded(f"|lambda|={shape.size} exceeds box bound {bound}")
    if not shape.admits_traversal():
        return
    h = shape.height
    used = [False] * (shape.width + 1)
    vals: list[int] = []

    def grow(j: int) -> Iterator[Traversal]:
        if j == h:
            yield Traversal(shape, tuple(vals))
            return
        # the rows above j need rows[j+1..] distinct columns within their lengths
        for c in range(1, shape.rows[j] + 1):
            if used[c]:
                continue
            used[c] = True
            vals.append(c)
            yield from grow(j + 1)
            vals.pop()
            used[c] = False

    for t in grow(0):
        yield t


def enumerate_avoiding_traversals(shape: FerrersShape, sigma: Sequence[int],
                                  bound: int = DEFAULT_BOX_BOUND) -> Iterator[Traversal]:
    """S_lambda(sigma) in lexicographic order."""
    for t in enumerate_traversals(shape, bound):
        if not traversal_contains(t, sigma):
            yield t


def partitions_up_to(max_size: int) -> Iterator[FerrersShape]:
    """Every nonempty Ferrers shape with at most ``max_size`` boxes."""

    def parts(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        yield ()
        for first in range(min(remaining, cap), 0, -1):
            for rest in parts(remaining - first, first):
                yield (first,) + rest

    for rows in parts(max_size, max_size):
        if rows:
            yield FerrersShape(rows)


@dataclass
class ShapeWilfReport:
    sigma: Perm
    sigma_prime: Perm
    max_boxes: int
    shapes_tested: int
    counterexample: tuple[FerrersShape, int, int] | None

    @property
    def equal(self) -> bool:
        return self.counterexample is None


def avoider_count(shape: FerrersShape, sigma: Sequence[int], bound: int = DEFAULT_BOX_BOUND) -> int:
    return sum(1 for _ in enumerate_avoiding_traversals(shape, sigma, bound))


def shape_wilf_check(sigma: Sequence[int], sigma_prime: Sequence[int], max_boxes: int = 9) -> ShapeWilfReport:
    """Compare |S_lambda(sigma)| and |S_lambda(sigma')| on all shapes up to
    ``max_boxes`` boxes; shapes without traversals count as equal."""
    if max_boxes > DEFAULT_BOX_BOUND:
        raise BoundExceeded(f"max_boxes={max_boxes} exceeds {DEFAULT_BOX_BOUND}")
    tested = 0
    for shape in partitions_up_to(max_boxes):
        if not shape.admits_traversal():
            continue
        tested += 1
        a = avoider_count(shape, sigma)
        b = avoider_count(shape, sigma_prime)
        if a != b:
            return ShapeWilfReport(tuple(sigma), tuple(sigma_prime), max_boxes, tested, (shape, a, b))
    return ShapeWilfReport(tuple(sigma), tuple(sigma_prime), max_boxes, tested, None)


def shape_wilf_classes(patterns: Sequence[Sequence[int]], max_boxes: int = 9) -> list[list[Perm]]:
    """Group patterns by their count vectors over all shapes up to ``max_boxes``."""
    shapes = [s for s in partitions_up_to(max_boxes) if s.admits_traversal()]
    groups: dict[tuple[int, ...], list[Perm]] = {}
    for p in patterns:
        key = tuple(avoider_count(s, p) for s in shapes)
        groups.setdefault(key, []).append(tuple(p))
    return sorted(groups.values(), key=lambda g: (-len(g), g))
