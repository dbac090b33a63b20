import math
from collections import Counter
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from permuton_lab.errors import ShapeMismatch
from permuton_lab.growth import (StandardTableau, border_conjugate_bijection, chain_lengths, conjugate,
                                 enumeration_bijection, forward_growth, hook_count, hook_count_by_hooks,
                                 hook_walk_sample, inner_bijection, inverse_rsk, pairing_path, partitions_of,
                                 rsk, traversal_from_border)
from permuton_lab.perms import decreasing, increasing, lds, lis
from permuton_lab.sampling import make_rng
from permuton_lab.shapes import (FerrersShape, Traversal, enumerate_traversals, partitions_up_to,
                                 square_traversal, traversal_contains)


def perms_of(n):
    return [tuple(p) for p in permutations(range(1, n + 1))]


def traversal_shapes(max_boxes):
    return [s for s in partitions_up_to(max_boxes) if s.admits_traversal()]


def test_rsk_examples():
    P, Q = rsk((2, 3, 1))
    assert P.rows == ((1, 3), (2,)) and Q.rows == ((1, 2), (3,))
    P, Q = rsk(increasing(5))
    assert P.rows == Q.rows == ((1, 2, 3, 4, 5),)


def test_rsk_roundtrip_exhaustive():
    for n in range(8):
        for s in perms_of(n):
            P, Q = rsk(s)
            assert P.is_standard() and Q.is_standard()
            assert P.shape == Q.shape
            assert inverse_rsk(P, Q) == s
            if n:
                assert P.shape[0] == lis(s) and len(P.shape) == lds(s)


def test_inverse_rsk_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        inverse_rsk(StandardTableau(((1, 2),)), StandardTableau(((1,), (2,))))


def test_hook_counts():
    assert hook_count((1,)) == 1
    assert hook_count((2, 1)) == 2
    for n in range(1, 9):
        parts = partitions_of(n)
        assert sum(hook_count(p) ** 2 for p in parts) == math.factorial(n)
        for p in parts:
            assert hook_count(p) == hook_count_by_hooks(p)


def test_hook_count_is_big_integer():
    f = hook_count((30, 30))
    assert f == math.comb(60, 30) // 31


def test_hook_walk_uniform_on_21():
    rng = make_rng(2024)
    counts = Counter(hook_walk_sample((2, 1), rng).rows for _ in range(10_000))
    assert set(counts) == {((1, 2), (3,)), ((1, 3), (2,))}
    for c in counts.values():
        assert abs(c / 10_000 - 0.5) < 0.02


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2**32))
def test_hook_walk_shape_preserved(n, seed):
    rng = make_rng(seed)
    parts = partitions_of(n)
    shape = parts[int(rng.integers(len(parts)))]
    t = hook_walk_sample(shape, rng)
    assert t.shape == shape and t.is_standard()


def test_greene_on_squares():
    for n in range(7):
        for s in perms_of(n):
            border = forward_growth(square_traversal(s))
            top = border.label_at((n, n))
            assert (top[0] if top else 0) == lis(s)
            assert len(top) == lds(s)


def test_growth_examples():
    empty = Traversal(FerrersShape(()), ())
    assert all(lab == () for lab in forward_growth(empty).labels)
    assert forward_growth(square_traversal(decreasing(3))).label_at((3, 3)) == (1, 1, 1)


def test_greene_border_corners():
    for shape in traversal_shapes(10):
        for t in enumerate_traversals(shape):
            border = forward_growth(t)
            for (x, y), lab in zip(border.path, border.labels):
                if x and y and (x, y) not in shape:
                    continue
                assert ((lab[0] if lab else 0), len(lab)) == chain_lengths(t, x, y)


def test_reconstruction_inverts_growth():
    for shape in traversal_shapes(10):
        for t in enumerate_traversals(shape):
            assert traversal_from_border(forward_growth(t)) == t


def test_conjugation_on_2x2():
    shape = FerrersShape((2, 2))
    t21 = Traversal(shape, (2, 1))
    t12 = Traversal(shape, (1, 2))
    assert border_conjugate_bijection(t21) == t12
    assert inner_bijection(t21, 2, strategy="enumeration") == t12


@pytest.mark.parametrize("strategy", ["growth", "enumeration"])
def test_inner_strategies_are_bijections(strategy):
    for shape in traversal_shapes(12):
        ts = list(enumerate_traversals(shape))
        for k in (2, 3):
            src = [t for t in ts if not traversal_contains(t, increasing(k))]
            dst = {t for t in ts if not traversal_contains(t, decreasing(k))}
            image = [inner_bijection(t, k, "I->J", strategy) for t in src]
            assert len(set(image)) == len(src) and set(image) == dst
            back = [inner_bijection(t, k, "J->I", strategy) for t in image]
            assert back == src


def test_conjugation_is_involution():
    for shape in traversal_shapes(10):
        for t in enumerate_traversals(shape):
            assert border_conjugate_bijection(border_conjugate_bijection(t)) == t


def test_conjugation_scales():
    rng = make_rng(1)
    s = tuple(int(v) + 1 for v in rng.permutation(60))
    t = square_traversal(s)
    img = border_conjugate_bijection(t)
    assert lis(img.column_rows()) == lds(s) and lds(img.column_rows()) == lis(s)


def test_pairing_cache(tmp_path):
    shape = FerrersShape((3, 3, 2))
    t = next(t for t in enumerate_traversals(shape) if not traversal_contains(t, (1, 2)))
    img = enumeration_bijection(t, 2, cache_dir=tmp_path)
    path = pairing_path(tmp_path, shape, 2)
    assert path.exists() and path.read_text().strip()
    assert enumeration_bijection(img, 2, "J->I", cache_dir=tmp_path) == t


def test_conjugate():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()
