from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from permuton_lab.errors import BoundExceeded, NotATraversal
from permuton_lab.perms import contains
from permuton_lab.shapes import (FerrersShape, Traversal, avoider_count, enumerate_traversals, format_traversal,
                                 parse_shape, parse_traversal, partitions_up_to, shape_wilf_check,
                                 shape_wilf_classes, square_traversal, traversal_contains,
                                 traversal_contains_naive)


def perms_of(n):
    return [tuple(p) for p in permutations(range(1, n + 1))]


def test_shape_basics():
    s = FerrersShape((3, 2, 2))
    assert (s.height, s.width, s.size) == (3, 3, 7)
    assert (3, 1) in s and (3, 2) not in s and (1, 4) not in s
    assert s.column_heights() == (3, 3, 1)
    assert s.admits_traversal()
    assert not FerrersShape((3, 1, 1)).admits_traversal()
    assert str(parse_shape("4,4,3,1")) == "4,4,3,1"
    with pytest.raises(ValueError):
        FerrersShape((1, 2))


def test_traversal_validation():
    with pytest.raises(NotATraversal):
        Traversal(FerrersShape((2, 1)), (1, 2))
    with pytest.raises(NotATraversal):
        Traversal(FerrersShape((2, 2)), (1, 1))
    t = Traversal(FerrersShape((2, 1)), (2, 1))
    assert t.points() == [(1, 2), (2, 1)]
    assert parse_traversal(format_traversal(t)) == t


def test_traversal_counts():
    for shape in partitions_up_to(10):
        assert shape.count_traversals() == sum(1 for _ in enumerate_traversals(shape))


def test_square_traversal_containment_matches_permutations():
    pats = [p for m in range(1, 5) for p in perms_of(m)]
    for n in range(1, 7):
        for s in perms_of(n):
            t = square_traversal(s)
            assert t.column_rows() == s
            for p in pats:
                assert traversal_contains(t, p) == contains(s, p)


def test_containment_matches_naive_on_shapes():
    pats = perms_of(2) + perms_of(3)
    for shape in partitions_up_to(12):
        for t in enumerate_traversals(shape):
            for p in pats:
                assert traversal_contains(t, p) == traversal_contains_naive(t, p)


def test_figure_traversals():
    # the left filling avoids 21 inside the shape, the right one does not
    shape = FerrersShape((7, 7, 7, 5, 5, 5, 4))
    left = Traversal(shape, (1, 6, 7, 2, 3, 5, 4))
    right = Traversal(shape, (5, 6, 7, 3, 2, 4, 1))
    assert not traversal_contains(left, (2, 1))
    assert traversal_contains(right, (2, 1))


def test_bounding_box_rule():
    # the 21 occurrence's NE corner (2,2) is outside the staircase
    t = Traversal(FerrersShape((2, 1)), (2, 1))
    assert not traversal_contains(t, (2, 1))
    assert traversal_contains(t, (1,))


def test_box_bound():
    with pytest.raises(BoundExceeded):
        next(enumerate_traversals(FerrersShape((5, 5, 5, 5))))


def test_lexicographic_order():
    ts = [t.row_values for t in enumerate_traversals(FerrersShape((3, 3, 3)))]
    assert ts == sorted(ts) and len(ts) == 6


def test_shape_wilf_pairs():
    assert shape_wilf_check((1, 2), (2, 1), 9).equal
    assert shape_wilf_check((1, 2, 3), (3, 2, 1), 16).equal
    assert shape_wilf_check((1, 2, 3), (3, 1, 2), 9).equal
    rep = shape_wilf_check((1, 2, 3), (3, 1, 2), 16)
    assert not rep.equal
    shape, a, b = rep.counterexample
    assert a == avoider_count(shape, (1, 2, 3)) and b == avoider_count(shape, (3, 1, 2))


def test_shape_wilf_partition_at_16_boxes():
    classes = shape_wilf_classes(perms_of(3), 16)
    assert sorted(map(sorted, classes)) == [[(1, 2, 3), (1, 3, 2), (2, 1, 3), (3, 2, 1)], [(2, 3, 1), (3, 1, 2)]]


def test_shape_wilf_single_class_at_9_boxes():
    # only shapes up to 3x3 admit traversals here, and all counts agree
    assert len(shape_wilf_classes(perms_of(3), 9)) == 1


@given(st.sampled_from([s for s in partitions_up_to(9) if s.admits_traversal()]), st.randoms())
def test_counts_ignore_order(shape, rnd):
    ts = list(enumerate_traversals(shape))
    rnd.shuffle(ts)
    assert sum(not traversal_contains(t, (1, 3, 2)) for t in ts) == avoider_count(shape, (1, 3, 2))
