from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from permuton_lab.errors import BoundExceeded
from permuton_lab.perms import (ClassSpec, as_perm, avoids, complement, contains, contains_ending_at_last,
                                contains_naive, count_avoiders, decreasing, direct_sum, enumerate_avoiders,
                                format_perm, increasing, inverse, lds, lis, normalize_patterns, parse_perm,
                                reverse, reverse_complement, skew_sum, standardize)


def perms_of(n):
    return [tuple(p) for p in permutations(range(1, n + 1))]


perm_strategy = st.integers(0, 12).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(tuple)


def test_parse_and_format():
    assert parse_perm("3,1,4,2") == (3, 1, 4, 2)
    assert parse_perm("2413") == (2, 4, 1, 3)
    assert parse_perm("") == ()
    assert format_perm((3, 1, 2)) == "3,1,2"
    with pytest.raises(ValueError):
        parse_perm("1,1,2")


def test_sums_and_symmetries():
    assert direct_sum((1,), (2, 1)) == (1, 3, 2)
    assert skew_sum((1,), (1, 2)) == (3, 1, 2)
    assert reverse((1, 3, 2)) == (2, 3, 1)
    assert complement((1, 3, 2)) == (3, 1, 2)
    assert reverse_complement((1, 3, 2)) == (2, 1, 3)
    assert ClassSpec(2, 1, 1).pattern() == (2, 1, 3, 4)
    assert ClassSpec(2, 0, 2).pattern() == (2, 1, 4, 3)
    assert ClassSpec.parse("3,0,1").d == 3


def test_class_spec_validation():
    with pytest.raises(ValueError):
        ClassSpec(0, 1, 1)
    with pytest.raises(ValueError):
        ClassSpec(1, -1, 1)


def test_contains_examples():
    assert contains((3, 1, 4, 2), (2, 1))
    assert not contains((1, 2, 3), (2, 1))
    assert contains((2, 4, 1, 3), (2, 4, 1, 3))
    assert contains((5, 3, 4, 1, 2), (3, 1, 2))
    assert contains((), ())
    assert not contains((1,), (1, 2))


def test_contains_matches_naive_exhaustive():
    pats = [p for m in range(1, 5) for p in perms_of(m)]
    for n in range(7):
        for s in perms_of(n):
            for p in pats:
                assert contains(s, p) == contains_naive(s, p), (s, p)


@given(perm_strategy, st.permutations([1, 2, 3, 4]))
def test_contains_matches_naive_random(sigma, pattern):
    assert contains(sigma, tuple(pattern)) == contains_naive(sigma, tuple(pattern))


@given(perm_strategy)
def test_involutions(sigma):
    for f in (reverse, complement, reverse_complement, inverse):
        assert f(f(sigma)) == sigma


@given(perm_strategy, st.sampled_from(perms_of(3) + perms_of(4)))
def test_rc_preserves_containment(sigma, pattern):
    assert contains(sigma, pattern) == contains(reverse_complement(sigma), reverse_complement(pattern))


@given(perm_strategy)
def test_lis_lds(sigma):
    best_inc = max((len(c) for c in _monotone_subseqs(sigma, 1)), default=0) if len(sigma) <= 8 else None
    if best_inc is not None:
        assert lis(sigma) == best_inc
    assert lds(sigma) == lis(reverse(sigma))


def _monotone_subseqs(sigma, sign):
    # every increasing subsequence, small inputs only
    out = [()]
    for v in sigma:
        out += [c + (v,) for c in out if not c or (v - c[-1]) * sign > 0]
    return out


def test_avoidance_and_lis_exhaustive():
    for n in range(8):
        for s in perms_of(n):
            for d in range(1, 5):
                assert avoids(s, increasing(d + 1)) == (lis(s) <= d)


def test_catalan_and_wilf():
    catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
    for n in range(9):
        counts = {p: count_avoiders(n, p) for p in perms_of(3)}
        assert set(counts.values()) == {catalan[n]}


def test_enumeration_is_lexicographic_and_complete():
    got = list(enumerate_avoiders(5, (2, 3, 1)))
    assert got == sorted(got)
    assert got == [s for s in perms_of(5) if not contains_naive(s, (2, 3, 1))]


def test_pattern_sets():
    assert normalize_patterns([(1, 2, 3), (1, 2), (2, 1, 3)]) == ((1, 2),)
    assert count_avoiders(5, [(1, 2, 3), (3, 2, 1)]) == 0
    assert count_avoiders(4, [(1, 3, 2), (2, 3, 1)]) == 8


def test_proposition_example_counts():
    # I_2 + 1 and J_2 + 1 avoiders are equinumerous
    assert count_avoiders(8, (1, 2, 3, 4)) == count_avoiders(8, (2, 1, 3, 4)) == 15767


def test_bound_exceeded():
    with pytest.raises(BoundExceeded):
        next(enumerate_avoiders(11, (3, 2, 1)))
    assert count_avoiders(11, (3, 2, 1), bound=11) == 58786


def test_contains_ending_at_last():
    assert contains_ending_at_last((2, 3, 1), (2, 1))
    assert not contains_ending_at_last((2, 1, 3), (2, 1))


@settings(max_examples=50)
@given(st.lists(st.integers(-50, 50), unique=True, max_size=10))
def test_standardize(values):
    s = standardize(values)
    assert sorted(s) == list(range(1, len(values) + 1))
    assert as_perm(s) == s
