from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from permuton_lab.bwx import (avoids_monotone_sum, bwx_map, bwx_step, color_boxes, color_boxes_naive,
                              extract_lambda, frozen_region, pipeline, stage_patterns)
from permuton_lab.errors import PreconditionViolated
from permuton_lab.layers import layer_partition, sw_region
from permuton_lab.perms import (ClassSpec, contains, count_avoiders, decreasing, direct_sum, enumerate_avoiders,
                                increasing, lis)
from permuton_lab.sampling import make_rng, sample_av_increasing
from permuton_lab.shapes import FerrersShape

FIG2 = (14, 10, 17, 8, 20, 6, 15, 3, 13, 19, 11, 9, 2, 1, 18, 16, 4, 12, 7, 5)


def perms_of(n):
    return [tuple(p) for p in permutations(range(1, n + 1))]


def test_coloring_examples():
    assert color_boxes((3, 2, 1), increasing(2)).blue == set()
    blue = color_boxes((3, 1, 4, 2), increasing(1)).blue
    assert blue == {(i, j) for i in (1, 2) for j in (1, 2, 3)} | {(3, 1)}
    assert len(frozen_region((3, 1, 4, 2), increasing(1))) == 16 - 7


def test_coloring_matches_definition():
    taus = [p for m in range(1, 4) for p in perms_of(m)] + [(1, 2, 4, 3), (1, 4, 3, 2), (1, 2, 3, 4)]
    for n in range(7):
        for s in perms_of(n):
            for tau in taus:
                assert color_boxes(s, tau).blue == color_boxes_naive(s, tau)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 9).flatmap(lambda n: st.permutations(list(range(1, n + 1)))),
       st.sampled_from([(1,), (1, 2), (2, 1), (1, 3, 2), (2, 3, 1), (1, 2, 3)]))
def test_blue_is_sw_closed(sigma, tau):
    col = color_boxes(tuple(sigma), tau)
    blue = col.blue
    for i, j in blue:
        assert all((a, b) in blue for a in range(1, i + 1) for b in range(1, j + 1))


def test_lambda_examples():
    ext = extract_lambda((3, 1, 4, 2), increasing(1))
    assert ext.shape == FerrersShape((2, 2))
    assert ext.traversal.column_rows() == (2, 1)
    assert extract_lambda((3, 2, 1), increasing(2)).shape.size == 0


def test_figure_coloring():
    col = color_boxes(FIG2, increasing(2))
    assert col.heights == (16, 16, 14, 14, 14, 14, 12, 12, 10, 10, 8, 3, 3, 3, 3, 3, 0, 0, 0, 0)
    ext = extract_lambda(FIG2, increasing(2))
    assert ext.col_map == (1, 2, 4, 6, 8, 13, 14)
    assert ext.shape == FerrersShape((7, 7, 7, 5, 5, 5, 4))


def test_figure_image():
    out = bwx_map(FIG2, 2, increasing(2), strategy="growth")
    assert out == (1, 6, 17, 8, 20, 14, 15, 10, 13, 19, 11, 9, 2, 3, 18, 16, 4, 12, 7, 5)
    moved = {i for i, (a, b) in enumerate(zip(FIG2, out), 1) if a != b}
    assert moved == {1, 2, 6, 8, 14}
    assert not contains(out, direct_sum(decreasing(2), increasing(2)))


def test_bwx_examples():
    assert bwx_map((3, 1, 4, 2), 2, increasing(1)) == (1, 3, 4, 2)
    assert bwx_map((3, 2, 1), 2, increasing(2)) == (3, 2, 1)
    with pytest.raises(PreconditionViolated):
        bwx_map((1, 2, 3), 2, increasing(1))


@pytest.mark.parametrize("k,tau", [(2, (1,)), (2, (1, 2)), (3, (1,)), (2, (2, 1)), (2, (1, 3, 2))])
def test_bwx_is_bijection(k, tau):
    src_pat = direct_sum(increasing(k), tau)
    dst_pat = direct_sum(decreasing(k), tau)
    for n in range(8):
        src = list(enumerate_avoiders(n, src_pat))
        image = [bwx_map(s, k, tau) for s in src]
        assert len(set(image)) == len(src) == count_avoiders(n, dst_pat)
        assert all(not contains(p, dst_pat) for p in image)
        assert [bwx_map(p, k, tau, "J->I") for p in image] == src


def test_avoids_monotone_sum_agrees():
    for n in range(7):
        for s in perms_of(n):
            for kind, mk in (("I", increasing), ("J", decreasing)):
                assert avoids_monotone_sum(s, 2, kind, (1, 2)) == (not contains(s, direct_sum(mk(2), (1, 2))))


@pytest.mark.parametrize("spec", [(2, 0, 2), (2, 1, 1), (3, 0, 1)])
def test_pipeline_bijective(spec):
    spec = ClassSpec(*spec)
    pats = stage_patterns(spec)
    for n in range(8):
        src = list(enumerate_avoiders(n, pats["sigma"]))
        image = {pipeline(s, spec).pi for s in src}
        assert len(image) == len(src) == count_avoiders(n, pats["pi"])


def test_pipeline_identity_spec():
    spec = ClassSpec(1, 1, 1)
    for s in enumerate_avoiders(6, (1, 2, 3)):
        assert pipeline(s, spec).pi == s


def test_pipeline_classes():
    assert stage_patterns(ClassSpec(2, 0, 2))["pi"] == (2, 1, 4, 3)
    assert stage_patterns(ClassSpec(2, 1, 1))["pi"] == (2, 1, 3, 4)


def test_pipeline_precondition():
    with pytest.raises(PreconditionViolated):
        pipeline((1, 2, 3, 4), ClassSpec(2, 1, 1))


def test_pipeline_trace_json():
    import json
    tr = pipeline((3, 1, 4, 2), ClassSpec(2, 0, 1))
    data = json.loads(tr.to_json())
    assert data["rho"] == "1,3,4,2" and data["spec"] == [2, 0, 1]


@pytest.mark.parametrize("n,spec", [(200, (2, 1, 1)), (400, (2, 0, 2)), (300, (3, 0, 1))])
def test_pipeline_large(n, spec):
    spec = ClassSpec(*spec)
    sigma = sample_av_increasing(n, spec.d, make_rng(3, n))
    pi = pipeline(sigma, spec).pi
    assert sorted(pi) == list(range(1, n + 1))
    assert pi != sigma or spec.k1 == 1


def _bridge_ok(s, spec, layers):
    part = layer_partition(s)
    sw = sw_region([i for l in layers for i in part.layer(l)], s)
    col = color_boxes(s, increasing(spec.k2 + spec.k3))
    return all(h <= sw.heights[i] for i, h in enumerate(col.heights))


@pytest.mark.parametrize("spec", [(2, 0, 2), (2, 1, 1), (3, 0, 1)])
def test_frozen_bridge_union_of_layers(spec):
    spec = ClassSpec(*spec)
    layers = range(1, spec.k1 + 1)
    for n in range(9):
        for s in enumerate_avoiders(n, increasing(spec.d + 1)):
            assert _bridge_ok(s, spec, layers)
    for t in range(20):
        s = sample_av_increasing(400, spec.d, make_rng(8, t))
        assert _bridge_ok(s, spec, layers)


def test_frozen_bridge_single_layer_counterexample():
    # the k1-th layer alone can be empty while boxes are blue
    spec = ClassSpec(3, 0, 1)
    assert not _bridge_ok((1, 2), spec, [3])
    assert _bridge_ok((1, 2), spec, [1, 2, 3])


def test_lambda_stable_after_map():
    for n in range(8):
        for s in enumerate_avoiders(n, (1, 2, 3)):
            out = bwx_map(s, 2, (1,))
            assert color_boxes(out, (1,)).heights == color_boxes(s, (1,)).heights


def test_step_json():
    step = bwx_step((3, 1, 4, 2), 2, (1,))
    data = step.to_json()
    assert data["lambda"] == "2,2" and data["image"] == "1,3,4,2"
