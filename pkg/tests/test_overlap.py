import math

import numpy as np
import pytest

from boxcover import overlap
from boxcover.boxes import CoverMode, SizeSpec, validate_cover
from boxcover.graphs import all_pairs_distances
from boxcover.oracle import generate

from conftest import StubRng


def _dm(kind, *dims):
    return all_pairs_distances(generate(kind, *dims))


def test_obca_star_one_box():
    # lowest-id leaf proposes the whole star (leaf pairs sit at distance 2)
    cover = overlap.obca(_dm("star", 4), 2)
    assert cover.n_boxes == 1
    assert cover.boxes[0] == frozenset(range(4))
    assert cover.mode == CoverMode.OVERLAPPING


def test_obca_complete_one_box():
    assert overlap.obca(_dm("complete", 3), 1).n_boxes == 1


def test_obca_deterministic_and_valid(corpus):
    for g, dm in corpus[:30]:
        a = overlap.obca(dm, 1)
        b = overlap.obca(dm, 1)
        assert a.boxes == b.boxes
        assert validate_cover(a, dm).ok


def test_obca_no_redundant_boxes_remain(corpus):
    rng = np.random.default_rng(2)
    for g, dm in corpus[:40]:
        lb = int(rng.integers(1, dm.diameter + 1))
        cover = overlap.obca(dm, lb)
        freq = np.zeros(g.n, dtype=int)
        for box in cover.boxes:
            for v in box:
                freq[v] += 1
        assert (freq >= 1).all()
        for box in cover.boxes:
            assert any(freq[v] == 1 for v in box), "redundant box survived pruning"


def test_fuzzy_hand_values():
    est = overlap.fuzzy(_dm("path", 2), [1.0])[0]
    assert abs(est.inverse_boxes - math.exp(-1)) < 1e-12
    assert abs(est.boxes_estimate - math.e) < 1e-10
    est = overlap.fuzzy(_dm("path", 3), [2.0])[0]
    expected = 2 * (2 * math.exp(-0.25) + math.exp(-1)) / 6
    assert abs(est.inverse_boxes - expected) < 1e-12
    assert abs(est.inverse_boxes - 0.64183) < 5e-6


def test_fuzzy_limits_and_monotonicity():
    dm = _dm("grid", 3, 3)
    radii = [1.0, 2.0, 3.0, 4.0, 8.0, 1e6]
    ests = overlap.fuzzy(dm, radii)
    values = [e.inverse_boxes for e in ests]
    assert all(0 < v <= 1 for v in values)
    assert all(a <= b + 1e-15 for a, b in zip(values, values[1:]))
    assert abs(values[-1] - 1.0) < 1e-6
    assert abs(ests[-1].boxes_estimate - 1.0) < 1e-5


def test_fuzzy_rejects_degenerate():
    with pytest.raises(ValueError):
        overlap.fuzzy(_dm("path", 2), [0.0])


def test_maximal_box_sampling_complete():
    dm = _dm("complete", 3)
    props = overlap.maximal_box_sampling(dm, 1, 5, np.random.default_rng(0))
    assert len(props) == 5
    assert all(p == frozenset({0, 1, 2}) for p in props)


def test_maximal_box_sampling_p4_trace():
    dm = _dm("path", 4)
    # seed 1, then draw 0: box {0,1}, candidates emptied; later proposals
    # seed from what is still uncovered
    props = overlap.maximal_box_sampling(dm, 1, 1, StubRng([1, 0, 2, 3]))
    assert props[0] == frozenset({0, 1})


def test_maximal_box_sampling_covers_and_respects_size(corpus):
    rng = np.random.default_rng(4)
    for g, dm in corpus[:30]:
        lb = int(rng.integers(1, dm.diameter + 1))
        props = overlap.maximal_box_sampling(dm, lb, 3, np.random.default_rng(1))
        covered = set().union(*props)
        assert covered == set(range(g.n))
        for p in props:
            members = np.fromiter(p, dtype=np.int64)
            assert int(dm.d[np.ix_(members, members)].max()) <= lb


def test_select_boxes_single_proposal():
    dm = _dm("path", 4)
    proposals = [frozenset({0, 1, 2, 3})]
    for strategy in overlap.SelectionStrategy:
        cover = overlap.select_boxes(proposals, strategy, 4, SizeSpec.impl(3))
        assert cover.n_boxes == 1


def test_select_boxes_small_removal_trace():
    proposals = [frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3})]
    cover = overlap.select_boxes(
        proposals, overlap.SelectionStrategy.SMALL_BOX_REMOVAL, 4, SizeSpec.impl(1)
    )
    assert set(cover.boxes) == {frozenset({0, 1}), frozenset({2, 3})}


def test_select_boxes_requires_coverage():
    with pytest.raises(ValueError, match="cover"):
        overlap.select_boxes(
            [frozenset({0, 1})], overlap.SelectionStrategy.BIG_BOX_FIRST, 3, SizeSpec.impl(1)
        )


def test_sampling_pipeline_partitions(corpus):
    rng = np.random.default_rng(9)
    for g, dm in corpus[:30]:
        lb = int(rng.integers(1, dm.diameter + 1))
        props = overlap.maximal_box_sampling(dm, lb, 4, np.random.default_rng(2))
        for strategy in overlap.SelectionStrategy:
            cover = overlap.select_boxes(props, strategy, g.n, SizeSpec.impl(lb))
            assert validate_cover(cover, dm).ok
        rb = max(1, lb // 2)
        props_rs = overlap.rs_box_proposals(dm, rb, 3, np.random.default_rng(3))
        cover = overlap.select_boxes(
            props_rs, overlap.SelectionStrategy.SMALL_BOX_REMOVAL, g.n, SizeSpec.radius(rb)
        )
        assert validate_cover(cover, dm).ok
