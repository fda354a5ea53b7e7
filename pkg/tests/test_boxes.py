import numpy as np
import pytest

from boxcover.boxes import (
    Cover,
    CoverMode,
    SizeConversionError,
    SizeSpec,
    build_boxes_from_centers,
    validate_cover,
)
from boxcover.graphs import all_pairs_distances
from boxcover.oracle import generate


def test_size_conversions():
    assert SizeSpec.radius(2).eval_value() == 5
    assert SizeSpec.impl(1).eval_value() == 2
    assert SizeSpec.eval(5).radius_value() == 2
    assert SizeSpec.eval(5).impl_value() == 4
    assert SizeSpec.radius(3).to_eval() == SizeSpec.eval(7)


def test_radius_eval_roundtrip():
    for r in range(1, 20):
        assert SizeSpec.radius(r).to_eval().radius_value() == r
    for l in range(1, 20):
        assert SizeSpec.impl(l).to_eval().impl_value() == l


def test_even_eval_has_no_radius():
    with pytest.raises(SizeConversionError):
        SizeSpec.eval(4).radius_value()


def test_size_value_bounds():
    with pytest.raises(ValueError):
        SizeSpec.radius(0)
    with pytest.raises(ValueError):
        SizeSpec.eval(1)


def _p4():
    g = generate("path", 4)
    return all_pairs_distances(g)


def test_validate_partition_ok():
    dm = _p4()
    cover = Cover(
        boxes=[frozenset({0, 1}), frozenset({2, 3})],
        mode=CoverMode.PARTITION,
        size=SizeSpec.impl(1),
    )
    assert validate_cover(cover, dm).ok


def test_validate_flags_diameter_violations():
    dm = _p4()
    cover = Cover(
        boxes=[frozenset({0, 2}), frozenset({1, 3})],
        mode=CoverMode.PARTITION,
        size=SizeSpec.impl(1),
    )
    rep = validate_cover(cover, dm)
    assert not rep.ok
    assert rep.oversized_boxes == [0, 1]


def test_validate_flags_missing_and_duplicates():
    dm = _p4()
    rep = validate_cover(
        Cover([frozenset({0, 1}), frozenset({1, 2})], CoverMode.PARTITION, SizeSpec.impl(1)),
        dm,
    )
    assert rep.missing_nodes == [3]
    assert rep.multiply_assigned == [1]
    # overlapping mode tolerates the double assignment
    rep = validate_cover(
        Cover([frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3})],
              CoverMode.OVERLAPPING, SizeSpec.impl(1)),
        dm,
    )
    assert rep.ok


def test_validate_radius_rule_with_centers():
    dm = _p4()
    bad = Cover(
        boxes=[frozenset({0, 1, 2}), frozenset({3})],
        mode=CoverMode.PARTITION,
        size=SizeSpec.radius(1),
        centers=[0, 3],
    )
    rep = validate_cover(bad, dm)
    assert rep.off_center_boxes == [0]  # node 2 is two hops from center 0


def test_build_boxes_star_single_center():
    dm = all_pairs_distances(generate("star", 4))
    cover = build_boxes_from_centers([0], dm, 1, np.random.default_rng(0))
    assert cover.n_boxes == 1
    assert cover.boxes[0] == frozenset(range(4))


def test_build_boxes_p4_deterministic_split():
    dm = _p4()
    cover = build_boxes_from_centers([0, 3], dm, 1, np.random.default_rng(5))
    assert set(cover.boxes) == {frozenset({0, 1}), frozenset({2, 3})}


def _connected(dm, box):
    box = set(box)
    start = next(iter(box))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in np.flatnonzero(dm.d[u] == 1):
            if int(v) in box and int(v) not in seen:
                seen.add(int(v))
                stack.append(int(v))
    return seen == box


def test_build_boxes_count_and_connectivity_any_seed(corpus):
    for g, dm in corpus[:40]:
        rng = np.random.default_rng(dm.n)
        radius = max(1, dm.diameter)  # any node reaches a center
        centers = [0] if dm.n < 4 else [0, dm.n - 1]
        counts = set()
        for seed in range(10):
            cover = build_boxes_from_centers(centers, dm, radius, np.random.default_rng(seed))
            counts.add(cover.n_boxes)
            assert validate_cover(cover, dm).ok
            assert all(_connected(dm, box) for box in cover.boxes)
        assert counts == {len(centers)}


def test_build_boxes_rejects_uncoverable():
    dm = _p4()
    with pytest.raises(ValueError, match="not within"):
        build_boxes_from_centers([0], dm, 1, np.random.default_rng(0))


def test_cover_json_uses_labels():
    dm = _p4()
    cover = Cover([frozenset({0, 1}), frozenset({2, 3})], CoverMode.PARTITION, SizeSpec.impl(1))
    payload = cover.to_json(labels=("a", "b", "c", "d"))
    assert '"eval_size": 2' in payload
    assert '["a", "b"]' in payload
