"""Box-size conventions, the cover data model, validation, and the shared
center-to-box assignment step used by the radius-based algorithms."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .graphs import DistanceMatrix


class SizeConversionError(ValueError):
    """No exact equivalent exists in the requested convention."""


class Convention(str, Enum):
    RADIUS = "radius"
    IMPL_DIAMETER = "impl"
    EVAL_DIAMETER = "eval"


@dataclass(frozen=True)
class SizeSpec:
    """A box size together with the convention it is expressed in.

    The three conventions are tied by eval = impl + 1 = 2*radius + 1: an
    "eval" box holds nodes at pairwise distance strictly below its value,
    an "impl" box allows distance up to its value, and a radius box keeps
    every member within the radius of a center.
    """

    kind: Convention
    value: int

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"size value must be >= 1, got {self.value}")
        if self.kind == Convention.EVAL_DIAMETER and self.value < 2:
            raise ValueError("eval sizes below 2 have no impl equivalent")

    @staticmethod
    def radius(value: int) -> "SizeSpec":
        return SizeSpec(Convention.RADIUS, value)

    @staticmethod
    def impl(value: int) -> "SizeSpec":
        return SizeSpec(Convention.IMPL_DIAMETER, value)

    @staticmethod
    def eval(value: int) -> "SizeSpec":
        return SizeSpec(Convention.EVAL_DIAMETER, value)

    def eval_value(self) -> int:
        if self.kind == Convention.RADIUS:
            return 2 * self.value + 1
        if self.kind == Convention.IMPL_DIAMETER:
            return self.value + 1
        return self.value

    def impl_value(self) -> int:
        return self.eval_value() - 1

    def radius_value(self) -> int:
        ev = self.eval_value()
        if ev % 2 == 0:
            raise SizeConversionError(f"eval size {ev} has no radius equivalent")
        return (ev - 1) // 2

    def to_eval(self) -> "SizeSpec":
        return SizeSpec(Convention.EVAL_DIAMETER, self.eval_value())


class CoverMode(str, Enum):
    PARTITION = "partition"
    OVERLAPPING = "overlapping"


@dataclass
class Cover:
    """A box cover: list of node sets plus the size it was produced for."""

    boxes: list[frozenset[int]]
    mode: CoverMode
    size: SizeSpec
    centers: list[int] | None = None

    @property
    def n_boxes(self) -> int:
        return len(self.boxes)

    def to_json(self, labels=None) -> str:
        def lab(v):
            return labels[v] if labels is not None else v

        payload = {
            "mode": self.mode.value,
            "eval_size": self.size.eval_value(),
            "boxes": [sorted((lab(v) for v in box), key=str) for box in self.boxes],
        }
        return json.dumps(payload)


@dataclass
class ValidityReport:
    """Violations found by validate_cover; empty lists mean a clean cover."""

    missing_nodes: list[int] = field(default_factory=list)
    multiply_assigned: list[int] = field(default_factory=list)
    empty_boxes: list[int] = field(default_factory=list)
    oversized_boxes: list[int] = field(default_factory=list)
    off_center_boxes: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.missing_nodes
            or self.multiply_assigned
            or self.empty_boxes
            or self.oversized_boxes
            or self.off_center_boxes
        )


def validate_cover(cover: Cover, dm: DistanceMatrix) -> ValidityReport:
    """Check coverage, disjointness (partition mode), the diameter rule for
    the cover's size, and the radius rule when centers are recorded.
    Violations are reported, never raised."""
    rep = ValidityReport()
    n = dm.n
    counts = np.zeros(n, dtype=np.int64)
    lb_impl = cover.size.impl_value()
    for i, box in enumerate(cover.boxes):
        if not box:
            rep.empty_boxes.append(i)
            continue
        members = np.fromiter(box, dtype=np.int64)
        counts[members] += 1
        sub = dm.d[np.ix_(members, members)]
        if int(sub.max()) > lb_impl:
            rep.oversized_boxes.append(i)
    rep.missing_nodes = np.flatnonzero(counts == 0).tolist()
    if cover.mode == CoverMode.PARTITION:
        rep.multiply_assigned = np.flatnonzero(counts > 1).tolist()
    if cover.centers is not None:
        r = cover.size.radius_value()
        for i, (box, c) in enumerate(zip(cover.boxes, cover.centers)):
            if box and any(dm.d[c, v] > r for v in box):
                rep.off_center_boxes.append(i)
    return rep


def build_boxes_from_centers(
    centers,
    dm: DistanceMatrix,
    radius: int,
    rng: np.random.Generator | None = None,
) -> Cover:
    """Grow connected boxes around the given centers.

    Centers seed singleton boxes; the remaining nodes are processed in
    ascending order of distance to the nearest center and each joins the box
    of a neighbor strictly closer to a center (uniformly chosen when `rng`
    is given, lowest node id otherwise). Box count always equals the number
    of centers.
    """
    centers = sorted(centers)
    if not centers:
        raise ValueError("no centers given")
    c_dist = dm.d[centers].min(axis=0)
    if int(c_dist.max()) > radius:
        far = int(np.flatnonzero(c_dist > radius)[0])
        raise ValueError(f"node {far} is not within {radius} of any center")
    box_of = np.full(dm.n, -1, dtype=np.int64)
    for i, c in enumerate(centers):
        box_of[c] = i
    order = sorted(
        (v for v in range(dm.n) if box_of[v] < 0), key=lambda v: (c_dist[v], v)
    )
    for v in order:
        nbrs = np.flatnonzero(dm.d[v] == 1)
        eligible = nbrs[c_dist[nbrs] < c_dist[v]]
        pick = int(rng.choice(eligible)) if rng is not None else int(eligible[0])
        box_of[v] = box_of[pick]
    boxes = [frozenset() for _ in centers]
    groups: list[list[int]] = [[] for _ in centers]
    for v in range(dm.n):
        groups[box_of[v]].append(v)
    boxes = [frozenset(gp) for gp in groups]
    return Cover(
        boxes=boxes,
        mode=CoverMode.PARTITION,
        size=SizeSpec.radius(radius),
        centers=list(centers),
    )
