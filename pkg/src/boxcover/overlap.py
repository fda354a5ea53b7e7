"""Overlapping-box covering, the fuzzy box-number estimator, and the
sampling pipeline (proposal generators plus greedy selection strategies)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .boxes import Cover, CoverMode, SizeSpec
from .burning import random_sequential
from .graphs import DistanceMatrix


def obca(dm: DistanceMatrix, lb_impl: int) -> Cover:
    """Overlapping box covering. Candidate centers are visited in ascending
    degree order (ties by node id), skipping already-covered nodes; each
    proposal starts as the center's ball and is pruned pairwise, members
    ordered by current covered frequency. Boxes whose members all ended up
    multiply covered are deleted afterwards, in insertion order. Fully
    deterministic."""
    if lb_impl < 1:
        raise ValueError("impl size must be >= 1")
    n = dm.n
    degrees = (dm.d == 1).sum(axis=1)
    order = sorted(range(n), key=lambda v: (int(degrees[v]), v))
    freq = np.zeros(n, dtype=np.int64)
    boxes: list[list[int]] = []
    for center in order:
        if freq[center] > 0:
            continue
        ball_nodes = np.flatnonzero(dm.d[center] <= lb_impl).tolist()
        box = set(ball_nodes)
        members = sorted(ball_nodes, key=lambda v: (int(freq[v]), v))
        for i in range(len(members)):
            if members[i] not in box:
                continue
            for j in range(i + 1, len(members)):
                if dm.d[members[i], members[j]] > lb_impl:
                    if members[j] == center:
                        box.discard(members[i])
                        break
                    box.discard(members[j])
        for v in box:
            freq[v] += 1
        boxes.append(sorted(box))
    kept: list[list[int]] = []
    for box in boxes:
        if all(freq[v] > 1 for v in box):
            for v in box:
                freq[v] -= 1
        else:
            kept.append(box)
    return Cover(
        boxes=[frozenset(b) for b in kept],
        mode=CoverMode.OVERLAPPING,
        size=SizeSpec.impl(lb_impl),
    )


@dataclass(frozen=True)
class FuzzyEstimate:
    radius: float
    inverse_boxes: float   # estimated fraction of the network one box covers
    boxes_estimate: float  # its inverse; not a constructive box count


def fuzzy(dm: DistanceMatrix, radii) -> list[FuzzyEstimate]:
    """Membership-decay estimate of the box number: every node pair within
    the radius contributes exp(-d^2/r^2), normalized over ordered pairs.
    Returns estimates only; no boxes are built."""
    n = dm.n
    if n < 2:
        raise ValueError("estimator undefined for a single node")
    iu = np.triu_indices(n, k=1)
    dvals = dm.d[iu].astype(np.float64)
    out = []
    for r in radii:
        if r <= 0:
            raise ValueError("radii must be positive")
        sel = dvals[dvals <= r]
        total = 2.0 * np.exp(-(sel**2) / float(r) ** 2).sum()
        inv = float(total / (n * (n - 1)))
        est = math.inf if inv == 0.0 else 1.0 / inv
        out.append(FuzzyEstimate(radius=float(r), inverse_boxes=inv, boxes_estimate=est))
    return out


def maximal_box_sampling(
    dm: DistanceMatrix, lb_impl: int, n_proposals: int, rng: np.random.Generator
) -> list[frozenset[int]]:
    """Grow at least `n_proposals` maximal boxes, continuing past that count
    until the proposals jointly cover every node. Seeds are drawn from the
    still-uncovered set while one exists, then from all nodes; each box is
    grown by uniform draws from the shrinking compatible candidate set."""
    if n_proposals < 1:
        raise ValueError("need at least one proposal")
    if lb_impl < 1:
        raise ValueError("impl size must be >= 1")
    n = dm.n
    uncovered = np.ones(n, dtype=bool)
    proposals: list[frozenset[int]] = []
    while len(proposals) < n_proposals or uncovered.any():
        if uncovered.any():
            seed = int(rng.choice(np.flatnonzero(uncovered)))
        else:
            seed = int(rng.integers(n))
        cand = dm.d[seed] <= lb_impl
        cand = cand.copy()
        cand[seed] = False
        box = [seed]
        while cand.any():
            t = int(rng.choice(np.flatnonzero(cand)))
            box.append(t)
            cand &= dm.d[t] <= lb_impl
            cand[t] = False
        proposals.append(frozenset(box))
        uncovered[box] = False
    return proposals


def rs_box_proposals(
    dm: DistanceMatrix, rb: int, n_runs: int, rng: np.random.Generator
) -> list[frozenset[int]]:
    """Pool the boxes of `n_runs` independent random-sequential covers."""
    if n_runs < 1:
        raise ValueError("need at least one run")
    proposals: list[frozenset[int]] = []
    for _ in range(n_runs):
        proposals.extend(random_sequential(dm, rb, rng).boxes)
    return proposals


class SelectionStrategy(str, Enum):
    BIG_BOX_FIRST = "big_box_first"
    SMALL_BOX_REMOVAL = "small_box_removal"


def select_boxes(
    proposals,
    strategy: SelectionStrategy,
    n_nodes: int,
    size: SizeSpec,
) -> Cover:
    """Tile the network from box proposals. Big-box-first repeatedly emits
    the uncovered part of the proposal with most uncovered nodes. Small-box
    removal walks proposals by ascending residual size, keeping one exactly
    when it holds a node no other live proposal covers, re-sorting the
    unprocessed tail after each acceptance."""
    member_arrays = [np.fromiter(p, dtype=np.int64) for p in proposals]
    covered_by = np.zeros(n_nodes, dtype=np.int64)
    for arr in member_arrays:
        covered_by[arr] += 1
    if (covered_by == 0).any():
        raise ValueError("proposals do not cover every node")

    uncovered = np.ones(n_nodes, dtype=bool)
    emitted: list[frozenset[int]] = []

    if strategy == SelectionStrategy.BIG_BOX_FIRST:
        residual = np.array([len(a) for a in member_arrays])
        while True:
            best = int(np.argmax(residual))
            if residual[best] == 0:
                break
            arr = member_arrays[best]
            fresh = arr[uncovered[arr]]
            emitted.append(frozenset(fresh.tolist()))
            uncovered[fresh] = False
            residual = np.array([int(uncovered[a].sum()) for a in member_arrays])
    else:
        counts = covered_by.copy()
        order = sorted(range(len(member_arrays)), key=lambda i: len(member_arrays[i]))
        j = 0
        while j < len(order):
            arr = member_arrays[order[j]]
            if (counts[arr] == 1).any():
                fresh = arr[uncovered[arr]]
                emitted.append(frozenset(fresh.tolist()))
                counts[fresh] = 0
                uncovered[fresh] = False
                tail = order[j + 1 :]
                tail.sort(key=lambda i: int(uncovered[member_arrays[i]].sum()))
                order[j + 1 :] = tail
            else:
                counts[arr] -= 1
            j += 1
    return Cover(boxes=emitted, mode=CoverMode.PARTITION, size=size)
