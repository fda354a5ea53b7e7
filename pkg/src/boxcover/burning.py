"""Classic and burning-type covering algorithms: greedy coloring on the
auxiliary graph, random sequential, compact box burning, excluded-mass
center selection (plain, closeness-weighted, and mixed), and the
successive-aggregation merge algorithm."""
from __future__ import annotations

import numpy as np

from .boxes import Cover, CoverMode, SizeSpec, build_boxes_from_centers
from .graphs import DistanceMatrix, Graph, _assemble


def conflict_matrix(dm: DistanceMatrix, lb_impl: int) -> np.ndarray:
    """Boolean matrix with True where two nodes cannot share a box."""
    if lb_impl < 1:
        raise ValueError("impl size must be >= 1")
    return dm.d > lb_impl


def auxiliary_graph(dm: DistanceMatrix, lb_impl: int) -> Graph:
    """Same nodes, edges exactly between pairs farther apart than lb_impl."""
    conflict = conflict_matrix(dm, lb_impl)
    n = dm.n
    edges = {(i, int(j)) for i in range(n) for j in np.flatnonzero(conflict[i]) if i < j}
    return _assemble(n, edges, [str(i) for i in range(n)])


def greedy_color_sequence(conflict: np.ndarray, order) -> np.ndarray:
    """Sequential greedy coloring: visit nodes in `order`, assign each the
    smallest color absent among its conflict-graph neighbors."""
    n = conflict.shape[0]
    colors = np.full(n, -1, dtype=np.int64)
    for v in order:
        used = colors[conflict[v]]
        used = used[used >= 0]
        if used.size == 0:
            colors[v] = 0
            continue
        taken = np.zeros(int(used.max()) + 2, dtype=bool)
        taken[used] = True
        colors[v] = int(np.flatnonzero(~taken)[0])
    return colors


def _cover_from_colors(colors: np.ndarray, size: SizeSpec) -> Cover:
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(colors.tolist()):
        groups.setdefault(c, []).append(v)
    boxes = [frozenset(groups[c]) for c in sorted(groups)]
    return Cover(boxes=boxes, mode=CoverMode.PARTITION, size=size)


def greedy_coloring(
    dm: DistanceMatrix,
    lb_impl: int,
    rng: np.random.Generator,
    conflict: np.ndarray | None = None,
) -> Cover:
    """Greedy coloring of the auxiliary graph in a uniformly random node
    order; color classes are the boxes."""
    if conflict is None:
        conflict = conflict_matrix(dm, lb_impl)
    order = rng.permutation(dm.n)
    colors = greedy_color_sequence(conflict, order)
    return _cover_from_colors(colors, SizeSpec.impl(lb_impl))


def random_sequential(dm: DistanceMatrix, rb: int, rng: np.random.Generator) -> Cover:
    """Burn balls around uniformly chosen uncovered centers. Boxes may be
    disconnected: later boxes are set differences against earlier ones."""
    if rb < 1:
        raise ValueError("radius must be >= 1")
    uncovered = np.ones(dm.n, dtype=bool)
    boxes: list[frozenset[int]] = []
    centers: list[int] = []
    while uncovered.any():
        cand = np.flatnonzero(uncovered)
        c = int(rng.choice(cand))
        members = cand[dm.d[c, cand] <= rb]
        boxes.append(frozenset(members.tolist()))
        centers.append(c)
        uncovered[members] = False
    return Cover(
        boxes=boxes, mode=CoverMode.PARTITION, size=SizeSpec.radius(rb), centers=centers
    )


def cbb(dm: DistanceMatrix, lb_impl: int, rng: np.random.Generator) -> Cover:
    """Compact box burning: grow each box by drawing from the candidate set
    of uncovered nodes compatible with everything drawn so far."""
    if lb_impl < 1:
        raise ValueError("impl size must be >= 1")
    uncovered = np.ones(dm.n, dtype=bool)
    boxes: list[frozenset[int]] = []
    while uncovered.any():
        cand = uncovered.copy()
        box: list[int] = []
        while cand.any():
            p = int(rng.choice(np.flatnonzero(cand)))
            box.append(p)
            cand &= dm.d[p] <= lb_impl
            cand[p] = False
        boxes.append(frozenset(box))
        uncovered[box] = False
    return Cover(boxes=boxes, mode=CoverMode.PARTITION, size=SizeSpec.impl(lb_impl))


def excluded_mass(dm: DistanceMatrix, rb: int, uncovered: np.ndarray) -> np.ndarray:
    """Per node: number of uncovered nodes within rb (itself included)."""
    return (dm.d <= rb) @ uncovered.astype(np.int64)


def memb(dm: DistanceMatrix, rb: int, rng: np.random.Generator) -> Cover:
    """Maximal excluded mass burning. Masses are recomputed each round over
    non-center nodes (covered nodes may still become centers); mass ties go
    to the lowest node id, so the box count is seed-independent and only the
    final node-to-center allocation uses the rng. Boxes are grown around the
    centers, so every box induces a connected subgraph."""
    if rb < 1:
        raise ValueError("radius must be >= 1")
    within = dm.d <= rb
    uncovered = np.ones(dm.n, dtype=np.int64)
    is_center = np.zeros(dm.n, dtype=bool)
    centers: list[int] = []
    while uncovered.any():
        mass = within @ uncovered
        mass[is_center] = -1
        p = int(np.argmax(mass))
        centers.append(p)
        is_center[p] = True
        uncovered[within[p]] = 0
    return build_boxes_from_centers(centers, dm, rb, rng)


def remcc_centers(dm: DistanceMatrix, rb: int) -> list[int]:
    """Centers by maximal (excluded mass) * (mean shortest-path length),
    drawn from uncovered nodes only. Fully deterministic: ties go to the
    lowest node id."""
    if rb < 1:
        raise ValueError("radius must be >= 1")
    n = dm.n
    within = dm.d <= rb
    mean_dist = dm.d.sum(axis=1, dtype=np.float64) / (n - 1)
    uncovered = np.ones(n, dtype=np.int64)
    centers: list[int] = []
    while uncovered.any():
        f = (within @ uncovered) * mean_dist
        f[uncovered == 0] = -np.inf
        p = int(np.argmax(f))
        centers.append(p)
        uncovered[within[p]] = 0
    return centers


def remcc(dm: DistanceMatrix, rb: int) -> Cover:
    """Deterministic end to end: center selection has no randomness and the
    box-building step resolves choices by lowest node id."""
    return build_boxes_from_centers(remcc_centers(dm, rb), dm, rb, rng=None)


def mcwr(
    dm: DistanceMatrix, rb: int, p_mix: float, rng: np.random.Generator
) -> Cover:
    """Mix of excluded-mass and random center selection with incremental
    mass bookkeeping: after covering a ball, masses drop only for nodes
    within rb of each newly covered node."""
    if not 0.0 <= p_mix <= 1.0:
        raise ValueError("mixing probability must be in [0, 1]")
    if rb < 1:
        raise ValueError("radius must be >= 1")
    within = dm.d <= rb
    mass = within.sum(axis=1).astype(np.int64)
    uncovered = np.ones(dm.n, dtype=bool)
    is_center = np.zeros(dm.n, dtype=bool)
    centers: list[int] = []
    while uncovered.any():
        if rng.random() < p_mix:
            scored = np.where(is_center, -1, mass)
            v = int(np.argmax(scored))  # same lowest-id tie rule as memb
        else:
            # covered nodes stay eligible unless their ball is exhausted
            eligible = np.flatnonzero(~is_center & (mass > 0))
            v = int(rng.choice(eligible))
        newly = np.flatnonzero(within[v] & uncovered)
        mass -= within[newly].sum(axis=0, dtype=np.int64)
        uncovered[newly] = False
        is_center[v] = True
        centers.append(v)
    return build_boxes_from_centers(centers, dm, rb, rng)


class _Cluster:
    __slots__ = ("members", "diam")

    def __init__(self, members: np.ndarray, diam: int):
        self.members = members
        self.diam = diam


def merge_level(
    boxes, dm: DistanceMatrix, level: int, rng: np.random.Generator
) -> list[frozenset[int]]:
    """One aggregation sweep at the given impl size: repeatedly draw a random
    live cluster, merge it with a uniformly chosen compatible partner (the
    union stays live for further merging), or retire it when no partner
    forms a valid box. Retirement is final: unions only grow, so a cluster
    with no valid partner never gains one later in the sweep."""
    live: list[_Cluster] = []
    for box in boxes:
        members = np.fromiter(box, dtype=np.int64)
        members.sort()
        diam = int(dm.d[np.ix_(members, members)].max()) if len(members) > 1 else 0
        live.append(_Cluster(members, diam))
    retired: list[_Cluster] = []
    while live:
        i = int(rng.integers(len(live)))
        ci = live.pop(i)
        if ci.diam > level:
            retired.append(ci)
            continue
        reach = dm.d[ci.members].max(axis=0)  # distance to farthest ci member
        partners = [
            j
            for j, cj in enumerate(live)
            if cj.diam <= level and int(reach[cj.members].max()) <= level
        ]
        if partners:
            j = partners[int(rng.integers(len(partners)))]
            cj = live.pop(j)
            union = np.concatenate([ci.members, cj.members])
            union.sort()
            diam = max(ci.diam, cj.diam, int(reach[cj.members].max()))
            live.append(_Cluster(union, diam))
        else:
            retired.append(ci)
    return [frozenset(c.members.tolist()) for c in retired]


def merge_algorithm(
    dm: DistanceMatrix, lb_impl_max: int, rng: np.random.Generator
) -> list[Cover]:
    """Successive aggregation from singletons: one sweep per impl size
    1..lb_impl_max, reusing the previous level's clusters. Returns the
    whole sequence of covers so callers can amortize one run over all
    sizes."""
    if lb_impl_max < 1:
        raise ValueError("impl size must be >= 1")
    boxes: list[frozenset[int]] = [frozenset([v]) for v in range(dm.n)]
    covers: list[Cover] = []
    for level in range(1, lb_impl_max + 1):
        boxes = merge_level(boxes, dm, level, rng)
        covers.append(
            Cover(boxes=list(boxes), mode=CoverMode.PARTITION, size=SizeSpec.impl(level))
        )
    return covers
