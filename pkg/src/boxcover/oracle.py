"""Exact minimum box cover for tiny graphs, plus deterministic synthetic
graph generators used as test fixtures."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boxes import Cover, CoverMode, SizeSpec
from .graphs import DistanceMatrix, Graph, _assemble


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: Cover


def exact_min_cover(dm: DistanceMatrix, lb_impl: int, node_limit: int = 14) -> OracleResult:
    """Branch-and-bound minimum partition into boxes of diameter <= lb_impl.

    Box covering is graph coloring of the conflict graph (edges between node
    pairs farther apart than lb_impl), so the search assigns nodes to boxes in
    order, only ever opening one new box, and prunes with a packing bound:
    any box lies inside some member's ball, so the remaining nodes need at
    least ceil(remaining / largest remaining ball) extra boxes.
    """
    n = dm.n
    if n > node_limit:
        raise ValueError(f"exact cover limited to {node_limit} nodes, got {n}")
    if lb_impl < 1:
        raise ValueError("impl size must be >= 1")
    conflict = dm.d > lb_impl
    # Most-constrained-first ordering tightens the search tree.
    order = sorted(range(n), key=lambda v: -int(conflict[v].sum()))
    ball_sizes = (dm.d <= lb_impl).sum(axis=1)

    best_count = n + 1
    best_assign: list[int] | None = None
    assign = [-1] * n

    def recurse(idx: int, used: int, members: list[list[int]]):
        nonlocal best_count, best_assign
        if idx == n:
            if used < best_count:
                best_count = used
                best_assign = assign.copy()
            return
        rest = order[idx:]
        # Every box meeting the remaining set R fits inside some R-member's
        # ball, so >= ceil(|R| / largest remaining ball) boxes touch R.
        largest = max(int(ball_sizes[v]) for v in rest)
        if max(used, -(-len(rest) // largest)) >= best_count:
            return
        v = order[idx]
        for b in range(used):
            if not any(conflict[v, u] for u in members[b]):
                assign[v] = b
                members[b].append(v)
                recurse(idx + 1, used, members)
                members[b].pop()
                assign[v] = -1
        if used + 1 < best_count:
            assign[v] = used
            members.append([v])
            recurse(idx + 1, used + 1, members)
            members.pop()
            assign[v] = -1

    recurse(0, 0, [])
    groups: dict[int, set[int]] = {}
    for v, b in enumerate(best_assign):
        groups.setdefault(b, set()).add(v)
    witness = Cover(
        boxes=[frozenset(g) for g in groups.values()],
        mode=CoverMode.PARTITION,
        size=SizeSpec.impl(lb_impl),
    )
    return OracleResult(optimum=best_count, witness=witness)


def generate(kind: str, *params: int) -> Graph:
    """Deterministic fixture graphs: path n, cycle n, star n, complete n,
    grid w h. Grid nodes are row-major; star hub is node 0."""
    kind = kind.lower()
    if kind == "path":
        (n,) = params
        if n < 1:
            raise ValueError("path needs n >= 1")
        edges = {(i, i + 1) for i in range(n - 1)}
    elif kind == "cycle":
        (n,) = params
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    elif kind == "star":
        (n,) = params
        if n < 2:
            raise ValueError("star needs n >= 2")
        edges = {(0, i) for i in range(1, n)}
    elif kind == "complete":
        (n,) = params
        if n < 2:
            raise ValueError("complete needs n >= 2")
        edges = {(i, j) for i in range(n) for j in range(i + 1, n)}
    elif kind == "grid":
        w, h = params
        if w < 1 or h < 1:
            raise ValueError("grid needs positive dimensions")
        if w * h < 2:
            raise ValueError("grid needs at least 2 nodes")
        edges = set()
        for r in range(h):
            for c in range(w):
                v = r * w + c
                if c + 1 < w:
                    edges.add((v, v + 1))
                if r + 1 < h:
                    edges.add((v, v + w))
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    n_nodes = max(max(e) for e in edges) + 1
    return _assemble(n_nodes, edges, [str(i) for i in range(n_nodes)])
