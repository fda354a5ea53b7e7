"""Graph ingestion, preprocessing and all-pairs shortest paths."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class EdgeListError(ValueError):
    """Malformed or empty edge-list input."""


class DisconnectedError(ValueError):
    """Operation requires a connected graph."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on contiguous node ids 0..n-1.

    `labels` holds the original node labels from the input file (index-aligned
    with node ids) so covers and reports can be expressed in input terms.
    Instances are immutable and safe to share across threads.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def edges(self):
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v


@dataclass(frozen=True)
class DistanceMatrix:
    """Dense hop-count matrix from per-node BFS on a connected graph."""

    d: np.ndarray  # (n, n) int16, symmetric, zero diagonal

    @property
    def n(self) -> int:
        return self.d.shape[0]

    @property
    def diameter(self) -> int:
        return int(self.d.max())

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.d[v] == 1)


def _assemble(n: int, edge_set: set[tuple[int, int]], labels: list[str]) -> Graph:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edge_set:
        adj[u].append(v)
        adj[v].append(u)
    return Graph(
        n=n,
        adjacency=tuple(tuple(sorted(a)) for a in adj),
        labels=tuple(labels),
    )


def load_edge_list(source) -> Graph:
    """Parse whitespace-separated edge-list text into a Graph.

    Accepts a string or an iterable of lines. Lines starting with '#' are
    comments; extra columns beyond the two endpoints are ignored. Directed
    input is symmetrized, self-loops are dropped, node labels are remapped
    to 0..n-1 in first-occurrence order.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source
    ids: dict[str, int] = {}
    labels: list[str] = []
    edges: set[tuple[int, int]] = set()

    def intern(tok: str) -> int:
        if tok not in ids:
            ids[tok] = len(labels)
            labels.append(tok)
        return ids[tok]

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise EdgeListError(f"line {lineno}: expected two endpoints, got {line!r}")
        a, b = intern(parts[0]), intern(parts[1])
        if a != b:
            edges.add((min(a, b), max(a, b)))
    if not edges:
        raise EdgeListError("edge list contains no edges")
    return _assemble(len(labels), edges, labels)


def _components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return len(_components(g)) == 1


def largest_component(g: Graph) -> Graph:
    """Restrict to the largest connected component, relabeling to 0..k-1.

    Ties are broken toward the component containing the smallest node id
    (= earliest-seen input label), keeping the choice deterministic.
    """
    comps = _components(g)
    best = max(comps, key=lambda c: (len(c), -min(c)))
    keep = sorted(best)
    remap = {old: new for new, old in enumerate(keep)}
    edges = {
        (remap[u], remap[v])
        for u in keep
        for v in g.adjacency[u]
        if u < v and v in remap
    }
    return _assemble(len(keep), edges, [g.labels[old] for old in keep])


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """BFS from every node; O(n*(n+e)). Raises DisconnectedError on
    disconnected input (run largest_component first)."""
    n = g.n
    d = np.full((n, n), -1, dtype=np.int16)
    adj = g.adjacency
    for s in range(n):
        row = d[s]
        row[s] = 0
        frontier = [s]
        level = 0
        while frontier:
            level += 1
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if row[v] < 0:
                        row[v] = level
                        nxt.append(v)
            frontier = nxt
        if level > np.iinfo(np.int16).max:
            raise ValueError("diameter exceeds int16 storage")
    if (d < 0).any():
        raise DisconnectedError("graph is not connected")
    return DistanceMatrix(d=d)


def ball(dm: DistanceMatrix, center: int, radius: int) -> set[int]:
    """Nodes within `radius` hops of `center` (always includes the center)."""
    if not 0 <= center < dm.n:
        raise ValueError(f"center {center} out of range")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return set(np.flatnonzero(dm.d[center] <= radius).tolist())
