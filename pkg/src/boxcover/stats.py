"""Structural statistics: node/edge counts, diameter, degree-inequality
GINI score, average clustering coefficient."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import DistanceMatrix, Graph


@dataclass(frozen=True)
class StatsReport:
    n: int
    e: int
    diameter: int
    gini: float
    clustering: float

    def csv_row(self, name: str) -> str:
        return (
            f"{name},{self.n},{self.e},{self.diameter},"
            f"{self.gini:.2f},{self.clustering:.2f}"
        )


def gini(g: Graph) -> float:
    """Degree-inequality score: 0 for regular graphs, approaching 1 for
    maximally uneven degree sequences (bounded by 1 + 1/n)."""
    ks = np.sort(g.degrees())
    n = g.n
    weights = np.arange(n, 0, -1, dtype=np.float64)  # n - i for ascending k_i
    return float((n + 1) / n - 2.0 * (weights * ks).sum() / (n * ks.sum()))


def average_clustering(g: Graph) -> float:
    """Mean of local clustering coefficients; degree < 2 counts as 0."""
    total = 0.0
    neighbor_sets = [set(a) for a in g.adjacency]
    for v in range(g.n):
        nbrs = g.adjacency[v]
        k = len(nbrs)
        if k < 2:
            continue
        links = 0
        for i, u in enumerate(nbrs):
            su = neighbor_sets[u]
            for w in nbrs[i + 1 :]:
                if w in su:
                    links += 1
        total += 2.0 * links / (k * (k - 1))
    return total / g.n


def basic_stats(g: Graph, dm: DistanceMatrix) -> StatsReport:
    return StatsReport(
        n=g.n,
        e=g.edge_count,
        diameter=dm.diameter,
        gini=gini(g),
        clustering=average_clustering(g),
    )
