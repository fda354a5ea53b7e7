"""Algorithm registry: maps short algorithm ids to runners, their native
size convention, and default hyperparameters. The benchmark harness and the
CLI resolve everything through this table."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import burning, metaheuristics, overlap
from .boxes import Cover, SizeSpec
from .graphs import DistanceMatrix


class UnknownAlgorithmError(KeyError):
    pass


RADIUS = "radius"
IMPL = "impl"


@dataclass(frozen=True)
class Algorithm:
    """One benchmarkable algorithm instance.

    `convention` is the native size convention of its runner ('radius' or
    'impl'); `needs_aux` marks the coloring family whose auxiliary-graph
    construction is attributed as per-size preprocessing; `multi_size` marks
    the merge algorithm, which produces covers for every size in one run;
    `estimator` marks the fuzzy method, which yields box-number estimates
    rather than covers.
    """

    algo_id: str
    convention: str
    run: Callable | None
    params: dict = field(default_factory=dict)
    needs_aux: bool = False
    deterministic: bool = False
    multi_size: bool = False
    estimator: bool = False

    def size_for_radius(self, rb: int) -> int:
        # all algorithms run at the same equivalent eval size 2*rb + 1
        return rb if self.convention == RADIUS else 2 * rb

    def run_at_radius(self, dm, rb, rng, conflict=None, **overrides):
        params = {**self.params, **overrides}
        size = self.size_for_radius(rb)
        if self.needs_aux:
            return self.run(dm, size, rng, conflict=conflict, **params)
        return self.run(dm, size, rng, **params)


def _gre(dm, lb, rng, conflict=None):
    return burning.greedy_coloring(dm, lb, rng, conflict=conflict)


def _rs(dm, rb, rng):
    return burning.random_sequential(dm, rb, rng)


def _cbb(dm, lb, rng):
    return burning.cbb(dm, lb, rng)


def _memb(dm, rb, rng):
    return burning.memb(dm, rb, rng)


def _remcc(dm, rb, rng):
    return burning.remcc(dm, rb)


def _mcwr(dm, rb, rng, p=0.5):
    return burning.mcwr(dm, rb, p, rng)


def _mer(dm, lb_max, rng):
    return burning.merge_algorithm(dm, lb_max, rng)


def _sa(dm, lb, rng, k1=5000, k2=5, k3=20, t0=0.6, c=0.995):
    params = metaheuristics.SAParams(
        move_target=int(k1), split_target=int(k2), iterations=int(k3),
        t0=float(t0), cooling=float(c),
    )
    return metaheuristics.simulated_annealing(dm, lb, params, rng)


def _de(dm, lb, rng, conflict=None, p=40, f=0.9, c=0.85, g=30):
    params = metaheuristics.DEParams(
        population=int(p), weight=float(f), crossover=float(c), generations=int(g)
    )
    return metaheuristics.differential_evolution(dm, lb, params, rng, conflict=conflict)


def _pso(dm, lb, rng, conflict=None, g=200, p=99, c1=1.494, c2=1.494):
    params = metaheuristics.PSOParams(
        generations=int(g), particles=int(p), c1=float(c1), c2=float(c2)
    )
    return metaheuristics.pso(dm, lb, params, rng, conflict=conflict)


def _obca(dm, lb, rng):
    return overlap.obca(dm, lb)


def _fuzzy(dm, rb, rng):
    return overlap.fuzzy(dm, [rb])[0]


def _sampling_mb(dm, lb, rng, n=10, strategy="small_box_removal"):
    proposals = overlap.maximal_box_sampling(dm, lb, int(n), rng)
    return overlap.select_boxes(
        proposals, overlap.SelectionStrategy(strategy), dm.n, SizeSpec.impl(lb)
    )


def _sampling_rs(dm, rb, rng, n=10, strategy="small_box_removal"):
    proposals = overlap.rs_box_proposals(dm, rb, int(n), rng)
    return overlap.select_boxes(
        proposals, overlap.SelectionStrategy(strategy), dm.n, SizeSpec.radius(rb)
    )


REGISTRY: dict[str, Algorithm] = {
    a.algo_id: a
    for a in [
        Algorithm("cbb", IMPL, _cbb),
        Algorithm("d30", IMPL, _de, {"p": 40, "f": 0.9, "c": 0.85, "g": 30}, needs_aux=True),
        Algorithm("d70", IMPL, _de, {"p": 40, "f": 0.9, "c": 0.85, "g": 70}, needs_aux=True),
        Algorithm("fuz", RADIUS, _fuzzy, estimator=True, deterministic=True),
        Algorithm("gre", IMPL, _gre, needs_aux=True),
        Algorithm("mc.25", RADIUS, _mcwr, {"p": 0.25}),
        Algorithm("mc.5", RADIUS, _mcwr, {"p": 0.5}),
        Algorithm("mc.75", RADIUS, _mcwr, {"p": 0.75}),
        Algorithm("memb", RADIUS, _memb),
        Algorithm("mer", IMPL, _mer, multi_size=True),
        Algorithm("obca", IMPL, _obca, deterministic=True),
        Algorithm("ps.2k", IMPL, _pso, {"g": 200, "p": 99, "c1": 1.494, "c2": 1.494}, needs_aux=True),
        Algorithm("ps1k", IMPL, _pso, {"g": 1000, "p": 99, "c1": 1.494, "c2": 1.494}, needs_aux=True),
        Algorithm("remcc", RADIUS, _remcc, deterministic=True),
        Algorithm("rs", RADIUS, _rs),
        Algorithm("sa", IMPL, _sa, {"k1": 5000, "k2": 5, "k3": 20, "t0": 0.6, "c": 0.995}),
        Algorithm("sm10", IMPL, _sampling_mb, {"n": 10}),
        Algorithm("sm40", IMPL, _sampling_mb, {"n": 40}),
        Algorithm("sr10", RADIUS, _sampling_rs, {"n": 10}),
        Algorithm("sr40", RADIUS, _sampling_rs, {"n": 40}),
    ]
}


def get_algorithm(algo_id: str) -> Algorithm:
    try:
        return REGISTRY[algo_id]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise UnknownAlgorithmError(
            f"unknown algorithm id {algo_id!r}; known ids: {known}"
        ) from None
