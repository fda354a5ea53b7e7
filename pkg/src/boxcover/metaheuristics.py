"""Metaheuristic covering: simulated annealing over partitions, and the
vector-encoded differential evolution / discrete particle swarm methods."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boxes import Cover, CoverMode, SizeSpec
from .burning import conflict_matrix, greedy_color_sequence, merge_algorithm, merge_level
from .graphs import DistanceMatrix


@dataclass(frozen=True)
class SAParams:
    move_target: int = 5000      # k1
    split_target: int = 5        # k2
    iterations: int = 20         # k3
    t0: float = 0.6
    cooling: float = 0.995

    def __post_init__(self):
        if not 0.0 < self.cooling < 1.0:
            raise ValueError("cooling constant must be in (0, 1)")
        if self.t0 <= 0:
            raise ValueError("initial temperature must be positive")
        if min(self.move_target, self.split_target, self.iterations) < 0:
            raise ValueError("targets and iteration count must be >= 0")

    def temperature_after(self, iterations: int) -> float:
        return self.t0 * self.cooling**iterations


@dataclass(frozen=True)
class DEParams:
    population: int = 40
    weight: float = 0.9          # differential weight f
    crossover: float = 0.85
    generations: int = 30

    def __post_init__(self):
        if self.population < 4:
            raise ValueError("mutation needs three distinct other vectors")
        if not 0.0 < self.crossover <= 1.0:
            raise ValueError("crossover rate must be in (0, 1]")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")


@dataclass(frozen=True)
class PSOParams:
    generations: int = 200
    particles: int = 99
    c1: float = 1.494
    c2: float = 1.494

    def __post_init__(self):
        if self.particles < 1:
            raise ValueError("need at least one particle")
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("acceleration coefficients must be >= 0")


def acceptance_probability(delta: float, temperature: float) -> float:
    """Probability of accepting a state that is worse by `delta` boxes."""
    return math.exp(-delta / temperature)


def differs(x: int, y: int) -> int:
    """Integer disagreement indicator used in the particle velocity update."""
    return int(x != y)


def simulated_annealing(
    dm: DistanceMatrix, lb_impl: int, params: SAParams, rng: np.random.Generator
) -> Cover:
    """Anneal a partition produced by the merge algorithm.

    Each iteration tries up to 2*k1 single-node moves into neighboring boxes
    (a box holding a graph-neighbor of the node), up to 2*k2 splits that pop
    a node out of a >=2 box into a new singleton, then runs a merge sweep.
    The candidate's box count is compared after that sweep; worse states are
    accepted with probability exp(-delta/T), and T cools by `cooling` each
    iteration."""
    n = dm.n
    state = [set(b) for b in merge_algorithm(dm, lb_impl, rng)[-1].boxes]
    temperature = params.t0
    energy = len(state)
    for _ in range(params.iterations):
        boxes = [set(b) for b in state]
        box_of = np.empty(n, dtype=np.int64)
        for i, b in enumerate(boxes):
            for v in b:
                box_of[v] = i

        moved = 0
        for _ in range(2 * params.move_target):
            if moved >= params.move_target:
                break
            bi = int(rng.integers(len(boxes)))
            members = np.fromiter(boxes[bi], dtype=np.int64)
            reach = dm.d[members].max(axis=0)
            adjacent = (dm.d[members] == 1).any(axis=0)
            adjacent[members] = False
            cand = [
                int(v)
                for v in np.flatnonzero(adjacent)
                if reach[v] <= lb_impl and len(boxes[box_of[v]]) >= 2
            ]
            if not cand:
                continue
            v = cand[int(rng.integers(len(cand)))]
            boxes[box_of[v]].discard(v)
            boxes[bi].add(v)
            box_of[v] = bi
            moved += 1

        split = 0
        for _ in range(2 * params.split_target):
            if split >= params.split_target:
                break
            bi = int(rng.integers(len(boxes)))
            if len(boxes[bi]) < 2:
                continue
            pick = sorted(boxes[bi])[int(rng.integers(len(boxes[bi])))]
            boxes[bi].discard(pick)
            boxes.append({pick})
            box_of[pick] = len(boxes) - 1
            split += 1

        merged = merge_level([frozenset(b) for b in boxes if b], dm, lb_impl, rng)
        if len(merged) <= energy or rng.random() < acceptance_probability(
            len(merged) - energy, temperature
        ):
            state = [set(b) for b in merged]
            energy = len(state)
        temperature *= params.cooling
    return Cover(
        boxes=[frozenset(b) for b in state],
        mode=CoverMode.PARTITION,
        size=SizeSpec.impl(lb_impl),
    )


def _reflect_unit(v: np.ndarray) -> np.ndarray:
    """Fold values back into [0, 1) by reflection at the borders."""
    w = np.mod(v, 2.0)
    w = np.where(w >= 1.0, 2.0 - w, w)
    return np.where(w >= 1.0, np.nextafter(1.0, 0.0), w)


def differential_evolution(
    dm: DistanceMatrix,
    lb_impl: int,
    params: DEParams,
    rng: np.random.Generator,
    conflict: np.ndarray | None = None,
    history: list[int] | None = None,
) -> Cover:
    """Evolve real vectors whose ascending order (ties by node id) is the
    node sequence fed to sequential greedy coloring; selection keeps the
    vector that decodes to fewer boxes. `history`, when given, collects the
    best-known box count after each generation."""
    if conflict is None:
        conflict = conflict_matrix(dm, lb_impl)
    n = dm.n
    p = params.population

    def decode(vec: np.ndarray) -> np.ndarray:
        order = np.argsort(vec, kind="stable")
        return greedy_color_sequence(conflict, order)

    population = rng.random((p, n))
    colorings = [decode(population[j]) for j in range(p)]
    counts = np.array([int(c.max()) + 1 for c in colorings])
    best_idx = int(np.argmin(counts))
    best_colors, best_count = colorings[best_idx], int(counts[best_idx])

    for _ in range(params.generations):
        for j in range(p):
            others = [i for i in range(p) if i != j]
            r1, r2, r3 = rng.choice(others, size=3, replace=False)
            mutant = population[r1] + params.weight * (population[r2] - population[r3])
            mutant = _reflect_unit(mutant)
            forced = int(rng.integers(n))
            take = rng.random(n) < params.crossover
            take[forced] = True
            trial = np.where(take, mutant, population[j])
            trial_colors = decode(trial)
            trial_count = int(trial_colors.max()) + 1
            if trial_count < counts[j]:
                population[j] = trial
                counts[j] = trial_count
            if trial_count < best_count:
                best_colors, best_count = trial_colors, trial_count
        if history is not None:
            history.append(best_count)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(best_colors.tolist()):
        groups.setdefault(c, []).append(v)
    return Cover(
        boxes=[frozenset(groups[c]) for c in sorted(groups)],
        mode=CoverMode.PARTITION,
        size=SizeSpec.impl(lb_impl),
    )


def _sig_prob(z: float) -> float:
    # numerically stable logistic
    return 0.5 * (1.0 + math.tanh(0.5 * z))


def pso(
    dm: DistanceMatrix,
    lb_impl: int,
    params: PSOParams,
    rng: np.random.Generator,
    conflict: np.ndarray | None = None,
    history: list[int] | None = None,
) -> Cover:
    """Discrete particle swarm over box-id vectors.

    Positions start as encodings of random-order greedy colorings. A node's
    velocity bit switches on with logistic probability of the weighted
    agreement terms against the particle's own best and the global best;
    switched-on nodes try to relocate into a uniformly probed neighboring
    box that can take them under the diameter rule, else keep their box.
    Personal and global bests update on strict improvement."""
    if conflict is None:
        conflict = conflict_matrix(dm, lb_impl)
    n = dm.n
    neighbor_lists = [np.flatnonzero(dm.d[k] == 1) for k in range(n)]

    positions = []
    for _ in range(params.particles):
        colors = greedy_color_sequence(conflict, rng.permutation(n))
        positions.append(colors)
    velocities = np.zeros((params.particles, n), dtype=np.int64)
    pbest = [pos.copy() for pos in positions]
    pbest_counts = [int(pos.max()) + 1 for pos in positions]
    g_idx = int(np.argmin(pbest_counts))
    gbest, gbest_count = positions[g_idx].copy(), pbest_counts[g_idx]

    for _ in range(params.generations):
        for j in range(params.particles):
            pos = positions[j]
            boxes: dict[int, set[int]] = {}
            for v, c in enumerate(pos.tolist()):
                boxes.setdefault(c, set()).add(v)
            u1 = rng.random(n)
            u2 = rng.random(n)
            u3 = rng.random(n)
            usig = rng.random(n)
            vel = velocities[j]
            for k in range(n):
                z = (
                    u1[k] * vel[k]
                    + u2[k] * params.c1 * differs(int(pbest[j][k]), int(pos[k]))
                    + u3[k] * params.c2 * differs(int(gbest[k]), int(pos[k]))
                )
                bit = 1 if usig[k] < _sig_prob(z) else 0
                vel[k] = bit
                if not bit:
                    continue
                current = int(pos[k])
                candidates = {int(pos[nb]) for nb in neighbor_lists[k]}
                candidates.discard(current)
                if not candidates:
                    continue
                for target in rng.permutation(sorted(candidates)).tolist():
                    members = np.fromiter(boxes[target], dtype=np.int64)
                    if int(dm.d[k, members].max()) <= lb_impl:
                        boxes[current].discard(k)
                        if not boxes[current]:
                            del boxes[current]
                        boxes[target].add(k)
                        pos[k] = target
                        break
            count = len(boxes)
            if count < pbest_counts[j]:
                pbest[j] = pos.copy()
                pbest_counts[j] = count
                if count < gbest_count:
                    gbest, gbest_count = pos.copy(), count
        if history is not None:
            history.append(gbest_count)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(gbest.tolist()):
        groups.setdefault(c, []).append(v)
    return Cover(
        boxes=[frozenset(groups[c]) for c in sorted(groups)],
        mode=CoverMode.PARTITION,
        size=SizeSpec.impl(lb_impl),
    )
