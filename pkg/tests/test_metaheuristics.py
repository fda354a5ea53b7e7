import math

import numpy as np
import pytest

from boxcover import metaheuristics as mh
from boxcover.boxes import validate_cover
from boxcover.graphs import all_pairs_distances
from boxcover.oracle import exact_min_cover, generate

TINY_SA = mh.SAParams(move_target=20, split_target=3, iterations=5)
TINY_DE = mh.DEParams(population=5, generations=4)
TINY_PSO = mh.PSOParams(generations=4, particles=4)


def _dm(kind, *dims):
    return all_pairs_distances(generate(kind, *dims))


def test_param_validation():
    with pytest.raises(ValueError):
        mh.SAParams(cooling=1.0)
    with pytest.raises(ValueError):
        mh.SAParams(t0=0.0)
    with pytest.raises(ValueError):
        mh.DEParams(population=3)
    with pytest.raises(ValueError):
        mh.DEParams(crossover=0.0)
    with pytest.raises(ValueError):
        mh.PSOParams(particles=0)


def test_acceptance_probability_values():
    assert abs(mh.acceptance_probability(1, 0.6) - math.exp(-5.0 / 3.0)) < 1e-12
    assert mh.acceptance_probability(0, 0.6) == 1.0


def test_cooling_schedule():
    params = mh.SAParams()
    assert abs(params.temperature_after(20) - 0.6 * 0.995**20) < 1e-15
    assert abs(params.temperature_after(20) - 0.5429) < 5e-4


def test_differs_operator():
    assert mh.differs(5, 5) == 0
    assert mh.differs(5, 7) == 1


def test_sa_k3_complete_always_one_box():
    dm = _dm("complete", 3)
    for seed in range(100):
        cover = mh.simulated_annealing(dm, 1, TINY_SA, np.random.default_rng(seed))
        assert cover.n_boxes == 1


def test_sa_valid_and_reproducible():
    dm = _dm("grid", 3, 3)
    a = mh.simulated_annealing(dm, 2, TINY_SA, np.random.default_rng(9))
    b = mh.simulated_annealing(dm, 2, TINY_SA, np.random.default_rng(9))
    assert a.boxes == b.boxes
    assert validate_cover(a, dm).ok
    opt = exact_min_cover(dm, 2).optimum
    assert opt <= a.n_boxes <= dm.n


def test_de_decode_order_is_argsort():
    vec = np.array([0.9, 0.1, 0.5, 0.3])
    assert np.argsort(vec, kind="stable").tolist() == [1, 3, 2, 0]


def test_de_reflection_keeps_unit_interval():
    v = np.array([-0.9, -0.1, 0.0, 0.3, 1.0, 1.7, 2.3])
    w = mh._reflect_unit(v)
    assert ((w >= 0) & (w < 1)).all()
    assert abs(w[0] - 0.9) < 1e-12 and abs(w[5] - 0.3) < 1e-12


def test_de_zero_generations_is_best_random_ordering():
    dm = _dm("grid", 3, 3)
    params = mh.DEParams(population=6, generations=0)
    cover = mh.differential_evolution(dm, 2, params, np.random.default_rng(3))
    assert validate_cover(cover, dm).ok
    assert cover.n_boxes >= exact_min_cover(dm, 2).optimum


def test_de_best_is_monotone_and_reproducible():
    dm = _dm("grid", 3, 3)
    hist1: list[int] = []
    a = mh.differential_evolution(dm, 2, TINY_DE, np.random.default_rng(4), history=hist1)
    hist2: list[int] = []
    b = mh.differential_evolution(dm, 2, TINY_DE, np.random.default_rng(4), history=hist2)
    assert a.boxes == b.boxes and hist1 == hist2
    assert all(x >= y for x, y in zip(hist1, hist1[1:]))
    assert validate_cover(a, dm).ok


def test_pso_valid_monotone_reproducible():
    dm = _dm("grid", 3, 3)
    h1: list[int] = []
    a = mh.pso(dm, 2, TINY_PSO, np.random.default_rng(6), history=h1)
    h2: list[int] = []
    b = mh.pso(dm, 2, TINY_PSO, np.random.default_rng(6), history=h2)
    assert a.boxes == b.boxes and h1 == h2
    assert all(x >= y for x, y in zip(h1, h1[1:]))
    assert validate_cover(a, dm).ok
    assert a.n_boxes >= exact_min_cover(dm, 2).optimum


def test_pso_saturated_size_one_box():
    dm = _dm("path", 4)
    cover = mh.pso(dm, 3, TINY_PSO, np.random.default_rng(2))
    assert cover.n_boxes == 1


def test_metaheuristics_on_corpus_sample(corpus):
    rng = np.random.default_rng(5)
    for g, dm in corpus[:10]:
        lb = int(rng.integers(1, dm.diameter + 1))
        opt = exact_min_cover(dm, lb).optimum
        for runner in (
            lambda: mh.simulated_annealing(dm, lb, TINY_SA, np.random.default_rng(1)),
            lambda: mh.differential_evolution(dm, lb, TINY_DE, np.random.default_rng(1)),
            lambda: mh.pso(dm, lb, TINY_PSO, np.random.default_rng(1)),
        ):
            cover = runner()
            assert validate_cover(cover, dm).ok
            assert opt <= cover.n_boxes <= dm.n
