import numpy as np
import pytest

from boxcover.graphs import Graph, _assemble, all_pairs_distances


def random_connected_graph(rng: np.random.Generator, n_max: int = 8) -> Graph:
    """Random connected graph: spanning tree plus a few extra edges."""
    n = int(rng.integers(2, n_max + 1))
    edges = set()
    order = rng.permutation(n)
    for i in range(1, n):
        j = int(rng.integers(i))
        edges.add((min(order[i], order[j]), max(order[i], order[j])))
    extra = int(rng.integers(0, n))
    for _ in range(extra):
        u, v = rng.integers(n), rng.integers(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return _assemble(n, {(int(a), int(b)) for a, b in edges}, [str(i) for i in range(n)])


@pytest.fixture(scope="session")
def corpus():
    """200 seeded random connected graphs with n <= 8, with distances."""
    rng = np.random.default_rng(20210731)
    out = []
    for _ in range(200):
        g = random_connected_graph(rng)
        out.append((g, all_pairs_distances(g)))
    return out


class StubRng:
    """Scripted stand-in for numpy's Generator, for hand-simulated traces.

    `script` is a list of values consumed in call order: `choice` pops a
    value that must be present in the candidate array, `integers` and
    `random` pop raw values, `permutation` pops a full array.
    """

    def __init__(self, script):
        self.script = list(script)

    def _pop(self):
        if not self.script:
            raise AssertionError("stub rng script exhausted")
        return self.script.pop(0)

    def choice(self, a, size=None, replace=True):
        val = self._pop()
        arr = np.asarray(a)
        assert np.isin(val, arr).all(), f"{val} not a candidate among {arr}"
        return val if size is None else np.asarray(val)

    def integers(self, low, high=None):
        return int(self._pop())

    def random(self, size=None):
        if size is None:
            return float(self._pop())
        return np.asarray([self._pop() for _ in range(int(size))])

    def permutation(self, x):
        return np.asarray(self._pop())
