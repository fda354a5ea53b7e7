import numpy as np
import pytest

from boxcover.graphs import (
    DisconnectedError,
    EdgeListError,
    all_pairs_distances,
    ball,
    is_connected,
    largest_component,
    load_edge_list,
)
from boxcover.oracle import generate

from conftest import random_connected_graph


def test_load_simple_path():
    g = load_edge_list("0 1\n1 2")
    assert g.n == 3
    assert sorted(g.edges()) == [(0, 1), (1, 2)]


def test_load_symmetrizes_and_drops_loops():
    g = load_edge_list("a b\nb a\na a")
    assert g.n == 2
    assert sorted(g.edges()) == [(0, 1)]
    assert g.labels == ("a", "b")


def test_load_first_occurrence_labeling():
    g = load_edge_list("z y\nx z")
    assert g.labels == ("z", "y", "x")


def test_load_comments_blanks_extra_columns():
    g = load_edge_list("# header\n\n0 1 0.75 whatever\n1 2\n")
    assert g.n == 3
    assert g.edge_count == 2


def test_load_malformed_line_reports_number():
    with pytest.raises(EdgeListError, match="line 2"):
        load_edge_list("0 1\nbroken")


def test_load_empty_is_error():
    with pytest.raises(EdgeListError):
        load_edge_list("# nothing\n")
    with pytest.raises(EdgeListError):
        load_edge_list("a a\n")


def test_load_roundtrip_idempotent():
    g = load_edge_list("3 1\n1 2\n2 3\n0 3")
    text = "\n".join(f"{g.labels[u]} {g.labels[v]}" for u, v in g.edges())
    g2 = load_edge_list(text)
    assert g2.n == g.n
    assert sorted(g2.edges()) == sorted(g.edges())
    assert g2.labels == g.labels


def test_largest_component_identity_on_connected():
    g = generate("path", 4)
    lc = largest_component(g)
    assert lc.n == 4 and lc.edge_count == 3


def test_largest_component_picks_bigger():
    g = load_edge_list("0 1\n2 3\n3 4")
    lc = largest_component(g)
    assert lc.n == 3 and lc.edge_count == 2
    assert lc.labels == ("2", "3", "4")


def test_largest_component_tie_breaks_to_smallest_id():
    g = load_edge_list("0 1\n2 3")
    lc = largest_component(g)
    assert lc.n == 2 and lc.edge_count == 1
    assert lc.labels == ("0", "1")


def test_apsp_path_and_star():
    p4 = generate("path", 4)
    d = all_pairs_distances(p4).d
    assert d[0, 3] == 3 and d[1, 2] == 1
    s4 = generate("star", 4)
    d = all_pairs_distances(s4).d
    assert d[1, 2] == 2
    assert all(d[0, k] == 1 for k in range(1, 4))


def test_apsp_rejects_disconnected():
    g = load_edge_list("0 1\n2 3")
    with pytest.raises(DisconnectedError):
        all_pairs_distances(g)


def _floyd_warshall(g):
    n = g.n
    big = 10**6
    d = np.full((n, n), big, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v in g.edges():
        d[u, v] = d[v, u] = 1
    for k in range(n):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    return d


def test_apsp_matches_floyd_warshall_oracle(corpus):
    for g, dm in corpus:
        assert np.array_equal(dm.d, _floyd_warshall(g).astype(np.int16))


def test_ball_examples():
    dm = all_pairs_distances(generate("path", 4))
    assert ball(dm, 1, 1) == {0, 1, 2}
    assert ball(dm, 2, 0) == {2}
    assert ball(dm, 0, 99) == {0, 1, 2, 3}


def test_ball_monotone_in_radius(corpus):
    for _, dm in corpus[:30]:
        for c in range(dm.n):
            for r in range(dm.diameter + 1):
                assert ball(dm, c, r) <= ball(dm, c, r + 1)


def test_random_corpus_is_connected(corpus):
    assert len(corpus) == 200
    for g, dm in corpus:
        assert is_connected(g)
        assert dm.diameter >= 1
