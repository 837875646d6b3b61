import random

import pytest

from diograph.graph import (
    DiophGraph,
    GraphDefectError,
    WitnessFileError,
    build_range,
    build_set,
    degree_bound_check,
    edge_test,
    graph_from_doc,
    graph_to_doc,
    induced,
    load_graph_file,
    load_witness_file,
    range_edge_count,
    remove_vertex,
    save_graph_file,
    save_witness_file,
    stats,
    write_edge_list,
)
from diograph.numtheory import is_square
from diograph.witnesses import C6_COMPLEMENT_WITNESS, K4_WITNESS, K5_MINUS_EDGE_WITNESS

N8_EDGES = [(1, 3), (1, 8), (2, 4), (3, 5), (3, 8), (4, 6), (5, 7), (6, 8)]


def brute_edges(values, shift=1):
    vs = sorted(values)
    return [
        (a, b)
        for i, a in enumerate(vs)
        for b in vs[i + 1 :]
        if is_square(a * b + shift)
    ]


def test_edge_test_examples():
    assert edge_test(3, 8, 1)
    for a in (1, 2, 17, 1000):
        assert edge_test(a, a + 2, 1)
    assert not edge_test(1, 2, 1)
    with pytest.raises(ValueError):
        edge_test(5, 5, 1)


def test_build_range_n8():
    g = build_range(8)
    assert g.edges() == N8_EDGES == brute_edges(range(1, 9))


def test_build_range_n1():
    g = build_range(1)
    assert g.vertices == (1,)
    assert g.edge_count == 0


def test_build_range_matches_pairwise_oracle_small():
    for N in list(range(1, 60)) + [100, 500, 1000]:
        fast = build_range(N)
        assert fast.edges() == brute_edges(range(1, N + 1)), N


def test_build_range_equals_build_set():
    for N in (7, 8, 50, 200, 1000):
        assert build_range(N).edges() == build_set(range(1, N + 1)).edges()


def test_build_range_parallel_identical():
    serial = build_range(2000, workers=1)
    for workers in (2, 3, 8):
        assert build_range(2000, workers=workers) == serial


def test_adjacency_is_sorted_and_symmetric():
    g = build_range(500)
    for v in g.vertices:
        nb = g.adjacency[v]
        assert list(nb) == sorted(nb)
        assert v not in nb
        for u in nb:
            assert v in g.adjacency[u]


def test_build_set_examples():
    k4 = build_set(K4_WITNESS)
    assert k4.edge_count == 6  # complete on 4 vertices
    c6c = build_set(C6_COMPLEMENT_WITNESS)
    degs = sorted(c6c.degree(v) for v in c6c.vertices)
    assert degs == [3] * 6 and c6c.edge_count == 9
    k5m = build_set(K5_MINUS_EDGE_WITNESS)
    assert k5m.edge_count == 9
    assert not k5m.has_edge(1, 11781)


def test_build_set_rejects_duplicates():
    with pytest.raises(ValueError, match="duplicate"):
        build_set([1, 3, 3, 8])


def test_build_set_numpy_and_python_paths_agree():
    rng = random.Random(3)
    values = rng.sample(range(1, 10**6), 80)
    g = build_set(values)  # large enough for the vectorized path
    assert g.edges() == brute_edges(values)


def test_range_edge_count_matches_build():
    for N in (1, 2, 8, 100, 1234):
        assert range_edge_count(N) == build_range(N).edge_count


def test_stats_examples():
    s8 = stats(build_range(8))
    assert (s8.n, s8.e, s8.components) == (8, 8, 1)
    k4 = stats(build_set(K4_WITNESS))
    assert k4.clique_number == 4
    empty = stats(DiophGraph((), {}, 1))
    assert (empty.n, empty.e, empty.components) == (0, 0, 0)


def test_stats_histogram_and_density():
    s = stats(build_range(8))
    assert s.degree_histogram == {1: 2, 2: 4, 3: 2}
    assert s.density == 1


def test_connectivity_of_ranges():
    # incremental union-find over D(V_2000): D(V_N) is its induced prefix
    g = build_range(2000)
    parent = list(range(2001))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = 0
    for v in range(1, 2001):
        comps += 1
        for u in g.adjacency[v]:
            if u < v:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
                    comps -= 1
        if v >= 8:
            assert comps == 1, f"D(V_{v}) is disconnected"


def test_degree_bound_check_small():
    report = degree_bound_check(build_range(8))
    assert report.passed
    # a = 3: bound 8*sqrt(8/3)*2 ~ 26.1, actual degree 3
    g = build_range(8)
    assert g.degree(3) == 3
    report = degree_bound_check(build_range(1000))
    assert report.passed and report.max_ratio <= 1.0


def test_degree_of_one_matches_square_count():
    from math import isqrt

    for N in (8, 100, 5000):
        g = build_range(N)
        assert g.degree(1) == isqrt(N + 1) - 1


def test_remove_and_induced():
    k4 = build_set(K4_WITNESS)
    tri = remove_vertex(k4, 120)
    assert tri.vertices == (1, 3, 8) and tri.edge_count == 3
    tri2 = induced(build_range(8), [1, 3, 8])
    assert tri2.edge_count == 3
    g = build_range(20)
    assert induced(g, g.vertices) == g
    with pytest.raises(ValueError):
        remove_vertex(k4, 7)
    with pytest.raises(ValueError):
        induced(k4, [1, 2])


def test_witness_file_round_trip(tmp_path):
    path = tmp_path / "w.txt"
    save_witness_file([120, 1, 8, 3], path, comment="a quadruple")
    assert load_witness_file(path) == [120, 1, 8, 3]  # order preserved


def test_witness_file_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1\nx\n", encoding="utf-8")
    with pytest.raises(WitnessFileError, match=":2"):
        load_witness_file(path)
    path.write_text("1\n3\n1\n", encoding="utf-8")
    with pytest.raises(WitnessFileError, match="duplicate"):
        load_witness_file(path)
    path.write_text("0\n", encoding="utf-8")
    with pytest.raises(WitnessFileError, match="positive"):
        load_witness_file(path)


def test_graph_doc_round_trip(tmp_path):
    g = build_range(50)
    doc = graph_to_doc(g)
    assert doc["n"] == 50 and doc["shift"] == 1
    assert doc["edges"] == sorted(doc["edges"])
    assert graph_from_doc(doc) == g
    path = tmp_path / "g.json"
    save_graph_file(g, path)
    assert load_graph_file(path) == g
    # byte-identical serialization
    text1 = path.read_text()
    save_graph_file(build_range(50), path)
    assert path.read_text() == text1


def test_graph_doc_rejects_fake_edges():
    doc = graph_to_doc(build_range(8))
    doc["edges"].append([1, 2])
    with pytest.raises(ValueError, match="not an edge"):
        graph_from_doc(doc)


def test_edge_list_export(tmp_path):
    path = tmp_path / "edges.txt"
    write_edge_list(build_range(8), path)
    lines = path.read_text().strip().splitlines()
    assert lines == [f"{a} {b}" for a, b in N8_EDGES]


def test_shift_2_graph():
    g = build_range(100, shift=2)
    assert g.edges() == brute_edges(range(1, 101), shift=2)
    assert g.has_edge(1, 2)  # 1*2+2 = 4


def test_dujella_band_at_1e5_and_1e6():
    from math import log, pi

    for N in (10**5, 10**6):
        e = range_edge_count(N)
        ratio = e / ((6 / pi**2) * N * log(N))
        assert 0.75 <= ratio <= 1.25, (N, ratio)


def test_no_five_clique_defect_on_random_sets():
    rng = random.Random(5)
    for _ in range(50):
        values = rng.sample(range(1, 10**6), 30)
        s = stats(build_set(values))
        assert s.clique_number <= 4
        assert 8 * s.e <= 3 * s.n * s.n


def test_five_clique_raises_defect():
    # hand-build an impossible adjacency to confirm the tripwire fires;
    # the sixth isolated vertex keeps e below (3/8)n^2 so the clique
    # search itself is what trips
    vs = tuple(range(1, 7))
    adj = {v: tuple(u for u in vs[:5] if u != v) for v in vs[:5]}
    adj[6] = ()
    fake = DiophGraph(vs, adj, 1)
    with pytest.raises(GraphDefectError, match="5-clique"):
        stats(fake)


def test_edge_bound_defect_fires():
    vs = tuple(range(1, 6))
    adj = {v: tuple(u for u in vs if u != v) for v in vs}
    with pytest.raises(GraphDefectError, match="edge bound"):
        stats(DiophGraph(vs, adj, 1))
