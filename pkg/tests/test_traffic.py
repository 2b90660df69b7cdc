import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trafficnet.errors import DataError, EmptyResult, InvalidParams, LengthMismatch
from trafficnet.traffic import (
    TrafficMatrix, build_graph, pearson, read_traffic_csv, remove_isolated, write_traffic_csv,
)

from conftest import complete


def two_pass(x, y):
    # independent oracle: textbook mean/covariance in pure Python
    n = len(x)
    mx, my = sum(x) / n, sum(y) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(x, y))
    vx = sum((a - mx) ** 2 for a in x)
    vy = sum((b - my) ** 2 for b in y)
    return cov / math.sqrt(vx * vy)


def test_pearson_examples():
    assert pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0, abs=1e-15)
    assert pearson([1, 2, 3], [6, 4, 2]) == pytest.approx(-1.0, abs=1e-15)
    # covariance sum 4, both deviation sums of squares 5
    assert pearson([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8, abs=1e-15)
    assert pearson([5, 5, 5], [1, 2, 3]) is None
    assert pearson([0.1, 0.1, 0.1], [1, 2, 3]) is None


def test_pearson_errors():
    with pytest.raises(LengthMismatch):
        pearson([1, 2, 3], [1, 2])
    with pytest.raises(LengthMismatch):
        pearson([1], [2])


def test_pearson_oracle_random(rng):
    for T in (48, 168):
        for _ in range(200):
            x = rng.random(T) * 1e6
            y = rng.random(T) * 1e6
            assert abs(pearson(x, y) - two_pass(list(x), list(y))) <= 1e-12


vectors = st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=3, max_size=30)


@given(vectors, st.data())
def test_pearson_symmetric_and_affine(x, data):
    y = data.draw(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=len(x), max_size=len(x)))
    r = pearson(x, y)
    assert r == pearson(y, x) or (r is not None and abs(r - pearson(y, x)) <= 1e-12)
    if r is None:
        return
    # keep away from degenerate near-constant draws
    if np.std(x) < 1e-3 or np.std(y) < 1e-3:
        return
    a = data.draw(st.floats(0.01, 100))
    b = data.draw(st.floats(-100, 100))
    assert abs(pearson([a * v + b for v in x], y) - r) <= 1e-9


def test_build_graph_three_series():
    m = TrafficMatrix.from_array([[1, 2, 3, 4], [2, 4, 6, 8], [4, 3, 2, 1]], ["a", "b", "c"])
    g = build_graph(m, 0.54)
    assert g.edge_set() == {(0, 1)}
    assert g.degrees.tolist() == [1, 1, 0]
    sub, count, rate = remove_isolated(g)
    assert sub.n == 2 and sub.edge_set() == {(0, 1)}
    assert [x.station_id for x in sub.node_meta] == ["a", "b"]
    assert count == 1 and rate == pytest.approx(1 / 3)


def test_build_graph_identical_rows_complete():
    m = TrafficMatrix.from_array(np.tile([3.0, 1.0, 4.0, 1.0, 5.0], (6, 1)))
    assert build_graph(m, 0.9).m == 15


def test_build_graph_no_edges_and_constant_rows():
    m = TrafficMatrix.from_array([[1, 2, 3], [3, 2, 1], [7, 7, 7]])
    g = build_graph(m, 0.5)
    assert g.m == 0
    with pytest.raises(EmptyResult):
        remove_isolated(g)


def test_build_graph_boundary_is_strict():
    # rho = 0.8 exactly; an edge only for Z below it
    m = TrafficMatrix.from_array([[1, 2, 3, 4], [1, 3, 2, 4]])
    assert build_graph(m, 0.79).m == 1
    assert build_graph(m, 0.81).m == 0


def test_build_graph_rejects_bad_threshold():
    m = TrafficMatrix.from_array([[1, 2, 3], [1, 2, 4]])
    for z in (0.0, 1.0, 1.5, -0.2):
        with pytest.raises(InvalidParams):
            build_graph(m, z)


def test_build_graph_matches_pairwise_pearson(rng):
    base = rng.random((1, 24))
    values = base + 0.5 * rng.random((40, 24))
    m = TrafficMatrix.from_array(values)
    g = build_graph(m, 0.6)
    expect = {(i, j) for i in range(40) for j in range(i + 1, 40) if pearson(values[i], values[j]) > 0.6}
    assert g.edge_set() == expect


def test_threshold_monotone(rng):
    values = rng.random((30, 48)) + np.sin(np.arange(48))[None, :] * rng.random((30, 1))
    m = TrafficMatrix.from_array(values)
    sets = [build_graph(m, z).edge_set() for z in (0.3, 0.5, 0.7)]
    assert sets[2] <= sets[1] <= sets[0]


def test_remove_isolated_complete_unchanged():
    g = complete(5)
    sub, count, rate = remove_isolated(g)
    assert sub.edge_set() == g.edge_set() and count == 0 and rate == 0


def test_remove_isolated_invariants(rng):
    for _ in range(20):
        n = int(rng.integers(3, 30))
        iu, ju = np.triu_indices(n, 1)
        mask = rng.random(iu.size) < 0.1
        from trafficnet.graph import CorrelationGraph
        g = CorrelationGraph.from_edges(n, list(zip(iu[mask], ju[mask])))
        if g.m == 0:
            continue
        sub, count, _ = remove_isolated(g)
        assert sub.degrees.min() >= 1
        assert sub.m == g.m and sub.n + count == g.n
        ids = [int(x.station_id) for x in sub.node_meta]
        assert ids == sorted(ids)
        assert {(ids[a], ids[b]) for a, b in sub.edges} == g.edge_set()


def test_csv_roundtrip(tmp_path):
    m = TrafficMatrix.from_array([[1.5, 2, 3], [4, 5, 6.25]], ["x", "y"], [120.1, 120.2], [30.1, 30.2])
    p = tmp_path / "t.csv"
    write_traffic_csv(m, p)
    back = read_traffic_csv(p)
    assert back.records == m.records and back.T == 3


def test_csv_missing_values_skipped(tmp_path, caplog):
    p = tmp_path / "t.csv"
    p.write_text("station_id,lon,lat,t0,t1,t2\na,1,2,1,2,3\nb,1,2,1,,3\nc,1,2,3,2,1\n")
    m = read_traffic_csv(p)
    assert [r.station_id for r in m.records] == ["a", "c"]
    assert "missing" in caplog.text


@pytest.mark.parametrize("body, line", [
    ("a,1,2,1,x,3\n", 2),
    ("a,1,2,1,2,3\na,1,2,1,2,3\n", 3),
    ("a,1,2,1,-2,3\n", 2),
])
def test_csv_malformed_reports_line(tmp_path, body, line):
    p = tmp_path / "t.csv"
    p.write_text("station_id,lon,lat,t0,t1,t2\n" + body)
    with pytest.raises(DataError, match=f":{line}:"):
        read_traffic_csv(p)
