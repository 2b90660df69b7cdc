import numpy as np
import pytest

from trafficnet.errors import Disconnected, TooFewPoints
from trafficnet.fractal import box_cover_curve, box_cover_once, fit_dimension
from trafficnet.synthgen import gen_flower, grid, path_graph

from conftest import complete, graph, random_connected, star
from oracles import exhaustive_min_boxes


def test_box_cover_once_examples():
    rng = np.random.default_rng(0)
    assert box_cover_once(complete(10), 1, rng) == 1
    s = star(8)
    draws = [box_cover_once(s, 1, rng) for _ in range(200)]
    assert min(draws) == 1 and max(draws) > 1
    with pytest.raises(Disconnected):
        box_cover_once(graph(3, [(0, 1)]), 1, rng)


def test_exhaustive_oracle_small_examples():
    # frozen from the exhaustive search in tests/oracles.py
    p5 = [(i, i + 1) for i in range(4)]
    assert [exhaustive_min_boxes(5, p5, L) for L in (1, 2, 3, 4)] == [2, 1, 1, 1]
    s8 = [(0, i) for i in range(1, 9)]
    assert exhaustive_min_boxes(9, s8, 1) == 1


def test_box_cover_curve_examples():
    r = box_cover_curve(path_graph(5), repetitions=1000, seed=3)
    assert r.sizes == (1, 2, 3, 4)
    assert r.counts_min == (2, 1, 1, 1)
    r = box_cover_curve(complete(10), repetitions=10)
    assert r.sizes == (1,) and r.counts_min == (1,) and r.d_b is None


def test_box_cover_curve_matches_oracle_random(rng):
    for _ in range(10):
        n = int(rng.integers(4, 11))
        g = random_connected(rng, n, 0.2)
        edges = [tuple(e) for e in g.edges.tolist()]
        r = box_cover_curve(g, repetitions=1000, seed=int(rng.integers(1 << 30)))
        assert list(r.counts_min) == [exhaustive_min_boxes(n, edges, L) for L in r.sizes]


def test_box_cover_reproducible_and_worker_independent():
    g = gen_flower(2, 2, 3)
    a = box_cover_curve(g, repetitions=50, seed=11)
    b = box_cover_curve(g, repetitions=50, seed=11)
    c = box_cover_curve(g, repetitions=50, seed=11, workers=4)
    assert np.array_equal(a.counts_all, b.counts_all)
    assert np.array_equal(a.counts_all, c.counts_all)
    assert a.counts_min == c.counts_min and a.d_b == c.d_b


def test_box_cover_invariants(rng):
    for g in (grid(12), gen_flower(2, 2, 3), random_connected(rng, 80, 0.02)):
        r = box_cover_curve(g, repetitions=30, seed=1)
        assert all(a >= b for a, b in zip(r.counts_min, r.counts_min[1:]))
        assert r.counts_min[-1] == 1
        assert 1 <= r.counts_min[0] <= g.n
        assert r.counts_all.shape == (len(r.sizes), 30)
        assert all(m >= lo for m, lo in zip(r.counts_max, r.counts_min))


def test_box_cover_requires_connected():
    with pytest.raises(Disconnected):
        box_cover_curve(graph(4, [(0, 1), (2, 3)]), repetitions=5)


def test_saturation_trim():
    g = path_graph(40)
    trimmed = box_cover_curve(g, repetitions=100, seed=2)
    full = box_cover_curve(g, repetitions=100, seed=2, trim_saturation=False)
    assert trimmed.counts_min == full.counts_min
    first_one = trimmed.counts_min.index(1)
    assert trimmed.fit_sizes == trimmed.sizes[:first_one + 1]
    assert full.fit_sizes == full.sizes
    assert full.d_b == trimmed.d_b_all


def test_fit_dimension_examples():
    d, r2 = fit_dimension([1, 2, 4], [64, 16, 4])
    assert d == pytest.approx(2.0, abs=1e-12) and r2 == pytest.approx(1.0, abs=1e-12)
    d, r2 = fit_dimension([1, 2, 4], [10, 10, 10])
    assert d == 0.0
    with pytest.raises(TooFewPoints):
        fit_dimension([1, 2], [4, 1])


def test_fit_dimension_noisy_r2_below_one():
    d, r2 = fit_dimension([1, 2, 3, 4, 5], [100, 30, 15, 5, 4])
    assert 0 < r2 < 1 and d > 0
