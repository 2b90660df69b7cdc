import hypothesis
import numpy as np
import pytest

from trafficnet.graph import CorrelationGraph

hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.load_profile("ci")


def graph(n, edges):
    return CorrelationGraph.from_edges(n, edges)


def path(n):
    return graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    return graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n):
    return graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def bridged_triangles():
    # 0-1-2 triangle, 3-4-5 triangle, bridge 2-3
    return graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])


def random_connected(rng, n, p):
    """Random spanning tree plus extra ER edges; always connected."""
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    iu, ju = np.triu_indices(n, 1)
    mask = rng.random(iu.size) < p
    edges += list(zip(iu[mask].tolist(), ju[mask].tolist()))
    return graph(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    lines = [
        value
        for key in ("passed", "failed")
        for rep in terminalreporter.stats.get(key, [])
        if rep.when == "call"
        for name, value in rep.user_properties
        if name == "acceptance"
    ]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
