"""Synthetic traffic matrices and benchmark graphs with known structure."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams
from .graph import CorrelationGraph
from .traffic import StationRecord, TrafficMatrix

KINDS = ("traffic_blocks", "grid", "path", "flower", "ba", "er", "ws", "star", "cycle", "complete")


@dataclass(frozen=True)
class SynthSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParams(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        for k, v in self.params.items():
            if isinstance(v, (int, float)) and v < 0:
                raise InvalidParams(f"{k} must be non-negative")


def generate(spec: SynthSpec):
    """TrafficMatrix for ``traffic_blocks``, CorrelationGraph otherwise."""
    p = dict(spec.params)
    if spec.kind == "traffic_blocks":
        return gen_traffic_blocks(seed=spec.seed, **p)
    if spec.kind == "flower":
        return gen_flower(**p)
    return gen_standard(spec.kind, p, spec.seed)


def gen_traffic_blocks(blocks: int = 3, per_block: int = 50, T: int = 48, noise: float = 0.2,
                       seed: int = 0, period: int = 24) -> TrafficMatrix:
    """Stations grouped in blocks that share a phase-shifted diurnal profile.

    The profile is a daily sinusoid plus its first harmonic; block phases are
    spread evenly around the day. Each station gets an independent volume
    scale and Gaussian noise with std ``noise`` times the daily amplitude.
    """
    if T < 2:
        raise InvalidParams("T must be >= 2")
    if blocks < 1 or per_block < 1 or noise < 0 or period < 2:
        raise InvalidParams("blocks, per_block >= 1, noise >= 0, period >= 2 required")
    rng = np.random.default_rng(seed)
    t = np.arange(T)
    amp1, amp2 = 0.5, 0.25
    centers = rng.uniform([120.0, 30.0], [120.5, 30.5], size=(blocks, 2))
    records = []
    for b in range(blocks):
        phase = 2 * np.pi * b / blocks
        w = 2 * np.pi * t / period
        base = 1.0 + amp1 * np.sin(w + phase) + amp2 * np.sin(2 * (w + phase))
        for s in range(per_block):
            scale = 1e6 * np.exp(rng.normal(0.0, 0.5))
            series = base + rng.normal(0.0, noise * amp1, size=T) if noise > 0 else base
            series = np.clip(series, 0.0, None) * scale
            lon, lat = centers[b] + rng.normal(0.0, 0.01, size=2)
            records.append(StationRecord(f"b{b}s{s}", float(lon), float(lat), tuple(float(x) for x in series)))
    return TrafficMatrix(tuple(records))


def block_of(station_id: str) -> int:
    """Block index encoded in a ``gen_traffic_blocks`` station id."""
    return int(station_id[1:station_id.index("s")])


def gen_flower(u: int, v: int, generations: int) -> CorrelationGraph:
    """(u,v)-flower: every generation replaces each edge by parallel paths of u and v edges."""
    if not (u >= 2 and v >= u and generations >= 1):
        raise InvalidParams("flower needs u >= 2, v >= u, generations >= 1")
    edges = [(0, 1)]
    n = 2
    for _ in range(generations):
        new = []
        for x, y in edges:
            for length in (u, v):
                prev = x
                for _ in range(length - 1):
                    new.append((prev, n))
                    prev = n
                    n += 1
                new.append((prev, y))
        edges = new
    return CorrelationGraph.from_edges(n, edges)


def flower_counts(u: int, v: int, generations: int) -> tuple[int, int]:
    """Closed-form (nodes, edges) of a (u,v)-flower."""
    w = u + v
    return ((w - 2) * w ** generations + w) // (w - 1), w ** generations


def grid(rows: int, cols: int | None = None) -> CorrelationGraph:
    cols = rows if cols is None else cols
    if rows < 1 or cols < 1:
        raise InvalidParams("grid sides must be >= 1")
    idx = np.arange(rows * cols).reshape(rows, cols)
    e = [np.stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()], 1),
         np.stack([idx[:-1, :].ravel(), idx[1:, :].ravel()], 1)]
    return CorrelationGraph.from_edges(rows * cols, np.concatenate(e))


def path_graph(n: int) -> CorrelationGraph:
    if n < 1:
        raise InvalidParams("path needs n >= 1")
    return CorrelationGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> CorrelationGraph:
    if n < 3:
        raise InvalidParams("cycle needs n >= 3")
    return CorrelationGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> CorrelationGraph:
    if leaves < 1:
        raise InvalidParams("star needs at least one leaf")
    return CorrelationGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> CorrelationGraph:
    if n < 1:
        raise InvalidParams("complete graph needs n >= 1")
    iu, ju = np.triu_indices(n, 1)
    return CorrelationGraph.from_edges(n, np.stack([iu, ju], 1))


def erdos_renyi(n: int, p: float, seed: int = 0) -> CorrelationGraph:
    if n < 1 or not 0 <= p <= 1:
        raise InvalidParams("ER needs n >= 1 and 0 <= p <= 1")
    rng = np.random.default_rng(seed)
    parts = []
    for i in range(n - 1):
        js = np.flatnonzero(rng.random(n - i - 1) < p) + i + 1
        parts.append(np.stack([np.full(js.size, i), js], 1))
    edges = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    return CorrelationGraph.from_edges(n, edges)


def barabasi_albert(n: int, m: int, seed: int = 0) -> CorrelationGraph:
    """Preferential attachment from a complete seed graph on m+1 nodes.

    Targets are drawn from the endpoint list (one entry per edge end), so the
    draw is proportional to degree; repeated targets are redrawn.
    """
    if m < 1 or n <= m:
        raise InvalidParams("BA needs m >= 1 and n > m")
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]
    ends = [x for e in edges for x in e]
    for new in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(ends[int(rng.integers(len(ends)))])
        for t in sorted(targets):
            edges.append((t, new))
            ends.extend((t, new))
    return CorrelationGraph.from_edges(n, edges)


def watts_strogatz(n: int, k: int, p: float, seed: int = 0) -> CorrelationGraph:
    """Ring lattice of even degree ``k``; each lattice edge rewired with probability ``p``."""
    if k % 2 or k < 2 or k >= n or not 0 <= p <= 1:
        raise InvalidParams("WS needs even 2 <= k < n and 0 <= p <= 1")
    rng = np.random.default_rng(seed)
    adj = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, k // 2 + 1):
            w = (u + j) % n
            adj[u].add(w)
            adj[w].add(u)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            w = (u + j) % n
            if rng.random() >= p or w not in adj[u] or len(adj[u]) >= n - 1:
                continue
            x = int(rng.integers(n))
            while x == u or x in adj[u]:
                x = int(rng.integers(n))
            adj[u].discard(w)
            adj[w].discard(u)
            adj[u].add(x)
            adj[x].add(u)
    return CorrelationGraph.from_edges(n, [(u, w) for u in range(n) for w in adj[u] if u < w])


def gen_standard(kind: str, params: dict, seed: int = 0) -> CorrelationGraph:
    try:
        if kind == "grid":
            return grid(int(params["side"]) if "side" in params else int(params["rows"]),
                        int(params["cols"]) if "cols" in params else None)
        if kind == "path":
            return path_graph(int(params["n"]))
        if kind == "cycle":
            return cycle_graph(int(params["n"]))
        if kind == "star":
            return star_graph(int(params["leaves"]))
        if kind == "complete":
            return complete_graph(int(params["n"]))
        if kind == "ba":
            return barabasi_albert(int(params["n"]), int(params["m"]), seed)
        if kind == "er":
            return erdos_renyi(int(params["n"]), float(params["p"]), seed)
        if kind == "ws":
            return watts_strogatz(int(params["n"]), int(params["k"]), float(params["p"]), seed)
    except KeyError as exc:
        raise InvalidParams(f"{kind} needs parameter {exc.args[0]}") from None
    raise InvalidParams(f"unknown graph kind {kind!r}")
