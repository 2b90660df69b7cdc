"""Degrees, BFS distances, components, distance statistics and clustering."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import NoEdges
from .graph import CorrelationGraph

UNREACHABLE = K.UNREACHABLE
EXACT_DISTANCE_LIMIT = 10_000


@dataclass(frozen=True)
class ComponentDecomposition:
    component_id: np.ndarray
    sizes: tuple[int, ...]  # descending
    giant_size: int

    @property
    def count(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class DistanceStats:
    average_distance: float
    diameter: int
    pair_count: int
    sampled_sources: int | None = None


def degree(g: CorrelationGraph, i: int) -> int:
    g._check(i)
    return int(g.degrees[i])


def bfs_distances(g: CorrelationGraph, source: int) -> np.ndarray:
    """Hop distances from ``source``; UNREACHABLE (-1) outside its component."""
    g._check(source)
    dist = np.empty(g.n, dtype=np.int64)
    K.bfs_into(g.indptr, g.indices, source, dist, np.empty(g.n, dtype=np.int64))
    return dist


def distance_matrix(g: CorrelationGraph, sources=None) -> np.ndarray:
    """All-pairs (or selected-source) hop distances, -1 for unreachable."""
    src = np.arange(g.n, dtype=np.int64) if sources is None else np.asarray(sources, dtype=np.int64)
    dtype = np.int16 if g.n < np.iinfo(np.int16).max else np.int32
    out = np.empty((src.size, g.n), dtype=dtype)
    K.all_pairs_into(g.indptr, g.indices, src, out)
    return out


def components(g: CorrelationGraph) -> ComponentDecomposition:
    """Connected components; ids are assigned in order of each component's lowest node."""
    labels = K.component_labels(g.indptr, g.indices)
    sizes = np.bincount(labels) if g.n else np.zeros(0, dtype=np.int64)
    ordered = tuple(sorted((int(s) for s in sizes), reverse=True))
    return ComponentDecomposition(labels, ordered, ordered[0] if ordered else 0)


def giant_component(g: CorrelationGraph) -> tuple[CorrelationGraph, np.ndarray]:
    """Induced subgraph on the largest component (lowest-labelled on ties)."""
    labels = K.component_labels(g.indptr, g.indices)
    sizes = np.bincount(labels)
    nodes = np.flatnonzero(labels == int(np.argmax(sizes)))
    return g.subgraph(nodes)


def is_connected(g: CorrelationGraph) -> bool:
    return g.n > 0 and components(g).count == 1


def distance_stats(g: CorrelationGraph, sample_sources: int | None = None, seed: int = 0) -> DistanceStats:
    """Mean and maximum hop distance over pairs inside the largest component.

    With ``sample_sources`` set (used automatically above 10^4 nodes by the
    CLI) only BFS trees from that many uniformly drawn sources are averaged.
    """
    if g.m == 0:
        raise NoEdges("distance statistics need at least one edge")
    sub, _ = giant_component(g)
    n = sub.n
    sources = np.arange(n, dtype=np.int64)
    sampled = None
    if sample_sources is not None and sample_sources < n:
        rng = np.random.default_rng(seed)
        sources = np.sort(rng.choice(n, size=sample_sources, replace=False)).astype(np.int64)
        sampled = int(sample_sources)
    total = 0
    diameter = 0
    pairs = 0
    chunk = max(1, 2_000_000 // max(n, 1))
    for start in range(0, sources.size, chunk):
        d = distance_matrix(sub, sources[start:start + chunk]).astype(np.int64)
        total += int(d.sum())
        diameter = max(diameter, int(d.max()))
        pairs += d.size - d.shape[0]
    if sampled is None:
        # every unordered pair was seen twice
        return DistanceStats(total / pairs, diameter, pairs // 2)
    return DistanceStats(total / pairs, diameter, pairs, sampled)


def local_clustering(g: CorrelationGraph) -> np.ndarray:
    tri = K.triangles_per_node(g.indptr, g.indices).astype(float)
    k = g.degrees.astype(float)
    out = np.zeros(g.n)
    ok = k >= 2
    out[ok] = 2.0 * tri[ok] / (k[ok] * (k[ok] - 1.0))
    return out


def clustering_coefficient(g: CorrelationGraph) -> float:
    """Average local clustering; nodes with degree < 2 count as zero."""
    if g.n == 0:
        return 0.0
    return float(local_clustering(g).mean())
