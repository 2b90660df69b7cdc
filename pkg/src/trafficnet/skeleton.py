"""Betweenness skeleton and uniform random spanning trees."""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import Disconnected
from .fractal import BoxCoveringResult, box_cover_curve
from .graph import CorrelationGraph
from .graphcore import components


@dataclass(frozen=True, eq=False)
class SkeletonTree:
    n: int
    tree_edges: tuple[tuple[int, int, float], ...]
    root: int
    node_meta: tuple | None = None

    def as_graph(self) -> CorrelationGraph:
        return CorrelationGraph.from_edges(self.n, [(a, b) for a, b, _ in self.tree_edges], self.node_meta)

    def weights(self) -> np.ndarray:
        """Betweenness column aligned with ``as_graph().edges``."""
        lookup = {(min(a, b), max(a, b)): w for a, b, w in self.tree_edges}
        return np.array([lookup[(int(a), int(b))] for a, b in self.as_graph().edges])


def edge_betweenness_array(g: CorrelationGraph) -> np.ndarray:
    """Raw shortest-path counts through each edge, aligned with ``g.edges``.

    Pairs with several shortest paths split their unit of credit evenly.
    """
    if g.m == 0:
        return np.zeros(0)
    return K.edge_betweenness(g.indptr, g.indices, g.edge_ids, g.m)


def edge_betweenness(g: CorrelationGraph) -> dict[tuple[int, int], float]:
    eb = edge_betweenness_array(g)
    return {(int(a), int(b)): float(w) for (a, b), w in zip(g.edges, eb)}


def _require_connected(g: CorrelationGraph) -> None:
    if g.n == 0 or components(g).count != 1:
        raise Disconnected("spanning trees need a connected graph; pass the giant component")


def extract_skeleton(g: CorrelationGraph, start: int = 0, betweenness: np.ndarray | None = None) -> SkeletonTree:
    """Grow a tree from ``start``, always taking the frontier edge of highest betweenness.

    Betweenness is computed once on ``g``. Ties go to the smallest
    (tree node, new node) pair.
    """
    _require_connected(g)
    g._check(start)
    eb = edge_betweenness_array(g) if betweenness is None else betweenness
    indptr, indices, eids = g.indptr, g.indices, g.edge_ids
    in_tree = np.zeros(g.n, dtype=bool)
    heap: list[tuple[float, int, int, int]] = []

    def push_frontier(p):
        for q in range(indptr[p], indptr[p + 1]):
            v = int(indices[q])
            if not in_tree[v]:
                e = int(eids[q])
                heapq.heappush(heap, (-float(eb[e]), p, v, e))

    in_tree[start] = True
    push_frontier(start)
    edges = []
    while heap:
        neg, p, v, e = heapq.heappop(heap)
        if in_tree[v]:
            continue
        in_tree[v] = True
        edges.append((p, v, -neg))
        push_frontier(v)
    return SkeletonTree(g.n, tuple(edges), start, g.node_meta)


def _seed32(seed: int) -> int:
    return int(np.random.SeedSequence(seed).generate_state(1)[0])


def random_spanning_tree(g: CorrelationGraph, seed: int = 0, betweenness: np.ndarray | None = None) -> SkeletonTree:
    """Uniformly random spanning tree via loop-erased random walks (Wilson).

    The third column carries ``betweenness`` of the chosen edges when given,
    NaN otherwise.
    """
    _require_connected(g)
    parent = K.wilson_tree(g.indptr, g.indices, 0, _seed32(seed))
    index = {(int(a), int(b)): i for i, (a, b) in enumerate(g.edges)}
    edges = []
    for v in range(1, g.n):
        p = int(parent[v])
        w = float("nan") if betweenness is None else float(betweenness[index[(min(p, v), max(p, v))]])
        edges.append((p, v, w))
    return SkeletonTree(g.n, tuple(edges), 0, g.node_meta)


def compare_fractality(g: CorrelationGraph, skeleton: SkeletonTree, random_tree: SkeletonTree,
                       repetitions: int = 1000, seed: int = 0, workers: int = 1,
                       ) -> tuple[BoxCoveringResult, BoxCoveringResult, BoxCoveringResult]:
    """Box-covering curves of the graph, its skeleton and a random spanning tree."""
    return tuple(
        box_cover_curve(h, repetitions, seed, workers)
        for h in (g, skeleton.as_graph(), random_tree.as_graph())
    )
