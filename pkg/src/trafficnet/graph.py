"""Immutable simple undirected graph over integer node indices 0..n-1."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import IndexOutOfRange, InvalidParams


@dataclass(frozen=True)
class NodeMeta:
    station_id: str
    lon: float = float("nan")
    lat: float = float("nan")


@dataclass(frozen=True, eq=False)
class CorrelationGraph:
    """Simple undirected graph.

    ``edges`` is an ``(m, 2)`` int64 array with ``i < j`` on every row, rows
    unique and sorted lexicographically. Build instances through
    :meth:`from_edges`, which canonicalizes arbitrary input.
    """

    n: int
    edges: np.ndarray
    node_meta: tuple[NodeMeta, ...] | None = None
    threshold: float | None = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]] | np.ndarray,
        node_meta: Sequence[NodeMeta] | None = None,
        threshold: float | None = None,
    ) -> "CorrelationGraph":
        n = int(n)
        if n < 0:
            raise InvalidParams(f"negative node count {n}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size:
            if arr.min() < 0 or arr.max() >= n:
                raise IndexOutOfRange(f"edge endpoint outside 0..{n - 1}")
            arr = np.sort(arr, axis=1)
            arr = arr[arr[:, 0] != arr[:, 1]]
            arr = np.unique(arr, axis=0)
        arr.setflags(write=False)
        meta = None
        if node_meta is not None:
            meta = tuple(node_meta)
            if len(meta) != n:
                raise InvalidParams(f"node_meta has {len(meta)} entries for {n} nodes")
        return cls(n=n, edges=arr, node_meta=meta, threshold=threshold)

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        n, e = self.n, self.edges
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        eid = np.concatenate([np.arange(self.m), np.arange(self.m)])
        order = np.lexsort((dst, src))
        counts = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return indptr, dst[order].astype(np.int64), eid[order].astype(np.int64)

    @property
    def indptr(self) -> np.ndarray:
        return self._csr[0]

    @property
    def indices(self) -> np.ndarray:
        return self._csr[1]

    @property
    def edge_ids(self) -> np.ndarray:
        """Edge row index for each CSR entry, aligned with :attr:`indices`."""
        return self._csr[2]

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, i: int) -> np.ndarray:
        self._check(i)
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(a), int(b)) for a, b in self.edges}

    def adjacency(self) -> np.ndarray:
        w = np.zeros((self.n, self.n), dtype=np.int8)
        w[self.edges[:, 0], self.edges[:, 1]] = 1
        w[self.edges[:, 1], self.edges[:, 0]] = 1
        return w

    def station_ids(self) -> list[str]:
        if self.node_meta is None:
            return [str(i) for i in range(self.n)]
        return [m.station_id for m in self.node_meta]

    def meta(self, i: int) -> NodeMeta:
        self._check(i)
        if self.node_meta is None:
            return NodeMeta(str(i))
        return self.node_meta[i]

    def subgraph(self, nodes: Iterable[int]) -> tuple["CorrelationGraph", np.ndarray]:
        """Induced subgraph on ``nodes``, reindexed in ascending original order.

        Returns the subgraph and the array mapping new index -> original index.
        """
        keep = np.unique(np.asarray(list(nodes), dtype=np.int64))
        if keep.size and (keep[0] < 0 or keep[-1] >= self.n):
            raise IndexOutOfRange("subgraph node outside graph")
        new_index = np.full(self.n, -1, dtype=np.int64)
        new_index[keep] = np.arange(keep.size)
        e = new_index[self.edges]
        e = e[(e[:, 0] >= 0) & (e[:, 1] >= 0)]
        meta = None if self.node_meta is None else [self.node_meta[i] for i in keep]
        return CorrelationGraph.from_edges(keep.size, e, meta, self.threshold), keep

    def with_edges(self, edges) -> "CorrelationGraph":
        return CorrelationGraph.from_edges(self.n, edges, self.node_meta, self.threshold)

    def _check(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexOutOfRange(f"node {i} outside 0..{self.n - 1}")

    def __repr__(self) -> str:
        return f"CorrelationGraph(n={self.n}, m={self.m}, threshold={self.threshold})"
