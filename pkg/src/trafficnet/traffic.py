"""Traffic series ingestion and the thresholded Pearson correlation graph."""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DataError, EmptyResult, InvalidParams, LengthMismatch
from .graph import CorrelationGraph, NodeMeta

log = logging.getLogger(__name__)

# rows of the correlation matrix evaluated per block in build_graph
_BLOCK = 1024


@dataclass(frozen=True)
class StationRecord:
    station_id: str
    longitude: float
    latitude: float
    traffic: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class TrafficMatrix:
    records: tuple[StationRecord, ...]
    T: int = field(init=False)

    def __post_init__(self):
        recs = tuple(self.records)
        object.__setattr__(self, "records", recs)
        if not recs:
            raise InvalidParams("traffic matrix needs at least one station")
        lengths = {len(r.traffic) for r in recs}
        if len(lengths) != 1:
            raise LengthMismatch(f"traffic vectors have differing lengths {sorted(lengths)}")
        ids = [r.station_id for r in recs]
        if len(set(ids)) != len(ids):
            raise InvalidParams("duplicate station_id")
        object.__setattr__(self, "T", lengths.pop())

    @classmethod
    def from_array(cls, values, station_ids=None, lon=None, lat=None) -> "TrafficMatrix":
        values = np.asarray(values, dtype=float)
        n = values.shape[0]
        station_ids = station_ids if station_ids is not None else [f"bs{i}" for i in range(n)]
        lon = lon if lon is not None else [math.nan] * n
        lat = lat if lat is not None else [math.nan] * n
        return cls(tuple(
            StationRecord(str(s), float(a), float(b), tuple(float(v) for v in row))
            for s, a, b, row in zip(station_ids, lon, lat, values)
        ))

    @property
    def N(self) -> int:
        return len(self.records)

    @cached_property
    def values(self) -> np.ndarray:
        v = np.array([r.traffic for r in self.records], dtype=float)
        v.setflags(write=False)
        return v

    def node_meta(self) -> list[NodeMeta]:
        return [NodeMeta(r.station_id, r.longitude, r.latitude) for r in self.records]


def pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Pearson correlation of two equal-length series.

    Returns None when either series is constant.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise LengthMismatch(f"series lengths differ: {x.size} vs {y.size}")
    if x.size < 2:
        raise LengthMismatch("need at least two samples")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return None
    dx = x - x.mean()
    dy = y - y.mean()
    denom = math.sqrt(float(np.dot(dx, dx)) * float(np.dot(dy, dy)))
    if denom == 0.0:
        return None
    r = float(np.dot(dx, dy)) / denom
    return min(1.0, max(-1.0, r))


def _normalized_rows(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    dev = values - values.mean(axis=1, keepdims=True)
    norms = np.sqrt(np.einsum("ij,ij->i", dev, dev))
    defined = (np.ptp(values, axis=1) > 0) & (norms > 0)
    unit = np.zeros_like(dev)
    unit[defined] = dev[defined] / norms[defined, None]
    return unit, defined


def correlation_matrix(m: TrafficMatrix) -> np.ndarray:
    """Full N x N Pearson matrix; NaN where a row is constant."""
    unit, defined = _normalized_rows(m.values)
    rho = np.clip(unit @ unit.T, -1.0, 1.0)
    rho[~defined, :] = np.nan
    rho[:, ~defined] = np.nan
    return rho


def build_graph(m: TrafficMatrix, Z: float) -> CorrelationGraph:
    """Link every station pair whose correlation is strictly above ``Z``.

    Isolated stations are kept; constant series never get an edge.
    """
    if not 0.0 < Z < 1.0:
        raise InvalidParams(f"threshold must lie in (0, 1), got {Z}")
    if m.N < 2:
        raise InvalidParams("need at least two stations")
    unit, defined = _normalized_rows(m.values)
    parts = []
    for start in range(0, m.N, _BLOCK):
        block = unit[start:start + _BLOCK] @ unit.T
        i, j = np.nonzero(block > Z)
        i = i + start
        keep = (i < j) & defined[i] & defined[j]
        parts.append(np.stack([i[keep], j[keep]], axis=1))
    edges = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    return CorrelationGraph.from_edges(m.N, edges, m.node_meta(), threshold=float(Z))


def remove_isolated(g: CorrelationGraph) -> tuple[CorrelationGraph, int, float]:
    """Drop degree-0 nodes, keeping the survivors in their original order."""
    keep = np.flatnonzero(g.degrees > 0)
    if keep.size == 0:
        raise EmptyResult("every node is isolated")
    if g.node_meta is None:
        g = CorrelationGraph.from_edges(g.n, g.edges, [NodeMeta(str(i)) for i in range(g.n)], g.threshold)
    sub, _ = g.subgraph(keep)
    removed = g.n - keep.size
    return sub, removed, removed / g.n


def read_traffic_csv(path: str | Path) -> TrafficMatrix:
    """Read ``station_id,lon,lat,t0,...`` rows.

    Rows with missing traffic values are skipped with a warning. Anything
    else malformed raises DataError naming the line.
    """
    records = []
    seen: set[str] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if header[:3] != ["station_id", "lon", "lat"] or len(header) < 5:
            raise DataError(f"{path}:1: expected header station_id,lon,lat,t0,t1,...")
        T = len(header) - 3
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            cells = [c.strip() for c in row]
            if len(cells) > len(header):
                raise DataError(f"{path}:{lineno}: {len(cells)} fields, header has {len(header)}")
            sid = cells[0]
            if not sid:
                raise DataError(f"{path}:{lineno}: empty station_id")
            if sid in seen:
                raise DataError(f"{path}:{lineno}: duplicate station_id {sid!r}")
            traffic_cells = cells[3:]
            if len(traffic_cells) < T or any(c == "" or c.lower() in ("na", "nan") for c in traffic_cells):
                log.warning("%s:%d: station %s has missing traffic values, row skipped", path, lineno, sid)
                continue
            try:
                lon, lat = float(cells[1]), float(cells[2])
                traffic = tuple(float(c) for c in traffic_cells)
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from None
            if any(v < 0 or not math.isfinite(v) for v in traffic):
                raise DataError(f"{path}:{lineno}: traffic values must be finite and non-negative")
            seen.add(sid)
            records.append(StationRecord(sid, lon, lat, traffic))
    if not records:
        raise DataError(f"{path}: no usable rows")
    return TrafficMatrix(tuple(records))


def write_traffic_csv(m: TrafficMatrix, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["station_id", "lon", "lat"] + [f"t{t}" for t in range(m.T)])
        for r in m.records:
            w.writerow([r.station_id, repr(r.longitude), repr(r.latitude)] + [repr(v) for v in r.traffic])
