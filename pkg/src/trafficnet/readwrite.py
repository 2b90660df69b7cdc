"""Graph files: ``<stem>.edges`` (one ``i j`` pair per line) plus ``<stem>.json``."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import DataError
from .graph import CorrelationGraph, NodeMeta

FORMAT_VERSION = 1


def _num(x: float) -> float | None:
    return None if x is None or (isinstance(x, float) and math.isnan(x)) else x


def graph_paths(path: str | Path) -> tuple[Path, Path]:
    p = Path(path)
    stem = p.with_suffix("") if p.suffix in (".edges", ".json") else p
    return stem.with_suffix(".edges"), stem.with_suffix(".json")


def write_graph(g: CorrelationGraph, path: str | Path, extra: dict | None = None,
                weights: np.ndarray | None = None) -> tuple[Path, Path]:
    """Write the edge list and its JSON sidecar; returns both paths.

    ``weights`` adds a third column (used for skeleton betweenness).
    """
    edges_path, meta_path = graph_paths(path)
    with open(edges_path, "w", encoding="utf-8") as fh:
        if weights is None:
            for a, b in g.edges:
                fh.write(f"{a} {b}\n")
        else:
            for (a, b), w in zip(g.edges, weights):
                fh.write(f"{a} {b} {float(w)!r}\n")
    nodes = [
        {"station_id": m.station_id, "lon": _num(m.lon), "lat": _num(m.lat)}
        for m in (g.node_meta or [NodeMeta(str(i)) for i in range(g.n)])
    ]
    doc = {"format_version": FORMAT_VERSION, "n": g.n, "threshold": g.threshold, "nodes": nodes}
    if extra:
        doc.update(extra)
    write_json(meta_path, doc)
    return edges_path, meta_path


def read_graph(path: str | Path) -> tuple[CorrelationGraph, dict]:
    """Load a graph written by :func:`write_graph`.

    Without a sidecar the node count is inferred from the largest index.
    Returns the graph and the raw sidecar document (empty if absent).
    """
    edges_path, meta_path = graph_paths(path)
    if not edges_path.exists():
        raise DataError(f"{edges_path}: no such edge list")
    pairs = []
    with open(edges_path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise DataError(f"{edges_path}:{lineno}: expected 'i j'")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise DataError(f"{edges_path}:{lineno}: non-integer node index") from None
            if a < 0 or b < 0 or a == b:
                raise DataError(f"{edges_path}:{lineno}: invalid edge {a} {b}")
            pairs.append((a, b))
    doc: dict = {}
    if meta_path.exists():
        with open(meta_path, encoding="utf-8") as fh:
            doc = json.load(fh)
        n = int(doc["n"])
        meta = [
            NodeMeta(str(d["station_id"]),
                     math.nan if d.get("lon") is None else float(d["lon"]),
                     math.nan if d.get("lat") is None else float(d["lat"]))
            for d in doc["nodes"]
        ]
    else:
        n = 1 + max((max(p) for p in pairs), default=-1)
        meta = None
    if pairs and max(max(p) for p in pairs) >= n:
        raise DataError(f"{edges_path}: node index exceeds sidecar node count {n}")
    g = CorrelationGraph.from_edges(n, pairs, meta, doc.get("threshold"))
    return g, doc


def write_json(path: str | Path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def write_columns(path: str | Path, header: str, *cols) -> None:
    """Whitespace-separated numeric columns with a ``#`` header line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {header}\n")
        for row in zip(*cols):
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def read_columns(path: str | Path) -> np.ndarray:
    return np.loadtxt(path, comments="#", ndmin=2)
