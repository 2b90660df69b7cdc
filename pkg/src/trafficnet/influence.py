"""Network dismantling by collective influence and degree-based baselines."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import CountTooLarge, InvalidParams, InvalidStrategy
from .graph import CorrelationGraph

STRATEGIES = ("CI", "HD", "HDA")


@dataclass(frozen=True, eq=False)
class DismantlingCurve:
    strategy: str
    removal_order: np.ndarray
    q_values: np.ndarray  # q_values[k] = k / n, starting at 0
    g_values: np.ndarray  # giant fraction after the first k removals
    giant_sizes: np.ndarray
    q_c: float
    cutoff: int
    n: int
    l: int | None = None
    seed: int = 0

    def to_dict(self) -> dict:
        return {"strategy": self.strategy, "l": self.l, "q_c": self.q_c, "cutoff": self.cutoff,
                "seed": self.seed, "removed": int(self.removal_order.size)}


def ci_value(g: CorrelationGraph, i: int, l: int = 2) -> int:
    """(k_i - 1) times the summed (k_j - 1) over nodes at distance exactly ``l``."""
    g._check(i)
    if l < 1:
        raise InvalidParams("ball radius l must be >= 1")
    n = g.n
    alive = np.ones(n, dtype=np.bool_)
    work = [np.zeros(n, dtype=np.int64) for _ in range(2)] + [np.empty(n, dtype=np.int64)]
    return int(K._ci_value(g.indptr, g.indices, alive, g.degrees.astype(np.int64), i, l, *work, 1))


def removal_order(g: CorrelationGraph, strategy: str, l: int = 2, max_removals: int | None = None,
                  localized: bool = True) -> np.ndarray:
    """Full (or first ``max_removals``) removal sequence for a strategy.

    Ties go to the higher current degree, then the lower index.
    """
    if strategy not in STRATEGIES:
        raise InvalidStrategy(f"strategy must be one of {', '.join(STRATEGIES)}, got {strategy!r}")
    if strategy == "CI" and l < 1:
        raise InvalidParams("ball radius l must be >= 1")
    k = g.n if max_removals is None else min(int(max_removals), g.n)
    if strategy == "HD":
        return np.argsort(-g.degrees, kind="stable")[:k].astype(np.int64)
    code = 1 if strategy == "CI" else 0
    return K.adaptive_removal_order(g.indptr, g.indices, code, int(l), bool(localized), k)


def default_cutoff(n: int) -> int:
    return math.ceil(math.sqrt(n))


def dismantle(g: CorrelationGraph, strategy: str = "CI", l: int = 2, cutoff: int | None = None,
              seed: int = 0) -> DismantlingCurve:
    """Remove nodes one at a time until the giant component has at most ``cutoff`` nodes.

    ``q`` and ``G`` are fractions of the original node count; the curve
    starts at q = 0 and ends at q_c. Ties are resolved deterministically, so
    ``seed`` is only echoed.
    """
    order = removal_order(g, strategy, l)
    cutoff = default_cutoff(g.n) if cutoff is None else int(cutoff)
    giant = K.giant_sizes_reverse(g.indptr, g.indices, order)
    stop = int(np.argmax(giant <= cutoff)) if (giant <= cutoff).any() else order.size
    q = np.arange(stop + 1) / g.n
    sizes = giant[:stop + 1].copy()
    return DismantlingCurve(strategy, order[:stop].copy(), q, sizes / g.n, sizes, float(q[-1]),
                            cutoff, g.n, l if strategy == "CI" else None, seed)


@dataclass(frozen=True)
class Influencer:
    rank: int
    node: int
    station_id: str
    degree: int
    lon: float
    lat: float


def top_influencers(g: CorrelationGraph, count: int, l: int = 2, seed: int = 0) -> list[Influencer]:
    """The first ``count`` nodes of the adaptive CI removal order."""
    if count > g.n:
        raise CountTooLarge(f"asked for {count} influencers in a graph of {g.n} nodes")
    if count < 0:
        raise InvalidParams("count must be non-negative")
    order = removal_order(g, "CI", l, max_removals=count)
    out = []
    for r, v in enumerate(order.tolist(), start=1):
        meta = g.meta(v)
        out.append(Influencer(r, v, meta.station_id, int(g.degrees[v]), meta.lon, meta.lat))
    return out
