"""Degree statistics, assortativity and the degree-preserving correlation profile."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from ._fit import loglog_fit
from .errors import InvalidParams, NoEdges, Stuck, TooFewPoints
from .graph import CorrelationGraph
from .graphcore import clustering_coefficient, distance_stats


@dataclass(frozen=True, eq=False)
class DegreeDistribution:
    k: np.ndarray
    pk: np.ndarray
    lam: float | None = None
    fit_range: tuple[int, int] | None = None
    r_squared: float | None = None
    lam_mle: float | None = None

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "r_squared": self.r_squared,
                "fit_range": list(self.fit_range) if self.fit_range else None,
                "lambda_mle": self.lam_mle}


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    bin_edges: np.ndarray  # bin b holds degrees in [edges[b], edges[b+1])
    observed: np.ndarray
    null_mean: np.ndarray
    ratio: np.ndarray  # NaN where null_mean == 0
    ensemble_size: int
    swaps_per_sample: int
    seed: int
    edge_count: int

    @property
    def defined(self) -> np.ndarray:
        return ~np.isnan(self.ratio)

    def populated(self, min_expected: float = 5.0) -> np.ndarray:
        """Cells where the null ensemble expects at least ``min_expected`` edge ends."""
        return self.defined & (self.null_mean * 2 * self.edge_count >= min_expected)

    def mean_abs_deviation(self, min_expected: float = 5.0) -> float:
        mask = self.populated(min_expected)
        return float(np.abs(self.ratio[mask] - 1.0).mean()) if mask.any() else float("nan")


def fit_power_law(k, pk) -> tuple[float, float]:
    """Exponent lambda of P(k) ~ k^-lambda by least squares in log-log space."""
    k = np.asarray(k, dtype=float)
    pk = np.asarray(pk, dtype=float)
    ok = (k > 0) & (pk > 0)
    if np.count_nonzero(ok) < 3:
        raise TooFewPoints("need at least 3 distinct positive degrees")
    slope, r2 = loglog_fit(k[ok], pk[ok])
    return -slope + 0.0, r2


def _mle_exponent(degrees: np.ndarray, k_min: int) -> float | None:
    # continuous approximation to the discrete estimator, shifted by 1/2
    tail = degrees[degrees >= k_min].astype(float)
    s = float(np.log(tail / (k_min - 0.5)).sum())
    return 1.0 + tail.size / s if s > 0 else None


def degree_distribution(g: CorrelationGraph, fit_range: tuple[int, int] | None = None) -> DegreeDistribution:
    """Empirical P(k) over all nodes plus a power-law fit.

    The fit uses every observed k >= 1 unless ``fit_range`` narrows it; with
    fewer than three distinct degrees the fit fields stay None.
    """
    if g.n == 0:
        raise InvalidParams("empty graph")
    k, counts = np.unique(g.degrees, return_counts=True)
    pk = counts / g.n
    lo, hi = fit_range if fit_range else (1, int(k.max()))
    sel = (k >= max(lo, 1)) & (k <= hi)
    if np.count_nonzero(sel) < 3:
        return DegreeDistribution(k, pk)
    lam, r2 = fit_power_law(k[sel], pk[sel])
    rng = (int(k[sel].min()), int(k[sel].max()))
    return DegreeDistribution(k, pk, lam, rng, r2, _mle_exponent(g.degrees, rng[0]))


def assortativity(g: CorrelationGraph) -> float | None:
    """Degree-degree Pearson coefficient over edges; None for degree-regular edge sets.

    Evaluated in exact integer arithmetic: both numerator and denominator of
    the edge-averaged form are scaled by 4M^2.
    """
    if g.m == 0:
        raise NoEdges("assortativity needs at least one edge")
    deg = g.degrees
    ki = deg[g.edges[:, 0]].astype(object)
    kj = deg[g.edges[:, 1]].astype(object)
    M = g.m
    prod = int(sum(ki * kj))
    s1 = int(sum(ki + kj))
    s2 = int(sum(ki * ki + kj * kj))
    num = 4 * M * prod - s1 * s1
    den = 2 * M * s2 - s1 * s1
    if den == 0:
        return None
    return num / den


def double_edge_swap(g: CorrelationGraph, swaps: int, seed: int = 0,
                     max_attempts: int | None = None) -> tuple[CorrelationGraph, int]:
    """Rewire (a,b),(c,d) -> (a,d),(c,b) until ``swaps`` successes or the attempt budget.

    Returns the rewired graph and the number of successful swaps.
    """
    if g.m < 2:
        raise InvalidParams("rewiring needs at least two edges")
    budget = 100 * swaps if max_attempts is None else max_attempts
    edges = np.array(g.edges, dtype=np.int64)
    done, _ = K.double_edge_swap(edges, g.indptr, g.indices, int(swaps), int(budget), int(seed) & 0xFFFFFFFF)
    return g.with_edges(edges), int(done)


def randomize_preserving_degrees(g: CorrelationGraph, swaps: int | None = None, seed: int = 0,
                                 on_stuck: str = "raise") -> CorrelationGraph:
    """Degree-preserving randomization by successful double edge swaps (default 10*|E|).

    If 100 * swaps attempts do not reach the target, raise Stuck, or with
    ``on_stuck="return"`` hand back whatever the chain reached.
    """
    swaps = 10 * g.m if swaps is None else swaps
    out, done = double_edge_swap(g, swaps, seed)
    if done < swaps and on_stuck == "raise":
        raise Stuck(f"only {done} of {swaps} swaps succeeded within {100 * swaps} attempts")
    return out


def _bin_edges(max_degree: int, base: float) -> np.ndarray:
    edges = [1.0]
    while edges[-1] <= max_degree:
        edges.append(edges[-1] * base)
    return np.array(edges)


def _joint_histogram(g: CorrelationGraph, bin_edges: np.ndarray) -> np.ndarray:
    nb = bin_edges.size - 1
    b = np.searchsorted(bin_edges, g.degrees, side="right") - 1
    bi, bj = b[g.edges[:, 0]], b[g.edges[:, 1]]
    h = np.zeros((nb, nb))
    np.add.at(h, (bi, bj), 1.0)
    np.add.at(h, (bj, bi), 1.0)
    return h / h.sum()


def correlation_profile(g: CorrelationGraph, base: float = 2.0, ensemble_size: int = 100,
                        swaps: int | None = None, seed: int = 0) -> CorrelationProfile:
    """Observed joint degree distribution over the mean of a rewired null ensemble.

    Each edge contributes both orientations, so every matrix is symmetric.
    Null samples that stall keep whatever swaps they reached.
    """
    if g.m == 0:
        raise NoEdges("correlation profile needs at least one edge")
    if base <= 1:
        raise InvalidParams("bin base must exceed 1")
    swaps = 10 * g.m if swaps is None else swaps
    bin_edges = _bin_edges(int(g.degrees.max()), base)
    observed = _joint_histogram(g, bin_edges)
    null = np.zeros_like(observed)
    seeds = np.random.SeedSequence(seed).generate_state(ensemble_size)
    for s in seeds:
        h = g if g.m < 2 else double_edge_swap(g, swaps, int(s))[0]
        null += _joint_histogram(h, bin_edges)
    null /= ensemble_size
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(null > 0, observed / np.where(null > 0, null, 1.0), np.nan)
    return CorrelationProfile(bin_edges, observed, null, ratio, ensemble_size, swaps, seed, g.m)


def small_world_report(g: CorrelationGraph, sample_sources: int | None = None, seed: int = 0) -> dict:
    """Average distance next to ln N, and clustering, for the small-world check."""
    ds = distance_stats(g, sample_sources, seed)
    return {"network_size": g.n, "ln_network_size": math.log(g.n), "average_distance": ds.average_distance,
            "diameter": ds.diameter, "clustering_coefficient": clustering_coefficient(g)}
