"""Box covering with radius-``L_b`` balls and the log-log dimension fit."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from ._fit import loglog_fit
from .errors import Disconnected, TooFewPoints
from .graph import CorrelationGraph
from .graphcore import components, distance_matrix


@dataclass(frozen=True, eq=False)
class BoxCoveringResult:
    sizes: tuple[int, ...]
    counts_min: tuple[int, ...]
    counts_all: np.ndarray  # shape (len(sizes), repetitions)
    repetitions: int
    d_b: float | None
    r_squared: float | None
    seed: int
    fit_sizes: tuple[int, ...] = ()
    d_b_all: float | None = None
    r_squared_all: float | None = None

    @property
    def counts_max(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.counts_all.max(axis=1)) if self.sizes else ()

    def to_dict(self) -> dict:
        return {
            "d_b": self.d_b,
            "r_squared": self.r_squared,
            "sizes": list(self.sizes),
            "counts_min": list(self.counts_min),
            "counts_max": list(self.counts_max),
            "fit_sizes": list(self.fit_sizes),
            "d_b_all_sizes": self.d_b_all,
            "r_squared_all_sizes": self.r_squared_all,
            "repetitions": self.repetitions,
            "seed": self.seed,
        }


def _require_connected(g: CorrelationGraph) -> None:
    if g.n == 0 or components(g).count != 1:
        raise Disconnected("box covering needs a connected graph; pass the giant component")


def box_cover_once(g: CorrelationGraph, L_b: int, rng: np.random.Generator, dist=None) -> int:
    """Number of radius-``L_b`` boxes used by one random sequential covering."""
    if L_b < 1:
        raise ValueError("L_b must be >= 1")
    if dist is None:
        _require_connected(g)
        dist = distance_matrix(g)
    perm = rng.permutation(g.n).astype(np.int64)[None, :]
    return int(K.box_cover_counts(dist, L_b, perm)[0])


def _stream(seed: int, L_b: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(L_b,)))


def _counts_for_radius(dist, n, L_b, repetitions, seed):
    rng = _stream(seed, L_b)
    perms = rng.permuted(np.broadcast_to(np.arange(n, dtype=np.int64), (repetitions, n)), axis=1)
    return K.box_cover_counts(dist, L_b, perms)


def box_cover_curve(
    g: CorrelationGraph,
    repetitions: int = 1000,
    seed: int = 0,
    workers: int = 1,
    trim_saturation: bool = True,
) -> BoxCoveringResult:
    """Minimum box count for every radius from 1 up to the diameter.

    Each radius draws its permutations from a stream keyed on (seed, L_b), so
    the result does not depend on ``workers``.

    A radius-``L_b`` box swallows the whole graph once ``L_b`` reaches the
    graph radius, so every later point sits at N_b = 1. With
    ``trim_saturation`` (default) the fit stops at the first N_b = 1; the
    fit over all sizes is kept in ``d_b_all`` / ``r_squared_all`` either way.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    _require_connected(g)
    dist = distance_matrix(g)
    diameter = int(dist.max())
    sizes = tuple(range(1, diameter + 1))
    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(lambda L: _counts_for_radius(dist, g.n, L, repetitions, seed), sizes))
    else:
        rows = [_counts_for_radius(dist, g.n, L, repetitions, seed) for L in sizes]
    counts_all = np.array(rows, dtype=np.int64).reshape(len(sizes), repetitions)
    # a cover by radius-L balls is also a cover at L+1, so carry the best count forward
    counts_min = tuple(int(c) for c in np.minimum.accumulate(counts_all.min(axis=1))) if sizes else ()

    fit_sizes = sizes
    if trim_saturation and 1 in counts_min:
        fit_sizes = sizes[:counts_min.index(1) + 1]
    d_b = r2 = d_all = r2_all = None
    if len(fit_sizes) >= 3:
        d_b, r2 = fit_dimension(fit_sizes, counts_min[:len(fit_sizes)])
    if len(sizes) >= 3:
        d_all, r2_all = fit_dimension(sizes, counts_min)
    return BoxCoveringResult(sizes, counts_min, counts_all, repetitions, d_b, r2, seed,
                             fit_sizes, d_all, r2_all)


def fit_dimension(sizes, counts) -> tuple[float, float]:
    """Fractal dimension as the negated log-log slope of N_b against L_b."""
    sizes = list(sizes)
    counts = list(counts)
    if len(sizes) != len(counts):
        raise ValueError("sizes and counts differ in length")
    if len(sizes) < 3:
        raise TooFewPoints(f"need at least 3 points, got {len(sizes)}")
    if min(sizes) < 1 or min(counts) < 1:
        raise ValueError("sizes and counts must be >= 1")
    slope, r2 = loglog_fit(sizes, counts)
    return -slope + 0.0, r2
