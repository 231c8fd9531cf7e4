"""Reliability diagrams: per-bin weighted means of both responses vs. score."""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DegenerateRange, InvalidBinCount
from .samples import canonicalize


@dataclass(frozen=True, eq=False)
class BinBoundaries:
    """Finite interior boundaries; the outer ones are -inf and +inf.

    A score ``s`` falls in bin ``i`` when ``B[i-1] < s <= B[i]``.
    """

    interior: np.ndarray

    @property
    def count(self):
        return len(self.interior) + 1

    def assign(self, scores):
        return np.searchsorted(self.interior, scores, side="left")


@dataclass(frozen=True, eq=False)
class ReliabilityDiagram:
    s_mean: np.ndarray
    r_mean: np.ndarray
    q_mean: np.ndarray
    bin_weight: np.ndarray
    boundaries: BinBoundaries


def _check_count(nbins):
    if int(nbins) != nbins or nbins < 1:
        raise InvalidBinCount(f"bin count must be a positive integer, got {nbins!r}")
    return int(nbins)


def bins_equispaced(agg, nbins):
    nbins = _check_count(nbins)
    lo, hi = float(agg.scores[0]), float(agg.scores[-1])
    if nbins > 1 and lo == hi:
        raise DegenerateRange("all scores are equal; cannot split into equal widths")
    width = (hi - lo) / nbins
    return BinBoundaries(np.array([lo + i * width for i in range(1, nbins)]))


def equivariance_partition(weight_total, weight_sq, nbins):
    """Greedy left-to-right split of groups into ``nbins`` contiguous runs.

    A run closes as soon as its ratio (sum of squared weights) / (sum of
    weights)**2 falls to the ratio the remaining groups would have if spread
    evenly over the remaining bins.  Returns the start index of every run
    after the first.
    """
    w = np.asarray(weight_total, dtype=np.float64)
    w2 = np.asarray(weight_sq, dtype=np.float64)
    m = len(w)
    # suffix sums: tail1[j] = sum(w[j:]), tail2[j] = sum(w2[j:])
    tail1 = _backend.compensated_cumsum(w[::-1])[::-1]
    tail2 = _backend.compensated_cumsum(w2[::-1])[::-1]
    cuts = []
    start = 0
    for b in range(nbins - 1):
        left = nbins - b
        target = left * tail2[start] / tail1[start] ** 2
        last = m - left  # leave at least one group per later bin
        s1 = s2 = 0.0
        j = start
        while True:
            s1 += w[j]
            s2 += w2[j]
            if j == last or s2 / (s1 * s1) <= target * (1 + 1e-12):
                break
            j += 1
        start = j + 1
        cuts.append(start)
    return cuts


def bins_equivariance(agg, nbins):
    nbins = _check_count(nbins)
    if nbins > agg.m:
        raise InvalidBinCount(f"{nbins} bins requested for {agg.m} distinct scores")
    cuts = equivariance_partition(agg.weight_total, agg.weight_sq, nbins)
    s = agg.scores
    bounds = []
    for c in cuts:
        mid = s[c - 1] / 2 + s[c] / 2
        # adjacent floats: the midpoint may round onto s[c]
        bounds.append(mid if s[c - 1] <= mid < s[c] else s[c - 1])
    return BinBoundaries(np.array(bounds, dtype=np.float64))


def diagram(dataset, boundaries):
    """Weighted means per nonempty bin; empty bins are left out."""
    dataset = canonicalize(dataset)
    bins = boundaries.assign(dataset.scores).astype(np.float64)
    _, qm, rm, wt, _ = _backend.group_reduce(bins, dataset.q, dataset.r, dataset.weights)
    s = dataset.scores
    _, sm, _, _, _ = _backend.group_reduce(bins, s, s, dataset.weights)
    return ReliabilityDiagram(sm, rm, qm, wt, boundaries)
