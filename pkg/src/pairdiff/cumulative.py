"""Cumulative differences between paired responses and their scalar summaries.

For aggregated samples with weighted mean responses ``Q_j``, ``R_j`` and total
weights ``W_j`` (sorted by score), the curve has abscissae
``A_k = sum_{j<=k} W_j / sum_j W_j`` and ordinates
``C_k = sum_{j<=k} (Q_j - R_j) W_j / sum_j W_j``, with the origin ``(0, 0)``
implied.  The slope of a secant between two points on the curve is the
weighted mean difference over the scores between them.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend


@dataclass(frozen=True, eq=False)
class CumulativeCurve:
    """Points ``(A_k, C_k)`` for k = 1..m.

    ``weights`` and ``increments`` keep the per-group ``W_j`` and
    ``(Q_j - R_j) W_j`` so chords can be summed directly instead of
    differencing rounded ordinates; they are optional for curves built from
    plain point lists.
    """

    abscissae: np.ndarray
    ordinates: np.ndarray
    weights: np.ndarray | None = None
    increments: np.ndarray | None = None

    @property
    def m(self):
        return len(self.abscissae)

    def point(self, j):
        """Return ``(A_j, C_j)``; ``j = 0`` is the origin."""
        if j == 0:
            return 0.0, 0.0
        return float(self.abscissae[j - 1]), float(self.ordinates[j - 1])


@dataclass(frozen=True)
class CurveMetrics:
    """Scalar summaries of a cumulative curve.

    ``kuiper_over_sigma`` and ``ks_over_sigma`` are ``None`` when ``sigma`` is
    zero; callers must treat ``None`` as "undefined", never as 0.
    """

    kuiper: float
    kolmogorov_smirnov: float
    average_difference: float
    sigma: float
    kuiper_over_sigma: float | None
    ks_over_sigma: float | None


def cumulative_curve(agg):
    weights = np.array(agg.weight_total, dtype=np.float64)
    increments = (agg.q_mean - agg.r_mean) * weights
    total = _backend.compensated_cumsum(weights)
    grand = total[-1]
    abscissae = total / grand
    ordinates = _backend.compensated_cumsum(increments) / grand
    return CumulativeCurve(abscissae, ordinates, weights, increments)


def secant_slope(curve, j_lo, j_hi):
    """Slope of the chord from point ``j_lo`` to point ``j_hi`` of ``curve``.

    Index 0 is the origin, so ``secant_slope(curve, j - 1, j)`` recovers the
    weighted mean difference of group ``j`` (1-based).
    """
    if not (0 <= j_lo < j_hi <= curve.m):
        raise IndexError(f"need 0 <= j_lo < j_hi <= {curve.m}, got ({j_lo}, {j_hi})")
    if curve.increments is not None:
        return math.fsum(curve.increments[j_lo:j_hi]) / math.fsum(curve.weights[j_lo:j_hi])
    a_lo, c_lo = curve.point(j_lo)
    a_hi, c_hi = curve.point(j_hi)
    return (c_hi - c_lo) / (a_hi - a_lo)


def kuiper(curve):
    """Range of the ordinates, origin included."""
    c = curve.ordinates
    return float(max(c.max(), 0.0) - min(c.min(), 0.0))


def kolmogorov_smirnov(curve):
    return float(np.abs(curve.ordinates).max())


def sigma_estimate(agg):
    """Square root of the unbiased null-hypothesis estimate of Var(C_m)."""
    w = agg.weight_total
    grand = math.fsum(w)
    terms = ((agg.q_mean - agg.r_mean) * w / grand) ** 2
    return math.sqrt(math.fsum(terms))


def metrics(agg, curve=None):
    if curve is None:
        curve = cumulative_curve(agg)
    d = kuiper(curve)
    e = kolmogorov_smirnov(curve)
    sigma = sigma_estimate(agg)
    if sigma > 0:
        d_ratio, e_ratio = d / sigma, e / sigma
    else:
        d_ratio = e_ratio = None
    return CurveMetrics(
        kuiper=d,
        kolmogorov_smirnov=e,
        average_difference=float(curve.ordinates[-1]),
        sigma=sigma,
        kuiper_over_sigma=d_ratio,
        ks_over_sigma=e_ratio,
    )
