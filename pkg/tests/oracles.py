"""Slow, obviously-correct reference computations used only by the tests."""

import itertools
import math
from fractions import Fraction


def weighted_groups(scores, q, r, w):
    """Exact per-score weighted means with rational arithmetic."""
    groups = {}
    for s, qi, ri, wi in zip(scores, q, r, w):
        g = groups.setdefault(float(s), [Fraction(0), Fraction(0), Fraction(0)])
        wi = Fraction(float(wi))
        g[0] += Fraction(float(qi)) * wi
        g[1] += Fraction(float(ri)) * wi
        g[2] += wi
    keys = sorted(groups)
    return (
        keys,
        [float(groups[k][0] / groups[k][2]) for k in keys],
        [float(groups[k][1] / groups[k][2]) for k in keys],
        [float(groups[k][2]) for k in keys],
    )


def cumulative_direct(diff, w):
    """A_k and C_k straight from their defining sums, each term via fsum."""
    total = math.fsum(w)
    a = [math.fsum(w[: k + 1]) / total for k in range(len(w))]
    c = [math.fsum(d * wi for d, wi in zip(diff[: k + 1], w[: k + 1])) / total
         for k in range(len(w))]
    return a, c


def kuiper_intervals(diff, w):
    """Largest |weighted total difference| over every score interval, O(m^2)."""
    total = math.fsum(w)
    terms = [d * wi for d, wi in zip(diff, w)]
    best = 0.0
    for i in range(len(terms)):
        for k in range(i, len(terms)):
            best = max(best, abs(math.fsum(terms[i: k + 1])) / total)
    return best


def hilbert2_traversal(bits):
    """Visiting order of the 2-D Hilbert curve by recursive quad-tree descent.

    The order-1 curve visits (0,0), (0,1), (1,1), (1,0); each quadrant holds a
    copy of the previous order transposed, shifted, shifted, anti-transposed.
    """
    if bits == 0:
        return [(0, 0)]
    prev = hilbert2_traversal(bits - 1)
    n = 1 << (bits - 1)
    out = [(y, x) for x, y in prev]
    out += [(x, y + n) for x, y in prev]
    out += [(x + n, y + n) for x, y in prev]
    out += [(2 * n - 1 - y, n - 1 - x) for x, y in prev]
    return out


def is_dyadic_traversal(points, p, bits):
    """True when every aligned block of 2**(p*l) consecutive points fills one
    aligned sub-cube of side 2**l, for every level l."""
    for level in range(1, bits + 1):
        block = 1 << (p * level)
        for start in range(0, len(points), block):
            chunk = points[start: start + block]
            cells = {tuple(c >> level for c in pt) for pt in chunk}
            if len(cells) != 1 or len(set(chunk)) != block:
                return False
    return True


def equivariance_ratio(w, w2):
    return math.fsum(w2) / math.fsum(w) ** 2


def best_contiguous_partition(w, w2, nbins):
    """Contiguous split into ``nbins`` minimizing the largest per-bin ratio."""
    m = len(w)
    best = None
    for cuts in itertools.combinations(range(1, m), nbins - 1):
        edges = (0, *cuts, m)
        worst = max(equivariance_ratio(w[a:b], w2[a:b]) for a, b in zip(edges, edges[1:]))
        if best is None or worst < best[0]:
            best = (worst, list(cuts))
    return best
