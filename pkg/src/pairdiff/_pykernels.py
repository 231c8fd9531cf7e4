"""Reference implementations of the hot kernels.

The compiled module ``_ckernels`` mirrors these function by function and must
return bit-identical results; the test suite checks both against each other.
"""

import numpy as np


def _neumaier_add(s, c, x):
    t = s + x
    if abs(s) >= abs(x):
        c += (s - t) + x
    else:
        c += (x - t) + s
    return t, c


def compensated_cumsum(x):
    """Prefix sums of ``x`` with Neumaier error compensation."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty(len(x))
    s = c = 0.0
    for i, v in enumerate(x.tolist()):
        s, c = _neumaier_add(s, c, v)
        out[i] = s + c
    return out


def group_reduce(scores, q, r, w):
    """Collapse runs of equal (sorted) scores into weighted means.

    Returns the unique scores, the weighted means of ``q`` and ``r``, the
    total weight, and the sum of squared weights of every run.
    """
    scores = np.asarray(scores, dtype=np.float64).tolist()
    q = np.asarray(q, dtype=np.float64).tolist()
    r = np.asarray(r, dtype=np.float64).tolist()
    w = np.asarray(w, dtype=np.float64).tolist()
    n = len(scores)
    uniq, qm, rm, wt, w2 = [], [], [], [], []
    sw = cw = sq = cq = sr = cr = s2 = c2 = 0.0
    start = 0
    for i in range(n):
        wi = w[i]
        sw, cw = _neumaier_add(sw, cw, wi)
        sq, cq = _neumaier_add(sq, cq, q[i] * wi)
        sr, cr = _neumaier_add(sr, cr, r[i] * wi)
        s2, c2 = _neumaier_add(s2, c2, wi * wi)
        if i == n - 1 or scores[i] != scores[i + 1]:
            tw = sw + cw
            uniq.append(scores[i])
            if i == start:
                # singleton groups pass through exactly
                qm.append(q[i])
                rm.append(r[i])
            else:
                qm.append((sq + cq) / tw)
                rm.append((sr + cr) / tw)
            wt.append(tw)
            w2.append(s2 + c2)
            sw = cw = sq = cq = sr = cr = s2 = c2 = 0.0
            start = i + 1
    return tuple(np.array(a, dtype=np.float64) for a in (uniq, qm, rm, wt, w2))


# Skilling's transpose formulation of the Hilbert index, vectorized over
# points: columns of ``x`` are the p axes, rows are points.

def _axes_to_transpose(x, bits):
    p = x.shape[1]
    q = 1 << (bits - 1)
    while q > 1:
        pm = np.uint64(q - 1)
        qq = np.uint64(q)
        for i in range(p):
            hit = (x[:, i] & qq) != 0
            x[hit, 0] ^= pm
            miss = ~hit
            t = (x[miss, 0] ^ x[miss, i]) & pm
            x[miss, 0] ^= t
            x[miss, i] ^= t
        q >>= 1
    for i in range(1, p):
        x[:, i] ^= x[:, i - 1]
    t = np.zeros(len(x), dtype=np.uint64)
    q = 1 << (bits - 1)
    while q > 1:
        hit = (x[:, p - 1] & np.uint64(q)) != 0
        t[hit] ^= np.uint64(q - 1)
        q >>= 1
    x ^= t[:, None]


def _transpose_to_axes(x, bits):
    p = x.shape[1]
    t = x[:, p - 1] >> np.uint64(1)
    for i in range(p - 1, 0, -1):
        x[:, i] ^= x[:, i - 1]
    x[:, 0] ^= t
    q = 2
    for _ in range(1, bits):
        pm = np.uint64(q - 1)
        qq = np.uint64(q)
        for i in range(p - 1, -1, -1):
            hit = (x[:, i] & qq) != 0
            x[hit, 0] ^= pm
            miss = ~hit
            t = (x[miss, 0] ^ x[miss, i]) & pm
            x[miss, 0] ^= t
            x[miss, i] ^= t
        q <<= 1


def hilbert_encode(coords, bits):
    x = np.array(coords, dtype=np.uint64, order="C")
    p = x.shape[1]
    _axes_to_transpose(x, bits)
    h = np.zeros(len(x), dtype=np.uint64)
    one = np.uint64(1)
    for j in range(bits - 1, -1, -1):
        for i in range(p):
            h = (h << one) | ((x[:, i] >> np.uint64(j)) & one)
    return h


def hilbert_decode(index, p, bits):
    h = np.asarray(index, dtype=np.uint64)
    x = np.zeros((len(h), p), dtype=np.uint64)
    one = np.uint64(1)
    pos = bits * p - 1
    for j in range(bits - 1, -1, -1):
        for i in range(p):
            x[:, i] |= ((h >> np.uint64(pos)) & one) << np.uint64(j)
            pos -= 1
    _transpose_to_axes(x, bits)
    return x
