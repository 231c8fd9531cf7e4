# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; see _pykernels for the reference semantics.

Must be built without -ffast-math: the compensated sums rely on strict
IEEE evaluation order.
"""

import numpy as np

from libc.math cimport fabs
from libc.stdint cimport uint64_t


cdef inline void _neumaier_add(double *s, double *c, double x) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def compensated_cumsum(const double[::1] x):
    cdef Py_ssize_t n = x.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double s = 0.0, c = 0.0
    with nogil:
        for i in range(n):
            _neumaier_add(&s, &c, x[i])
            o[i] = s + c
    return out


def group_reduce(const double[::1] scores, const double[::1] q,
                 const double[::1] r, const double[::1] w):
    cdef Py_ssize_t n = scores.shape[0], i, g = 0, start = 0
    uniq = np.empty(n, dtype=np.float64)
    qm = np.empty(n, dtype=np.float64)
    rm = np.empty(n, dtype=np.float64)
    wt = np.empty(n, dtype=np.float64)
    w2 = np.empty(n, dtype=np.float64)
    cdef double[::1] u_v = uniq, qm_v = qm, rm_v = rm, wt_v = wt, w2_v = w2
    cdef double sw = 0.0, cw = 0.0, sq = 0.0, cq = 0.0
    cdef double sr = 0.0, cr = 0.0, s2 = 0.0, c2 = 0.0, tw
    with nogil:
        for i in range(n):
            _neumaier_add(&sw, &cw, w[i])
            _neumaier_add(&sq, &cq, q[i] * w[i])
            _neumaier_add(&sr, &cr, r[i] * w[i])
            _neumaier_add(&s2, &c2, w[i] * w[i])
            if i == n - 1 or scores[i] != scores[i + 1]:
                tw = sw + cw
                u_v[g] = scores[i]
                if i == start:
                    # singleton groups pass through exactly
                    qm_v[g] = q[i]
                    rm_v[g] = r[i]
                else:
                    qm_v[g] = (sq + cq) / tw
                    rm_v[g] = (sr + cr) / tw
                wt_v[g] = tw
                w2_v[g] = s2 + c2
                g += 1
                start = i + 1
                sw = 0.0; cw = 0.0; sq = 0.0; cq = 0.0
                sr = 0.0; cr = 0.0; s2 = 0.0; c2 = 0.0
    return uniq[:g].copy(), qm[:g].copy(), rm[:g].copy(), wt[:g].copy(), w2[:g].copy()


cdef void _axes_to_transpose(uint64_t *x, int p, int bits) noexcept nogil:
    cdef uint64_t m = (<uint64_t>1) << (bits - 1), q, pm, t
    cdef int i
    q = m
    while q > 1:
        pm = q - 1
        for i in range(p):
            if x[i] & q:
                x[0] ^= pm
            else:
                t = (x[0] ^ x[i]) & pm
                x[0] ^= t
                x[i] ^= t
        q >>= 1
    for i in range(1, p):
        x[i] ^= x[i - 1]
    t = 0
    q = m
    while q > 1:
        if x[p - 1] & q:
            t ^= q - 1
        q >>= 1
    for i in range(p):
        x[i] ^= t


cdef void _transpose_to_axes(uint64_t *x, int p, int bits) noexcept nogil:
    cdef uint64_t q, pm, t
    cdef int i, k
    t = x[p - 1] >> 1
    for i in range(p - 1, 0, -1):
        x[i] ^= x[i - 1]
    x[0] ^= t
    q = 2
    for k in range(1, bits):
        pm = q - 1
        for i in range(p - 1, -1, -1):
            if x[i] & q:
                x[0] ^= pm
            else:
                t = (x[0] ^ x[i]) & pm
                x[0] ^= t
                x[i] ^= t
        q <<= 1


def hilbert_encode(const uint64_t[:, ::1] coords, int bits):
    cdef Py_ssize_t n = coords.shape[0], k
    cdef int p = coords.shape[1], i, j
    cdef uint64_t x[64]
    cdef uint64_t h
    out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    with nogil:
        for k in range(n):
            for i in range(p):
                x[i] = coords[k, i]
            _axes_to_transpose(x, p, bits)
            h = 0
            for j in range(bits - 1, -1, -1):
                for i in range(p):
                    h = (h << 1) | ((x[i] >> j) & 1)
            o[k] = h
    return out


def hilbert_decode(const uint64_t[::1] index, int p, int bits):
    cdef Py_ssize_t n = index.shape[0], k
    cdef int i, j, pos
    cdef uint64_t x[64]
    cdef uint64_t h
    out = np.empty((n, p), dtype=np.uint64)
    cdef uint64_t[:, ::1] o = out
    with nogil:
        for k in range(n):
            h = index[k]
            for i in range(p):
                x[i] = 0
            pos = bits * p - 1
            for j in range(bits - 1, -1, -1):
                for i in range(p):
                    x[i] |= ((h >> pos) & 1) << j
                    pos -= 1
            _transpose_to_axes(x, p, bits)
            for i in range(p):
                o[k, i] = x[i]
    return out
