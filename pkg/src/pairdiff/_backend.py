"""Pick the kernel implementation at import time.

The compiled extension is used when it was built; otherwise the numpy/pure
Python fallback is used.  Setting ``PAIRDIFF_PURE_PYTHON=1`` forces the
fallback, which is how the benchmark and the equivalence tests reach it.
"""

import os

import numpy as np

from . import _pykernels

kernels = _pykernels
BACKEND = "python"

if os.environ.get("PAIRDIFF_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def compensated_cumsum(x):
    return kernels.compensated_cumsum(_f64(x))


def group_reduce(scores, q, r, w):
    return kernels.group_reduce(_f64(scores), _f64(q), _f64(r), _f64(w))


def hilbert_encode(coords, bits):
    return kernels.hilbert_encode(np.ascontiguousarray(coords, dtype=np.uint64), int(bits))


def hilbert_decode(index, p, bits):
    return kernels.hilbert_decode(np.ascontiguousarray(index, dtype=np.uint64), int(p), int(bits))
