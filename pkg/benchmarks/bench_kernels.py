"""Time the compiled kernels against the pure-Python fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 1000000]
"""

import argparse
import timeit

import numpy as np

from pairdiff import _pykernels

try:
    from pairdiff import _ckernels
except ImportError:
    _ckernels = None


def cases(size, rng):
    x = rng.normal(size=size)
    s = np.sort(rng.integers(0, size // 4, size)).astype(np.float64)
    q, r, w = rng.normal(size=size), rng.normal(size=size), rng.uniform(0.1, 2, size)
    pts2 = rng.integers(0, 1 << 32, size=(size, 2), dtype=np.uint64)
    pts3 = rng.integers(0, 1 << 21, size=(size, 3), dtype=np.uint64)
    idx2 = _pykernels.hilbert_encode(pts2, 32)
    return {
        "compensated_cumsum": lambda k: k.compensated_cumsum(x),
        "group_reduce": lambda k: k.group_reduce(s, q, r, w),
        "hilbert_encode p=2 b=32": lambda k: k.hilbert_encode(pts2, 32),
        "hilbert_encode p=3 b=21": lambda k: k.hilbert_encode(pts3, 21),
        "hilbert_decode p=2 b=32": lambda k: k.hilbert_decode(idx2, 2, 32),
    }


def best(fn, kernels, repeat):
    return min(timeit.repeat(lambda: fn(kernels), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"n = {args.size}, best of {args.repeat}")
    print(f"{'kernel':<26}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, fn in cases(args.size, rng).items():
        py = best(fn, _pykernels, args.repeat)
        if _ckernels is None:
            print(f"{name:<26}{py:>12.4f}{'n/a':>12}{'':>10}")
            continue
        cy = best(fn, _ckernels, args.repeat)
        print(f"{name:<26}{py:>12.4f}{cy:>12.4f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
