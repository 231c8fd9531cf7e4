"""Hilbert-curve reduction of covariate vectors to scalar scores.

Points of the lattice ``{0, ..., 2**b - 1}**p`` are ordered by their position
along the Hilbert curve; the position (an integer below ``2**(b*p)``, at most
64 bits) serves as the score.  Encoding follows Skilling's transpose
construction; for ``p = 2, b = 1`` the visiting order is (0,0), (0,1), (1,1),
(1,0), and for ``p = 1`` the index is the coordinate itself.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import InvalidIndex, InvalidLattice, InvalidRecord, InvalidSpec, OutOfRange

TIE_MODES = ("aggregate", "perturb")


@dataclass(frozen=True)
class HilbertConfig:
    p: int
    bits_per_dim: int | None = None
    tie_mode: str = "aggregate"
    seed: int = 0
    perturb_scale: float = 1e-8

    def __post_init__(self):
        if self.p < 1:
            raise InvalidSpec(f"dimension must be at least 1, got {self.p}")
        if self.bits_per_dim is None:
            object.__setattr__(self, "bits_per_dim", 64 // self.p)
        if self.bits_per_dim < 1 or self.bits_per_dim * self.p > 64:
            raise InvalidSpec(
                f"need 1 <= bits_per_dim and bits_per_dim * p <= 64, "
                f"got bits_per_dim={self.bits_per_dim}, p={self.p}"
            )
        if self.tie_mode not in TIE_MODES:
            raise InvalidSpec(f"tie_mode must be one of {TIE_MODES}, got {self.tie_mode!r}")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec("seed must be an unsigned 64-bit integer")

    @property
    def total_bits(self):
        return self.bits_per_dim * self.p

    @property
    def side(self):
        """Number of lattice points along each axis."""
        return 1 << self.bits_per_dim


def encode_many(coords, config):
    """Hilbert indices (uint64) of the rows of an ``(n, p)`` integer array."""
    raw = np.asarray(coords)
    if raw.ndim != 2 or raw.shape[1] != config.p:
        raise InvalidLattice(f"expected an (n, {config.p}) array, got shape {raw.shape}")
    if raw.dtype.kind == "i" and (raw < 0).any():
        raise InvalidLattice("negative lattice coordinate")
    if raw.dtype.kind not in "iu":
        raise InvalidLattice(f"lattice coordinates must be integers, got {raw.dtype}")
    pts = np.ascontiguousarray(raw, dtype=np.uint64)
    if config.bits_per_dim < 64 and (pts >> np.uint64(config.bits_per_dim)).any():
        raise InvalidLattice(f"coordinate exceeds {config.side - 1}")
    return _backend.hilbert_encode(pts, config.bits_per_dim)


def decode_many(indices, config):
    """Lattice points (``(n, p)`` uint64) at the given Hilbert indices."""
    raw = np.asarray(indices)
    if raw.dtype.kind == "i" and (raw < 0).any():
        raise InvalidIndex("negative Hilbert index")
    if raw.dtype.kind not in "iu":
        raise InvalidIndex(f"Hilbert indices must be integers, got {raw.dtype}")
    idx = np.ascontiguousarray(raw, dtype=np.uint64).reshape(-1)
    if config.total_bits < 64 and (idx >> np.uint64(config.total_bits)).any():
        raise InvalidIndex(f"index exceeds 2**{config.total_bits} - 1")
    return _backend.hilbert_decode(idx, config.p, config.bits_per_dim)


def encode(point, config):
    point = [int(c) for c in point]
    if len(point) != config.p:
        raise InvalidLattice(f"expected {config.p} coordinates, got {len(point)}")
    if any(c < 0 or c >= config.side for c in point):
        raise InvalidLattice(f"coordinates {point} outside [0, {config.side - 1}]")
    return int(encode_many(np.array([point], dtype=np.uint64), config)[0])


def decode(index, config):
    index = int(index)
    if not 0 <= index < 1 << config.total_bits:
        raise InvalidIndex(f"index {index} outside [0, 2**{config.total_bits})")
    return tuple(int(c) for c in decode_many(np.array([index], dtype=np.uint64), config)[0])


def quantize(u, bits):
    """Map values in [0, 1] to the nearest of ``2**bits`` lattice levels.

    Computes ``floor(u * (2**bits - 1) + 1/2)``; beyond 52 bits the product is
    formed exactly in integer arithmetic since a double cannot hold it.
    """
    u = np.asarray(u, dtype=np.float64)
    top = (1 << bits) - 1
    if bits <= 52:
        return np.floor(u * top + 0.5).astype(np.uint64)
    out = np.empty(u.shape, dtype=np.uint64)
    flat = out.reshape(-1)
    for k, v in enumerate(u.reshape(-1).tolist()):
        num, den = v.as_integer_ratio()
        flat[k] = (2 * num * top + den) // (2 * den)
    return out


def _check_unit(covariates):
    x = np.asarray(covariates, dtype=np.float64)
    bad = ~((x >= 0) & (x <= 1))
    if bad.any():
        where = np.argwhere(bad)[0]
        raise OutOfRange(f"covariate {x[tuple(where)]!r} at {tuple(where)} outside [0, 1]")
    return x


def indices(matrix, config):
    """Hilbert indices of the rows of an ``(n, p)`` matrix with entries in [0, 1]."""
    x = _check_unit(matrix)
    if x.ndim == 1:
        x = x.reshape(-1, 1) if config.p == 1 else x.reshape(1, -1)
    return encode_many(quantize(x, config.bits_per_dim), config)


def scores(matrix, config):
    """Scores in [0, 1): Hilbert index divided by ``2**(b*p)``."""
    return np.ldexp(indices(matrix, config).astype(np.float64), -config.total_bits)


def score(covariates, config):
    x = np.asarray(covariates, dtype=np.float64).reshape(1, -1)
    return float(scores(x, config)[0])


def _minmax(x):
    lo, hi = x.min(axis=0), x.max(axis=0)
    span = hi - lo
    flat = span == 0
    out = (x - lo) / np.where(flat, 1.0, span)
    return np.where(flat, 0.5, out)


def normalize_covariates(matrix):
    """Affinely map every column onto [0, 1]; constant columns become 0.5."""
    x = np.array(matrix, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.shape[0] == 0:
        raise InvalidRecord(0, "no rows to normalize")
    bad = ~np.isfinite(x).all(axis=1)
    if bad.any():
        raise InvalidRecord(int(np.argmax(bad)), "nonfinite covariate")
    return _minmax(x)


def normalize_scores(values):
    x = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        return x.copy()
    return _minmax(x)


def break_ties(values, config, rng=None):
    """Make scores distinct by adding tiny seeded offsets (perturb mode).

    Offsets are uniform in ``±perturb_scale * (max - min)``; values colliding
    after perturbation are re-drawn until all are distinct.  In aggregate mode
    the input is returned unchanged (ties are collapsed later instead).
    """
    x = np.asarray(values, dtype=np.float64)
    if config.tie_mode == "aggregate" or x.size == 0:
        return x.copy()
    if rng is None:
        rng = np.random.default_rng(config.seed)
    span = float(x.max() - x.min())
    if span == 0:
        span = max(abs(float(x[0])), 1.0)
    amplitude = config.perturb_scale * span
    out = x + rng.uniform(-amplitude, amplitude, size=x.shape)
    while True:
        order = np.argsort(out, kind="stable")
        dup = np.zeros(len(out), dtype=bool)
        same = out[order[1:]] == out[order[:-1]]
        dup[order[1:][same]] = True
        if not dup.any():
            return out
        out[dup] = x[dup] + rng.uniform(-amplitude, amplitude, size=int(dup.sum()))
