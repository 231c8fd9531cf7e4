"""Synthetic paired data with known expected responses.

Scores lie on a grid in [0, 1) with exactly ``m`` distinct values shared by
``n`` records (record ``k`` gets ``floor(k * m / n) / m``).  The expected
response of population 2 is a smooth baseline; population 1 adds a
profile-dependent expected difference:

``null``          no difference anywhere
``flat_middle``   +/- ``amplitude`` on either side of a narrow flat band
                  around the median score
``jump``          ``amplitude`` on ``[jump_lo, jump_hi)``, zero elsewhere
``oscillating``   exponentially damped sinusoid
"""

from dataclasses import dataclass

import numpy as np

from .cumulative import cumulative_curve
from .errors import InvalidSpec
from .samples import PairedDataset, aggregate

PROFILES = ("null", "flat_middle", "jump", "oscillating")
NOISES = ("gaussian", "bernoulli")


@dataclass(frozen=True)
class SynthSpec:
    n: int = 4000
    m: int = 1000
    profile: str = "jump"
    noise: str = "gaussian"
    noise_sd: float = 0.1
    seed: int = 0
    amplitude: float = 0.2
    jump_lo: float = 0.4
    jump_hi: float = 0.6
    flat_halfwidth: float = 0.05
    random_weights: bool = False

    def validate(self):
        if self.n < 1 or self.m < 1:
            raise InvalidSpec(f"n and m must be positive, got n={self.n}, m={self.m}")
        if self.m > self.n:
            raise InvalidSpec(f"m={self.m} exceeds n={self.n}")
        if self.profile not in PROFILES:
            raise InvalidSpec(f"profile must be one of {PROFILES}, got {self.profile!r}")
        if self.noise not in NOISES:
            raise InvalidSpec(f"noise must be one of {NOISES}, got {self.noise!r}")
        if self.noise_sd < 0:
            raise InvalidSpec("noise_sd must be nonnegative")
        if not 0 <= self.amplitude <= 0.25:
            # keeps both expectations inside [0, 1] for Bernoulli draws
            raise InvalidSpec("amplitude must lie in [0, 0.25]")


def score_grid(n, m):
    k = np.arange(n)
    return (k * m // n) / m


def expected_difference(spec, s):
    s = np.asarray(s, dtype=np.float64)
    a = spec.amplitude
    if spec.profile == "null":
        return np.zeros_like(s)
    if spec.profile == "flat_middle":
        centered = s - 0.5
        return np.where(np.abs(centered) <= spec.flat_halfwidth, 0.0, a * np.sign(centered))
    if spec.profile == "jump":
        return np.where((s >= spec.jump_lo) & (s < spec.jump_hi), a, 0.0)
    return a * np.sin(8 * np.pi * s) * np.exp(-3 * s)


def expected_responses(spec, s):
    """Expected ``(Q, R)`` at scores ``s``; both stay within [0.05, 0.95]."""
    base = 0.5 + 0.2 * np.cos(np.pi * np.asarray(s, dtype=np.float64))
    return base + expected_difference(spec, s), base


def generate(spec, rng=None):
    """Return ``(dataset, expected)`` for ``spec``.

    ``expected`` aggregates the noise-free expectations over the same scores
    and weights, so its curve is the ground truth for ``dataset``'s curve.
    """
    spec.validate()
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    s = score_grid(spec.n, spec.m)
    eq, er = expected_responses(spec, s)
    if spec.random_weights:
        w = rng.uniform(0.5, 1.5, size=spec.n)
    else:
        w = np.ones(spec.n)
    if spec.noise == "gaussian":
        q = eq + spec.noise_sd * rng.standard_normal(spec.n)
        r = er + spec.noise_sd * rng.standard_normal(spec.n)
    else:
        q = (rng.random(spec.n) < eq).astype(np.float64)
        r = (rng.random(spec.n) < er).astype(np.float64)
    dataset = PairedDataset(s, q, r, w)
    exact = aggregate(PairedDataset(s, eq, er, w))
    return dataset, exact


def expected_curve(expected):
    return cumulative_curve(expected)


def expected_aggregate(spec):
    """Noise-free aggregate without drawing any random responses."""
    spec.validate()
    if spec.random_weights:
        return generate(spec)[1]
    s = score_grid(spec.n, spec.m)
    eq, er = expected_responses(spec, s)
    return aggregate(PairedDataset(s, eq, er))

