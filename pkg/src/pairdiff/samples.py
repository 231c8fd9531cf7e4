"""Raw paired observations and their per-score weighted aggregates."""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import EmptyInput, InvalidRecord


@dataclass(frozen=True)
class PairedRecord:
    score: float
    q: float
    r: float
    weight: float = 1.0


def _frozen(a):
    a = np.array(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PairedDataset:
    """Paired responses ``q`` (population 1) and ``r`` (population 2).

    Every record carries one score, the two responses and a positive weight;
    arrays are parallel and read-only.  Omitting ``weights`` means uniform
    weights of 1.
    """

    scores: np.ndarray
    q: np.ndarray
    r: np.ndarray
    weights: np.ndarray

    def __init__(self, scores, q, r, weights=None):
        scores = _frozen(scores).reshape(-1)
        if weights is None:
            weights = np.ones(len(scores))
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "q", _frozen(q).reshape(-1))
        object.__setattr__(self, "r", _frozen(r).reshape(-1))
        object.__setattr__(self, "weights", _frozen(weights).reshape(-1))
        n = len(self.scores)
        if not (len(self.q) == len(self.r) == len(self.weights) == n):
            raise ValueError("scores, q, r and weights must have equal length")

    @classmethod
    def from_records(cls, records):
        records = list(records)
        return cls(
            [rec.score for rec in records],
            [rec.q for rec in records],
            [rec.r for rec in records],
            [rec.weight for rec in records],
        )

    @property
    def n(self):
        return len(self.scores)

    def __len__(self):
        return self.n

    def records(self):
        return [
            PairedRecord(float(s), float(q), float(r), float(w))
            for s, q, r, w in zip(self.scores, self.q, self.r, self.weights)
        ]

    def validate(self):
        """Raise ``EmptyInput`` or ``InvalidRecord`` for the first bad record."""
        if self.n == 0:
            raise EmptyInput("dataset has no records")
        stacked = np.stack([self.scores, self.q, self.r, self.weights])
        bad = ~np.isfinite(stacked).all(axis=0)
        if bad.any():
            raise InvalidRecord(int(np.argmax(bad)), "nonfinite field")
        bad = self.weights <= 0
        if bad.any():
            raise InvalidRecord(int(np.argmax(bad)), "weight must be positive")

    def is_sorted(self):
        return bool(np.all(self.scores[1:] >= self.scores[:-1]))

    def take(self, order):
        return PairedDataset(
            self.scores[order], self.q[order], self.r[order], self.weights[order]
        )


@dataclass(frozen=True, eq=False)
class AggregatedSamples:
    """Weighted per-score averages of a canonicalized dataset.

    ``weight_sq`` holds the sum of squared raw weights of every group; it
    equals ``weight_total**2`` when each group is a single record.
    """

    scores: np.ndarray
    q_mean: np.ndarray
    r_mean: np.ndarray
    weight_total: np.ndarray
    weight_sq: np.ndarray

    @property
    def m(self):
        return len(self.scores)

    @property
    def grand_weight(self):
        return float(_backend.compensated_cumsum(self.weight_total)[-1])

    @property
    def difference(self):
        return self.q_mean - self.r_mean

    def swapped(self):
        return AggregatedSamples(
            self.scores, self.r_mean, self.q_mean, self.weight_total, self.weight_sq
        )

    def as_dataset(self):
        """One record per group, weighted by the group's total weight."""
        return PairedDataset(self.scores, self.q_mean, self.r_mean, self.weight_total)


def canonicalize(dataset):
    """Validate ``dataset`` and stably sort it by ascending score."""
    dataset.validate()
    if dataset.is_sorted():
        return dataset
    return dataset.take(np.argsort(dataset.scores, kind="stable"))


def aggregate(dataset):
    """Collapse records sharing an exact score into one weighted group."""
    dataset = canonicalize(dataset)
    scores, qm, rm, wt, w2 = _backend.group_reduce(
        dataset.scores, dataset.q, dataset.r, dataset.weights
    )
    return AggregatedSamples(
        _frozen(scores), _frozen(qm), _frozen(rm), _frozen(wt), _frozen(w2)
    )
