"""End-to-end workflows: CSV ingestion, analysis bundles and the null harness."""

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import hilbert
from .cumulative import cumulative_curve, metrics
from .errors import EmptyInput, InvalidBinCount, InvalidRecord, IoError, SchemaError
from .reliability import bins_equispaced, bins_equivariance, diagram
from .samples import PairedDataset, aggregate
from .synthgen import SynthSpec, generate

MISSING = frozenset({"", "na", "nan", "null", "none"})
STRATEGIES = ("equispaced", "equivariance")
DEFAULT_BINS = (10, 100)
# horizontal extent of the significance triangle drawn at the origin
TRIANGLE_WIDTH = 0.05


@dataclass(frozen=True)
class ColumnMap:
    covariate_columns: tuple
    q_column: str
    r_column: str
    weight_column: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "covariate_columns", tuple(self.covariate_columns))
        if not self.covariate_columns:
            raise SchemaError("at least one covariate column is required")
        names = [*self.covariate_columns, self.q_column, self.r_column]
        if self.weight_column is not None:
            names.append(self.weight_column)
        if len(set(names)) != len(names):
            raise SchemaError(f"column names must be distinct, got {names}")

    @property
    def columns(self):
        cols = [*self.covariate_columns, self.q_column, self.r_column]
        if self.weight_column is not None:
            cols.append(self.weight_column)
        return cols


@dataclass(frozen=True, eq=False)
class Ingested:
    dataset: PairedDataset
    covariates: np.ndarray
    dropped: int


def read_columns(path, columns):
    """Numeric table of ``columns`` from a headed CSV, plus the dropped-row count.

    Rows where any requested field is missing are skipped and counted.
    """
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = [h.strip() for h in next(reader)]
            except StopIteration:
                raise EmptyInput(f"{path}: empty file") from None
            unknown = [c for c in columns if c not in header]
            if unknown:
                raise SchemaError(f"{path}: unknown column(s) {unknown}; header is {header}")
            pos = [header.index(c) for c in columns]
            rows, dropped = [], 0
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                cells = [row[i].strip() if i < len(row) else "" for i in pos]
                if any(c.lower() in MISSING for c in cells):
                    dropped += 1
                    continue
                try:
                    rows.append([float(c) for c in cells])
                except ValueError:
                    raise InvalidRecord(len(rows), f"line {lineno}: non-numeric field") from None
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise EmptyInput(f"{path}: no usable rows ({dropped} dropped)")
    return np.array(rows, dtype=np.float64), dropped


def ingest_csv(path, colmap):
    """Read the mapped columns of a headed CSV file.

    The returned dataset keeps file order and uses the first covariate as its
    score; ``analyze`` replaces that with the Hilbert order.
    """
    table, dropped = read_columns(path, colmap.columns)
    p = len(colmap.covariate_columns)
    weights = table[:, p + 2] if colmap.weight_column is not None else None
    dataset = PairedDataset(table[:, 0], table[:, p], table[:, p + 1], weights)
    dataset.validate()
    return Ingested(dataset, table[:, :p].copy(), dropped)


@dataclass(frozen=True)
class AnalyzeConfig:
    tie_mode: str = "aggregate"
    seed: int = 0
    bits_per_dim: int | None = None
    bins: tuple = DEFAULT_BINS
    bin_strategy: str = "both"
    covariate_names: tuple = ()

    @property
    def strategies(self):
        return STRATEGIES if self.bin_strategy == "both" else (self.bin_strategy,)

    def hilbert_config(self, p):
        return hilbert.HilbertConfig(
            p=p, bits_per_dim=self.bits_per_dim, tie_mode=self.tie_mode, seed=self.seed
        )


@dataclass(frozen=True, eq=False)
class PlotBundle:
    curve: object
    metrics: object
    diagrams: list
    provenance: dict
    group_scores: np.ndarray
    covariates: np.ndarray | None = None
    record_scores: np.ndarray | None = None
    extras: dict = field(default_factory=dict)


def hilbert_order(covariates, config):
    """Normalize covariates and encode them along the Hilbert curve.

    Returns ``(unit, ranks, labels)`` with ``unit`` the normalized covariates.

    ``ranks`` are dense ranks of the Hilbert indices (equal indices share a
    rank), so ordering and ties follow the exact 64-bit indices rather than
    their float images.  ``labels`` are the indices mapped affinely onto
    [0, 1] for display.
    """
    x = hilbert.normalize_covariates(covariates)
    idx = hilbert.indices(x, config)
    uniq, ranks = np.unique(idx, return_inverse=True)
    span = float(uniq[-1] - uniq[0])
    if span > 0:
        labels = (idx - uniq[0]).astype(np.float64) / span
    else:
        labels = np.full(len(idx), 0.5)
    return x, ranks.reshape(-1).astype(np.float64), labels


def _diagrams(dataset, config):
    agg = aggregate(dataset)
    out = []
    for nbins in config.bins:
        for strategy in config.strategies:
            used = nbins
            if strategy == "equispaced":
                if agg.scores[0] == agg.scores[-1]:
                    used = 1
                bounds = bins_equispaced(agg, used)
            elif strategy == "equivariance":
                used = min(nbins, agg.m)
                bounds = bins_equivariance(agg, used)
            else:
                raise InvalidBinCount(f"unknown bin strategy {strategy!r}")
            out.append(
                {
                    "strategy": strategy,
                    "requested_bins": int(nbins),
                    "bins": int(used),
                    "diagram": diagram(dataset, bounds),
                }
            )
    return out


def analyze(dataset, covariates, config=AnalyzeConfig()):
    """Score, order, aggregate and summarize paired responses.

    ``covariates`` is an ``(n, p)`` matrix aligned with ``dataset`` records.
    """
    dataset.validate()
    covariates = np.asarray(covariates, dtype=np.float64)
    if covariates.ndim == 1:
        covariates = covariates.reshape(-1, 1)
    if covariates.shape[0] != dataset.n:
        raise SchemaError("covariate rows do not match dataset records")
    hcfg = config.hilbert_config(covariates.shape[1])
    unit, ranks, labels = hilbert_order(covariates, hcfg)
    work = hilbert.break_ties(ranks, hcfg)
    order = np.argsort(work, kind="stable")
    ordered = PairedDataset(work, dataset.q, dataset.r, dataset.weights).take(order)
    agg = aggregate(ordered)
    curve = cumulative_curve(agg)
    stats = metrics(agg, curve)

    sorted_labels = labels[order]
    last_of_group = np.r_[np.flatnonzero(np.diff(ordered.scores) != 0), ordered.n - 1]
    group_scores = sorted_labels[last_of_group]

    labelled = PairedDataset(sorted_labels, ordered.q, ordered.r, ordered.weights)
    diagrams = _diagrams(labelled, config) if config.bins else []

    names = list(config.covariate_names) or [f"x{i}" for i in range(covariates.shape[1])]
    provenance = {
        "tie_mode": hcfg.tie_mode,
        "seed": hcfg.seed,
        "covariates": names,
        "bits_per_dim": hcfg.bits_per_dim,
        "bins": [int(b) for b in config.bins],
        "bin_strategy": config.bin_strategy,
        "n": dataset.n,
        "m": agg.m,
    }
    return PlotBundle(
        curve=curve,
        metrics=stats,
        diagrams=diagrams,
        provenance=provenance,
        group_scores=group_scores,
        covariates=unit,
        record_scores=labels,
    )


def triangle_vertices(sigma):
    """Vertices of the origin triangle of tip-to-tip height 4 sigma, or None."""
    if not sigma > 0:
        return None
    return [[0.0, 2 * sigma], [0.0, -2 * sigma], [TRIANGLE_WIDTH, 0.0]]


def _diagram_json(entry):
    d = entry["diagram"]
    return {
        "strategy": entry["strategy"],
        "requested_bins": entry["requested_bins"],
        "bins": entry["bins"],
        "boundaries": d.boundaries.interior,
        "s_mean": d.s_mean,
        "q_mean": d.q_mean,
        "r_mean": d.r_mean,
        "bin_weight": d.bin_weight,
    }


def bundle_to_dict(bundle):
    m = bundle.metrics
    tri = triangle_vertices(m.sigma)
    out = {
        "curve": {
            "abscissae": bundle.curve.abscissae,
            "ordinates": bundle.curve.ordinates,
            "scores": bundle.group_scores,
        },
        "metrics": {
            "kuiper": m.kuiper,
            "ks": m.kolmogorov_smirnov,
            "avg_diff": m.average_difference,
            "sigma": m.sigma,
            "kuiper_over_sigma": m.kuiper_over_sigma,
            "ks_over_sigma": m.ks_over_sigma,
        },
        "triangle": {
            "vertices": tri,
            "note": "4-sigma band at the origin" if tri else "omitted: sigma is zero",
        },
        "diagrams": [_diagram_json(e) for e in bundle.diagrams],
        "provenance": bundle.provenance,
    }
    out.update(bundle.extras)
    return out


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_encode(str(k), indent, level + 1)}: {_encode(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"refusing to serialize nonfinite value {x}")
        return format(x, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=1):
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"


def null_spec(n=400, m=100, noise_sd=0.1):
    return SynthSpec(n=n, m=m, profile="null", noise="gaussian", noise_sd=noise_sd)


def _trial(spec, master_seed, t):
    rng = np.random.default_rng([master_seed, t])
    dataset, _ = generate(spec, rng)
    agg = aggregate(dataset)
    w = agg.weight_total
    grand = math.fsum(w)
    d = agg.q_mean - agg.r_mean
    cm = math.fsum(d * w) / grand
    var = math.fsum(((d * w) / grand) ** 2)
    return cm, var


def null_trials(trials, spec=None, master_seed=0, workers=1):
    """Final ordinate and variance estimate of every Monte-Carlo trial.

    Trial ``t`` draws from ``default_rng([master_seed, t])`` and results are
    stored by trial index, so output is independent of ``workers``.
    """
    if spec is None:
        spec = null_spec()
    if trials < 1:
        raise ValueError("need at least one trial")
    cm = np.empty(trials)
    var = np.empty(trials)

    def run(chunk):
        for t in chunk:
            cm[t], var[t] = _trial(spec, master_seed, t)

    chunks = np.array_split(np.arange(trials), max(1, workers))
    if workers <= 1:
        run(chunks[0])
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, chunks))
    return cm, var


def coverage(trials, spec=None, master_seed=0, workers=1):
    """Fraction of null trials with ``|C_m| <= 2 sigma``."""
    cm, var = null_trials(trials, spec, master_seed, workers)
    return float(np.mean(np.abs(cm) <= 2 * np.sqrt(var)))
