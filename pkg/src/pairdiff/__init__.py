"""Nonparametric comparison of paired responses across an ordinal covariate.

Cumulative-difference curves with Kuiper and Kolmogorov-Smirnov summaries,
reliability diagrams as the binned baseline, and a Hilbert-curve reduction of
several covariates to one scalar score.
"""

from ._backend import BACKEND
from .cumulative import (
    CumulativeCurve,
    CurveMetrics,
    cumulative_curve,
    kolmogorov_smirnov,
    kuiper,
    metrics,
    secant_slope,
    sigma_estimate,
)
from .errors import (
    DegenerateRange,
    EmptyInput,
    InvalidBinCount,
    InvalidIndex,
    InvalidLattice,
    InvalidRecord,
    InvalidSpec,
    IoError,
    OutOfRange,
    PairdiffError,
    SchemaError,
)
from .hilbert import HilbertConfig
from .pipeline import AnalyzeConfig, ColumnMap, PlotBundle, analyze, coverage, ingest_csv
from .reliability import (
    BinBoundaries,
    ReliabilityDiagram,
    bins_equispaced,
    bins_equivariance,
    diagram,
)
from .samples import AggregatedSamples, PairedDataset, PairedRecord, aggregate, canonicalize
from .synthgen import SynthSpec, generate

__version__ = "0.1.0"
