"""Command-line entry point: ``pairdiff <command> ...``."""

import argparse
import csv
import os
import sys

from . import hilbert
from .errors import IoError, PairdiffError
from .pipeline import (
    AnalyzeConfig,
    ColumnMap,
    analyze,
    bundle_to_dict,
    coverage,
    dumps,
    hilbert_order,
    ingest_csv,
    null_spec,
    read_columns,
)
from .cumulative import cumulative_curve, metrics
from .plots import emit_plots, plot_reliability
from .synthgen import NOISES, PROFILES, SynthSpec, generate


def _u64(text):
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _bins(text):
    try:
        bins = tuple(int(b) for b in text.split(",") if b.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad bin list {text!r}") from None
    if not bins or any(b < 1 for b in bins):
        raise argparse.ArgumentTypeError("bin counts must be positive integers")
    return bins


def _columns(text):
    cols = [c.strip() for c in text.split(",") if c.strip()]
    if not cols:
        raise argparse.ArgumentTypeError("need at least one covariate column")
    return cols


def _add_input(p, need_responses=True):
    p.add_argument("csv", help="input CSV file with a header row")
    p.add_argument("--covariates", type=_columns, required=True,
                   help="comma-separated covariate columns; order matters")
    if need_responses:
        p.add_argument("--q", required=True, help="response column of population 1")
        p.add_argument("--r", required=True, help="response column of population 2")
        p.add_argument("--weight", default=None, help="weight column (default: uniform)")
    p.add_argument("--tie-mode", choices=hilbert.TIE_MODES, default="aggregate")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--bits", type=int, default=None,
                   help="bits per covariate (default: 64 // number of covariates)")


def _add_output(p):
    p.add_argument("--bins", type=_bins, default=(10, 100))
    p.add_argument("--bin-strategy", choices=("equispaced", "equivariance", "both"),
                   default="both")
    p.add_argument("--format", choices=("svg", "json", "both"), default="both")
    p.add_argument("--out", default=".", help="output directory")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pairdiff",
        description="Cumulative differences between paired responses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="cumulative curve, metrics and reliability diagrams")
    _add_input(p)
    _add_output(p)

    p = sub.add_parser("reliability", help="reliability diagrams only")
    _add_input(p)
    _add_output(p)

    p = sub.add_parser("hilbert-score", help="scalar Hilbert scores of covariate rows")
    _add_input(p, need_responses=False)
    p.add_argument("--out", default=None, help="output directory (default: stdout)")

    p = sub.add_parser("synth", help="write a synthetic paired data set")
    p.add_argument("--profile", choices=PROFILES, default="jump")
    p.add_argument("--n", type=int, default=4000)
    p.add_argument("--m", type=int, default=1000)
    p.add_argument("--noise", choices=NOISES, default="gaussian")
    p.add_argument("--noise-sd", type=float, default=0.1)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", default=".", help="output directory")

    p = sub.add_parser("coverage", help="null-hypothesis coverage of the 2-sigma band")
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--n", type=int, default=400)
    p.add_argument("--m", type=int, default=100)
    p.add_argument("--noise-sd", type=float, default=0.1)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _formats(fmt):
    return ("json", "svg") if fmt == "both" else (fmt,)


def _load(args):
    colmap = ColumnMap(args.covariates, args.q, args.r, args.weight)
    return ingest_csv(args.csv, colmap)


def _config(args):
    return AnalyzeConfig(
        tie_mode=args.tie_mode,
        seed=args.seed,
        bits_per_dim=args.bits,
        bins=args.bins,
        bin_strategy=args.bin_strategy,
        covariate_names=tuple(args.covariates),
    )


def cmd_analyze(args):
    data = _load(args)
    bundle = analyze(data.dataset, data.covariates, _config(args))
    bundle.provenance["input"] = os.path.basename(args.csv)
    bundle.provenance["dropped_rows"] = data.dropped
    for path in emit_plots(bundle, args.out, _formats(args.format)):
        print(path)


def cmd_reliability(args):
    data = _load(args)
    bundle = analyze(data.dataset, data.covariates, _config(args))
    bundle.provenance["input"] = os.path.basename(args.csv)
    bundle.provenance["dropped_rows"] = data.dropped
    formats = _formats(args.format)
    written = []
    try:
        os.makedirs(args.out, exist_ok=True)
        if "json" in formats:
            full = bundle_to_dict(bundle)
            path = os.path.join(args.out, "reliability.json")
            with open(path, "w") as fh:
                fh.write(dumps({"diagrams": full["diagrams"], "provenance": full["provenance"]}))
            written.append(path)
    except OSError as exc:
        raise IoError(f"cannot write to {args.out}: {exc}") from exc
    if "svg" in formats:
        for entry in bundle.diagrams:
            path = os.path.join(
                args.out, f"reliability_{entry['strategy']}_{entry['requested_bins']}.svg"
            )
            try:
                plot_reliability(entry, path)
            except OSError as exc:
                raise IoError(f"cannot write {path}: {exc}") from exc
            written.append(path)
    for path in written:
        print(path)


def cmd_hilbert_score(args):
    cols = args.covariates
    table, _ = read_columns(args.csv, cols)
    cfg = hilbert.HilbertConfig(p=len(cols), bits_per_dim=args.bits,
                                tie_mode=args.tie_mode, seed=args.seed)
    unit, _, labels = hilbert_order(table, cfg)
    scores = hilbert.break_ties(labels, cfg)
    idx = hilbert.indices(unit, cfg)
    rows = [(i, format(float(s), ".17g"), int(h)) for i, (s, h) in enumerate(zip(scores, idx))]
    if args.out is None:
        _write_scores(sys.stdout, rows)
        return
    try:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "hilbert_scores.csv")
        with open(path, "w", newline="") as fh:
            _write_scores(fh, rows)
    except OSError as exc:
        raise IoError(f"cannot write to {args.out}: {exc}") from exc
    print(path)


def _write_scores(fh, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["row", "score", "hilbert_index"])
    w.writerows(rows)


def cmd_synth(args):
    spec = SynthSpec(n=args.n, m=args.m, profile=args.profile, noise=args.noise,
                     noise_sd=args.noise_sd, seed=args.seed)
    dataset, expected = generate(spec)
    curve = cumulative_curve(expected)
    stats = metrics(expected, curve)
    try:
        os.makedirs(args.out, exist_ok=True)
        data_path = os.path.join(args.out, "synth.csv")
        with open(data_path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["score", "q", "r", "weight"])
            for row in zip(dataset.scores, dataset.q, dataset.r, dataset.weights):
                w.writerow([format(float(v), ".17g") for v in row])
        exp_path = os.path.join(args.out, "expected.json")
        with open(exp_path, "w") as fh:
            fh.write(dumps({
                "spec": spec.__dict__,
                "expected": {
                    "scores": expected.scores,
                    "q_mean": expected.q_mean,
                    "r_mean": expected.r_mean,
                    "weight_total": expected.weight_total,
                },
                "curve": {"abscissae": curve.abscissae, "ordinates": curve.ordinates},
                "metrics": {"kuiper": stats.kuiper, "ks": stats.kolmogorov_smirnov,
                            "avg_diff": stats.average_difference},
            }))
    except OSError as exc:
        raise IoError(f"cannot write to {args.out}: {exc}") from exc
    print(data_path)
    print(exp_path)


def cmd_coverage(args):
    spec = null_spec(n=args.n, m=args.m, noise_sd=args.noise_sd)
    frac = coverage(args.trials, spec, args.seed, args.workers)
    sys.stdout.write(dumps({
        "trials": args.trials, "n": args.n, "m": args.m, "seed": args.seed,
        "fraction_within_2_sigma": frac,
    }))


COMMANDS = {
    "analyze": cmd_analyze,
    "reliability": cmd_reliability,
    "hilbert-score": cmd_hilbert_score,
    "synth": cmd_synth,
    "coverage": cmd_coverage,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except PairdiffError as exc:
        print(f"pairdiff {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
