"""Write analysis bundles to disk as JSON and SVG.

JSON is the machine-readable output; the SVG figures are for people and
nothing reads them back.
"""

import os

import numpy as np

from .errors import IoError
from .pipeline import bundle_to_dict, dumps, triangle_vertices

FORMATS = ("json", "svg")


def _pyplot():
    import matplotlib

    matplotlib.use("agg")
    import matplotlib.pyplot as plt

    return plt


def plot_cumulative(bundle, filename, title="cumulative differences"):
    plt = _pyplot()
    curve = bundle.curve
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(np.r_[0.0, curve.abscissae], np.r_[0.0, curve.ordinates], "k", lw=1)
    tri = triangle_vertices(bundle.metrics.sigma)
    if tri is not None:
        ax.fill(*zip(*tri), color="k", lw=0)
    ax.axhline(0, color="0.7", lw=0.5)
    ax.set_xlim(0, 1)
    ax.set_xlabel("$A_k$ (accumulated weight)")
    ax.set_ylabel("$C_k$")
    m = bundle.metrics
    if m.kuiper_over_sigma is None:
        sub = f"Kuiper = {m.kuiper:.4g}, KS = {m.kolmogorov_smirnov:.4g} (sigma = 0)"
    else:
        sub = (f"Kuiper = {m.kuiper:.4g} / sigma = {m.kuiper_over_sigma:.4g}, "
               f"KS = {m.kolmogorov_smirnov:.4g} / sigma = {m.ks_over_sigma:.4g}")
    ax.set_title(f"{title}\n{sub}", fontsize=9)
    fig.tight_layout()
    fig.savefig(filename, format="svg")
    plt.close(fig)


def plot_reliability(entry, filename):
    plt = _pyplot()
    d = entry["diagram"]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(d.s_mean, d.q_mean, "*:", color="tab:red", ms=4, label="$\\bar{Q}_i$")
    ax.plot(d.s_mean, d.r_mean, "*:", color="tab:blue", ms=4, label="$\\bar{R}_i$")
    ax.set_xlabel("$\\bar{S}_i$")
    ax.set_ylabel("weighted mean response")
    ax.set_title(f"reliability diagram, {entry['strategy']} bins ({entry['bins']})", fontsize=9)
    ax.legend()
    fig.tight_layout()
    fig.savefig(filename, format="svg")
    plt.close(fig)


def plot_scatter(bundle, filename):
    plt = _pyplot()
    x = bundle.covariates
    names = bundle.provenance.get("covariates", ["x0", "x1"])
    fig, ax = plt.subplots(figsize=(5, 5))
    sc = ax.scatter(x[:, 0], x[:, 1], c=bundle.record_scores, s=2, cmap="viridis")
    fig.colorbar(sc, ax=ax, label="score")
    ax.set_xlabel(f"normalized {names[0]}")
    ax.set_ylabel(f"normalized {names[1]}")
    fig.tight_layout()
    fig.savefig(filename, format="svg")
    plt.close(fig)


def emit_plots(bundle, out_dir, formats=FORMATS, stem="analysis"):
    """Write ``bundle`` into ``out_dir``; returns the written paths."""
    written = []
    try:
        os.makedirs(out_dir, exist_ok=True)
        if "json" in formats:
            path = os.path.join(out_dir, f"{stem}.json")
            with open(path, "w") as fh:
                fh.write(dumps(bundle_to_dict(bundle)))
            written.append(path)
        if "svg" in formats:
            path = os.path.join(out_dir, "cumulative.svg")
            plot_cumulative(bundle, path)
            written.append(path)
            for entry in bundle.diagrams:
                path = os.path.join(
                    out_dir, f"reliability_{entry['strategy']}_{entry['requested_bins']}.svg"
                )
                plot_reliability(entry, path)
                written.append(path)
            if bundle.covariates is not None and bundle.covariates.shape[1] == 2:
                path = os.path.join(out_dir, "scatter.svg")
                plot_scatter(bundle, path)
                written.append(path)
    except OSError as exc:
        raise IoError(f"cannot write to {out_dir}: {exc}") from exc
    return written
