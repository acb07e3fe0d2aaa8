"""Figure rendering from harness CSVs.

Four kinds: ratio_sweep and n_sweep line plots, per-method deviation
histograms (optional bound overlay in the method's color plus a dashed
black line at the largest observed deviation), and grouped boxplots.

Numbers are taken from the CSVs as-is; nothing is re-estimated here.
Alongside each image a JSON manifest records exactly what was plotted,
which makes renders comparable without pixel inspection.
"""

import json
import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .csvio import SchemaError, read_bounds, read_dump, read_sweep
from .theme import HIST_BINS, LINE_WIDTH, MAX_DEVIATION_STYLE, METHOD_COLORS

KINDS = ("ratio_sweep", "n_sweep", "histogram", "boxplot")


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple
    out: str
    methods: tuple
    bounds_path: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        if not self.methods:
            raise ValueError("method subset must be nonempty")
        for m in self.methods:
            if m not in METHOD_COLORS:
                raise ValueError(f"unknown method {m!r}; known ids: {', '.join(METHOD_COLORS)}")


def _collect_sweep(spec, x_attr):
    series = {}
    for path in spec.inputs:
        for row in read_sweep(path):
            if row.method in spec.methods:
                series.setdefault(row.method, []).append((getattr(row, x_attr), row.mean_deviation))
    missing = [m for m in spec.methods if m not in series]
    if missing:
        raise ValueError(f"method {missing[0]!r} has no rows in the input CSVs")
    return {m: sorted(pts) for m, pts in series.items()}


def _collect_dump(spec):
    devs = {m: [] for m in spec.methods}
    for path in spec.inputs:
        for row in read_dump(path):
            if row.method in spec.methods:
                devs[row.method].append(row.deviation)
    missing = [m for m in spec.methods if not devs[m]]
    if missing:
        raise ValueError(f"method {missing[0]!r} has no rows in the input CSVs")
    return devs


def _render_sweep(spec, x_attr, x_label):
    series = _collect_sweep(spec, x_attr)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    manifest_series = {}
    for method in spec.methods:
        xs = [p[0] for p in series[method]]
        ys = [p[1] for p in series[method]]
        ax.plot(xs, ys, label=method, color=METHOD_COLORS[method], linewidth=LINE_WIDTH)
        manifest_series[method] = {"x": xs, "y": ys}
    ax.set_xlabel(x_label)
    ax.set_ylabel("mean deviation")
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    return fig, {"series": manifest_series}


def _render_histogram(spec):
    devs = _collect_dump(spec)
    bounds = read_bounds(spec.bounds_path) if spec.bounds_path else {}
    ncols = min(4, len(spec.methods))
    nrows = math.ceil(len(spec.methods) / ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(3.2 * ncols, 2.6 * nrows), squeeze=False)
    manifest_series = {}
    overlays = {}
    max_marks = {}
    for idx, method in enumerate(spec.methods):
        ax = axes[idx // ncols][idx % ncols]
        values = devs[method]
        ax.hist(values, bins=HIST_BINS, color=METHOD_COLORS[method])
        largest = max(values)
        ax.axvline(largest, **MAX_DEVIATION_STYLE)
        max_marks[method] = largest
        manifest_series[method] = {"count": len(values), "max": largest}
        if method in bounds:
            ax.axvline(bounds[method], color=METHOD_COLORS[method], linewidth=LINE_WIDTH)
            overlays[method] = bounds[method]
        ax.set_title(method, fontsize=9)
    for idx in range(len(spec.methods), nrows * ncols):
        axes[idx // ncols][idx % ncols].set_axis_off()
    fig.tight_layout()
    return fig, {"series": manifest_series, "bound_overlays": overlays, "max_deviation": max_marks}


def _render_boxplot(spec):
    devs = _collect_dump(spec)
    fig, ax = plt.subplots(figsize=(max(6.0, 0.7 * len(spec.methods)), 4.0))
    data = [devs[m] for m in spec.methods]
    boxes = ax.boxplot(data, tick_labels=list(spec.methods), patch_artist=True)
    for patch, method in zip(boxes["boxes"], spec.methods):
        patch.set_facecolor(METHOD_COLORS[method])
    ax.set_ylabel("deviation")
    ax.tick_params(axis="x", rotation=45)
    fig.tight_layout()
    return fig, {"series": {m: {"count": len(devs[m]), "max": max(devs[m])} for m in spec.methods}}


def render(spec: FigureSpec) -> dict:
    """Write the image and its manifest; returns the manifest dict."""
    if spec.kind == "ratio_sweep":
        fig, extra = _render_sweep(spec, "ratio", "mean-to-SD ratio")
    elif spec.kind == "n_sweep":
        fig, extra = _render_sweep(spec, "n", "sample size n")
    elif spec.kind == "histogram":
        fig, extra = _render_histogram(spec)
    else:
        fig, extra = _render_boxplot(spec)

    manifest = {
        "kind": spec.kind,
        "inputs": list(spec.inputs),
        "out": spec.out,
        "methods": list(spec.methods),
        "colors": {m: METHOD_COLORS[m] for m in spec.methods},
    }
    manifest.update(extra)
    fig.savefig(spec.out, dpi=150)
    plt.close(fig)
    with open(manifest_path(spec.out), "w") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return manifest


def manifest_path(out: str) -> str:
    return out + ".manifest.json"
