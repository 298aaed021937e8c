"""Paper-analogue figures from sweep CSVs.

All plots read the delimited results file only; nothing is recomputed from
graphs or games, so this package stays decoupled from the solver.  Rendering
is pure: the same CSV and spec produce identical image bytes.
"""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

KINDS = ("rounds_vs_edges", "fraction_vs_p", "threshold", "component_size")

REQUIRED_COLUMNS = {
    "rounds_vs_edges": ("m", "rounds_total"),
    "fraction_vs_p": ("p", "rounds_discovery", "rounds_total"),
    "threshold": ("n", "p", "tmax", "rounds_discovery", "rounds_total"),
    "component_size": ("n", "p", "tmax", "decc_mean_size"),
}

plt.rcParams.update(
    {
        "figure.figsize": (6.0, 4.0),
        "figure.dpi": 110,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "svg.hashsalt": "tgd",
    }
)


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str | Path
    kind: str
    output: str | Path
    facet: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; want one of {KINDS}")


def read_rows(path: str | Path, kind: str) -> list[dict[str, float]]:
    """Parse the sweep CSV, checking the kind's required columns by name."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty CSV")
        missing = [c for c in REQUIRED_COLUMNS[kind] if c not in reader.fieldnames]
        if missing:
            raise ValueError(f"{path}: missing required columns {missing}")
        rows = []
        for raw in reader:
            rows.append({key: float(val) for key, val in raw.items() if key != "won"})
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return rows


def _fit_line(xs: list[float], ys: list[float]) -> tuple[float, float] | None:
    if len(xs) < 2 or len(set(xs)) < 2:
        return None
    slope, intercept = statistics.linear_regression(xs, ys)
    return slope, intercept


def _discovery_fraction(row: dict[str, float]) -> float | None:
    if row["rounds_total"] <= 0:
        return None
    return row["rounds_discovery"] / row["rounds_total"]


def _density_ratio(row: dict[str, float]) -> float | None:
    if row["p"] <= 0 or row["tmax"] <= 0:
        return None
    return row["n"] * row["p"] / row["tmax"]


def _color_by_n(ax, xs, ys, ns):
    sc = ax.scatter(xs, ys, c=ns, cmap="viridis", s=14, alpha=0.8)
    plt.colorbar(sc, ax=ax, label="nodes")


def _rounds_vs_edges_panel(ax, rows, title=None):
    xs = [r["m"] for r in rows if r["m"] > 0]
    ys = [r["rounds_total"] for r in rows if r["m"] > 0]
    ax.scatter(xs, ys, s=12, alpha=0.6, label="runs")
    top = max(xs) if xs else 1
    ax.plot([0, top], [0, 6 * top], color="black", linewidth=1.2, label="6m reference")
    fit = _fit_line(xs, ys)
    if fit is not None:
        slope, intercept = fit
        ax.plot(
            [0, top],
            [intercept, intercept + slope * top],
            color="red",
            linewidth=1.2,
            label=f"regression ({slope:.2f}m)",
        )
    ax.set_xlabel("edge records m")
    ax.set_ylabel("rounds")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper left", fontsize=8)


def build_figure(spec: FigureSpec):
    """Build the matplotlib figure for ``spec`` (unsaved)."""
    rows = read_rows(spec.input_csv, spec.kind)
    if spec.kind == "rounds_vs_edges":
        if spec.facet:
            if spec.facet not in rows[0]:
                raise ValueError(f"facet column {spec.facet!r} not in CSV")
            values = sorted({r[spec.facet] for r in rows})
            cols = min(4, len(values))
            nrows = math.ceil(len(values) / cols)
            fig, axes = plt.subplots(nrows, cols, figsize=(3.2 * cols, 2.8 * nrows), squeeze=False)
            for ax in axes.flat[len(values):]:
                ax.set_visible(False)
            for ax, value in zip(axes.flat, values):
                _rounds_vs_edges_panel(
                    ax, [r for r in rows if r[spec.facet] == value], f"{spec.facet}={value:g}"
                )
            fig.tight_layout()
            return fig
        fig, ax = plt.subplots()
        _rounds_vs_edges_panel(ax, rows)
        fig.tight_layout()
        return fig

    fig, ax = plt.subplots()
    if spec.kind == "fraction_vs_p":
        by_p: dict[float, list[float]] = {}
        for row in rows:
            frac = _discovery_fraction(row)
            if frac is not None:
                by_p.setdefault(row["p"], []).append(frac)
        ps = sorted(by_p)
        ax.scatter(
            [p for p in ps for _ in by_p[p]],
            [f for p in ps for f in by_p[p]],
            s=10,
            alpha=0.35,
            label="runs",
        )
        ax.plot(ps, [statistics.fmean(by_p[p]) for p in ps], color="red", marker="o", label="mean")
        ax.set_xlabel("edge probability p")
        ax.set_ylabel("discovery-phase fraction")
        ax.legend(fontsize=8)
    elif spec.kind == "threshold":
        pts = [
            (ratio, frac, row["n"])
            for row in rows
            if (ratio := _density_ratio(row)) is not None
            and (frac := _discovery_fraction(row)) is not None
        ]
        _color_by_n(ax, [x for x, _, _ in pts], [y for _, y, _ in pts], [n for _, _, n in pts])
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("n*p / tmax")
        ax.set_ylabel("discovery-phase fraction")
    else:  # component_size
        pts = [
            (ratio, row["decc_mean_size"], row["n"])
            for row in rows
            if (ratio := _density_ratio(row)) is not None and row["decc_mean_size"] > 0
        ]
        _color_by_n(ax, [x for x, _, _ in pts], [y for _, y, _ in pts], [n for _, _, n in pts])
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("n*p / tmax")
        ax.set_ylabel("mean component size")
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> Path:
    """Render the figure to ``spec.output`` and return the path."""
    fig = build_figure(spec)
    out = Path(spec.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    try:
        fig.savefig(out, metadata=_stable_metadata(out))
    finally:
        plt.close(fig)
    return out


def _stable_metadata(path: Path) -> dict | None:
    # pin writer metadata so regeneration is byte-identical
    suffix = path.suffix.lower()
    if suffix == ".png":
        return {"Software": "tgd-plots"}
    if suffix == ".svg":
        return {"Date": None}
    return None
