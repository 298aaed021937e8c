"""Experiment harness: parameter sweeps over random temporal graphs, CSV
emission, and the regression / threshold analyses of the sweep results.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import statistics
import time
from dataclasses import dataclass, fields
from pathlib import Path

from .adversaries import HonestAdversary
from .discoverers import DiscoveryFollow
from .game import GameConfig, Goal, Winner, play
from .generators import ErtParams, generate_ert
from .graph import delta_ecc

logger = logging.getLogger(__name__)

DEFAULT_P_GRID = (0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5, 0.7, 0.9)
DEFAULT_RATIO_GRID = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 0.9, 1, 2, 3, 5, 7, 10)


@dataclass(frozen=True)
class SweepConfig:
    """Grid specification; a delta ratio of 0 means delta = 1."""

    node_grid: tuple[int, ...] = tuple(range(5, 101, 5))
    p_grid: tuple[float, ...] = DEFAULT_P_GRID
    tmax_ratio_grid: tuple[float, ...] = DEFAULT_RATIO_GRID
    delta_ratios: tuple[float, ...] = (0.0,)
    repetitions: int = 3
    rng_seed: int = 0
    skip_redundant: bool = True

    def __post_init__(self):
        if not (self.node_grid and self.p_grid and self.tmax_ratio_grid and self.delta_ratios):
            raise ValueError("all grids must be non-empty")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass
class RunRecord:
    n: int
    p: float
    tmax: int
    delta: int
    m: int
    rounds_total: int
    rounds_discovery: int
    rounds_exploration: int
    rounds_skipped: int
    decc_count: int
    decc_mean_size: float
    won: bool
    wall_time: float


CSV_COLUMNS = tuple(f.name for f in fields(RunRecord))


def run_instance(params: ErtParams, delta: int, skip_redundant: bool) -> RunRecord:
    """One full-discovery game against the honest adversary on a fresh graph."""
    graph = generate_ert(params)
    partition = delta_ecc(graph, delta)
    config = GameConfig(
        n=graph.n, tmax=graph.tmax, delta=delta, goal=Goal.FULL_DISCOVERY, round_budget=None
    )
    strategy = DiscoveryFollow(skip_redundant=skip_redundant)
    started = time.perf_counter()
    outcome, _ = play(config, strategy, HonestAdversary(graph, delta))
    elapsed = time.perf_counter() - started
    counters = strategy.knowledge.counters
    return RunRecord(
        n=graph.n,
        p=params.p,
        tmax=graph.tmax,
        delta=delta,
        m=graph.m,
        rounds_total=counters.rounds_total,
        rounds_discovery=counters.rounds_discovery,
        rounds_exploration=counters.rounds_exploration,
        rounds_skipped=counters.rounds_skipped,
        decc_count=partition.component_count,
        decc_mean_size=partition.mean_size(),
        won=outcome.winner is Winner.DISCOVERER,
        wall_time=elapsed,
    )


def run_sweep(config: SweepConfig) -> list[RunRecord]:
    """Run every grid point; deterministic apart from wall_time given the seed."""
    records: list[RunRecord] = []
    counter = 0
    for n in config.node_grid:
        if n <= 1:
            logger.warning("skipping n=%d: no edges possible", n)
            continue
        for ratio in config.tmax_ratio_grid:
            tmax = round(ratio * n)
            if tmax < 1:
                logger.warning("skipping n=%d ratio=%s: tmax rounds to %d", n, ratio, tmax)
                continue
            for p in config.p_grid:
                for delta_ratio in config.delta_ratios:
                    delta = 1 if delta_ratio == 0 else min(tmax, max(1, round(delta_ratio * tmax)))
                    for _rep in range(config.repetitions):
                        seed = config.rng_seed * 1_000_003 + counter
                        counter += 1
                        params = ErtParams(n=n, p=p, tmax=tmax, rng_seed=seed)
                        records.append(run_instance(params, delta, config.skip_redundant))
    return records


def records_to_csv(records: list[RunRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(
            [
                rec.n,
                rec.p,
                rec.tmax,
                rec.delta,
                rec.m,
                rec.rounds_total,
                rec.rounds_discovery,
                rec.rounds_exploration,
                rec.rounds_skipped,
                rec.decc_count,
                f"{rec.decc_mean_size:.6f}",
                str(rec.won).lower(),
                f"{rec.wall_time:.6f}",
            ]
        )
    return buf.getvalue()


def records_from_csv(text: str) -> list[RunRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV columns {header}")
    out = []
    for row in reader:
        out.append(
            RunRecord(
                n=int(row[0]),
                p=float(row[1]),
                tmax=int(row[2]),
                delta=int(row[3]),
                m=int(row[4]),
                rounds_total=int(row[5]),
                rounds_discovery=int(row[6]),
                rounds_exploration=int(row[7]),
                rounds_skipped=int(row[8]),
                decc_count=int(row[9]),
                decc_mean_size=float(row[10]),
                won=row[11] == "true",
                wall_time=float(row[12]),
            )
        )
    return out


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r2: float


def _fit(ms: list[int], rounds: list[int]) -> FitResult:
    if len(ms) < 3:
        raise ValueError("need at least 3 records to fit")
    if len(set(ms)) == 1:
        raise ValueError("degenerate fit: all edge counts equal")
    slope, intercept = statistics.linear_regression(ms, rounds)
    try:
        r2 = statistics.correlation(ms, rounds) ** 2
    except statistics.StatisticsError:
        r2 = float("nan")
    return FitResult(slope=slope, intercept=intercept, r2=r2)


def fit_rounds_vs_edges(
    records: list[RunRecord],
) -> tuple[FitResult, dict[tuple[float, float], FitResult]]:
    """Least-squares rounds-vs-edges fit, pooled and per (p, tmax/n) stratum."""
    usable = [r for r in records if r.m > 0]
    pooled = _fit([r.m for r in usable], [r.rounds_total for r in usable])
    strata: dict[tuple[float, float], list[RunRecord]] = {}
    for rec in usable:
        strata.setdefault((rec.p, round(rec.tmax / rec.n, 2)), []).append(rec)
    per_stratum: dict[tuple[float, float], FitResult] = {}
    for key, recs in sorted(strata.items()):
        try:
            per_stratum[key] = _fit([r.m for r in recs], [r.rounds_total for r in recs])
        except ValueError:
            continue
    return pooled, per_stratum


@dataclass(frozen=True)
class ThresholdBucket:
    """One decade bucket of n*p/tmax with its phase-cost and component stats."""

    lo: float
    hi: float
    count: int
    mean_discovery_fraction: float
    mean_decc_size: float
    mean_decc_per_edge: float


def threshold_report(records: list[RunRecord]) -> list[ThresholdBucket]:
    """Bucket n*p/tmax by decade; report discovery-phase fraction and component size."""
    groups: dict[int, list[RunRecord]] = {}
    for rec in records:
        if rec.p == 0 or rec.m == 0 or rec.rounds_total == 0:
            continue
        ratio = rec.n * rec.p / rec.tmax
        groups.setdefault(math.floor(math.log10(ratio)), []).append(rec)
    out = []
    for exp in sorted(groups):
        recs = groups[exp]
        out.append(
            ThresholdBucket(
                lo=10.0**exp,
                hi=10.0 ** (exp + 1),
                count=len(recs),
                mean_discovery_fraction=statistics.fmean(
                    r.rounds_discovery / r.rounds_total for r in recs
                ),
                mean_decc_size=statistics.fmean(r.decc_mean_size for r in recs),
                mean_decc_per_edge=statistics.fmean(r.decc_count / r.m for r in recs),
            )
        )
    return out


def discovery_fraction_by_p(records: list[RunRecord]) -> dict[float, float]:
    groups: dict[float, list[float]] = {}
    for rec in records:
        if rec.rounds_total > 0:
            groups.setdefault(rec.p, []).append(rec.rounds_discovery / rec.rounds_total)
    return {p: statistics.fmean(vals) for p, vals in sorted(groups.items())}


def spearman_p_vs_discovery(records: list[RunRecord]) -> float:
    """Spearman correlation between p and the mean discovery-phase fraction."""
    from scipy.stats import spearmanr

    by_p = discovery_fraction_by_p(records)
    if len(by_p) < 3:
        raise ValueError("need at least 3 distinct p values")
    rho = spearmanr(list(by_p.keys()), list(by_p.values())).statistic
    return float(rho)


def analyze_report(records: list[RunRecord]) -> str:
    """Human-readable analysis: fits, density correlation, threshold table."""
    lines = [f"records: {len(records)}  (wins: {sum(r.won for r in records)})"]
    try:
        pooled, per_stratum = fit_rounds_vs_edges(records)
        lines.append(
            f"rounds vs edges, pooled: slope={pooled.slope:.3f} "
            f"intercept={pooled.intercept:.2f} r2={pooled.r2:.3f}"
        )
        dense = [r for r in records if r.p >= 0.3 and r.m > 0]
        if len(dense) >= 3 and len({r.m for r in dense}) > 1:
            fit = _fit([r.m for r in dense], [r.rounds_total for r in dense])
            lines.append(
                f"rounds vs edges, p >= 0.3: slope={fit.slope:.3f} "
                f"intercept={fit.intercept:.2f} r2={fit.r2:.3f}"
            )
        lines.append(f"strata fitted: {len(per_stratum)}")
    except ValueError as exc:
        lines.append(f"fit unavailable: {exc}")
    try:
        rho = spearman_p_vs_discovery(records)
        lines.append(f"spearman(p, discovery fraction) = {rho:.3f}")
    except ValueError as exc:
        lines.append(f"spearman unavailable: {exc}")
    lines.append("")
    lines.append("threshold buckets on n*p/tmax:")
    lines.append("  bucket_lo  bucket_hi  count  discovery_frac  mean_decc_size  decc_per_edge")
    for b in threshold_report(records):
        lines.append(
            f"  {b.lo:9.4g}  {b.hi:9.4g}  {b.count:5d}  {b.mean_discovery_fraction:14.4f}"
            f"  {b.mean_decc_size:14.4f}  {b.mean_decc_per_edge:13.4f}"
        )
    for p, frac in discovery_fraction_by_p(records).items():
        lines.append(f"  p={p:<5g} mean discovery fraction {frac:.4f}")
    return "\n".join(lines) + "\n"


def parse_sweep_config(text: str) -> SweepConfig:
    """Flat ``key = value`` config; lists are comma-separated, ranges ``a:b:c``."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()

    def int_list(spec: str) -> tuple[int, ...]:
        if ":" in spec:
            start, stop, step = (int(x) for x in spec.split(":"))
            return tuple(range(start, stop + 1, step))
        return tuple(int(x) for x in spec.split(","))

    def float_list(spec: str) -> tuple[float, ...]:
        return tuple(float(x) for x in spec.split(","))

    kwargs: dict = {}
    if "nodes" in values:
        kwargs["node_grid"] = int_list(values.pop("nodes"))
    if "p" in values:
        kwargs["p_grid"] = float_list(values.pop("p"))
    if "tmax_ratio" in values:
        kwargs["tmax_ratio_grid"] = float_list(values.pop("tmax_ratio"))
    if "delta_ratio" in values:
        kwargs["delta_ratios"] = float_list(values.pop("delta_ratio"))
    if "reps" in values:
        kwargs["repetitions"] = int(values.pop("reps"))
    if "seed" in values:
        kwargs["rng_seed"] = int(values.pop("seed"))
    if "skip_redundant" in values:
        kwargs["skip_redundant"] = values.pop("skip_redundant").lower() in ("1", "true", "yes")
    if values:
        raise ValueError(f"unknown config keys: {sorted(values)}")
    return SweepConfig(**kwargs)


def write_csv(records: list[RunRecord], path: str | Path) -> None:
    Path(path).write_text(records_to_csv(records))


def read_csv(path: str | Path) -> list[RunRecord]:
    return records_from_csv(Path(path).read_text())
