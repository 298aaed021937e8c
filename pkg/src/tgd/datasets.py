"""Ingestion of interaction records into temporal graphs.

Input files carry ``network_id u v timestamp`` rows (comma- or
whitespace-separated, one header line tolerated); each network id becomes
one graph.  Raw timestamps are mapped to integer steps either by rank-order
compression or by fixed-width bucketing, then reduced to a simple graph
(earliest label per static edge) or to parallel records (all distinct
labels).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Union

from .graph import TemporalGraph, Variant

logger = logging.getLogger(__name__)


class Raw:
    """Rank-order compression: distinct timestamps become steps 1..tmax."""

    def __repr__(self):
        return "Raw()"


@dataclass(frozen=True)
class FixedWidth:
    """Bucket timestamps by ``floor(ts / width)``, then shift to start at 1."""

    width: float

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("bucket width must be positive")


Bucketing = Union[Raw, FixedWidth]


class Reduction(Enum):
    FIRST_LABEL = "first"
    MULTIEDGE = "multi"


@dataclass(frozen=True)
class InteractionRecord:
    u: int
    v: int
    timestamp: float

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"self-interaction at node {self.u}")
        if self.timestamp < 0:
            raise ValueError(f"negative timestamp {self.timestamp}")


@dataclass(frozen=True)
class IngestedNetwork:
    network_id: str
    graph: TemporalGraph
    node_ids: tuple[int, ...]  # position = dense id, value = original id

    def id_map_lines(self) -> str:
        return "\n".join(f"{dense} {orig}" for dense, orig in enumerate(self.node_ids)) + "\n"


def _parse_line(line: str, lineno: int) -> tuple[str, InteractionRecord]:
    parts = line.replace(",", " ").split()
    if len(parts) != 4:
        raise ValueError(f"line {lineno}: expected 'network_id u v timestamp', got {line!r}")
    try:
        rec = InteractionRecord(int(parts[1]), int(parts[2]), float(parts[3]))
    except ValueError as exc:
        raise ValueError(f"line {lineno}: {exc}") from exc
    return parts[0], rec


def _looks_like_header(line: str) -> bool:
    parts = line.replace(",", " ").split()
    if len(parts) != 4:
        return True
    try:
        int(parts[1]), int(parts[2]), float(parts[3])
    except ValueError:
        return True
    return False


def _compress(timestamps: list[float], bucketing: Bucketing) -> tuple[list[int], int]:
    if isinstance(bucketing, FixedWidth):
        buckets = [int(ts // bucketing.width) for ts in timestamps]
        low = min(buckets)
        labels = [b - low + 1 for b in buckets]
    else:
        order = {ts: i + 1 for i, ts in enumerate(sorted(set(timestamps)))}
        labels = [order[ts] for ts in timestamps]
    return labels, max(labels)


def ingest(
    path: str | Path,
    bucketing: Bucketing = Raw(),
    reduction: Reduction = Reduction.FIRST_LABEL,
) -> list[IngestedNetwork]:
    """Parse one interaction file into one temporal graph per network id."""
    networks: dict[str, list[InteractionRecord]] = {}
    lines = Path(path).read_text().splitlines()
    start = 0
    if lines and _looks_like_header(lines[0]):
        start = 1
    for lineno, line in enumerate(lines[start:], start=start + 1):
        if not line.strip():
            continue
        net_id, rec = _parse_line(line, lineno)
        networks.setdefault(net_id, []).append(rec)

    out: list[IngestedNetwork] = []
    for net_id in sorted(networks):
        records = networks[net_id]
        if not records:
            logger.warning("network %s is empty, skipped", net_id)
            continue
        labels, tmax = _compress([r.timestamp for r in records], bucketing)
        orig_ids = sorted({r.u for r in records} | {r.v for r in records})
        dense = {orig: i for i, orig in enumerate(orig_ids)}
        per_pair: dict[tuple[int, int], list[int]] = {}
        for rec, label in zip(records, labels):
            u, v = dense[rec.u], dense[rec.v]
            pair = (u, v) if u < v else (v, u)
            per_pair.setdefault(pair, []).append(label)
        edges: list[tuple[int, int, int]] = []
        if reduction is Reduction.FIRST_LABEL:
            for (u, v), ls in per_pair.items():
                edges.append((u, v, min(ls)))
            variant = Variant.SIMPLE
        else:
            for (u, v), ls in per_pair.items():
                edges.extend((u, v, label) for label in sorted(set(ls)))
            variant = Variant.MULTIEDGE
        graph = TemporalGraph(len(orig_ids), edges, tmax, variant)
        out.append(IngestedNetwork(network_id=net_id, graph=graph, node_ids=tuple(orig_ids)))
    return out
