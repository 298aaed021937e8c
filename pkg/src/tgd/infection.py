"""Deterministic SIR infection chains on temporal graphs.

The simulation advances through time steps 0..tmax.  A seed ``(v, t)``
infects ``v`` at ``t`` if it is still susceptible (otherwise it is a
recorded no-op).  A susceptible node becomes infected at ``t`` when some
neighbor is infectious at ``t`` (infected at ``t0`` with
``t in [t0+1, t0+delta]``) across an edge labeled ``t``; afterwards the node
is resistant forever.  When several infectious neighbors compete for the
same node at the same step, a :class:`TiePolicy` picks the infector, which
only affects the log, never the timetable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Iterable, NamedTuple

from .graph import TemporalGraph

SeedSet = frozenset[tuple[int, int]]
Timetable = dict[int, int]


def make_seeds(pairs: Iterable[tuple[int, int]]) -> SeedSet:
    return frozenset(pairs)


class LogEntry(NamedTuple):
    """One infection: ``infector == infected`` marks a seed entry.

    ``record`` is the index of the edge record that fired (``None`` for
    seeds); multiedge discovery needs it, other variants may ignore it.
    """

    infector: int
    infected: int
    time: int
    record: int | None = None


@dataclass(frozen=True)
class InfectionLog:
    entries: frozenset[LogEntry]

    def infected_times(self) -> Timetable:
        return {e.infected: e.time for e in self.entries}

    def non_seed_entries(self) -> list[LogEntry]:
        return sorted(e for e in self.entries if e.infector != e.infected)

    def to_lines(self) -> str:
        return "\n".join(f"{e.infector} {e.infected} {e.time}" for e in sorted(self.entries))


class _Kind(Enum):
    LOWEST = "lowest"
    HIGHEST = "highest"
    RANDOM = "random"


@dataclass(frozen=True)
class TiePolicy:
    """Total order over competing infectors; deterministic given its parameters."""

    kind: _Kind
    seed: int = 0

    LowestId: ClassVar[TiePolicy]
    HighestId: ClassVar[TiePolicy]

    @staticmethod
    def seeded_random(seed: int) -> "TiePolicy":
        return TiePolicy(_Kind.RANDOM, seed)

    def choose(self, candidates: list[tuple[int, int | None]], node: int, time: int) -> tuple[int, int | None]:
        ordered = sorted(candidates, key=lambda c: (c[0], -1 if c[1] is None else c[1]))
        if self.kind is _Kind.LOWEST:
            return ordered[0]
        if self.kind is _Kind.HIGHEST:
            return ordered[-1]
        # derive per-decision rng so the choice is order-independent
        rng = random.Random(f"{self.seed}:{node}:{time}")
        return ordered[rng.randrange(len(ordered))]


TiePolicy.LowestId = TiePolicy(_Kind.LOWEST)
TiePolicy.HighestId = TiePolicy(_Kind.HIGHEST)


def _validate_seeds(graph: TemporalGraph, seeds: SeedSet) -> None:
    for node, t in seeds:
        if not (0 <= node < graph.n):
            raise ValueError(f"seed node {node} outside [0,{graph.n})")
        if not (0 <= t <= graph.tmax):
            raise ValueError(f"seed time {t} outside [0,{graph.tmax}]")


def simulate(
    graph: TemporalGraph,
    seeds: SeedSet,
    delta: int,
    policy: TiePolicy = TiePolicy.LowestId,
) -> tuple[InfectionLog, Timetable]:
    """Run the infection chain; returns the log and its induced timetable.

    Event-driven: each infection schedules attempts along incident edges
    whose label falls in the new infectious window, so cost scales with
    touched edges rather than ``tmax * m``.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    _validate_seeds(graph, seeds)

    infection_time: Timetable = {}
    entries: list[LogEntry] = []
    # attempts[t][node] -> list of (infector, record_idx)
    attempts: dict[int, dict[int, list[tuple[int, int | None]]]] = {}
    seed_times: dict[int, list[int]] = {}
    for node, t in seeds:
        seed_times.setdefault(t, []).append(node)

    def schedule_from(node: int, t0: int) -> None:
        hi = min(t0 + delta, graph.tmax)
        for idx in graph.incident(node):
            rec = graph.records[idx]
            other = rec.other(node)
            for label in rec.labels:
                if t0 + 1 <= label <= hi:
                    attempts.setdefault(label, {}).setdefault(other, []).append((node, idx))

    def infect(node: int, t: int, infector: int, record: int | None) -> None:
        infection_time[node] = t
        entries.append(LogEntry(infector, node, t, record))
        schedule_from(node, t)

    times = sorted(set(seed_times) | set(attempts))
    while times:
        t = times.pop(0)
        for node in sorted(seed_times.pop(t, [])):
            if node not in infection_time:
                infect(node, t, node, None)
        pending = attempts.pop(t, {})
        for node in sorted(pending):
            if node in infection_time:
                continue
            live = [
                (v, rec)
                for v, rec in pending[node]
                if infection_time[v] + 1 <= t <= infection_time[v] + delta
            ]
            if live:
                infector, rec = policy.choose(live, node, t)
                infect(node, t, infector, rec)
        times = sorted(ts for ts in (set(seed_times) | set(attempts)) if ts >= t + 1)

    log = InfectionLog(frozenset(entries))
    return log, log.infected_times()


def timetable_of(log: InfectionLog) -> Timetable:
    """Drop the infector column; errors on a node infected twice."""
    table: Timetable = {}
    for e in log.entries:
        if e.infected in table:
            raise ValueError(f"node {e.infected} infected twice in log")
        table[e.infected] = e.time
    return table


def verify_log_consistency(
    graph: TemporalGraph,
    seeds: SeedSet,
    log: InfectionLog,
    delta: int,
) -> bool:
    """True iff the log is producible by some infection chain from ``seeds``.

    Checks entry legality (edges exist with the stated label, infectors were
    infectious, seed entries come from the seed set) and, via timetable
    uniqueness, that no mandatory infection is missing.
    """
    try:
        table = timetable_of(log)
    except ValueError:
        return False
    for e in log.entries:
        if e.infector == e.infected:
            if (e.infected, e.time) not in seeds:
                return False
            continue
        if e.infector not in table:
            return False
        t0 = table[e.infector]
        if not (t0 + 1 <= e.time <= t0 + delta):
            return False
        if e.record is not None:
            if not (0 <= e.record < graph.m):
                return False
            rec = graph.records[e.record]
            if {rec.u, rec.v} != {e.infector, e.infected} or e.time not in rec.labels:
                return False
        else:
            if e.time not in graph.labels_of_pair(e.infector, e.infected):
                return False
    try:
        _, expected = simulate(graph, seeds, delta)
    except ValueError:
        return False
    return table == expected
