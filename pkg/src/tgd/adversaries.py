"""Adversary strategies and the witnessing-schedule verifier.

The honest adversary simulates a fixed hidden graph.  The lazy adversaries
keep part of the graph undetermined and reply "infection failed" to attempts
on undetermined labels for as long as at least one consistent completion
remains, which forces any discoverer to spend many rounds.  The potential
trace counts, per edge, how many single-label deviations stay consistent
with the feedback so far; a schedule is witnessing when the trace bottoms
out at one consistent label per edge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .game import Answer, Feedback, Transcript, _payload_consistent
from .graph import TemporalGraph, Variant
from .infection import InfectionLog, LogEntry, SeedSet, TiePolicy, simulate


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class HonestAdversary:
    """Plays a fixed hidden graph and reports its simulations verbatim."""

    def __init__(self, hidden: TemporalGraph, delta: int, policy: TiePolicy = TiePolicy.LowestId):
        self.hidden = hidden
        self.delta = delta
        self.policy = policy

    def disclosed_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(rec.pair for rec in self.hidden.records)

    def respond(self, seeds: SeedSet) -> InfectionLog:
        log, _ = simulate(self.hidden, seeds, self.delta, self.policy)
        return log

    def final_graph(self, answer: Answer = None) -> TemporalGraph:
        return self.hidden


class _LazyAdversaryBase:
    """Time-stepped simulation against a partially committed graph.

    Determined labels (fixed at construction or committed since) transmit
    normally.  When exactly one endpoint of an undetermined possibility is
    infectious and the other is susceptible, the subclass decides through
    ``_attempt`` whether to refuse (recording the refutation) or to commit
    the label and let the infection through.
    """

    def __init__(self, n: int, tmax: int, delta: int):
        self.n = n
        self.tmax = tmax
        self.delta = delta
        self.fixed_labels: dict[tuple[int, int], set[int]] = {}

    # subclass interface
    def _attempt_candidates(self, t: int) -> list[tuple[int, int]]:
        """Pairs worth consulting at time t (superset is fine)."""
        raise NotImplementedError

    def _attempt(self, pair: tuple[int, int], t: int) -> bool:
        raise NotImplementedError

    def respond(self, seeds: SeedSet) -> InfectionLog:
        for node, t in seeds:
            if not (0 <= node < self.n) or not (0 <= t <= self.tmax):
                raise ValueError(f"bad seed {(node, t)}")
        infected: dict[int, int] = {}
        entries: list[LogEntry] = []
        seeds_at: dict[int, list[int]] = {}
        for node, t in seeds:
            seeds_at.setdefault(t, []).append(node)

        def infectious(v: int, t: int) -> bool:
            return v in infected and infected[v] + 1 <= t <= infected[v] + self.delta

        for t in range(0, self.tmax + 1):
            for node in sorted(seeds_at.get(t, [])):
                if node not in infected:
                    infected[node] = t
                    entries.append(LogEntry(node, node, t))
            # committed spread, synchronous over the pre-step infectious set
            newly: dict[int, int] = {}
            for pair, labels in sorted(self.fixed_labels.items()):
                if t not in labels:
                    continue
                u, v = pair
                for target, source in ((u, v), (v, u)):
                    if target in infected or target in newly:
                        continue
                    if infectious(source, t):
                        newly[target] = source
            for target in sorted(newly):
                infected[target] = t
                entries.append(LogEntry(newly[target], target, t))
            # undetermined possibilities: refuse or commit
            for pair in self._attempt_candidates(t):
                u, v = pair
                live = [x for x in pair if infectious(x, t)]
                susceptible = [x for x in pair if x not in infected]
                if len(live) != 1 or len(susceptible) != 1 or live == susceptible:
                    continue
                if self._attempt(pair, t):
                    self.fixed_labels.setdefault(pair, set()).add(t)
                    infected[susceptible[0]] = t
                    entries.append(LogEntry(live[0], susceptible[0], t))
        return InfectionLog(frozenset(entries))


class LazyThm52Adversary(_LazyAdversaryBase):
    """Adaptive adversary on the path-plus-two-hubs family.

    Nodes 0..n-3 form a path whose even-indexed edges are fixed to tmax;
    node n-2 is a hub at tmax-2, node n-1 a hub at tmax, and the two hubs
    share an edge at tmax-1.  The odd-indexed path edges stay free, and the
    lazy rule makes every discoverer spend at least
    ``floor(n*(tmax-3) / (2*delta*k))`` rounds.
    """

    def __init__(self, n: int, tmax: int, delta: int, k: int = 1):
        from .generators import build_thm52_family

        super().__init__(n, tmax, delta)
        self.k = k
        instance = build_thm52_family(n, tmax)
        for u, v, label in instance.fixed:
            self.fixed_labels.setdefault(_canon(u, v), set()).add(label)
        self.free_pairs = [_canon(u, v) for u, v in instance.free]
        self.candidates: dict[tuple[int, int], set[int]] = {
            pair: set(range(1, tmax + 1)) for pair in self.free_pairs
        }
        self.committed: dict[tuple[int, int], int] = {}

    @property
    def round_lower_bound(self) -> int:
        return self.n * (self.tmax - 3) // (2 * self.delta * self.k)

    def disclosed_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(set(self.fixed_labels) | set(self.free_pairs)))

    def _attempt_candidates(self, t: int) -> list[tuple[int, int]]:
        return [p for p in self.free_pairs if p not in self.committed and t in self.candidates[p]]

    def _attempt(self, pair: tuple[int, int], t: int) -> bool:
        cand = self.candidates[pair]
        if len(cand) > 1:
            cand.discard(t)
            return False
        self.committed[pair] = t
        return True

    def final_graph(self, answer: Answer = None) -> TemporalGraph:
        answer_labels = answer.label_multiset() if isinstance(answer, TemporalGraph) else {}
        edges: list[tuple[int, int, int]] = []
        for pair, labels in self.fixed_labels.items():
            for label in labels:
                edges.append((pair[0], pair[1], label))
        for pair in self.free_pairs:
            if pair in self.committed:
                continue
            cand = sorted(self.candidates[pair])
            claimed = answer_labels.get(pair)
            disagreeing = [c for c in cand if claimed is None or (c,) != claimed]
            label = disagreeing[0] if disagreeing else cand[0]
            edges.append((pair[0], pair[1], label))
        return TemporalGraph(self.n, edges, self.tmax, Variant.SIMPLE)


class LazyUnknownStaticAdversary(_LazyAdversaryBase):
    """Adversary for games where the static graph is not disclosed.

    m-1 edges are fixed on a connected max-degree-(n-2) subgraph at label 1;
    the last edge is chosen adaptively among all untested (pair, time)
    possibilities, forcing at least ``floor(n*tmax / (2*delta*k))`` rounds.
    """

    def __init__(self, n: int, m: int, tmax: int, delta: int, k: int = 1):
        super().__init__(n, tmax, delta)
        if not (1 <= m <= n * (n - 1) // 2 - n):
            raise ValueError("need 1 <= m <= C(n,2) - n")
        if not (1 <= k <= n):
            raise ValueError("need 1 <= k <= n")
        self.m = m
        self.k = k
        degree = [0] * n
        fixed: list[tuple[int, int]] = []
        for u in range(n):
            for v in range(u + 1, n):
                if len(fixed) == m - 1:
                    break
                if degree[u] < n - 2 and degree[v] < n - 2:
                    fixed.append((u, v))
                    degree[u] += 1
                    degree[v] += 1
            if len(fixed) == m - 1:
                break
        self.fixed_pairs = set(fixed)
        for pair in fixed:
            self.fixed_labels[pair] = {1}
        self.tested: set[tuple[tuple[int, int], int]] = set()
        self.committed: tuple[tuple[int, int], int] | None = None
        self._pool_size = (n * (n - 1) // 2 - len(fixed)) * tmax

    @property
    def round_lower_bound(self) -> int:
        return self.n * self.tmax // (2 * self.delta * self.k)

    def disclosed_pairs(self) -> tuple[tuple[int, int], ...]:
        raise RuntimeError("this adversary only plays games without static disclosure")

    def _open_pairs(self) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in self.fixed_pairs
        ]

    def _attempt_candidates(self, t: int) -> list[tuple[int, int]]:
        if self.committed is not None or t < 1:
            return []
        return [p for p in self._open_pairs() if (p, t) not in self.tested]

    def _attempt(self, pair: tuple[int, int], t: int) -> bool:
        remaining = self._pool_size - len(self.tested)
        if remaining > 1:
            self.tested.add((pair, t))
            return False
        self.committed = (pair, t)
        return True

    def final_graph(self, answer: Answer = None) -> TemporalGraph:
        edges = [(u, v, 1) for u, v in sorted(self.fixed_pairs)]
        if self.committed is not None:
            pair, t = self.committed
            edges.append((pair[0], pair[1], t))
            return TemporalGraph(self.n, edges, self.tmax, Variant.SIMPLE)
        answer_labels = answer.label_multiset() if isinstance(answer, TemporalGraph) else {}
        for pair in self._open_pairs():
            for t in range(1, self.tmax + 1):
                if (pair, t) in self.tested:
                    continue
                if answer_labels.get(pair) != (t,):
                    chosen = edges + [(pair[0], pair[1], t)]
                    return TemporalGraph(self.n, chosen, self.tmax, Variant.SIMPLE)
        # every untested completion matches the answer: take the first untested
        for pair in self._open_pairs():
            for t in range(1, self.tmax + 1):
                if (pair, t) not in self.tested:
                    edges.append((pair[0], pair[1], t))
                    return TemporalGraph(self.n, edges, self.tmax, Variant.SIMPLE)
        raise RuntimeError("possibility pool exhausted without commitment")


class LazyMultilabelAdversary(_LazyAdversaryBase):
    """Adversary for the label-set variation.

    All m edges sit on a connected bounded-degree subgraph with base label 1;
    one extra label may be granted adaptively.  Successful infections never
    exclude other labels, so at least
    ``floor(min(n/2, m)*tmax / (delta*k))`` rounds are forced.
    """

    def __init__(self, n: int, m: int, tmax: int, delta: int, k: int = 1):
        super().__init__(n, tmax, delta)
        if not (1 <= m <= n * (n - 1) // 2 - n):
            raise ValueError("need 1 <= m <= C(n,2) - n")
        if not (1 <= k <= n):
            raise ValueError("need 1 <= k <= n")
        if tmax < 2:
            raise ValueError("need tmax >= 2 so an extra label can stay in doubt")
        self.m = m
        self.k = k
        degree = [0] * n
        adjacency: set[tuple[int, int]] = set()
        edges: list[tuple[int, int]] = [(0, 1)]
        adjacency.add((0, 1))
        degree[0] = degree[1] = 1
        while len(edges) < m:
            u = min((x for x in range(n) if degree[x] > 0), key=lambda x: (degree[x], x))
            choices = [
                w for w in range(n) if w != u and _canon(u, w) not in adjacency
            ]
            w = min(choices, key=lambda x: (degree[x], x))
            pair = _canon(u, w)
            edges.append(pair)
            adjacency.add(pair)
            degree[u] += 1
            degree[w] += 1
        self.edge_pairs = sorted(adjacency)
        for pair in self.edge_pairs:
            self.fixed_labels[pair] = {1}
        self.tested: set[tuple[tuple[int, int], int]] = set()
        self.committed: tuple[tuple[int, int], int] | None = None
        self._pool_size = m * (tmax - 1)

    @property
    def max_degree(self) -> int:
        degree: dict[int, int] = {}
        for u, v in self.edge_pairs:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        return max(degree.values())

    @property
    def round_lower_bound(self) -> int:
        return min(self.n * self.tmax, 2 * self.m * self.tmax) // (2 * self.delta * self.k)

    def disclosed_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.edge_pairs)

    def _attempt_candidates(self, t: int) -> list[tuple[int, int]]:
        if self.committed is not None or t < 2:
            return []
        return [p for p in self.edge_pairs if (p, t) not in self.tested]

    def _attempt(self, pair: tuple[int, int], t: int) -> bool:
        remaining = self._pool_size - len(self.tested)
        if remaining > 1:
            self.tested.add((pair, t))
            return False
        self.committed = (pair, t)
        return True

    def final_graph(self, answer: Answer = None) -> TemporalGraph:
        labels = {pair: set(ls) for pair, ls in self.fixed_labels.items()}

        def build() -> TemporalGraph:
            return TemporalGraph(
                self.n,
                [(u, v, sorted(ls)) for (u, v), ls in labels.items()],
                self.tmax,
                Variant.MULTILABEL,
            )

        if self.committed is not None:
            return build()
        base = build()
        if not (isinstance(answer, TemporalGraph) and answer == base):
            return base
        for pair in self.edge_pairs:
            for t in range(2, self.tmax + 1):
                if (pair, t) not in self.tested:
                    labels[pair].add(t)
                    return build()
        raise RuntimeError("possibility pool exhausted without commitment")


@dataclass
class PotentialTrace:
    """Per-round totals of surviving single-label deviations, plus the survivors."""

    values: list[int]
    consistent_labels: dict[int, set[int]]

    @property
    def final(self) -> int:
        return self.values[-1]


def potential(graph: TemporalGraph, transcript: Transcript, delta: int) -> PotentialTrace:
    """Sum over edges of labels still consistent after each transcript prefix.

    A label ``l`` is consistent for record ``e`` after round ``i`` when
    replacing ``e``'s label by ``l`` (all other records pinned to their true
    labels) keeps every round up to ``i`` producible.
    """
    if graph.variant is not Variant.SIMPLE:
        raise ValueError("the potential is defined for single-label graphs")
    for seeds, payload in transcript.rounds:
        if not _payload_consistent(graph, seeds, payload, delta):
            raise ValueError("transcript is inconsistent with the graph")

    base_edges = [(rec.u, rec.v, rec.label) for rec in graph.records]
    alive: dict[int, set[int]] = {
        idx: set(range(1, graph.tmax + 1)) for idx in range(graph.m)
    }
    values = [sum(len(s) for s in alive.values())]
    variants_cache: dict[tuple[int, int], TemporalGraph] = {}

    def deviated(idx: int, label: int) -> TemporalGraph:
        key = (idx, label)
        if key not in variants_cache:
            edges = list(base_edges)
            edges[idx] = (edges[idx][0], edges[idx][1], label)
            variants_cache[key] = TemporalGraph(graph.n, edges, graph.tmax, Variant.SIMPLE)
        return variants_cache[key]

    for seeds, payload in transcript.rounds:
        for idx in range(graph.m):
            true_label = graph.records[idx].label
            for label in sorted(alive[idx]):
                if label == true_label:
                    continue
                if not _payload_consistent(deviated(idx, label), seeds, payload, delta):
                    alive[idx].discard(label)
        values.append(sum(len(s) for s in alive.values()))
    return PotentialTrace(values=values, consistent_labels=alive)


def per_edge_witness_schedule(graph: TemporalGraph) -> list[SeedSet]:
    """One round per record, seeding an endpoint one step before the label."""
    if graph.variant is not Variant.SIMPLE:
        raise ValueError("schedule construction assumes single-label records")
    return [frozenset([(rec.u, rec.label - 1)]) for rec in graph.records]


def witness_verify(graph: TemporalGraph, schedule: list[SeedSet], delta: int) -> bool:
    """True iff honest feedback on the schedule pins every label uniquely."""
    transcript = Transcript(n=graph.n, feedback=Feedback.FULL_LOG, disclosed_pairs=None)
    for seeds in schedule:
        log, _ = simulate(graph, seeds, delta)
        transcript.rounds.append((seeds, log))
    return potential(graph, transcript, delta).final == graph.m
