"""Discoverer strategies and the knowledge tracking they share.

Three strategies are implemented: the brute-force baseline that seeds every
``(node, time)`` combination, the patient-zero search that sweeps one start
node and explores outward, and the full-discovery loop that repeats the
sweep/explore pattern until every edge label is pinned down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .game import Answer, Feedback, GameView, Goal, Knowledge, Payload
from .graph import TemporalGraph, Variant
from .infection import InfectionLog, SeedSet, Timetable


class CheatingAdversaryError(RuntimeError):
    """Feedback contradicts earlier feedback; no graph can be consistent with both."""


class IncompleteKnowledgeError(RuntimeError):
    pass


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass
class PhaseCounters:
    rounds_discovery: int = 0
    rounds_exploration: int = 0
    rounds_skipped: int = 0
    sweeps: int = 0

    @property
    def rounds_total(self) -> int:
        return self.rounds_discovery + self.rounds_exploration


class KnowledgeState:
    """Per-edge label knowledge accumulated from game feedback.

    For every known pair we track labels proven present (``found``) and
    proven absent (``pruned``).  A pair is *resolved* once these pin the
    full label multiset: for single-label records when the firings match the
    multiplicity or the surviving candidates collapse onto it, for
    multilabel edges when every time step is classified.
    """

    def __init__(
        self,
        n: int,
        tmax: int,
        delta: int,
        variant: Variant,
        feedback: Feedback,
        static_pairs: tuple[tuple[int, int], ...] | None,
    ):
        self.n = n
        self.tmax = tmax
        self.delta = delta
        self.variant = variant
        self.feedback = feedback
        self.static_known = static_pairs is not None
        self.multiplicity: dict[tuple[int, int], int] = {}
        if static_pairs is not None:
            for u, v in static_pairs:
                pair = _canon(u, v)
                self.multiplicity[pair] = self.multiplicity.get(pair, 0) + 1
        self.found: dict[tuple[int, int], set[int]] = {p: set() for p in self.multiplicity}
        self.pruned: dict[tuple[int, int], set[int]] = {p: set() for p in self.multiplicity}
        self.unresolved: set[tuple[int, int]] = set(self.multiplicity)
        self._drop_resolved_trivial()
        self.adjacent: dict[int, set[tuple[int, int]]] = {}
        for pair in self.multiplicity:
            self.adjacent.setdefault(pair[0], set()).add(pair)
            self.adjacent.setdefault(pair[1], set()).add(pair)
        self.performed_seeds: set[tuple[int, int]] = set()
        self.explored: set[tuple[int, int]] = set()
        self.counters = PhaseCounters()

    @staticmethod
    def for_view(view: GameView) -> "KnowledgeState":
        cfg = view.config
        return KnowledgeState(cfg.n, cfg.tmax, cfg.delta, cfg.variant, cfg.feedback, view.static_pairs)

    # -- resolution bookkeeping ------------------------------------------------

    def _drop_resolved_trivial(self) -> None:
        # tmax == 1 pins single-label records without any rounds
        for pair in list(self.unresolved):
            if self.resolved_labels(pair) is not None:
                self.unresolved.discard(pair)

    def resolved_labels(self, pair: tuple[int, int]) -> list[int] | None:
        """Full sorted label multiset of the pair, or None while undetermined."""
        found, pruned = self.found[pair], self.pruned[pair]
        if self.variant is Variant.MULTILABEL:
            if len(found) + len(pruned) == self.tmax:
                return sorted(found)
            return None
        mult = self.multiplicity[pair]
        if len(found) == mult:
            return sorted(found)
        if self.tmax - len(pruned) == mult:
            return sorted(set(range(1, self.tmax + 1)) - pruned)
        return None

    def is_resolved(self, pair: tuple[int, int]) -> bool:
        return pair not in self.unresolved

    def node_resolved(self, node: int) -> bool:
        """True when every edge record at ``node`` is fully known (redundant-seed test)."""
        return all(p not in self.unresolved for p in self.adjacent.get(node, ()))

    def node_fully_observed(self, node: int) -> bool:
        """True when every record at ``node`` has all labels seen in feedback.

        Stricter than :meth:`node_resolved`: elimination-only knowledge does
        not count, because skipping seeds at such nodes can leave the rest of
        their component undiscovered and cost extra sweep iterations.
        """
        for pair in self.adjacent.get(node, ()):
            if self.variant is Variant.MULTILABEL:
                if len(self.found[pair]) + len(self.pruned[pair]) < self.tmax:
                    return False
            elif len(self.found[pair]) < self.multiplicity[pair]:
                return False
        return True

    def _register_pair(self, pair: tuple[int, int]) -> None:
        if pair in self.multiplicity:
            return
        if self.static_known:
            raise CheatingAdversaryError(f"infection across undisclosed edge {pair}")
        self.multiplicity[pair] = 1
        self.found[pair] = set()
        self.pruned[pair] = set()
        self.unresolved.add(pair)
        self.adjacent.setdefault(pair[0], set()).add(pair)
        self.adjacent.setdefault(pair[1], set()).add(pair)

    def _check(self, pair: tuple[int, int]) -> None:
        found, pruned = self.found[pair], self.pruned[pair]
        if found & pruned:
            raise CheatingAdversaryError(f"label both fired and refuted on {pair}")
        floor = 1 if self.variant is Variant.MULTILABEL else self.multiplicity[pair]
        if self.variant is not Variant.MULTILABEL and len(found) > floor:
            raise CheatingAdversaryError(f"{len(found)} labels fired on {pair} of multiplicity {floor}")
        if self.tmax - len(pruned) < floor:
            raise CheatingAdversaryError(f"too few candidate labels left on {pair}")
        if pair in self.unresolved and self.resolved_labels(pair) is not None:
            self.unresolved.discard(pair)

    def _observe_label(self, pair: tuple[int, int], t: int) -> None:
        self._register_pair(pair)
        if t in self.found[pair]:
            return
        self.found[pair].add(t)
        self._check(pair)

    def _prune_label(self, pair: tuple[int, int], t: int) -> None:
        if t in self.pruned[pair]:
            return
        self.pruned[pair].add(t)
        self._check(pair)

    # -- feedback ingestion ----------------------------------------------------

    def update(self, seeds: SeedSet, payload: Payload) -> list[tuple[int, int]]:
        """Fold one round of feedback in; returns the round's non-seed infections."""
        if isinstance(payload, InfectionLog):
            table = payload.infected_times()
            infections = [(e.infected, e.time) for e in payload.non_seed_entries()]
            for e in payload.non_seed_entries():
                self._observe_label(_canon(e.infector, e.infected), e.time)
        else:
            table = payload
            infections = [(node, t) for node, t in table.items() if (node, t) not in seeds]
            self._one_step_rule(seeds, table)
        self._prune_failed_windows(table)
        return sorted(infections, key=lambda it: (it[1], it[0]))

    def _one_step_rule(self, seeds: SeedSet, table: Timetable) -> None:
        # with a single seed (u, s), only u is infectious at s+1, and any
        # two-hop route needs two steps, so an infection at s+1 pins the label
        if len(seeds) != 1:
            return
        ((u, s),) = seeds
        if table.get(u) != s:
            return
        for node, t in table.items():
            if node != u and t == s + 1:
                pair = _canon(u, node)
                if self.static_known and pair not in self.multiplicity:
                    raise CheatingAdversaryError(f"infection across undisclosed edge {pair}")
                self._observe_label(pair, t)

    def _prune_failed_windows(self, table: Timetable) -> None:
        # an uninfected-at-t endpoint next to an infectious one rules label t out
        for y, t0 in table.items():
            hi = min(t0 + self.delta, self.tmax)
            if t0 + 1 > hi:
                continue
            for pair in self.adjacent.get(y, ()):  # known pairs only
                if pair not in self.unresolved:
                    continue
                w = pair[0] if pair[1] == y else pair[1]
                t_w = table.get(w)
                cutoff = hi if t_w is None else min(hi, t_w - 1)
                for t in range(t0 + 1, cutoff + 1):
                    self._prune_label(pair, t)

    # -- answers -----------------------------------------------------------

    def assemble_graph(self) -> TemporalGraph:
        edges: list[tuple[int, int, list[int]]] = []
        for pair in sorted(self.multiplicity):
            labels = self.resolved_labels(pair)
            if labels is None:
                raise IncompleteKnowledgeError(f"pair {pair} still ambiguous")
            if self.variant is Variant.MULTIEDGE:
                edges.extend((pair[0], pair[1], [t]) for t in labels)
            else:
                edges.append((pair[0], pair[1], labels))
        return TemporalGraph(self.n, edges, self.tmax, self.variant)

    def known_subgraph(self) -> TemporalGraph:
        """Graph on all n nodes containing only the resolved records."""
        edges: list[tuple[int, int, list[int]]] = []
        for pair in sorted(self.multiplicity):
            labels = self.resolved_labels(pair)
            if labels is None:
                continue
            if self.variant is Variant.MULTIEDGE:
                edges.extend((pair[0], pair[1], [t]) for t in labels)
            else:
                edges.append((pair[0], pair[1], labels))
        return TemporalGraph(self.n, edges, self.tmax, self.variant)


def deduce_labels(knowledge: KnowledgeState, seeds: SeedSet, payload: Payload) -> KnowledgeState:
    """Fold one round of feedback into ``knowledge`` (mutates and returns it)."""
    knowledge.update(seeds, payload)
    return knowledge


# -- strategies -----------------------------------------------------------


def brute_force_rounds(n: int, tmax: int) -> list[SeedSet]:
    """The n*tmax singleton seed sets ``(v, t)`` for t in [0, tmax-1].

    Seeding every node one step before every possible label guarantees each
    edge fires at its label at least once.
    """
    if n < 1 or tmax < 1:
        raise ValueError("need n, tmax >= 1")
    return [frozenset([(v, t)]) for v in range(n) for t in range(tmax)]


class BruteForce:
    """Baseline that wins in exactly n*tmax rounds in every variation."""

    def __init__(self):
        self.knowledge: KnowledgeState | None = None

    def run(self, view: GameView) -> Answer:
        cfg = view.config
        self.knowledge = KnowledgeState.for_view(view)
        spanning: tuple[int, int] | None = None
        for seeds in brute_force_rounds(cfg.n, cfg.tmax):
            payload = view.query(seeds)
            self.knowledge.update(seeds, payload)
            if cfg.goal is Goal.IPZ and spanning is None:
                table = payload.infected_times() if isinstance(payload, InfectionLog) else payload
                if len(table) == cfg.n:
                    spanning = next(iter(seeds))
        if cfg.goal is Goal.IPZ:
            return spanning
        return self.knowledge.assemble_graph()


def _sweep_times(tmax: int, delta: int) -> list[int]:
    # seed times 0, delta, 2*delta, ..., tmax: always ceil(tmax/delta)+1 rounds
    return sorted({min(i * delta, tmax) for i in range(math.ceil(tmax / delta) + 1)})


class _FollowBase:
    """Shared sweep/explore machinery of the two follow-style strategies."""

    def __init__(self, skip_redundant: bool = False):
        self.skip_redundant = skip_redundant
        self.knowledge: KnowledgeState | None = None

    def _issue(self, view: GameView, seeds: SeedSet) -> list[tuple[int, int]]:
        payload = view.query(seeds)
        self.knowledge.performed_seeds.update(seeds)
        return self.knowledge.update(seeds, payload)

    def _skip(self, node: int) -> bool:
        return self.skip_redundant and self.knowledge.node_fully_observed(node)

    def _sweep(self, view: GameView, v0: int) -> list[tuple[int, int]]:
        know = self.knowledge
        know.counters.sweeps += 1
        infections: list[tuple[int, int]] = []
        for s in _sweep_times(know.tmax, know.delta):
            if self._skip(v0):
                know.counters.rounds_skipped += 1
                continue
            new = self._issue(view, frozenset([(v0, s)]))
            know.counters.rounds_discovery += 1
            infections.extend(new)
        return infections

    def _explore_from(self, view: GameView, infections: list[tuple[int, int]]) -> None:
        know = self.knowledge
        queue = list(infections)
        while queue:
            node, t = queue.pop(0)
            if (node, t) in know.explored:
                continue
            know.explored.add((node, t))
            # the early seed is clamped to 0: its window [1, delta] still covers
            # every backward label, which whole-component discovery relies on
            for s in sorted({max(0, t - know.delta - 1), t - 1, t}):
                if (node, s) in know.performed_seeds:
                    continue
                if self._skip(node):
                    know.counters.rounds_skipped += 1
                    continue
                new = self._issue(view, frozenset([(node, s)]))
                know.counters.rounds_exploration += 1
                queue.extend(new)


class Follow(_FollowBase):
    """Patient-zero search: sweep one start node, explore what fires, then
    decide by exhaustive simulation over the fully-known components."""

    def __init__(self, start_node: int = 0, skip_redundant: bool = False):
        super().__init__(skip_redundant)
        self.start_node = start_node

    def run(self, view: GameView) -> Answer:
        cfg = view.config
        if cfg.knowledge is not Knowledge.STATIC_KNOWN:
            raise ValueError("patient-zero search needs the static graph disclosed")
        self.knowledge = KnowledgeState.for_view(view)
        infections = self._sweep(view, self.start_node)
        self._explore_from(view, infections)
        # a spanning chain must cross the start node, so its component is
        # fully known; other edges cannot fire from a single seed inside it
        known = self.knowledge.known_subgraph()
        from .game import has_ipz

        return has_ipz(known, cfg.delta)


class DiscoveryFollow(_FollowBase):
    """Full-discovery loop: sweep the lowest node with an unknown adjacent
    record, explore every firing, repeat until the labeling is pinned."""

    def run(self, view: GameView) -> Answer:
        cfg = view.config
        if cfg.knowledge is not Knowledge.STATIC_KNOWN:
            raise ValueError("discovery loop needs the static graph disclosed")
        if cfg.variant is Variant.MULTILABEL:
            raise ValueError("multilabel graphs admit no better strategy than brute force")
        self.knowledge = KnowledgeState.for_view(view)
        while True:
            v0 = self._next_start()
            if v0 is None:
                break
            infections = self._sweep(view, v0)
            self._explore_from(view, infections)
        return self.knowledge.assemble_graph()

    def _next_start(self) -> int | None:
        know = self.knowledge
        for node in range(know.n):
            if any(p in know.unresolved for p in know.adjacent.get(node, ())):
                return node
        return None


def discovery_follow(view: GameView, skip_redundant: bool = False) -> TemporalGraph:
    """Convenience wrapper running :class:`DiscoveryFollow` on an open view."""
    strategy = DiscoveryFollow(skip_redundant=skip_redundant)
    answer = strategy.run(view)
    assert isinstance(answer, TemporalGraph)
    return answer


class _DegradingView:
    """Proxy that downgrades full-log feedback to bare timetables."""

    def __init__(self, view: GameView):
        from dataclasses import replace

        self._view = view
        self.config = replace(view.config, feedback=Feedback.TIMES_ONLY)

    @property
    def n(self) -> int:
        return self._view.n

    @property
    def static_pairs(self):
        return self._view.static_pairs

    @property
    def rounds_used(self) -> int:
        return self._view.rounds_used

    def query(self, seeds: SeedSet) -> Payload:
        payload = self._view.query(seeds)
        return payload.infected_times() if isinstance(payload, InfectionLog) else payload


class DegradeToTimesOnly:
    """Runs the wrapped strategy on feedback stripped down to infection times.

    A strategy that wins through this wrapper wins a fortiori with the full
    logs, which is how feedback monotonicity is exercised.
    """

    def __init__(self, inner):
        self.inner = inner

    @property
    def knowledge(self) -> KnowledgeState | None:
        return self.inner.knowledge

    def run(self, view: GameView) -> Answer:
        return self.inner.run(_DegradingView(view))
