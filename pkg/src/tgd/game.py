"""Round-based discovery game harness with pluggable strategies.

Per round the discoverer submits up to ``k`` seed infections through a
:class:`GameView`; the adversary answers with an infection log (degraded to
a timetable in times-only mode).  The game ends when the discoverer returns
its answer: the exact temporal graph for full discovery, or a spanning-seed
pair / ``None`` for the patient-zero goal.  The adversary then commits to a
graph consistent with every round, and :func:`adjudicate` names the winner.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Protocol, Union

from .graph import TemporalGraph, Variant
from .infection import InfectionLog, LogEntry, SeedSet, Timetable, simulate, verify_log_consistency


class Feedback(Enum):
    FULL_LOG = "full"
    TIMES_ONLY = "times"


class Knowledge(Enum):
    STATIC_KNOWN = "static"
    NODES_ONLY = "nodes"


class Goal(Enum):
    FULL_DISCOVERY = "discovery"
    IPZ = "ipz"


class Winner(Enum):
    DISCOVERER = "discoverer"
    ADVERSARY = "adversary"


Payload = Union[InfectionLog, Timetable]
Answer = Union[TemporalGraph, tuple[int, int], None]


@dataclass(frozen=True)
class GameConfig:
    n: int
    tmax: int
    delta: int
    k: int = 1
    feedback: Feedback = Feedback.FULL_LOG
    knowledge: Knowledge = Knowledge.STATIC_KNOWN
    variant: Variant = Variant.SIMPLE
    goal: Goal = Goal.FULL_DISCOVERY
    round_budget: int | None = 0  # 0 -> default 10*n*tmax, None -> unlimited

    def __post_init__(self):
        if self.delta < 1 or self.delta > self.tmax:
            raise ValueError("need 1 <= delta <= tmax")
        if self.k < 1:
            raise ValueError("k must be >= 1")

    @property
    def budget(self) -> int | None:
        if self.round_budget == 0:
            return 10 * self.n * self.tmax
        return self.round_budget


@dataclass
class Transcript:
    """Full game history: the initial disclosure plus every round's feedback."""

    n: int
    feedback: Feedback
    disclosed_pairs: tuple[tuple[int, int], ...] | None
    rounds: list[tuple[SeedSet, Payload]] = field(default_factory=list)

    def to_json(self) -> str:
        rounds = []
        for seeds, payload in self.rounds:
            entry: dict = {"seeds": sorted(seeds)}
            if isinstance(payload, InfectionLog):
                entry["log"] = [list(e) for e in sorted(payload.entries)]
            else:
                entry["times"] = {str(node): t for node, t in sorted(payload.items())}
            rounds.append(entry)
        doc = {
            "n": self.n,
            "feedback": self.feedback.value,
            "disclosed_pairs": None if self.disclosed_pairs is None else [list(p) for p in self.disclosed_pairs],
            "rounds": rounds,
        }
        return json.dumps(doc, indent=1, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "Transcript":
        doc = json.loads(text)
        feedback = Feedback(doc["feedback"])
        pairs = doc["disclosed_pairs"]
        transcript = Transcript(
            n=doc["n"],
            feedback=feedback,
            disclosed_pairs=None if pairs is None else tuple(tuple(p) for p in pairs),
        )
        for entry in doc["rounds"]:
            seeds = frozenset(tuple(s) for s in entry["seeds"])
            if "log" in entry:
                payload: Payload = InfectionLog(frozenset(LogEntry(*e) for e in entry["log"]))
            else:
                payload = {int(node): t for node, t in entry["times"].items()}
            transcript.rounds.append((seeds, payload))
        return transcript


@dataclass
class GameOutcome:
    winner: Winner
    rounds_used: int
    discoverer_answer: Answer
    adversary_graph: TemporalGraph


class Adversary(Protocol):
    def disclosed_pairs(self) -> tuple[tuple[int, int], ...]:
        """Static edge records (with multiplicity) revealed when knowledge is static."""
        ...

    def respond(self, seeds: SeedSet) -> InfectionLog:
        ...

    def final_graph(self, answer: Answer = None) -> TemporalGraph:
        ...


class Discoverer(Protocol):
    def run(self, view: "GameView") -> Answer:
        ...


class RoundBudgetExceeded(Exception):
    pass


class AdversaryForfeit(RuntimeError):
    """Adversary feedback is inconsistent with its own final graph: a harness error."""


class GameView:
    """The discoverer's handle on a running game.

    Exposes the disclosure and a :meth:`query` method that enforces the seed
    budget per round and the global round budget, records the transcript, and
    degrades logs to timetables in times-only mode.
    """

    def __init__(self, config: GameConfig, adversary: Adversary):
        self.config = config
        self._adversary = adversary
        pairs = adversary.disclosed_pairs() if config.knowledge is Knowledge.STATIC_KNOWN else None
        self.transcript = Transcript(n=config.n, feedback=config.feedback, disclosed_pairs=pairs)

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def static_pairs(self) -> tuple[tuple[int, int], ...] | None:
        """Disclosed edge records, one entry per record (multiplicity visible); None when hidden."""
        return self.transcript.disclosed_pairs

    @property
    def rounds_used(self) -> int:
        return len(self.transcript.rounds)

    def query(self, seeds: SeedSet) -> Payload:
        if len(seeds) > self.config.k:
            raise ValueError(f"seed set of size {len(seeds)} exceeds k={self.config.k}")
        budget = self.config.budget
        if budget is not None and self.rounds_used >= budget:
            raise RoundBudgetExceeded(f"round budget {budget} exhausted")
        log = self._adversary.respond(seeds)
        payload: Payload = log if self.config.feedback is Feedback.FULL_LOG else log.infected_times()
        self.transcript.rounds.append((seeds, payload))
        return payload


def _payload_consistent(graph: TemporalGraph, seeds: SeedSet, payload: Payload, delta: int) -> bool:
    if isinstance(payload, InfectionLog):
        return verify_log_consistency(graph, seeds, payload, delta)
    try:
        _, table = simulate(graph, seeds, delta)
    except ValueError:
        return False
    return table == payload


def graph_consistent_with_transcript(graph: TemporalGraph, transcript: Transcript, delta: int) -> bool:
    return all(_payload_consistent(graph, seeds, payload, delta) for seeds, payload in transcript.rounds)


def has_ipz(graph: TemporalGraph, delta: int) -> tuple[int, int] | None:
    """First seed pair whose chain infects every node, else None (exhaustive search)."""
    for v in range(graph.n):
        for t in range(0, graph.tmax + 1):
            _, table = simulate(graph, frozenset([(v, t)]), delta)
            if len(table) == graph.n:
                return (v, t)
    return None


def adjudicate(
    config: GameConfig,
    transcript: Transcript,
    answer: Answer,
    adversary_graph: TemporalGraph,
) -> GameOutcome:
    """Deterministic winner computation; raises :class:`AdversaryForfeit` on an inconsistent counter-graph."""
    if not graph_consistent_with_transcript(adversary_graph, transcript, config.delta):
        raise AdversaryForfeit("adversary graph contradicts its own feedback")
    rounds = len(transcript.rounds)
    if config.goal is Goal.FULL_DISCOVERY:
        won = isinstance(answer, TemporalGraph) and answer == adversary_graph
    else:
        if answer is None:
            won = has_ipz(adversary_graph, config.delta) is None
        else:
            node, t = answer
            _, table = simulate(adversary_graph, frozenset([(node, t)]), config.delta)
            won = len(table) == adversary_graph.n
    winner = Winner.DISCOVERER if won else Winner.ADVERSARY
    return GameOutcome(winner, rounds, answer, adversary_graph)


def play(config: GameConfig, discoverer: Discoverer, adversary: Adversary) -> tuple[GameOutcome, Transcript]:
    """Run one complete game; exceeding the round budget loses for the discoverer."""
    view = GameView(config, adversary)
    try:
        answer = discoverer.run(view)
    except RoundBudgetExceeded:
        final = adversary.final_graph(None)
        if not graph_consistent_with_transcript(final, view.transcript, config.delta):
            raise AdversaryForfeit("adversary graph contradicts its own feedback")
        return GameOutcome(Winner.ADVERSARY, view.rounds_used, None, final), view.transcript
    adversary_graph = adversary.final_graph(answer)
    outcome = adjudicate(config, view.transcript, answer, adversary_graph)
    return outcome, view.transcript
