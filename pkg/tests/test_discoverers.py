"""Discovery strategies: brute force, patient-zero search, the discovery loop."""

import math
import random

import pytest

from tgd import (
    BruteForce,
    DiscoveryFollow,
    ErtParams,
    Feedback,
    Follow,
    GameConfig,
    Goal,
    Knowledge,
    HonestAdversary,
    KnowledgeState,
    TemporalGraph,
    Variant,
    Winner,
    brute_force_rounds,
    delta_ecc,
    generate_ert,
    play,
    simulate,
)
from tgd.discoverers import CheatingAdversaryError, DegradeToTimesOnly
from tgd.game import GameView

from .oracles import spanning_seed_pairs


def game(graph, delta, **kw):
    return GameConfig(n=graph.n, tmax=graph.tmax, delta=delta, round_budget=None, **kw)


def random_simple_graph(rng, n, tmax):
    return generate_ert(ErtParams(n=n, p=rng.uniform(0.1, 0.8), tmax=tmax, rng_seed=rng.randrange(10**9)))


def random_multiedge_graph(rng, n, tmax):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.4:
                for label in rng.sample(range(1, tmax + 1), k=rng.randint(1, min(3, tmax))):
                    edges.append((u, v, label))
    return TemporalGraph(n, edges, tmax, Variant.MULTIEDGE)


class TestBruteForceRounds:
    def test_round_count(self):
        rounds = brute_force_rounds(3, 2)
        assert len(rounds) == 6
        assert rounds[0] == frozenset([(0, 0)])
        assert all(len(s) == 1 for s in rounds)

    def test_single_node(self):
        assert len(brute_force_rounds(1, 5)) == 5

    def test_covers_edge_at_tmax(self):
        g = TemporalGraph(2, [(0, 1, 4)], 4)
        fired = False
        for seeds in brute_force_rounds(2, 4):
            log, _ = simulate(g, seeds, delta=1)
            fired = fired or any(e.infector != e.infected for e in log.entries)
        assert fired

    def test_invalid(self):
        with pytest.raises(ValueError):
            brute_force_rounds(0, 2)


class TestBruteForceGame:
    @pytest.mark.parametrize("feedback", [Feedback.FULL_LOG, Feedback.TIMES_ONLY])
    def test_exact_and_round_count(self, feedback):
        rng = random.Random(7)
        for _ in range(10):
            graph = random_simple_graph(rng, rng.randint(2, 8), rng.randint(1, 6))
            delta = rng.randint(1, graph.tmax)
            outcome, _ = play(
                game(graph, delta, feedback=feedback),
                BruteForce(),
                HonestAdversary(graph, delta),
            )
            assert outcome.winner is Winner.DISCOVERER
            assert outcome.rounds_used == graph.n * graph.tmax

    def test_multilabel(self):
        g = TemporalGraph(4, [(0, 1, [1, 3]), (1, 2, [2]), (0, 3, [1, 2, 4])], 4, Variant.MULTILABEL)
        outcome, _ = play(
            game(g, 2, variant=Variant.MULTILABEL), BruteForce(), HonestAdversary(g, 2)
        )
        assert outcome.winner is Winner.DISCOVERER
        assert outcome.rounds_used == 16

    def test_multiedge(self):
        g = TemporalGraph(3, [(0, 1, 1), (0, 1, 3), (1, 2, 2)], 3, Variant.MULTIEDGE)
        outcome, _ = play(
            game(g, 1, variant=Variant.MULTIEDGE), BruteForce(), HonestAdversary(g, 1)
        )
        assert outcome.winner is Winner.DISCOVERER

    def test_nodes_only(self):
        g = TemporalGraph(4, [(0, 1, 2), (1, 3, 1)], 3)
        config = GameConfig(n=4, tmax=3, delta=1, knowledge=Knowledge.NODES_ONLY, round_budget=None)
        outcome, _ = play(config, BruteForce(), HonestAdversary(g, 1))
        assert outcome.winner is Winner.DISCOVERER
        assert outcome.rounds_used == 12

    def test_ipz_goal(self):
        star = TemporalGraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)], 2)
        outcome, _ = play(game(star, 1, goal=Goal.IPZ), BruteForce(), HonestAdversary(star, 1))
        assert outcome.winner is Winner.DISCOVERER
        assert outcome.discoverer_answer == (0, 0)

    def test_ipz_goal_no_spanning_seed(self):
        g = TemporalGraph(3, [(0, 1, 2), (1, 2, 1)], 2)
        # chains die in both directions except 2->1->0, check oracle agrees first
        pairs = spanning_seed_pairs(g, 1)
        outcome, _ = play(game(g, 1, goal=Goal.IPZ), BruteForce(), HonestAdversary(g, 1))
        assert (outcome.discoverer_answer is not None) == bool(pairs)
        assert outcome.winner is Winner.DISCOVERER


class TestFollow:
    def test_single_edge_path(self):
        g = TemporalGraph(2, [(0, 1, 1)], 1)
        outcome, _ = play(game(g, 1, goal=Goal.IPZ), Follow(), HonestAdversary(g, 1))
        assert outcome.winner is Winner.DISCOVERER
        assert outcome.discoverer_answer == (0, 0)

    def test_no_edges_returns_bottom(self):
        g = TemporalGraph(2, [], 3)
        outcome, _ = play(game(g, 1, goal=Goal.IPZ), Follow(), HonestAdversary(g, 1))
        assert outcome.discoverer_answer is None
        assert outcome.winner is Winner.DISCOVERER

    def test_spanning_component_without_spanning_seed(self):
        # zigzag labels: one delta-ecc spans all nodes, yet no seed infects everyone
        g = TemporalGraph(4, [(0, 1, 3), (1, 2, 2), (2, 3, 3)], 3)
        assert delta_ecc(g, 1).component_count == 1
        assert spanning_seed_pairs(g, 1) == []
        outcome, _ = play(game(g, 1, goal=Goal.IPZ), Follow(), HonestAdversary(g, 1))
        assert outcome.discoverer_answer is None
        assert outcome.winner is Winner.DISCOVERER

    def test_matches_oracle_on_random_instances(self):
        rng = random.Random(13)
        for _ in range(40):
            graph = random_simple_graph(rng, rng.randint(2, 8), rng.randint(1, 6))
            delta = min(rng.choice([1, 2, graph.tmax]), graph.tmax)
            outcome, _ = play(
                game(graph, delta, goal=Goal.IPZ), Follow(), HonestAdversary(graph, delta)
            )
            pairs = spanning_seed_pairs(graph, delta)
            answer = outcome.discoverer_answer
            assert (answer is not None) == bool(pairs)
            if answer is not None:
                assert answer in pairs
            assert outcome.winner is Winner.DISCOVERER

    def test_round_bound(self):
        rng = random.Random(99)
        for _ in range(20):
            graph = random_simple_graph(rng, rng.randint(2, 8), rng.randint(2, 6))
            delta = min(rng.choice([1, 2]), graph.tmax)
            strategy = Follow()
            outcome, _ = play(
                game(graph, delta, goal=Goal.IPZ), strategy, HonestAdversary(graph, delta)
            )
            assert outcome.rounds_used <= 6 * graph.m + math.ceil(graph.tmax / delta) + 1


class TestExplore:
    def _view(self, graph, delta, **kw):
        return GameView(game(graph, delta, **kw), HonestAdversary(graph, delta))

    def test_negative_time_clamped_to_zero(self):
        # chain with labels 2,3: exploring (node 1, time 2) plans {-1, 1, 2}
        # and the negative entry is clamped to a seed at 0
        g = TemporalGraph(3, [(0, 1, 2), (1, 2, 3)], 3)
        view = self._view(g, 2)
        strategy = DiscoveryFollow()
        strategy.knowledge = KnowledgeState.for_view(view)
        # silence recursion so only the first-level call issues rounds
        strategy.knowledge.explored.update(
            (node, t) for node in (0, 2) for t in range(0, 4)
        )
        strategy.knowledge.explored.update((1, t) for t in range(0, 4) if t != 2)
        strategy._explore_from(view, [(1, 2)])
        seeds_at_1 = {s for (node, s) in strategy.knowledge.performed_seeds if node == 1}
        assert seeds_at_1 == {0, 1, 2}
        assert strategy.knowledge.counters.rounds_exploration == 3

    def test_backward_label_in_component_is_found(self):
        # second edge exists only before the fired edge's label; the clamped
        # seed is the only way to fire it from the explored endpoint
        g = TemporalGraph(3, [(0, 1, 4), (1, 2, 2)], 6)
        strategy = Follow()
        outcome, _ = play(game(g, 6, goal=Goal.IPZ), strategy, HonestAdversary(g, 6))
        assert outcome.discoverer_answer is not None
        assert outcome.winner is Winner.DISCOVERER

    def test_dedup_no_new_rounds(self):
        g = TemporalGraph(3, [(0, 1, 2), (1, 2, 3)], 3)
        view = self._view(g, 2)
        strategy = DiscoveryFollow()
        strategy.knowledge = KnowledgeState.for_view(view)
        strategy.knowledge.performed_seeds.update({(1, 0), (1, 1), (1, 2)})
        strategy.knowledge.explored.add((2, 3))
        strategy._explore_from(view, [(1, 2)])
        assert strategy.knowledge.counters.rounds_exploration == 0

    def test_at_most_six_rounds_per_record(self):
        rng = random.Random(5)
        for _ in range(15):
            graph = random_simple_graph(rng, rng.randint(2, 9), rng.randint(2, 7))
            delta = min(rng.choice([1, 2, graph.tmax]), graph.tmax)
            strategy = DiscoveryFollow()
            play(game(graph, delta), strategy, HonestAdversary(graph, delta))
            if graph.m:
                assert strategy.knowledge.counters.rounds_exploration <= 6 * graph.m


class TestDiscoveryFollow:
    def test_single_edge_sweep(self):
        g = TemporalGraph(2, [(0, 1, 2)], 3)
        strategy = DiscoveryFollow()
        outcome, _ = play(game(g, 3), strategy, HonestAdversary(g, 3))
        assert outcome.winner is Winner.DISCOVERER
        assert outcome.rounds_used <= 6 * 1 + 1 * 2

    def test_two_components_two_sweeps(self):
        g = TemporalGraph(4, [(0, 1, 1), (2, 3, 5)], 5)
        assert delta_ecc(g, 1).component_count == 2
        strategy = DiscoveryFollow()
        outcome, _ = play(game(g, 1), strategy, HonestAdversary(g, 1))
        assert outcome.winner is Winner.DISCOVERER
        assert strategy.knowledge.counters.sweeps == 2

    def test_skip_redundant_counts_skips(self):
        g = TemporalGraph(2, [(0, 1, 2)], 3)
        strategy = DiscoveryFollow(skip_redundant=True)
        outcome, _ = play(game(g, 3), strategy, HonestAdversary(g, 3))
        assert outcome.winner is Winner.DISCOVERER
        c = strategy.knowledge.counters
        assert c.rounds_skipped >= 1
        assert c.rounds_total + c.rounds_skipped >= 2

    @pytest.mark.parametrize("feedback", [Feedback.FULL_LOG, Feedback.TIMES_ONLY])
    @pytest.mark.parametrize("variant", [Variant.SIMPLE, Variant.MULTIEDGE])
    @pytest.mark.parametrize("skip", [False, True])
    def test_exactness(self, feedback, variant, skip):
        rng = random.Random(hash((feedback.value, variant.value, skip)) % (2**31))
        for _ in range(12):
            n, tmax = rng.randint(2, 15), rng.randint(1, 10)
            if variant is Variant.SIMPLE:
                graph = random_simple_graph(rng, n, tmax)
            else:
                graph = random_multiedge_graph(rng, min(n, 8), tmax)
            delta = min(rng.choice([1, 2, graph.tmax]), graph.tmax)
            strategy = DiscoveryFollow(skip_redundant=skip)
            outcome, _ = play(
                game(graph, delta, feedback=feedback, variant=variant),
                strategy,
                HonestAdversary(graph, delta),
            )
            assert outcome.winner is Winner.DISCOVERER, (graph, delta)
            assert outcome.discoverer_answer == graph

    def test_round_bound_holds(self):
        rng = random.Random(21)
        for _ in range(25):
            graph = random_simple_graph(rng, rng.randint(2, 12), rng.randint(1, 8))
            delta = min(rng.choice([1, 2, graph.tmax]), graph.tmax)
            strategy = DiscoveryFollow()
            outcome, _ = play(game(graph, delta), strategy, HonestAdversary(graph, delta))
            bound = 6 * graph.m + delta_ecc(graph, delta).component_count * (
                math.ceil(graph.tmax / delta) + 1
            )
            assert outcome.rounds_used <= bound

    def test_fired_edges_cover_seed_windows(self):
        # whenever (v,t) was seeded, adjacent labels in (t, t+delta] must fire
        rng = random.Random(31)
        for _ in range(15):
            graph = random_simple_graph(rng, rng.randint(2, 10), rng.randint(2, 7))
            delta = min(rng.choice([1, 2]), graph.tmax)
            strategy = DiscoveryFollow()
            outcome, transcript = play(game(graph, delta), strategy, HonestAdversary(graph, delta))
            assert outcome.winner is Winner.DISCOVERER
            fired = set()
            for _seeds, log in transcript.rounds:
                fired.update(e.record for e in log.non_seed_entries())
            for v, t in strategy.knowledge.performed_seeds:
                for idx in graph.incident(v):
                    if t + 1 <= graph.records[idx].label <= t + delta:
                        assert idx in fired

    def test_degraded_feedback_still_wins_full_log_game(self):
        rng = random.Random(17)
        for _ in range(8):
            graph = random_simple_graph(rng, rng.randint(2, 9), rng.randint(1, 6))
            delta = min(rng.choice([1, graph.tmax]), graph.tmax)
            wrapped = DegradeToTimesOnly(DiscoveryFollow())
            outcome, transcript = play(game(graph, delta), wrapped, HonestAdversary(graph, delta))
            assert outcome.winner is Winner.DISCOVERER
            assert transcript.feedback is Feedback.FULL_LOG

    def test_multilabel_rejected(self):
        g = TemporalGraph(2, [(0, 1, [1])], 2, Variant.MULTILABEL)
        with pytest.raises(ValueError, match="brute force"):
            play(game(g, 1, variant=Variant.MULTILABEL), DiscoveryFollow(), HonestAdversary(g, 1))


class TestKnowledgeState:
    def _knowledge(self, pairs, tmax=4, delta=1, variant=Variant.SIMPLE, feedback=Feedback.FULL_LOG):
        return KnowledgeState(5, tmax, delta, variant, feedback, tuple(pairs))

    def test_full_log_entry_pins_label(self):
        from tgd import InfectionLog, LogEntry

        know = self._knowledge([(0, 1)])
        log = InfectionLog(frozenset([LogEntry(0, 0, 2), LogEntry(0, 1, 3)]))
        know.update(frozenset([(0, 2)]), log)
        assert know.resolved_labels((0, 1)) == [3]

    def test_times_only_one_step_rule(self):
        know = self._knowledge([(0, 1)], feedback=Feedback.TIMES_ONLY)
        know.update(frozenset([(0, 2)]), {0: 2, 1: 3})
        assert know.resolved_labels((0, 1)) == [3]

    def test_times_only_multi_hop_abstains(self):
        # path 0-1-2-3 with labels 1,2,3 plus direct edge (0,3) labeled 5
        pairs = [(0, 1), (1, 2), (2, 3), (0, 3)]
        know = self._knowledge(pairs, tmax=5, delta=3, feedback=Feedback.TIMES_ONLY)
        know.update(frozenset([(0, 0)]), {0: 0, 1: 1, 2: 2, 3: 3})
        assert know.found[(0, 3)] == set()
        assert know.resolved_labels((0, 3)) is None

    def test_pruning_failed_window(self):
        know = self._knowledge([(0, 1)], tmax=4, delta=2)
        from tgd import InfectionLog, LogEntry

        # node 0 infected at 0, node 1 never: labels 1,2 are refuted
        know.update(frozenset([(0, 0)]), InfectionLog(frozenset([LogEntry(0, 0, 0)])))
        assert know.pruned[(0, 1)] == {1, 2}

    def test_elimination_resolves(self):
        from tgd import InfectionLog, LogEntry

        know = self._knowledge([(0, 1)], tmax=4, delta=3)
        # labels 1..3 refuted leaves only 4: resolved without a firing
        know.update(frozenset([(0, 0)]), InfectionLog(frozenset([LogEntry(0, 0, 0)])))
        assert know.resolved_labels((0, 1)) == [4]

    def test_pruning_away_every_label_is_cheating(self):
        from tgd import InfectionLog, LogEntry

        know = self._knowledge([(0, 1)], tmax=3, delta=3)
        with pytest.raises(CheatingAdversaryError):
            know.update(frozenset([(0, 0)]), InfectionLog(frozenset([LogEntry(0, 0, 0)])))

    def test_cheating_two_labels_on_simple_edge(self):
        from tgd import InfectionLog, LogEntry

        know = self._knowledge([(0, 1)])
        know.update(frozenset([(0, 0)]), InfectionLog(frozenset([LogEntry(0, 0, 0), LogEntry(0, 1, 1)])))
        with pytest.raises(CheatingAdversaryError):
            know.update(frozenset([(0, 1)]), InfectionLog(frozenset([LogEntry(0, 0, 1), LogEntry(0, 1, 2)])))

    def test_cheating_fired_after_refuted(self):
        from tgd import InfectionLog, LogEntry

        know = self._knowledge([(0, 1)], tmax=4, delta=2)
        know.update(frozenset([(0, 0)]), InfectionLog(frozenset([LogEntry(0, 0, 0)])))
        with pytest.raises(CheatingAdversaryError):
            know.update(frozenset([(0, 0)]), InfectionLog(frozenset([LogEntry(0, 0, 0), LogEntry(0, 1, 2)])))

    def test_undisclosed_edge_detected(self):
        from tgd import InfectionLog, LogEntry

        know = self._knowledge([(0, 1)])
        with pytest.raises(CheatingAdversaryError):
            know.update(
                frozenset([(0, 0)]),
                InfectionLog(frozenset([LogEntry(0, 0, 0), LogEntry(0, 2, 1)])),
            )

    def test_tmax_one_resolves_without_rounds(self):
        know = self._knowledge([(0, 1), (1, 2)], tmax=1)
        assert know.resolved_labels((0, 1)) == [1]
        assert not know.unresolved
