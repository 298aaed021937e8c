"""Command-line interface: graph generation, dataset ingestion, sweeps,
analysis, and single interactive games.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import datasets, experiments
from .adversaries import (
    HonestAdversary,
    LazyMultilabelAdversary,
    LazyThm52Adversary,
    LazyUnknownStaticAdversary,
)
from .discoverers import BruteForce, DiscoveryFollow, Follow
from .game import Feedback, GameConfig, Goal, Knowledge, play
from .generators import ErtParams, build_omega_m_family, build_thm52_family, generate_ert
from .graph import Variant, from_text, to_text


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.family == "ert":
        graph = generate_ert(ErtParams(n=args.n, p=args.p, tmax=args.tmax, rng_seed=args.seed))
    elif args.family == "thm52":
        graph = build_thm52_family(args.n, args.tmax).graph(args.free_label)
    else:
        graph = build_omega_m_family(args.x).graph
    _write_out(to_text(graph), args.out)
    return 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    if args.bucketing == "raw":
        bucketing: datasets.Bucketing = datasets.Raw()
    elif args.bucketing.startswith("fixed:"):
        bucketing = datasets.FixedWidth(float(args.bucketing.split(":", 1)[1]))
    else:
        raise SystemExit(f"unknown bucketing {args.bucketing!r}: want raw or fixed:<w>")
    reduction = datasets.Reduction(args.reduction)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    networks = datasets.ingest(args.input, bucketing, reduction)
    for net in networks:
        (out_dir / f"{net.network_id}.graph").write_text(to_text(net.graph))
        (out_dir / f"{net.network_id}.ids").write_text(net.id_map_lines())
    print(f"ingested {len(networks)} network(s) into {out_dir}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    if args.config:
        config = experiments.parse_sweep_config(Path(args.config).read_text())
    else:
        config = experiments.SweepConfig()
    records = experiments.run_sweep(config)
    experiments.write_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    records = experiments.read_csv(args.infile)
    report = experiments.analyze_report(records)
    _write_out(report, args.report)
    return 0


def _cmd_play(args: argparse.Namespace) -> int:
    feedback = Feedback(args.feedback)
    knowledge = Knowledge(args.knowledge)
    variant = Variant(args.variant)

    if args.adversary == "honest":
        if not args.graph:
            raise SystemExit("--graph is required for the honest adversary")
        hidden = from_text(Path(args.graph).read_text())
        n, tmax, variant = hidden.n, hidden.tmax, hidden.variant
        adversary = HonestAdversary(hidden, args.delta)
    elif args.adversary == "thm52":
        n, tmax = args.n, args.tmax
        adversary = LazyThm52Adversary(n, tmax, args.delta, args.k)
    elif args.adversary == "unknown-static":
        n, tmax = args.n, args.tmax
        knowledge = Knowledge.NODES_ONLY
        adversary = LazyUnknownStaticAdversary(n, args.m, tmax, args.delta, args.k)
    elif args.adversary == "multilabel":
        n, tmax = args.n, args.tmax
        variant = Variant.MULTILABEL
        adversary = LazyMultilabelAdversary(n, args.m, tmax, args.delta, args.k)
    else:
        raise SystemExit(f"unknown adversary {args.adversary!r}")
    if n is None or tmax is None:
        raise SystemExit("this adversary needs --n and --tmax")

    goal = Goal.IPZ if args.discoverer == "follow" else Goal.FULL_DISCOVERY
    if args.discoverer == "brute-force":
        discoverer = BruteForce()
    elif args.discoverer == "follow":
        discoverer = Follow()
    elif args.discoverer == "discovery-follow":
        discoverer = DiscoveryFollow(skip_redundant=args.skip_redundant)
    else:
        raise SystemExit(f"unknown discoverer {args.discoverer!r}")

    config = GameConfig(
        n=n,
        tmax=tmax,
        delta=args.delta,
        k=args.k,
        feedback=feedback,
        knowledge=knowledge,
        variant=variant,
        goal=goal,
        round_budget=args.budget,
    )
    outcome, transcript = play(config, discoverer, adversary)
    print(f"winner: {outcome.winner.value}")
    print(f"rounds: {outcome.rounds_used}")
    know = getattr(discoverer, "knowledge", None)
    if know is not None:
        c = know.counters
        print(
            f"phases: discovery={c.rounds_discovery} exploration={c.rounds_exploration} "
            f"skipped={c.rounds_skipped} sweeps={c.sweeps}"
        )
    bound = getattr(adversary, "round_lower_bound", None)
    if bound is not None:
        print(f"adversary round lower bound: {bound}")
    if args.transcript:
        Path(args.transcript).write_text(transcript.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tgd", description="temporal graph discovery toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit a synthetic graph in the text format")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    g_ert = gen_sub.add_parser("ert", help="temporal Erdős–Rényi graph")
    g_ert.add_argument("--n", type=int, required=True)
    g_ert.add_argument("--p", type=float, required=True)
    g_ert.add_argument("--tmax", type=int, required=True)
    g_ert.add_argument("--seed", type=int, default=0)
    g_ert.add_argument("--out", default=None)
    g_thm = gen_sub.add_parser("thm52", help="path-plus-two-hubs lower-bound family")
    g_thm.add_argument("--n", type=int, required=True)
    g_thm.add_argument("--tmax", type=int, required=True)
    g_thm.add_argument("--free-label", type=int, default=1, help="label for the free edges")
    g_thm.add_argument("--out", default=None)
    g_om = gen_sub.add_parser("omega-m", help="witness-complexity family")
    g_om.add_argument("--x", type=int, required=True)
    g_om.add_argument("--out", default=None)
    gen.set_defaults(func=_cmd_generate)

    ing = sub.add_parser("ingest", help="convert interaction data into temporal graphs")
    ing.add_argument("--input", required=True)
    ing.add_argument("--bucketing", default="raw", help="raw or fixed:<width>")
    ing.add_argument("--reduction", choices=["first", "multi"], default="first")
    ing.add_argument("--out", required=True, help="output directory")
    ing.set_defaults(func=_cmd_ingest)

    sw = sub.add_parser("sweep", help="run the experiment grid")
    sw.add_argument("--config", default=None, help="flat key=value config file")
    sw.add_argument("--out", required=True, help="CSV output path")
    sw.set_defaults(func=_cmd_sweep)

    an = sub.add_parser("analyze", help="fit and threshold analysis of a sweep CSV")
    an.add_argument("--in", dest="infile", required=True)
    an.add_argument("--report", default=None, help="report path (default stdout)")
    an.set_defaults(func=_cmd_analyze)

    pl = sub.add_parser("play", help="run a single game")
    pl.add_argument("--graph", default=None, help="hidden graph file (honest adversary)")
    pl.add_argument("--discoverer", required=True, choices=["brute-force", "follow", "discovery-follow"])
    pl.add_argument("--adversary", required=True, choices=["honest", "thm52", "unknown-static", "multilabel"])
    pl.add_argument("--feedback", choices=["full", "times"], default="full")
    pl.add_argument("--knowledge", choices=["static", "nodes"], default="static")
    pl.add_argument("--variant", choices=["simple", "multilabel", "multiedge"], default="simple")
    pl.add_argument("--k", type=int, default=1)
    pl.add_argument("--delta", type=int, required=True)
    pl.add_argument("--n", type=int, default=None)
    pl.add_argument("--m", type=int, default=None)
    pl.add_argument("--tmax", type=int, default=None)
    pl.add_argument("--budget", type=int, default=None, help="round budget (default: unlimited)")
    pl.add_argument("--skip-redundant", action="store_true")
    pl.add_argument("--transcript", default=None, help="write the transcript JSON here")
    pl.set_defaults(func=_cmd_play)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
