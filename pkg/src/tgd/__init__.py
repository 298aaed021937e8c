"""Temporal graph discovery: infection games, discovery strategies,
adaptive adversaries, graph families, and an experiment harness."""

from .graph import (
    DeltaEccPartition,
    EdgeRecord,
    TemporalGraph,
    Variant,
    delta_ecc,
    from_text,
    is_temporal_path,
    to_text,
)
from .infection import (
    InfectionLog,
    LogEntry,
    SeedSet,
    TiePolicy,
    Timetable,
    simulate,
    timetable_of,
    verify_log_consistency,
)
from .game import (
    Feedback,
    GameConfig,
    GameOutcome,
    GameView,
    Goal,
    Knowledge,
    Transcript,
    Winner,
    adjudicate,
    has_ipz,
    play,
)
from .discoverers import (
    BruteForce,
    DiscoveryFollow,
    Follow,
    KnowledgeState,
    brute_force_rounds,
    deduce_labels,
)
from .adversaries import (
    HonestAdversary,
    LazyMultilabelAdversary,
    LazyThm52Adversary,
    LazyUnknownStaticAdversary,
    PotentialTrace,
    per_edge_witness_schedule,
    potential,
    witness_verify,
)
from .generators import (
    ErtParams,
    OmegaMInstance,
    Thm52Instance,
    build_omega_m_family,
    build_thm52_family,
    generate_ert,
    hamiltonian_path_decomposition,
    phases,
)

__all__ = [name for name in dir() if not name.startswith("_")]
