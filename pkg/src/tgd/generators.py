"""Synthetic graph families: temporal Erdős–Rényi graphs and the two
hand-built families used to exercise the lower-bound adversaries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import TemporalGraph, Variant


@dataclass(frozen=True)
class ErtParams:
    """Temporal Erdős–Rényi parameters: edge probability p, uniform labels."""

    n: int
    p: float
    tmax: int
    rng_seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError("p must be in [0,1]")
        if self.tmax < 1:
            raise ValueError("tmax must be positive")


def generate_ert(params: ErtParams) -> TemporalGraph:
    """Each unordered pair kept with probability p, label uniform on [1, tmax]."""
    rng = random.Random(params.rng_seed)
    edges = []
    for u in range(params.n):
        for v in range(u + 1, params.n):
            if rng.random() < params.p:
                edges.append((u, v, rng.randint(1, params.tmax)))
    return TemporalGraph(params.n, edges, params.tmax, Variant.SIMPLE)


@dataclass(frozen=True)
class Thm52Instance:
    """Path-plus-two-hubs skeleton with the odd-indexed path edges left free.

    Nodes 0..n-3 form a path; even-indexed path edges carry tmax.  Node n-2
    links to every path node at tmax-2, node n-1 at tmax, and the two hubs
    share an edge at tmax-1.
    """

    n: int
    tmax: int
    fixed: tuple[tuple[int, int, int], ...]
    free: tuple[tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.fixed) + len(self.free)

    def round_lower_bound(self, delta: int, k: int) -> int:
        return self.n * (self.tmax - 3) // (2 * delta * k)

    def graph(self, completion: dict[tuple[int, int], int] | int = 1) -> TemporalGraph:
        """Materialize with free-edge labels from ``completion`` (map or constant)."""
        edges = list(self.fixed)
        for u, v in self.free:
            label = completion if isinstance(completion, int) else completion[(u, v)]
            edges.append((u, v, label))
        return TemporalGraph(self.n, edges, self.tmax, Variant.SIMPLE)


def build_thm52_family(n: int, tmax: int) -> Thm52Instance:
    if n < 6 or n % 2 != 0:
        raise ValueError("need even n >= 6")
    if tmax < 4:
        raise ValueError("need tmax >= 4")
    fixed: list[tuple[int, int, int]] = []
    free: list[tuple[int, int]] = []
    # path edge i joins nodes i-1 and i (1-based edge index over n-2 path nodes)
    for i in range(1, n - 2):
        if i % 2 == 0:
            fixed.append((i - 1, i, tmax))
        else:
            free.append((i - 1, i))
    hub_low, hub_high = n - 2, n - 1
    for j in range(n - 2):
        fixed.append((j, hub_low, tmax - 2))
    fixed.append((hub_low, hub_high, tmax - 1))
    for j in range(n - 2):
        fixed.append((j, hub_high, tmax))
    return Thm52Instance(n=n, tmax=tmax, fixed=tuple(fixed), free=tuple(free))


def hamiltonian_path_decomposition(size: int) -> list[list[int]]:
    """Zigzag decomposition of the complete graph on an even number of nodes
    into size/2 edge-disjoint Hamiltonian paths (path i = path 0 rotated by i)."""
    if size < 2 or size % 2 != 0:
        raise ValueError("need an even node count >= 2")
    half = size // 2
    paths = []
    for i in range(half):
        seq = [i]
        for step in range(1, size):
            offset = (step + 1) // 2 if step % 2 == 1 else -(step // 2)
            seq.append((i + offset) % size)
        paths.append(seq)
    return paths


@dataclass(frozen=True)
class OmegaMInstance:
    """The witness-complexity family: four node groups L, R, B, C with labels
    arranged in per-group phases of width delta = 4x+1 and tmax = x*delta.

    ``paths`` are node-id sequences of the Hamiltonian path decomposition of
    the complete graph on R; path i starts at the (i+1)-th even R node.
    ``designated_phase`` records which phase window each pair must fall into.
    """

    x: int
    delta: int
    tmax: int
    graph: TemporalGraph
    L: tuple[int, ...]
    R: tuple[int, ...]
    R2: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    designated_phase: dict[tuple[int, int], int]


def build_omega_m_family(x: int) -> OmegaMInstance:
    if x < 1:
        raise ValueError("need x >= 1")
    delta = 4 * x + 1
    tmax = x * delta
    L = tuple(range(0, x))
    R = tuple(range(x, 3 * x))  # R[j-1] is the node named r_j, j in [1, 2x]
    B = tuple(range(3 * x, 4 * x))
    C = tuple(range(4 * x, 5 * x))
    R2 = tuple(R[j - 1] for j in range(2, 2 * x + 1, 2))

    def slot_to_node(slot: int) -> int:
        # first x slots are the even-indexed R nodes so path i starts at r_{2(i+1)}
        if slot < x:
            return R[2 * slot + 1]
        return R[2 * (slot - x)]

    raw_paths = hamiltonian_path_decomposition(2 * x)
    paths = tuple(tuple(slot_to_node(s) for s in seq) for seq in raw_paths)

    edges: list[tuple[int, int, int]] = []
    phase: dict[tuple[int, int], int] = {}

    def add(u: int, v: int, label: int, ph: int) -> None:
        pair = (u, v) if u < v else (v, u)
        edges.append((u, v, label))
        phase[pair] = ph

    for i, path in enumerate(paths):
        rank = 0
        for node in path:
            if node in R2:
                add(L[i], node, i * delta + 4 * rank + 1, i)
                rank += 1
        for j in range(1, 2 * x):  # 1-based edge position along the path
            add(path[j - 1], path[j], i * delta + 2 * j + 1, i)
        for s, node in enumerate(path):  # 0-based node position along the path
            add(B[i], node, i * delta + 2 * s + 2, i)
    for i in range(x):
        for j in range(i + 1, x):
            add(B[i], B[j], (i + 1) * delta - 2, i)
        add(B[i], C[i], (i + 1) * delta - 1, i)
        for j in range(i):
            add(B[i], C[j], (i + 1) * delta - 2, i)
        for r in R:
            add(C[i], r, (i + 1) * delta, i + 1)
        for j in range(x):
            add(L[i], B[j], (j + 1) * delta, j + 1)

    graph = TemporalGraph(5 * x, edges, tmax, Variant.SIMPLE)
    return OmegaMInstance(
        x=x,
        delta=delta,
        tmax=tmax,
        graph=graph,
        L=L,
        R=R,
        R2=R2,
        B=B,
        C=C,
        paths=paths,
        designated_phase=phase,
    )


def phases(graph: TemporalGraph, delta: int) -> dict[int, set[int]]:
    """Bucket record indices by label interval [delta*i, delta*(i+1)-1]."""
    if delta < 1:
        raise ValueError("delta must be positive")
    out: dict[int, set[int]] = {}
    for idx, rec in enumerate(graph.records):
        for label in rec.labels:
            out.setdefault(label // delta, set()).add(idx)
    return out
