"""Temporal graph data model and the delta-edge connectivity structure.

A temporal graph is a static undirected graph plus a labeling that assigns
each edge the time steps at which it exists.  Three variants are supported:

* ``SIMPLE``    -- every edge record has exactly one label,
* ``MULTILABEL``-- an edge record may carry a set of labels,
* ``MULTIEDGE`` -- parallel records between the same endpoints, one label
  each, never sharing a label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence


class Variant(Enum):
    SIMPLE = "simple"
    MULTILABEL = "multilabel"
    MULTIEDGE = "multiedge"


@dataclass(frozen=True)
class EdgeRecord:
    """One edge record: canonical endpoint pair plus its label set."""

    u: int
    v: int
    labels: frozenset[int]

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)

    @property
    def label(self) -> int:
        """The unique label of a single-label record."""
        if len(self.labels) != 1:
            raise ValueError(f"record {self.pair} has {len(self.labels)} labels")
        return next(iter(self.labels))

    def other(self, node: int) -> int:
        if node == self.u:
            return self.v
        if node == self.v:
            return self.u
        raise ValueError(f"{node} is not an endpoint of {self.pair}")


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class TemporalGraph:
    """Immutable temporal graph over nodes ``0..n-1`` with lifetime ``tmax``.

    Records are canonicalized (``u < v``) and sorted, so structurally equal
    graphs compare equal and serialize identically.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int, int | Iterable[int]]],
        tmax: int,
        variant: Variant = Variant.SIMPLE,
    ):
        if n < 1:
            raise ValueError("node count must be positive")
        if tmax < 1:
            raise ValueError("tmax must be positive")
        records = []
        for u, v, labels in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside node range [0,{n})")
            labelset = frozenset([labels]) if isinstance(labels, int) else frozenset(labels)
            if not labelset:
                raise ValueError(f"edge ({u},{v}) has no labels")
            for t in labelset:
                if not (1 <= t <= tmax):
                    raise ValueError(f"label {t} on edge ({u},{v}) outside [1,{tmax}]")
            cu, cv = _canon(u, v)
            records.append(EdgeRecord(cu, cv, labelset))
        records.sort(key=lambda r: (r.u, r.v, sorted(r.labels)))

        seen_pairs: dict[tuple[int, int], set[int]] = {}
        for rec in records:
            if variant is not Variant.MULTIEDGE and rec.pair in seen_pairs:
                raise ValueError(f"duplicate edge {rec.pair} in {variant.value} graph")
            if variant is not Variant.MULTILABEL and len(rec.labels) != 1:
                raise ValueError(f"edge {rec.pair} needs exactly one label in {variant.value} graph")
            used = seen_pairs.setdefault(rec.pair, set())
            if used & rec.labels:
                raise ValueError(f"parallel records on {rec.pair} share a label")
            used |= rec.labels

        self.n = n
        self.tmax = tmax
        self.variant = variant
        self.records: tuple[EdgeRecord, ...] = tuple(records)
        self._adjacency: dict[int, list[int]] = {}
        for idx, rec in enumerate(self.records):
            self._adjacency.setdefault(rec.u, []).append(idx)
            self._adjacency.setdefault(rec.v, []).append(idx)

    @property
    def m(self) -> int:
        """Number of edge records."""
        return len(self.records)

    def incident(self, node: int) -> list[int]:
        """Indices of records incident to ``node``."""
        return self._adjacency.get(node, [])

    def pairs(self) -> set[tuple[int, int]]:
        return {rec.pair for rec in self.records}

    def labels_of_pair(self, u: int, v: int) -> list[int]:
        """All labels present between ``u`` and ``v``, sorted, across records."""
        pair = _canon(u, v)
        out: list[int] = []
        for rec in self.records:
            if rec.pair == pair:
                out.extend(rec.labels)
        return sorted(out)

    def label_multiset(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {}
        for rec in self.records:
            out.setdefault(rec.pair, []).extend(rec.labels)
        return {pair: tuple(sorted(ls)) for pair, ls in out.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TemporalGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.tmax == other.tmax
            and self.variant == other.variant
            and self.label_multiset() == other.label_multiset()
        )

    def __hash__(self):
        return hash((self.n, self.tmax, self.variant, tuple(sorted(self.label_multiset().items()))))

    def __repr__(self):
        return f"TemporalGraph(n={self.n}, m={self.m}, tmax={self.tmax}, {self.variant.value})"


@dataclass
class DeltaEccPartition:
    """Partition of temporal edge instances into delta-edge connected components.

    An *instance* is a ``(record index, label)`` pair; for single-label
    variants this is one instance per record.  Two instances are linked when
    their records share an endpoint (or are the same record) and their labels
    differ by at most delta; components are the transitive closure.
    """

    component_id: dict[tuple[int, int], int]
    component_count: int
    sizes: dict[int, int] = field(default_factory=dict)

    def component_of_record(self, record_idx: int) -> int:
        """Component of a single-label record."""
        for (idx, _label), comp in self.component_id.items():
            if idx == record_idx:
                return comp
        raise KeyError(record_idx)

    def mean_size(self) -> float:
        if not self.sizes:
            return 0.0
        return sum(self.sizes.values()) / len(self.sizes)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


def delta_ecc(graph: TemporalGraph, delta: int) -> DeltaEccPartition:
    """Delta-edge connected components of ``graph``.

    Within the sorted list of instances at each node, consecutive labels with
    gap <= delta are unioned; this generates the full pairwise relation
    because labels between two close labels are themselves close.
    """
    if delta < 1:
        raise ValueError("delta must be positive")
    instances: list[tuple[int, int]] = []
    for idx, rec in enumerate(graph.records):
        for label in rec.labels:
            instances.append((idx, label))
    instances.sort()
    index_of = {inst: i for i, inst in enumerate(instances)}
    uf = _UnionFind(len(instances))

    by_node: dict[int, list[tuple[int, int, int]]] = {}
    for idx, rec in enumerate(graph.records):
        for label in rec.labels:
            by_node.setdefault(rec.u, []).append((label, idx, index_of[(idx, label)]))
            by_node.setdefault(rec.v, []).append((label, idx, index_of[(idx, label)]))
    for entries in by_node.values():
        entries.sort()
        for (l1, _, i1), (l2, _, i2) in zip(entries, entries[1:]):
            if l2 - l1 <= delta:
                uf.union(i1, i2)

    roots: dict[int, int] = {}
    component_id: dict[tuple[int, int], int] = {}
    sizes: dict[int, int] = {}
    for i, inst in enumerate(instances):
        root = uf.find(i)
        comp = roots.setdefault(root, len(roots))
        component_id[inst] = comp
        sizes[comp] = sizes.get(comp, 0) + 1
    return DeltaEccPartition(component_id=component_id, component_count=len(roots), sizes=sizes)


def is_temporal_path(graph: TemporalGraph, edge_sequence: Sequence[tuple[int, int, int]]) -> bool:
    """True iff the ``(u, v, label)`` sequence is a static path with strictly increasing labels."""
    chosen = []
    for u, v, label in edge_sequence:
        pair = _canon(u, v)
        if label not in graph.labels_of_pair(*pair):
            raise ValueError(f"no edge {pair} with label {label} in graph")
        chosen.append((pair, label))
    if not chosen:
        return True
    for (_, l1), (_, l2) in zip(chosen, chosen[1:]):
        if l2 <= l1:
            return False
    if len(chosen) == 1:
        return True
    # orient the walk: the node shared by the first two edges is the first pivot
    (a, b), _ = chosen[0]
    (c, d), _ = chosen[1]
    shared = {a, b} & {c, d}
    if not shared:
        return False
    pivot = min(shared)
    start = a if pivot == b else b
    visited = {start, pivot}
    current = pivot
    for (u, v), _ in chosen[1:]:
        if current == u:
            nxt = v
        elif current == v:
            nxt = u
        else:
            return False
        if nxt in visited:
            return False
        visited.add(nxt)
        current = nxt
    return True


def to_text(graph: TemporalGraph) -> str:
    """Line-based text form: header ``n m tmax variant``, then ``u v label[,label...]``."""
    lines = [f"{graph.n} {graph.m} {graph.tmax} {graph.variant.value}"]
    for rec in graph.records:
        lines.append(f"{rec.u} {rec.v} {','.join(str(t) for t in sorted(rec.labels))}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> TemporalGraph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph text")
    head = lines[0].split()
    if len(head) != 4:
        raise ValueError(f"bad header {lines[0]!r}: want 'n m tmax variant'")
    n, m, tmax = int(head[0]), int(head[1]), int(head[2])
    variant = Variant(head[3])
    if len(lines) - 1 != m:
        raise ValueError(f"header promises {m} records, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"bad edge line {ln!r}")
        labels = [int(x) for x in parts[2].split(",")]
        edges.append((int(parts[0]), int(parts[1]), labels))
    return TemporalGraph(n, edges, tmax, variant)
