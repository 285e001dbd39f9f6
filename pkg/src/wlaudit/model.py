"""Core graph, dataset, and partition types.

Everything here is immutable after construction and safe to share across
workers; all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DataError

GRAPH_LEVEL = "graph"
NODE_LEVEL = "node"


def canonical_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph with optional node labels/features.

    Edges are stored once per undirected pair, canonicalized as (u, v) with
    u < v. Self-loops and duplicate edges are rejected.
    """

    num_nodes: int
    edges: frozenset[tuple[int, int]]
    node_labels: Optional[tuple[int, ...]] = None
    node_features: Optional[tuple[bytes, ...]] = None
    feature_dim: Optional[int] = None
    graph_label: Optional[int] = None

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise DataError(f"self-loop on node {u}")
            if not (0 <= u < v < self.num_nodes):
                raise DataError(f"edge ({u}, {v}) out of range for {self.num_nodes} nodes")
        if self.node_labels is not None and len(self.node_labels) != self.num_nodes:
            raise DataError("node_labels length does not match num_nodes")
        if self.node_features is not None:
            if self.feature_dim is None:
                raise DataError("node_features present but feature_dim unset")
            if len(self.node_features) != self.num_nodes:
                raise DataError("node_features length does not match num_nodes")
            width = 8 * self.feature_dim
            for i, row in enumerate(self.node_features):
                if len(row) != width:
                    raise DataError(f"feature row {i} has wrong dimension")

    @classmethod
    def from_edges(
        cls,
        num_nodes: int,
        pairs: Iterable[tuple[int, int]],
        node_labels: Optional[Sequence[int]] = None,
        node_features: Optional[Sequence[Sequence[float]]] = None,
        graph_label: Optional[int] = None,
    ) -> "Graph":
        """Build a Graph from unordered edge pairs, rejecting duplicates."""
        seen = set()
        for u, v in pairs:
            if u == v:
                raise DataError(f"self-loop on node {u}")
            e = canonical_edge(u, v)
            if e in seen:
                raise DataError(f"duplicate edge ({u}, {v})")
            seen.add(e)
        features = None
        dim = None
        if node_features is not None:
            rows = [np.asarray(r, dtype=np.float64) for r in node_features]
            dims = {r.shape for r in rows}
            if len(dims) > 1 or (rows and rows[0].ndim != 1):
                raise DataError("feature rows have inconsistent dimensions")
            dim = int(rows[0].shape[0]) if rows else 0
            features = tuple(r.tobytes() for r in rows)
        return cls(
            num_nodes=num_nodes,
            edges=frozenset(seen),
            node_labels=tuple(node_labels) if node_labels is not None else None,
            node_features=features,
            feature_dim=dim,
            graph_label=graph_label,
        )

    @cached_property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.num_nodes, self.num_nodes), dtype=bool)
        for u, v in self.edges:
            a[u, v] = True
            a[v, u] = True
        return a

    def degree(self, node: int) -> int:
        return len(self.neighbors[node])

    def initial_color_keys(self) -> list:
        """Per-node keys whose equality defines iteration-0 colors.

        Feature vectors compare bitwise (no epsilon) so the initial coloring
        stays injective. Keys are tagged so label-, feature-, and unlabeled
        graphs never collide inside one dataset.
        """
        if self.node_labels is not None:
            return [("L", l) for l in self.node_labels]
        if self.node_features is not None:
            return [("F", row) for row in self.node_features]
        return [("U", 0)] * self.num_nodes

    def feature_rows(self) -> Optional[np.ndarray]:
        if self.node_features is None:
            return None
        if self.num_nodes == 0:
            return np.zeros((0, self.feature_dim or 0))
        return np.vstack([np.frombuffer(row, dtype=np.float64) for row in self.node_features])

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edges

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with node i renamed perm[i]."""
        inv = [0] * self.num_nodes
        for i, p in enumerate(perm):
            inv[p] = i
        labels = None
        if self.node_labels is not None:
            labels = tuple(self.node_labels[inv[i]] for i in range(self.num_nodes))
        features = None
        if self.node_features is not None:
            features = tuple(self.node_features[inv[i]] for i in range(self.num_nodes))
        return Graph(
            num_nodes=self.num_nodes,
            edges=frozenset(canonical_edge(perm[u], perm[v]) for u, v in self.edges),
            node_labels=labels,
            node_features=features,
            feature_dim=self.feature_dim,
            graph_label=self.graph_label,
        )


@dataclass(frozen=True)
class Dataset:
    """A collection of auditable instances: graphs, or the nodes of one graph."""

    level: str
    graphs: tuple[Graph, ...]
    instance_labels: Optional[tuple[int, ...]] = None
    groups: Optional[tuple[int, ...]] = None
    name: str = "dataset"

    def __post_init__(self):
        if self.level not in (GRAPH_LEVEL, NODE_LEVEL):
            raise DataError(f"unknown dataset level {self.level!r}")
        if self.level == NODE_LEVEL and len(self.graphs) != 1:
            raise DataError("node-level datasets hold exactly one graph")
        n = self.num_instances
        if self.instance_labels is not None:
            if len(self.instance_labels) != n:
                raise DataError("instance_labels length does not match instance count")
            _check_contiguous(self.instance_labels, "instance label")
        if self.groups is not None and len(self.groups) != n:
            raise DataError("groups length does not match instance count")

    @property
    def num_instances(self) -> int:
        if self.level == GRAPH_LEVEL:
            return len(self.graphs)
        return self.graphs[0].num_nodes


def _check_contiguous(values: Sequence[int], what: str) -> None:
    uniq = set(values)
    if uniq and uniq != set(range(len(uniq))):
        raise DataError(f"{what} ids must form a contiguous 0-based space, got {sorted(uniq)}")


@dataclass(frozen=True)
class Partition:
    """instance id -> class id, with class ids in first-occurrence order."""

    class_of: tuple[int, ...]
    num_classes: int
    class_sizes: tuple[int, ...]

    def __post_init__(self):
        if sum(self.class_sizes) != len(self.class_of):
            raise DataError("class_sizes must sum to instance count")
        if self.num_classes != len(self.class_sizes):
            raise DataError("num_classes disagrees with class_sizes")

    @classmethod
    def from_assignments(cls, values: Iterable) -> "Partition":
        """Group instances by equal values; class ids follow first occurrence."""
        ids: dict = {}
        class_of = []
        sizes: list[int] = []
        for v in values:
            c = ids.get(v)
            if c is None:
                c = len(ids)
                ids[v] = c
                sizes.append(0)
            class_of.append(c)
            sizes[c] += 1
        return cls(tuple(class_of), len(sizes), tuple(sizes))

    @property
    def singletons(self) -> int:
        return sum(1 for s in self.class_sizes if s == 1)

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for i, c in enumerate(self.class_of):
            out[c].append(i)
        return out

    def refines(self, coarser: "Partition") -> bool:
        """True if every class of self lies inside one class of `coarser`."""
        if len(self.class_of) != len(coarser.class_of):
            return False
        seen: dict[int, int] = {}
        for mine, theirs in zip(self.class_of, coarser.class_of):
            if mine in seen:
                if seen[mine] != theirs:
                    return False
            else:
                seen[mine] = theirs
        return True


def instance_count(ds: Dataset) -> int:
    """Number of auditable instances in the dataset."""
    return ds.num_instances


def label_partition(ds: Dataset) -> Partition:
    """Partition instances by task label."""
    if ds.instance_labels is None:
        raise DataError(f"dataset {ds.name!r} has no instance labels")
    return Partition.from_assignments(ds.instance_labels)


def partition_stats(p: Partition) -> tuple[int, int]:
    """(number of classes, number of singleton classes)."""
    return p.num_classes, p.singletons
