"""Identifiability and perturbation-sensitivity audits.

Identifiability counts instances that refinement isolates into singleton
classes after t iterations, overall and per group. Sensitivity measures
how often a single-edge edit changes a graph's refinement signature, and,
when embeddings for the edited variants are supplied, the empirical L1
representation distance over those neighbor pairs (a lower bound on the
true sensitivity, which is a max over the full neighbor set).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DataError
from .model import Dataset, Graph, canonical_edge
from .refine import refine_graphs, wl_partition, wl_refine, wl_signature


@dataclass(frozen=True)
class GroupIdentifiability:
    group: str
    count: int
    identifiable: int

    @property
    def fraction(self) -> float:
        return self.identifiable / self.count if self.count else 0.0


@dataclass(frozen=True)
class IdentifiabilityReport:
    dataset_name: str
    t: int
    overall: GroupIdentifiability
    by_group: tuple[GroupIdentifiability, ...]


def _with_group_colors(ds: Dataset) -> Dataset:
    """Fold the group id into each node's initial color (node-level only)."""
    if ds.level != "node":
        raise DataError("group-seeded colors only apply to node-level datasets")
    g = ds.graphs[0]
    keys = list(zip(g.initial_color_keys(), ds.groups))
    recode = {k: i for i, k in enumerate(sorted(set(keys)))}
    relabeled = Graph(
        num_nodes=g.num_nodes,
        edges=g.edges,
        node_labels=tuple(recode[k] for k in keys),
        graph_label=g.graph_label,
    )
    return Dataset(level=ds.level, graphs=(relabeled,),
                   instance_labels=ds.instance_labels, groups=ds.groups,
                   name=ds.name)


def identifiability(ds: Dataset, t: int = 3,
                    group_names: Optional[dict[int, str]] = None,
                    include_group_color: bool = False) -> IdentifiabilityReport:
    """Singleton rates of the iteration-t refinement partition, per group.

    Group membership never seeds the refinement colors unless
    include_group_color is set.
    """
    if include_group_color:
        if ds.groups is None:
            raise DataError("include_group_color requires a group column")
        ds = _with_group_colors(ds)
    history = wl_refine(ds, t_max=t)
    part = wl_partition(history, ds, t)
    singleton = [part.class_sizes[c] == 1 for c in part.class_of]
    overall = GroupIdentifiability("overall", ds.num_instances, sum(singleton))
    by_group: list[GroupIdentifiability] = []
    if ds.groups is not None:
        names = group_names or {}
        for gid in sorted(set(ds.groups)):
            members = [i for i, g in enumerate(ds.groups) if g == gid]
            by_group.append(GroupIdentifiability(
                group=names.get(gid, f"group{gid}"),
                count=len(members),
                identifiable=sum(singleton[i] for i in members),
            ))
    elif group_names:
        raise DataError("group names supplied but dataset has no group column")
    return IdentifiabilityReport(ds.name, t, overall, tuple(by_group))


@dataclass(frozen=True)
class EdgeEdit:
    kind: str  # "delete" | "add"
    u: int
    v: int
    graph: Graph


def neighbor_pairs(g: Graph, budget: Optional[int] = None, seed: int = 0) -> list[EdgeEdit]:
    """Single-edge-edit variants of g: all deletions, then all additions.

    A budget below the total draws a seeded uniform sample, kept in
    enumeration order.
    """
    edits: list[tuple[str, int, int]] = []
    for u, v in sorted(g.edges):
        edits.append(("delete", u, v))
    for u in range(g.num_nodes):
        for v in range(u + 1, g.num_nodes):
            if (u, v) not in g.edges:
                edits.append(("add", u, v))
    if budget is not None:
        if budget > len(edits):
            raise DataError(f"budget {budget} exceeds {len(edits)} possible edits")
        picked = sorted(random.Random(seed).sample(range(len(edits)), budget))
        edits = [edits[i] for i in picked]
    out = []
    for kind, u, v in edits:
        if kind == "delete":
            edges = g.edges - {(u, v)}
        else:
            edges = g.edges | {canonical_edge(u, v)}
        out.append(EdgeEdit(kind, u, v, Graph(
            num_nodes=g.num_nodes,
            edges=frozenset(edges),
            node_labels=g.node_labels,
            node_features=g.node_features,
            feature_dim=g.feature_dim,
            graph_label=g.graph_label,
        )))
    return out


@dataclass(frozen=True)
class SensitivityReport:
    """Per-edit refinement changes plus optional embedding L1 statistics.

    The L1 figures are an empirical lower bound on the max-over-neighbors
    sensitivity: only the sampled edits are observed.
    """

    t: int
    seed: int
    edits: tuple[tuple[str, int, int], ...]
    signature_changed: tuple[bool, ...]
    changed_fraction: float
    neighbor_signatures: tuple[tuple[tuple[int, int], ...], ...]
    l1_distances: Optional[tuple[Optional[float], ...]]
    max_l1: Optional[float]
    missing_embeddings: tuple[int, ...]


def wl_sensitivity(g: Graph, t: int = 3, budget: Optional[int] = None, seed: int = 0,
                   embeddings: Optional[dict[int, np.ndarray]] = None) -> SensitivityReport:
    """Fraction of single-edge edits that change the refinement signature.

    The original and every edited variant are refined jointly so their
    signatures share one color space. With an embeddings table (key 0 =
    original, key i = i-th edit, 1-based) the report adds L1 distances.
    """
    edits = neighbor_pairs(g, budget=budget, seed=seed)
    history = refine_graphs([g] + [e.graph for e in edits], t_max=t)
    base = wl_signature(history, 0, t).color_histogram
    neighbor_sigs = []
    changed = []
    for idx in range(len(edits)):
        sig = wl_signature(history, idx + 1, t).color_histogram
        neighbor_sigs.append(sig)
        changed.append(sig != base)
    l1: Optional[list[Optional[float]]] = None
    max_l1 = None
    missing: list[int] = []
    if embeddings is not None:
        if 0 not in embeddings:
            raise DataError("embeddings table is missing the original instance (id 0)")
        origin = np.asarray(embeddings[0], dtype=np.float64)
        l1 = []
        for idx in range(1, len(edits) + 1):
            if idx not in embeddings:
                missing.append(idx)
                l1.append(None)
                continue
            d = float(np.abs(np.asarray(embeddings[idx], dtype=np.float64) - origin).sum())
            l1.append(d)
            if max_l1 is None or d > max_l1:
                max_l1 = d
    return SensitivityReport(
        t=t,
        seed=seed,
        edits=tuple((e.kind, e.u, e.v) for e in edits),
        signature_changed=tuple(changed),
        changed_fraction=(sum(changed) / len(changed)) if changed else 0.0,
        neighbor_signatures=tuple(neighbor_sigs),
        l1_distances=tuple(l1) if l1 is not None else None,
        max_l1=max_l1,
        missing_embeddings=tuple(missing),
    )
