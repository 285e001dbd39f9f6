"""Benchmark partition statistics: equivalence-class tables, adjusted
mutual information, majority-vote accuracy bounds, and the adversarial
relabeling that realizes the refinement lookup bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DataError
from .exact import iso_partition, iso_partition_detailed, node_duplicate_partition
from .model import Dataset, Partition, label_partition, GRAPH_LEVEL
from .refine import wl_partition, wl_refine

AMI_NORMALIZATIONS = ("min", "geometric", "arithmetic", "max")


@dataclass(frozen=True)
class EquivalenceTable:
    """One benchmark's row of partition statistics.

    wl_classes[i] / wl_singletons[i] hold the statistics after i+1
    refinement iterations.
    """

    dataset_name: str
    instances: int
    avg_nodes_per_graph: float
    label_classes: Optional[int]
    label_singletons: Optional[int]
    iso_classes: int
    iso_singletons: int
    iso_method: str
    iso_heuristic_merges: int
    wl_classes: tuple[int, ...]
    wl_singletons: tuple[int, ...]


def equivalence_table(ds: Dataset, t_max: int = 3, node_cap: int = 512,
                      threads: int = 1, sortedcount_only: bool = False,
                      cap_fallback: bool = False) -> EquivalenceTable:
    """Compute label / isomorphism / refinement class statistics for a dataset."""
    if t_max < 1:
        raise DataError("t_max must be >= 1")
    history = wl_refine(ds, t_max=t_max)
    heuristic_merges = 0
    if ds.level == GRAPH_LEVEL:
        iso, heuristic_merges = iso_partition_detailed(
            ds, node_cap=node_cap, threads=threads, cap_fallback=cap_fallback)
        method = "exact-isomorphism"
        if heuristic_merges:
            method += " (+refinement-verdict fallback beyond node cap)"
        avg_nodes = (sum(g.num_nodes for g in ds.graphs) / len(ds.graphs)) if ds.graphs else 0.0
    else:
        iso = node_duplicate_partition(ds.graphs[0])
        method = "twin-duplicates (lower bound on orbit merging)"
        avg_nodes = float(ds.graphs[0].num_nodes)
    wl_parts = [wl_partition(history, ds, t, sortedcount_only) for t in range(1, t_max + 1)]
    for t, part in enumerate(wl_parts, start=1):
        if iso.num_classes < part.num_classes:
            raise AssertionError(
                f"soundness violated: {iso.num_classes} iso classes but "
                f"{part.num_classes} refinement classes at t={t}")
        if ds.level != GRAPH_LEVEL and not iso.refines(part):
            raise AssertionError("duplicate classes must refine refinement classes")
    labels = None
    if ds.instance_labels is not None:
        labels = label_partition(ds)
    return EquivalenceTable(
        dataset_name=ds.name,
        instances=ds.num_instances,
        avg_nodes_per_graph=avg_nodes,
        label_classes=labels.num_classes if labels else None,
        label_singletons=labels.singletons if labels else None,
        iso_classes=iso.num_classes,
        iso_singletons=iso.singletons,
        iso_method=method,
        iso_heuristic_merges=heuristic_merges,
        wl_classes=tuple(p.num_classes for p in wl_parts),
        wl_singletons=tuple(p.singletons for p in wl_parts),
    )


# ---------------------------------------------------------------------------
# adjusted mutual information
# ---------------------------------------------------------------------------

def _canonical(p: Partition) -> tuple[int, ...]:
    ids: dict[int, int] = {}
    out = []
    for c in p.class_of:
        out.append(ids.setdefault(c, len(ids)))
    return tuple(out)


def _contingency(p: Partition, q: Partition) -> dict[tuple[int, int], int]:
    cont: dict[tuple[int, int], int] = {}
    for a, b in zip(p.class_of, q.class_of):
        cont[(a, b)] = cont.get((a, b), 0) + 1
    return cont


def _entropy(sizes, n: int) -> float:
    return -sum((s / n) * math.log(s / n) for s in sizes if s > 0)


def _mutual_information(cont, a_sizes, b_sizes, n: int) -> float:
    mi = 0.0
    for (i, j), nij in cont.items():
        mi += (nij / n) * math.log(n * nij / (a_sizes[i] * b_sizes[j]))
    return mi


def expected_mutual_information(a_sizes, b_sizes, n: int) -> float:
    """E[MI] of two random partitions with these class sizes under the
    hypergeometric (fixed-margins permutation) model.

    Cells are grouped by unique (row size, column size) pairs, which keeps
    the sum cheap even for partitions with hundreds of classes.
    """
    lgam = [0.0] + [math.lgamma(x) for x in range(1, n + 2)]  # index 0 unused
    ua, ca = np.unique(np.asarray(a_sizes), return_counts=True)
    ub, cb = np.unique(np.asarray(b_sizes), return_counts=True)
    log_n = math.log(n)
    emi = 0.0
    for av, a_mult in zip(ua, ca):
        av = int(av)
        for bv, b_mult in zip(ub, cb):
            bv = int(bv)
            lo = max(1, av + bv - n)
            hi = min(av, bv)
            cell = 0.0
            for nij in range(lo, hi + 1):
                log_term = math.log(nij) + log_n - math.log(av) - math.log(bv)
                log_prob = (lgam[av + 1] + lgam[bv + 1]
                            + lgam[n - av + 1] + lgam[n - bv + 1]
                            - lgam[n + 1] - lgam[nij + 1]
                            - lgam[av - nij + 1] - lgam[bv - nij + 1]
                            - lgam[n - av - bv + nij + 1])
                cell += (nij / n) * log_term * math.exp(log_prob)
            emi += int(a_mult) * int(b_mult) * cell
    return emi


def _normalize_entropies(hp: float, hq: float, average: str) -> float:
    if average == "arithmetic":
        return (hp + hq) / 2.0
    if average == "min":
        return min(hp, hq)
    if average == "max":
        return max(hp, hq)
    if average == "geometric":
        return math.sqrt(hp * hq)
    raise DataError(f"unknown AMI normalization {average!r}; choose from {AMI_NORMALIZATIONS}")


def ami_detailed(p: Partition, q: Partition, average: str = "arithmetic") -> tuple[float, bool]:
    """(AMI value, degenerate flag). Degenerate cases are defined as 0."""
    if len(p.class_of) != len(q.class_of):
        raise DataError("partitions cover different instance sets")
    n = len(p.class_of)
    if n == 0:
        return 0.0, True
    if _canonical(p) == _canonical(q):
        if p.num_classes == 1:
            return 0.0, True  # both trivial: chance correction is 0/0
        return 1.0, False
    cont = _contingency(p, q)
    hp = _entropy(p.class_sizes, n)
    hq = _entropy(q.class_sizes, n)
    mi = _mutual_information(cont, p.class_sizes, q.class_sizes, n)
    emi = expected_mutual_information(p.class_sizes, q.class_sizes, n)
    denominator = _normalize_entropies(hp, hq, average) - emi
    if abs(denominator) < 1e-15:
        return 0.0, True
    return (mi - emi) / denominator, False


def ami(p: Partition, q: Partition, average: str = "arithmetic") -> float:
    """Adjusted mutual information between two partitions of one instance set."""
    value, _ = ami_detailed(p, q, average)
    return value


@dataclass(frozen=True)
class AmiMatrix:
    names: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]
    degenerate: tuple[tuple[bool, ...], ...]


def ami_report(ds: Dataset, t: int = 3, average: str = "arithmetic",
               node_cap: int = 512, threads: int = 1,
               cap_fallback: bool = False) -> AmiMatrix:
    """AMI matrix over the label, isomorphism, and iteration-t partitions."""
    history = wl_refine(ds, t_max=t)
    parts = {
        "labels": label_partition(ds),
        "isomorphism": (iso_partition(ds, node_cap=node_cap, threads=threads,
                                      cap_fallback=cap_fallback)
                        if ds.level == GRAPH_LEVEL
                        else node_duplicate_partition(ds.graphs[0])),
        f"wl{t}": wl_partition(history, ds, t),
    }
    names = tuple(parts)
    k = len(names)
    values = [[1.0] * k for _ in range(k)]
    flags = [[False] * k for _ in range(k)]
    for i in range(k):
        v, d = ami_detailed(parts[names[i]], parts[names[i]], average)
        values[i][i] = v
        flags[i][i] = d
        for j in range(i + 1, k):
            v, d = ami_detailed(parts[names[i]], parts[names[j]], average)
            values[i][j] = values[j][i] = v
            flags[i][j] = flags[j][i] = d
    return AmiMatrix(names,
                     tuple(tuple(row) for row in values),
                     tuple(tuple(row) for row in flags))


# ---------------------------------------------------------------------------
# lookup-classifier bound and adversarial relabeling
# ---------------------------------------------------------------------------

def majority_vote_accuracy(p: Partition, labels: Partition) -> float:
    """Accuracy (percent) of the best lookup classifier constant on p's classes.

    Evaluated on the full instance set: each class contributes the count of
    its most common label (ties cannot change the total).
    """
    if len(p.class_of) != len(labels.class_of):
        raise DataError("partition and labels cover different instance sets")
    n = len(p.class_of)
    if n == 0:
        return 100.0
    counts: dict[tuple[int, int], int] = {}
    for c, y in zip(p.class_of, labels.class_of):
        counts[(c, y)] = counts.get((c, y), 0) + 1
    best: dict[int, int] = {}
    for (c, _), v in counts.items():
        if v > best.get(c, 0):
            best[c] = v
    return 100.0 * sum(best.values()) / n


@dataclass(frozen=True)
class AdversarialRelabeling:
    """Labels forcing one-correct-per-class lookup accuracy.

    duplicate_classes lists classes that contain isomorphic members; for
    those the construction's premise (pairwise non-isomorphic members) does
    not hold and the labels split instances no function can separate.
    """

    labels: tuple[int, ...]
    duplicate_classes: tuple[int, ...]

    @property
    def num_labels(self) -> int:
        return max(self.labels) + 1 if self.labels else 0


def adversarial_relabel(ds: Dataset, p: Partition, node_cap: int = 512,
                        threads: int = 1,
                        cap_fallback: bool = False) -> AdversarialRelabeling:
    """Assign distinct labels within every class of p (by instance order)."""
    if len(p.class_of) != ds.num_instances:
        raise DataError("partition does not cover the dataset's instances")
    if ds.level == GRAPH_LEVEL:
        iso = iso_partition(ds, node_cap=node_cap, threads=threads,
                            cap_fallback=cap_fallback)
    else:
        iso = node_duplicate_partition(ds.graphs[0])
    labels = [0] * ds.num_instances
    flagged = []
    for class_id, members in enumerate(p.members()):
        for rank, inst in enumerate(members):
            labels[inst] = rank
        iso_ids = {iso.class_of[inst] for inst in members}
        if len(iso_ids) < len(members):
            flagged.append(class_id)
    return AdversarialRelabeling(tuple(labels), tuple(flagged))
