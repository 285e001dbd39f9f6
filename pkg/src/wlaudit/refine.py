"""Color refinement over a dataset's disjoint union.

Colors are recoded canonically each iteration: unique signatures
(old color, sorted neighbor-color multiset) are sorted lexicographically
and given sequential ids. The recode is injective by construction, so the
"hash" can never collide, and runs are bit-identical across platforms and
worker counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DataError
from .model import Dataset, Graph, Partition, NODE_LEVEL


@dataclass(frozen=True)
class WlSignature:
    """Color histogram of one graph at one iteration, plus its SortedCount."""

    color_histogram: tuple[tuple[int, int], ...]  # (color id, count), sorted by color
    sorted_counts: tuple[int, ...]

    def __post_init__(self):
        counts = sorted(c for _, c in self.color_histogram)
        if counts != list(self.sorted_counts):
            raise DataError("sorted_counts must be the sorted histogram counts")


@dataclass(frozen=True)
class ColoringHistory:
    """Per-iteration node colors for a dataset, globally consistent.

    colors[t] holds the color id of every node in the disjoint union at
    iteration t; graph g owns the slice offsets[g]:offsets[g+1].
    converged_at is the first iteration whose partition equals the next
    one, or None if convergence was not reached within the recorded range.
    """

    scope: str  # "single-graph" | "dataset-global"
    colors: tuple[np.ndarray, ...]
    num_colors: tuple[int, ...]
    offsets: np.ndarray
    converged_at: Optional[int]

    @property
    def iterations(self) -> int:
        """Largest recorded iteration index."""
        return len(self.colors) - 1

    @property
    def num_graphs(self) -> int:
        return len(self.offsets) - 1

    def graph_colors(self, graph: int, t: int) -> np.ndarray:
        if not (0 <= graph < self.num_graphs):
            raise DataError(f"unknown graph id {graph}")
        t = self.resolve_iteration(t)
        return self.colors[t][self.offsets[graph]:self.offsets[graph + 1]]

    def resolve_iteration(self, t: Optional[int]) -> int:
        if t is None:
            return self.iterations
        if not (0 <= t <= self.iterations):
            raise DataError(f"iteration {t} not recorded (history holds 0..{self.iterations})")
        return t


def _initial_colors(graphs: Sequence[Graph]) -> np.ndarray:
    keys = []
    for g in graphs:
        keys.extend(g.initial_color_keys())
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return np.array([order[k] for k in keys], dtype=np.int64)


def _union_csr(graphs: Sequence[Graph]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """CSR adjacency of the disjoint union, plus per-graph node offsets."""
    offsets = np.zeros(len(graphs) + 1, dtype=np.int64)
    for i, g in enumerate(graphs):
        offsets[i + 1] = offsets[i] + g.num_nodes
    total = int(offsets[-1])
    degrees = np.zeros(total, dtype=np.int64)
    srcs = []
    dsts = []
    for i, g in enumerate(graphs):
        base = offsets[i]
        for u, v in g.edges:
            srcs.append(base + u)
            dsts.append(base + v)
            srcs.append(base + v)
            dsts.append(base + u)
    src = np.array(srcs, dtype=np.int64)
    dst = np.array(dsts, dtype=np.int64)
    if len(src):
        np.add.at(degrees, src, 1)
    indptr = np.zeros(total + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    order = np.argsort(src, kind="stable")
    indices = dst[order]
    return indptr, indices, offsets


def _refine_step(colors: np.ndarray, indptr: np.ndarray, indices: np.ndarray) -> tuple[np.ndarray, int]:
    """One refinement round with canonical recoding; returns (new colors, #classes)."""
    n = len(colors)
    if n == 0:
        return colors.copy(), 0
    if len(indices):
        nb_colors = colors[indices]
        # sort neighbors within each node's CSR segment by color
        seg = np.repeat(np.arange(n), np.diff(indptr))
        order = np.lexsort((nb_colors, seg))
        nb_sorted = nb_colors[order].astype(">u4")
    else:
        nb_sorted = np.array([], dtype=">u4")
    sigs = []
    for i in range(n):
        a, b = indptr[i], indptr[i + 1]
        sigs.append((int(colors[i]), nb_sorted[a:b].tobytes()))
    table = {s: c for c, s in enumerate(sorted(set(sigs)))}
    new = np.fromiter((table[s] for s in sigs), count=n, dtype=np.int64)
    return new, len(table)


def refine_graphs(graphs: Sequence[Graph], t_max: Optional[int] = None,
                  seed_colors: Optional[np.ndarray] = None,
                  scope: str = "dataset-global") -> ColoringHistory:
    """Run refinement over the disjoint union of `graphs`.

    With t_max set, exactly t_max iterations are recorded (post-convergence
    iterations repeat the stable coloring, which is what the recode would
    produce). With t_max=None, the history stops one iteration past
    convergence.
    """
    if t_max is not None and t_max < 0:
        raise DataError("t_max must be >= 0")
    indptr, indices, offsets = _union_csr(graphs)
    colors = seed_colors if seed_colors is not None else _initial_colors(graphs)
    # normalize to contiguous ids (sorted-value order) so class counts are exact
    _, colors = np.unique(np.asarray(colors, dtype=np.int64), return_inverse=True)
    colors = colors.astype(np.int64)
    history = [colors]
    num_colors = [int(colors.max()) + 1 if len(colors) else 0]
    converged_at = None
    total = int(offsets[-1])
    limit = t_max if t_max is not None else total + 1
    t = 0
    while t < limit:
        if converged_at is not None:
            history.append(history[-1])
            num_colors.append(num_colors[-1])
            t += 1
            continue
        new, k = _refine_step(history[-1], indptr, indices)
        history.append(new)
        num_colors.append(k)
        t += 1
        if k == num_colors[-2]:
            # equal class counts + refinement => identical partitions
            converged_at = t - 1
            if t_max is None:
                break
    return ColoringHistory(
        scope=scope,
        colors=tuple(history),
        num_colors=tuple(num_colors),
        offsets=offsets,
        converged_at=converged_at,
    )


def wl_refine(ds: Dataset, t_max: Optional[int] = None) -> ColoringHistory:
    """Dataset-global refinement, so colors are comparable across graphs."""
    scope = "single-graph" if len(ds.graphs) == 1 else "dataset-global"
    return refine_graphs(ds.graphs, t_max=t_max, scope=scope)


def wl_signature(h: ColoringHistory, graph: int, t: Optional[int] = None) -> WlSignature:
    """Histogram and SortedCount of one graph's colors at iteration t."""
    cols = h.graph_colors(graph, t)
    values, counts = np.unique(cols, return_counts=True)
    hist = tuple((int(v), int(c)) for v, c in zip(values, counts))
    return WlSignature(hist, tuple(sorted(int(c) for c in counts)))


def wl_distinguishes(h: ColoringHistory, g1: int, g2: int, t: Optional[int] = None,
                     sortedcount_only: bool = False) -> bool:
    """True iff the two graphs' colorings differ at iteration t.

    The default compares full histograms over the shared global colors,
    which refines the SortedCount comparison; sortedcount_only reproduces
    the count-vector-only test.
    """
    s1 = wl_signature(h, g1, t)
    s2 = wl_signature(h, g2, t)
    if sortedcount_only:
        return s1.sorted_counts != s2.sorted_counts
    return s1.color_histogram != s2.color_histogram


def wl_partition(h: ColoringHistory, ds: Dataset, t: Optional[int] = None,
                 sortedcount_only: bool = False) -> Partition:
    """Partition of dataset instances by equal colorings at iteration t."""
    t = h.resolve_iteration(t)
    if ds.level == NODE_LEVEL:
        return Partition.from_assignments(int(c) for c in h.graph_colors(0, t))
    keys = []
    for g in range(h.num_graphs):
        sig = wl_signature(h, g, t)
        keys.append(sig.sorted_counts if sortedcount_only else sig.color_histogram)
    return Partition.from_assignments(keys)


def wl_kernel_features(h: ColoringHistory, graph: int, t: Optional[int] = None) -> dict[tuple[int, int], int]:
    """Subtree-kernel feature map: color counts concatenated over iterations 0..t."""
    t = h.resolve_iteration(t)
    feats: dict[tuple[int, int], int] = {}
    for it in range(t + 1):
        cols = h.graph_colors(graph, it)
        values, counts = np.unique(cols, return_counts=True)
        for v, c in zip(values, counts):
            feats[(it, int(v))] = int(c)
    return feats
