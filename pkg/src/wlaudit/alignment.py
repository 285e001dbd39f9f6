"""Similarity-distribution study: subtree-kernel cosine vs. external
embedding cosine over graph pairs, split by label agreement, with binned
mutual information between similarity and label match.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DataError
from .model import Dataset, GRAPH_LEVEL
from .refine import ColoringHistory, wl_kernel_features, wl_refine
from .util import parallel_map

ALL_PAIRS_LIMIT = 2_000_000
KERNEL_RANGE = (0.0, 1.0)
EMBEDDING_RANGE = (-1.0, 1.0)


@dataclass(frozen=True)
class PairSampling:
    mode: str  # "all" | "uniform"
    size: Optional[int] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ("all", "uniform"):
            raise DataError(f"unknown sampling mode {self.mode!r}")
        if self.mode == "uniform" and (self.size is None or self.seed is None):
            raise DataError("uniform sampling needs size and seed")


@dataclass(frozen=True)
class SimilarityStudy:
    sampling: PairSampling
    t: int
    bins: int
    mi_base: float
    num_pairs: int
    kernel_hist_same: tuple[int, ...]
    kernel_hist_different: tuple[int, ...]
    embedding_hist_same: Optional[tuple[int, ...]]
    embedding_hist_different: Optional[tuple[int, ...]]
    kernel_mi: float
    embedding_mi: Optional[float]
    pair_rows: Optional[tuple[tuple[int, int, float, Optional[float], bool], ...]] = None

    def to_json_dict(self) -> dict:
        return {
            "sampling": {"mode": self.sampling.mode, "size": self.sampling.size,
                         "seed": self.sampling.seed},
            "iterations": self.t,
            "bins": self.bins,
            "mi_base": self.mi_base,
            "num_pairs": self.num_pairs,
            "histograms": {
                "kernel_same": list(self.kernel_hist_same),
                "kernel_different": list(self.kernel_hist_different),
                "embedding_same": (list(self.embedding_hist_same)
                                   if self.embedding_hist_same is not None else None),
                "embedding_different": (list(self.embedding_hist_different)
                                        if self.embedding_hist_different is not None else None),
            },
            "mi": {"kernel": self.kernel_mi, "embedding": self.embedding_mi},
        }


def embedding_cosine(e1: Sequence[float], e2: Sequence[float]) -> float:
    """Cosine similarity of two dense vectors."""
    a = np.asarray(e1, dtype=np.float64)
    b = np.asarray(e2, dtype=np.float64)
    if a.shape != b.shape:
        raise DataError(f"embedding dimensions differ: {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise DataError("cosine similarity undefined for a zero vector")
    return max(-1.0, min(1.0, float(np.dot(a, b) / (na * nb))))


def _sparse_cosine(f1: dict, f2: dict) -> float:
    if f1 == f2:
        return 1.0  # exact for isomorphic (identical-feature) pairs
    if len(f2) < len(f1):
        f1, f2 = f2, f1
    dot = sum(v * f2.get(k, 0) for k, v in f1.items())
    n1 = math.sqrt(sum(v * v for v in f1.values()))
    n2 = math.sqrt(sum(v * v for v in f2.values()))
    return min(1.0, dot / (n1 * n2))  # Cauchy-Schwarz bound, sans rounding


def kernel_cosine(ds: Dataset, g1: int, g2: int, t: int = 4,
                  history: Optional[ColoringHistory] = None) -> float:
    """Subtree-kernel cosine similarity of two graphs at iteration t.

    Feature vectors always have positive norm (counts sum to node count),
    so the value is defined for every pair.
    """
    if history is None:
        history = wl_refine(ds, t_max=t)
    return _sparse_cosine(wl_kernel_features(history, g1, t),
                          wl_kernel_features(history, g2, t))


def bin_index(x: float, lo: float, hi: float, bins: int) -> int:
    if x < lo or x > hi:
        raise DataError(f"similarity {x} outside [{lo}, {hi}]")
    idx = int((x - lo) / (hi - lo) * bins)
    return min(idx, bins - 1)


def binned_mi(hist_same: Sequence[int], hist_different: Sequence[int],
              base: float = 2.0) -> float:
    """Plug-in mutual information between bin index and the match bit."""
    same = np.asarray(hist_same, dtype=np.float64)
    diff = np.asarray(hist_different, dtype=np.float64)
    if same.sum() == 0 or diff.sum() == 0:
        raise DataError("every label-match category needs at least one pair")
    total = same.sum() + diff.sum()
    joint = np.vstack([same, diff]) / total
    p_match = joint.sum(axis=1)
    p_bin = joint.sum(axis=0)
    mi = 0.0
    for r in range(2):
        for c in range(len(p_bin)):
            pj = joint[r, c]
            if pj > 0:
                mi += pj * math.log(pj / (p_match[r] * p_bin[c]))
    return mi / math.log(base)


def similarity_mi(study: SimilarityStudy, source: str) -> float:
    """MI (in study.mi_base units) between binned similarity and label match."""
    if source == "kernel":
        return binned_mi(study.kernel_hist_same, study.kernel_hist_different, study.mi_base)
    if source == "embedding":
        if study.embedding_hist_same is None:
            raise DataError("study holds no embedding similarities")
        return binned_mi(study.embedding_hist_same, study.embedding_hist_different,
                         study.mi_base)
    raise DataError(f"unknown similarity source {source!r}")


def _unrank_pair(k: int, n: int) -> tuple[int, int]:
    # pairs (i, j), i < j, ranked lexicographically
    i = int(n - 2 - math.floor(math.sqrt(4 * n * (n - 1) - 8 * k - 7) / 2.0 - 0.5))
    j = k + i + 1 - n * (n - 1) // 2 + (n - i) * (n - i - 1) // 2
    return i, j


def select_pairs(n: int, sampling: Optional[PairSampling]) -> tuple[PairSampling, list[tuple[int, int]]]:
    """Resolve a sampling spec into a deterministic, sorted pair list."""
    total = n * (n - 1) // 2
    if sampling is None:
        sampling = PairSampling("all") if total <= ALL_PAIRS_LIMIT else \
            PairSampling("uniform", size=ALL_PAIRS_LIMIT, seed=0)
    if sampling.mode == "all":
        return sampling, [(i, j) for i in range(n) for j in range(i + 1, n)]
    if sampling.size > total:
        raise DataError(f"sample size {sampling.size} exceeds {total} pairs")
    rng = np.random.default_rng(sampling.seed)
    ranks = rng.choice(total, size=sampling.size, replace=False)
    ranks.sort()
    return sampling, [_unrank_pair(int(k), n) for k in ranks]


def alignment_report(ds: Dataset, embeddings: Optional[dict[int, np.ndarray]] = None,
                     t: int = 4, sampling: Optional[PairSampling] = None,
                     bins: int = 20, mi_base: float = 2.0,
                     bin_range: str = "fixed", threads: int = 1,
                     keep_pairs: bool = False) -> SimilarityStudy:
    """Full similarity study over graph pairs.

    With no embeddings the study is kernel-only. Histogram ranges default
    to the fixed theoretical ranges; bin_range="data" rescales to the
    observed min/max for sensitivity checks.
    """
    if ds.level != GRAPH_LEVEL:
        raise DataError("alignment studies run on graph-level datasets")
    if ds.instance_labels is None:
        raise DataError("alignment studies need instance labels")
    n = len(ds.graphs)
    sampling, pairs = select_pairs(n, sampling)
    if embeddings is not None:
        missing = sorted(i for i in range(n) if i not in embeddings)
        if missing:
            raise DataError(f"embeddings missing for instances {missing}")
    history = wl_refine(ds, t_max=t)
    features = parallel_map(lambda g: wl_kernel_features(history, g, t), list(range(n)), threads)

    def pair_row(pair):
        i, j = pair
        ksim = _sparse_cosine(features[i], features[j])
        esim = None
        if embeddings is not None:
            esim = embedding_cosine(embeddings[i], embeddings[j])
        return (i, j, ksim, esim, ds.instance_labels[i] == ds.instance_labels[j])

    rows = parallel_map(pair_row, pairs, threads)

    def ranged(values, default_range):
        if bin_range == "fixed":
            return default_range
        lo, hi = min(values), max(values)
        return (lo, hi if hi > lo else lo + 1.0)

    k_lo, k_hi = ranged([r[2] for r in rows], KERNEL_RANGE)
    hists = {"ks": [0] * bins, "kd": [0] * bins, "es": [0] * bins, "ed": [0] * bins}
    if embeddings is not None:
        e_lo, e_hi = ranged([r[3] for r in rows], EMBEDDING_RANGE)
    for _, _, ksim, esim, match in rows:
        hists["ks" if match else "kd"][bin_index(ksim, k_lo, k_hi, bins)] += 1
        if esim is not None:
            hists["es" if match else "ed"][bin_index(esim, e_lo, e_hi, bins)] += 1
    kernel_mi = binned_mi(hists["ks"], hists["kd"], mi_base)
    embedding_mi = None
    if embeddings is not None:
        embedding_mi = binned_mi(hists["es"], hists["ed"], mi_base)
    return SimilarityStudy(
        sampling=sampling,
        t=t,
        bins=bins,
        mi_base=mi_base,
        num_pairs=len(rows),
        kernel_hist_same=tuple(hists["ks"]),
        kernel_hist_different=tuple(hists["kd"]),
        embedding_hist_same=tuple(hists["es"]) if embeddings is not None else None,
        embedding_hist_different=tuple(hists["ed"]) if embeddings is not None else None,
        kernel_mi=kernel_mi,
        embedding_mi=embedding_mi,
        pair_rows=tuple(rows) if keep_pairs else None,
    )
