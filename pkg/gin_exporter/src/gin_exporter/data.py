"""Reader for the bundled graph-classification layout (DS_A.txt,
DS_graph_indicator.txt, ...) into dense arrays ready for batching.

Node features follow the usual conventions: one-hot node labels when the
dataset ships them, raw attributes otherwise, and for the featureless
social benchmarks a one-hot degree encoding (IMDB-*) or a constant
(everything else).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

DEGREE_FEATURE_DATASETS = ("IMDB-BINARY", "IMDB-MULTI")


class DatasetError(ValueError):
    pass


@dataclass
class GraphArrays:
    """One graph: features (n, d) and an undirected edge list (m, 2)."""

    features: np.ndarray
    edges: np.ndarray
    label: int

    @property
    def num_nodes(self) -> int:
        return self.features.shape[0]


def _lines(path: Path) -> list[str]:
    if not path.is_file():
        raise DatasetError(f"missing required file {path}")
    raw = path.read_text(encoding="utf-8").split("\n")
    while raw and raw[-1].strip() == "":
        raw.pop()
    return raw


def load_graphs(directory: str | Path, name: str) -> list[GraphArrays]:
    directory = Path(directory)
    indicator = np.array([int(l) for l in _lines(directory / f"{name}_graph_indicator.txt")])
    graph_labels_raw = [int(l) for l in _lines(directory / f"{name}_graph_labels.txt")]
    label_map = {v: i for i, v in enumerate(sorted(set(graph_labels_raw)))}
    labels = [label_map[v] for v in graph_labels_raw]
    num_nodes = len(indicator)
    num_graphs = int(indicator.max()) if num_nodes else 0
    if len(labels) != num_graphs:
        raise DatasetError(f"{len(labels)} labels for {num_graphs} graphs")

    edges = []
    for lineno, line in enumerate(_lines(directory / f"{name}_A.txt"), start=1):
        parts = line.split(",")
        if len(parts) != 2:
            raise DatasetError(f"{name}_A.txt:{lineno}: expected 'i, j'")
        edges.append((int(parts[0]), int(parts[1])))
    edge_arr = np.array(edges, dtype=np.int64) if edges else np.zeros((0, 2), dtype=np.int64)

    node_labels = None
    nl = directory / f"{name}_node_labels.txt"
    if nl.is_file():
        node_labels = np.array([int(l) for l in _lines(nl)])
        if len(node_labels) != num_nodes:
            raise DatasetError("node label count does not match node count")

    node_attrs = None
    na = directory / f"{name}_node_attributes.txt"
    if na.is_file():
        node_attrs = np.array([[float(tok) for tok in line.split(",")]
                               for line in _lines(na)], dtype=np.float32)
        if len(node_attrs) != num_nodes:
            raise DatasetError("attribute row count does not match node count")

    first = np.searchsorted(indicator, np.arange(1, num_graphs + 2))
    degrees = np.zeros(num_nodes, dtype=np.int64)
    for u, v in edge_arr:
        degrees[u - 1] += 1

    if node_labels is not None:
        values = sorted(set(int(x) for x in node_labels))
        index = {v: i for i, v in enumerate(values)}
        features = np.zeros((num_nodes, len(values)), dtype=np.float32)
        for i, v in enumerate(node_labels):
            features[i, index[int(v)]] = 1.0
    elif node_attrs is not None:
        features = node_attrs
    elif name in DEGREE_FEATURE_DATASETS:
        top = int(degrees.max()) if num_nodes else 0
        features = np.zeros((num_nodes, top + 1), dtype=np.float32)
        features[np.arange(num_nodes), degrees] = 1.0
    else:
        features = np.ones((num_nodes, 1), dtype=np.float32)

    graphs = []
    for g in range(num_graphs):
        lo, hi = int(first[g]), int(first[g + 1])
        mask = (edge_arr[:, 0] > lo) & (edge_arr[:, 0] <= hi) if len(edge_arr) else []
        local = edge_arr[mask] - 1 - lo if len(edge_arr) else np.zeros((0, 2), dtype=np.int64)
        undirected = local[local[:, 0] < local[:, 1]] if len(local) else local
        graphs.append(GraphArrays(features=features[lo:hi],
                                  edges=undirected,
                                  label=labels[g]))
    return graphs


def train_test_split(count: int, train_fraction: float, rng: np.random.Generator):
    order = rng.permutation(count)
    cut = int(round(train_fraction * count))
    return np.sort(order[:cut]), np.sort(order[cut:])
