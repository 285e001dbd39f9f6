import os
import pickle
from pathlib import Path

import numpy as np
import pytest
import scipy.sparse as sp

DATA_ENV = "WLAUDIT_DATA"


def benchmark_dir(name: str) -> Path:
    """Published benchmark export, or skip (no dataset network access here)."""
    candidates = []
    if os.environ.get(DATA_ENV):
        candidates.append(Path(os.environ[DATA_ENV]) / name)
    candidates.append(Path(__file__).resolve().parents[2] / "data" / name)
    for c in candidates:
        if (c / f"{name}_A.txt").is_file():
            return c
    pytest.skip(f"benchmark {name} not present (set ${DATA_ENV} or create data/{name}/)")


def synth_tudataset(tmp: Path, name="SYN", copies=30) -> Path:
    """Triangles (label 0) vs. 3-paths (label 1), trivially separable."""
    directory = tmp / name
    directory.mkdir(parents=True, exist_ok=True)
    edges, indicator, labels = [], [], []
    nodes = 0
    for i in range(copies):
        kind = i % 2
        local = [(1, 2), (2, 3), (1, 3)] if kind == 0 else [(1, 2), (2, 3)]
        for u, v in local:
            edges.append(f"{nodes + u}, {nodes + v}")
            edges.append(f"{nodes + v}, {nodes + u}")
        indicator += [str(i + 1)] * 3
        labels.append(str(kind))
        nodes += 3
    (directory / f"{name}_A.txt").write_text("\n".join(edges) + "\n")
    (directory / f"{name}_graph_indicator.txt").write_text("\n".join(indicator) + "\n")
    (directory / f"{name}_graph_labels.txt").write_text("\n".join(labels) + "\n")
    return directory


def synth_planetoid(tmp: Path, name="cora", gap=False) -> Path:
    """Six-node citation toy in the pickled layout; gap=True leaves node 4
    out of test.index the way CiteSeer's isolated nodes are."""
    directory = tmp / "planetoid"
    directory.mkdir(parents=True, exist_ok=True)
    # nodes 0..2 = allx block, nodes 3..5 = test block
    features = np.array([[1., 0.], [0., 1.], [1., 1.],
                         [2., 0.], [0., 2.], [2., 2.]])
    onehot = np.array([[1, 0], [0, 1], [1, 0],
                       [0, 1], [1, 0], [0, 1]], dtype=np.int64)
    graph = {0: [1, 2], 1: [0, 3], 2: [0, 5], 3: [1], 4: [], 5: [2, 5]}
    if gap:
        test_idx = [5, 3]  # node 4 isolated: absent, shuffled order
    else:
        test_idx = [5, 3, 4]
    allx = sp.csr_matrix(features[:3])
    tx = sp.csr_matrix(np.stack([features[i] for i in test_idx]))
    ally = onehot[:3]
    ty = np.stack([onehot[i] for i in test_idx])
    blobs = {"allx": allx, "tx": tx, "ally": ally, "ty": ty, "graph": graph,
             "x": allx[:1], "y": ally[:1]}
    for suffix, blob in blobs.items():
        with (directory / f"ind.{name}.{suffix}").open("wb") as fh:
            pickle.dump(blob, fh)
    (directory / f"ind.{name}.test.index").write_text(
        "\n".join(str(i) for i in test_idx) + "\n")
    return directory
