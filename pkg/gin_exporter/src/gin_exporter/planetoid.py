"""Convert the native pickled citation-network format (ind.<name>.x / tx /
allx / y / ty / ally / graph / test.index) into the flat node-task layout:
edges.csv, labels.csv, features.csv.

The assembly follows the established convention: allx/tx rows are stacked
and the shuffled test rows are moved back into position via test.index;
isolated test nodes absent from test.index (CiteSeer has a handful) get
zero feature rows and fall to label 0.
"""

from __future__ import annotations

import pickle
from pathlib import Path

import numpy as np
import scipy.sparse as sp

PLANETOID_NAMES = ("Cora", "CiteSeer", "PubMed")


class PlanetoidError(ValueError):
    pass


def _load_pickle(path: Path):
    if not path.is_file():
        raise PlanetoidError(f"missing dataset file {path}")
    with path.open("rb") as fh:
        return pickle.load(fh, encoding="latin1")


def _read_index(path: Path) -> list[int]:
    if not path.is_file():
        raise PlanetoidError(f"missing dataset file {path}")
    return [int(line) for line in path.read_text().split() if line.strip()]


def load_planetoid(directory: str | Path, name: str):
    """Returns (features (n, d), labels (n,), edge set, dropped self-loops).

    Row j of tx/ty belongs to global node test.index[j]; the test block
    sits right after the allx rows. Gaps inside the test id range (isolated
    nodes) stay as zero rows.
    """
    directory = Path(directory)
    lower = name.lower()
    allx = sp.csr_matrix(_load_pickle(directory / f"ind.{lower}.allx"))
    tx = sp.csr_matrix(_load_pickle(directory / f"ind.{lower}.tx"))
    ally = np.asarray(_load_pickle(directory / f"ind.{lower}.ally"))
    ty = np.asarray(_load_pickle(directory / f"ind.{lower}.ty"))
    graph = _load_pickle(directory / f"ind.{lower}.graph")
    test_idx = _read_index(directory / f"ind.{lower}.test.index")

    min_t, max_t = min(test_idx), max(test_idx)
    if allx.shape[0] != min_t:
        raise PlanetoidError(
            f"test ids must start right after the {allx.shape[0]} allx rows, "
            f"got min test id {min_t}")
    span = max_t - min_t + 1
    tx_ext = sp.lil_matrix((span, tx.shape[1]), dtype=np.float64)
    ty_ext = np.zeros((span, ty.shape[1]), dtype=ty.dtype)
    for j, node in enumerate(test_idx):
        tx_ext[node - min_t, :] = tx[j].toarray()
        ty_ext[node - min_t, :] = ty[j]

    features = np.asarray(
        sp.vstack([allx, sp.csr_matrix(tx_ext)]).todense(), dtype=np.float64)
    labels_onehot = np.vstack([ally, ty_ext])

    num_nodes = labels_onehot.shape[0]
    edges = set()
    dropped_self_loops = 0
    for u, neighbors in graph.items():
        for v in neighbors:
            if u == v:
                dropped_self_loops += 1
                continue
            if not (0 <= u < num_nodes and 0 <= v < num_nodes):
                raise PlanetoidError(f"edge ({u}, {v}) outside {num_nodes} nodes")
            edges.add((min(u, v), max(u, v)))
    return features, labels_onehot.argmax(axis=1), edges, dropped_self_loops


def convert_planetoid(directory: str | Path, name: str, out: str | Path) -> dict:
    """Write the node-task layout; returns a small summary dict."""
    if name not in PLANETOID_NAMES:
        raise PlanetoidError(f"unknown dataset {name!r}; expected one of {PLANETOID_NAMES}")
    features, labels, edges, dropped = load_planetoid(directory, name)
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "edges.csv").write_text(
        "\n".join(f"{u},{v}" for u, v in sorted(edges)) + "\n", encoding="utf-8")
    (out / "labels.csv").write_text(
        "\n".join(str(int(l)) for l in labels) + "\n", encoding="utf-8")
    (out / "features.csv").write_text(
        "\n".join(",".join(repr(float(x)) for x in row) for row in features) + "\n",
        encoding="utf-8")
    return {
        "name": name,
        "nodes": int(len(labels)),
        "edges": len(edges),
        "classes": int(labels.max()) + 1,
        "feature_dim": int(features.shape[1]),
        "dropped_self_loops": dropped,
    }
