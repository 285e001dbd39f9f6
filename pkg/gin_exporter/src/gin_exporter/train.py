"""Training loop and embedding export.

The default TrainSpec pins the reference recipe: 4-layer, 64-unit encoder
with global mean pooling and trainable eps, 2-layer decoder with dropout
0.5, 100 epochs, batch 128, Adam at lr 0.01 halved every 50 epochs, no
weight decay, a seeded random 90% training fold. The spec, the fold
indices, and the accuracy log are serialized next to the embeddings so a
run is fully reproducible.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
import torch
from torch import nn

from .data import GraphArrays, load_graphs, train_test_split


class TrainingDiverged(RuntimeError):
    pass


@dataclass(frozen=True)
class TrainSpec:
    encoder_layers: int = 4
    hidden: int = 64
    pooling: str = "mean"
    decoder_layers: int = 2
    decoder_dropout: float = 0.5
    epochs: int = 100
    batch_size: int = 128
    learning_rate: float = 0.01
    lr_decay: float = 0.5
    lr_decay_step: int = 50
    weight_decay: float = 0.0
    train_fraction: float = 0.9


@dataclass
class TrainResult:
    seed: int
    spec: TrainSpec
    test_accuracy: float
    train_accuracy: float
    epoch_losses: list[float]
    train_indices: list[int]
    test_indices: list[int]
    embeddings: np.ndarray  # (num_graphs, hidden), encoder outputs


def _batch(graphs: list[GraphArrays], indices: np.ndarray):
    """Concatenate a set of graphs into one block-diagonal batch."""
    feats, edges, owner = [], [], []
    offset = 0
    for slot, gi in enumerate(indices):
        g = graphs[gi]
        feats.append(torch.from_numpy(np.ascontiguousarray(g.features)))
        if len(g.edges):
            edges.append(torch.from_numpy(g.edges.T + offset))
        owner.append(torch.full((g.num_nodes,), slot, dtype=torch.int64))
        offset += g.num_nodes
    x = torch.cat(feats).float()
    edge_index = (torch.cat(edges, dim=1) if edges
                  else torch.zeros((2, 0), dtype=torch.int64))
    graph_of = torch.cat(owner)
    labels = torch.tensor([graphs[gi].label for gi in indices], dtype=torch.int64)
    return x, edge_index, graph_of, labels


def train_gin(graphs: list[GraphArrays], seed: int = 0,
              spec: TrainSpec = TrainSpec()) -> TrainResult:
    from .model import GinClassifier

    from .data import DatasetError

    if not graphs:
        raise DatasetError("cannot train on an empty dataset")
    torch.manual_seed(seed)
    rng = np.random.default_rng(seed)
    n = len(graphs)
    train_idx, test_idx = train_test_split(n, spec.train_fraction, rng)
    num_classes = max(g.label for g in graphs) + 1
    in_dim = graphs[0].features.shape[1]
    model = GinClassifier(in_dim, num_classes, hidden=spec.hidden,
                          layers=spec.encoder_layers,
                          decoder_dropout=spec.decoder_dropout)
    optimizer = torch.optim.Adam(model.parameters(), lr=spec.learning_rate,
                                 weight_decay=spec.weight_decay)
    scheduler = torch.optim.lr_scheduler.StepLR(
        optimizer, step_size=spec.lr_decay_step, gamma=spec.lr_decay)
    loss_fn = nn.CrossEntropyLoss()

    epoch_losses = []
    for _ in range(spec.epochs):
        model.train()
        order = rng.permutation(train_idx)
        total = 0.0
        for start in range(0, len(order), spec.batch_size):
            chunk = order[start:start + spec.batch_size]
            x, edge_index, graph_of, labels = _batch(graphs, chunk)
            optimizer.zero_grad()
            logits, _ = model(x, edge_index, graph_of, len(chunk))
            loss = loss_fn(logits, labels)
            if not math.isfinite(loss.item()):
                raise TrainingDiverged(f"non-finite loss {loss.item()}")
            loss.backward()
            optimizer.step()
            total += loss.item() * len(chunk)
        scheduler.step()
        epoch_losses.append(total / max(1, len(order)))

    model.eval()

    def accuracy(indices):
        if not len(indices):
            return float("nan")
        with torch.no_grad():
            x, edge_index, graph_of, labels = _batch(graphs, indices)
            logits, _ = model(x, edge_index, graph_of, len(indices))
        return float((logits.argmax(dim=1) == labels).float().mean())

    with torch.no_grad():
        x, edge_index, graph_of, _ = _batch(graphs, np.arange(n))
        _, embeddings = model(x, edge_index, graph_of, n)

    return TrainResult(
        seed=seed,
        spec=spec,
        test_accuracy=accuracy(test_idx),
        train_accuracy=accuracy(train_idx),
        epoch_losses=epoch_losses,
        train_indices=[int(i) for i in train_idx],
        test_indices=[int(i) for i in test_idx],
        embeddings=embeddings.numpy().astype(np.float64),
    )


def write_embeddings_csv(embeddings: np.ndarray, path: Path) -> None:
    """Emit the interchange format: header id,e0,...,e{d-1}, one row per graph."""
    dim = embeddings.shape[1]
    lines = ["id," + ",".join(f"e{i}" for i in range(dim))]
    for idx, row in enumerate(embeddings):
        lines.append(f"{idx}," + ",".join(repr(float(v)) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def train_and_export(dataset_dir: str | Path, name: str, out: str | Path,
                     seed: int = 0, spec: TrainSpec = TrainSpec()) -> TrainResult:
    """Train on a bundled-layout dataset and export embeddings + metadata.

    Outputs appear only on success: <out> gets the embeddings CSV and
    <out>.meta.json the spec, fold indices, losses, and accuracies.
    """
    graphs = load_graphs(dataset_dir, name)
    result = train_gin(graphs, seed=seed, spec=spec)
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_embeddings_csv(result.embeddings, out)
    meta = {
        "dataset": name,
        "seed": result.seed,
        "spec": asdict(result.spec),
        "test_accuracy": result.test_accuracy,
        "train_accuracy": result.train_accuracy,
        "epoch_losses": result.epoch_losses,
        "train_indices": result.train_indices,
        "test_indices": result.test_indices,
    }
    Path(str(out) + ".meta.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return result
