"""GIN encoder and MLP decoder in plain torch.

Each layer computes MLP((1 + eps) * h_i + sum of neighbor h_j) with a
trainable eps; graph embeddings are the global mean pooling of the final
layer, and the decoder maps them to class logits.
"""

from __future__ import annotations

import torch
from torch import nn


def _mlp(in_dim: int, hidden: int) -> nn.Sequential:
    return nn.Sequential(
        nn.Linear(in_dim, hidden),
        nn.ReLU(),
        nn.BatchNorm1d(hidden),
        nn.Linear(hidden, hidden),
        nn.ReLU(),
        nn.BatchNorm1d(hidden),
    )


class GinLayer(nn.Module):
    def __init__(self, in_dim: int, hidden: int):
        super().__init__()
        self.eps = nn.Parameter(torch.zeros(1))
        self.mlp = _mlp(in_dim, hidden)

    def forward(self, x, edge_index):
        agg = torch.zeros_like(x)
        if edge_index.numel():
            src, dst = edge_index
            agg = agg.index_add(0, dst, x[src])
            agg = agg.index_add(0, src, x[dst])
        return self.mlp((1.0 + self.eps) * x + agg)


class GinEncoder(nn.Module):
    def __init__(self, in_dim: int, hidden: int = 64, layers: int = 4):
        super().__init__()
        dims = [in_dim] + [hidden] * layers
        self.layers = nn.ModuleList(GinLayer(a, b) for a, b in zip(dims, dims[1:]))

    def forward(self, x, edge_index, graph_of, num_graphs: int):
        for layer in self.layers:
            x = layer(x, edge_index)
        pooled = torch.zeros(num_graphs, x.shape[1], dtype=x.dtype)
        pooled = pooled.index_add(0, graph_of, x)
        counts = torch.zeros(num_graphs, dtype=x.dtype).index_add(
            0, graph_of, torch.ones(x.shape[0], dtype=x.dtype))
        return pooled / counts.clamp(min=1.0).unsqueeze(1)


class MlpDecoder(nn.Module):
    def __init__(self, hidden: int, num_classes: int, dropout: float = 0.5):
        super().__init__()
        self.net = nn.Sequential(
            nn.Linear(hidden, hidden),
            nn.ReLU(),
            nn.Dropout(dropout),
            nn.Linear(hidden, num_classes),
        )

    def forward(self, h):
        return self.net(h)


class GinClassifier(nn.Module):
    def __init__(self, in_dim: int, num_classes: int, hidden: int = 64,
                 layers: int = 4, decoder_dropout: float = 0.5):
        super().__init__()
        self.encoder = GinEncoder(in_dim, hidden, layers)
        self.decoder = MlpDecoder(hidden, num_classes, decoder_dropout)

    def forward(self, x, edge_index, graph_of, num_graphs: int):
        h = self.encoder(x, edge_index, graph_of, num_graphs)
        return self.decoder(h), h
