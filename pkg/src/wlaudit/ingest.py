"""Flat-file dataset ingestion.

Two layouts are supported, matching published conventions bit for bit:

* Bundled graph-classification layout (prefix = dataset name DS):
  DS_A.txt holds "i, j" edge lines with 1-based, globally consecutive node
  ids, every undirected edge listed in both directions;
  DS_graph_indicator.txt maps node n (line n) to its 1-based graph id;
  DS_graph_labels.txt one label per graph; optional DS_node_labels.txt and
  DS_node_attributes.txt.

* Node-task layout: edges.csv ("src,dst", 0-based, one direction per
  edge), labels.csv (line order = node id), optional features.csv and
  groups.csv. No header rows.

Embeddings interchange format: CSV with header "id,e0,...,e{d-1}".
"""

from __future__ import annotations

import warnings
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import DataError
from .model import Dataset, Graph, canonical_edge, GRAPH_LEVEL, NODE_LEVEL

INITIAL_COLOR_POLICIES = ("auto", "labels", "attributes", "degree", "uniform")

# Featureless social benchmarks: the IMDB pair is conventionally seeded with
# degree labels, the rest with a constant color.
DEGREE_SEEDED_DATASETS = ("IMDB-BINARY", "IMDB-MULTI")


def _read_lines(path: Path) -> list[str]:
    if not path.is_file():
        raise DataError(f"missing required file {path}")
    text = path.read_text(encoding="utf-8")
    lines = text.split("\n")
    while lines and lines[-1].strip() == "":
        lines.pop()
    return lines


def _parse_int(token: str, path: Path, lineno: int) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise DataError(f"{path}:{lineno}: expected an integer, got {token.strip()!r}") from None


def _parse_float(token: str, path: Path, lineno: int) -> float:
    try:
        return float(token.strip())
    except ValueError:
        raise DataError(f"{path}:{lineno}: expected a number, got {token.strip()!r}") from None


def _normalize_labels(raw: Sequence[int]) -> tuple[int, ...]:
    mapping = {v: i for i, v in enumerate(sorted(set(raw)))}
    return tuple(mapping[v] for v in raw)


def load_tudataset(directory: str | Path, name: str, dedupe: bool = False,
                   initial_colors: str = "auto") -> Dataset:
    """Load a bundled graph-classification dataset.

    initial_colors picks what seeds refinement: "auto" prefers stored node
    labels, then attributes, then the per-dataset featureless fallback
    (degree for the IMDB pair, uniform otherwise).
    """
    if initial_colors not in INITIAL_COLOR_POLICIES:
        raise DataError(f"unknown initial-color policy {initial_colors!r}")
    directory = Path(directory)
    a_path = directory / f"{name}_A.txt"
    ind_path = directory / f"{name}_graph_indicator.txt"
    lab_path = directory / f"{name}_graph_labels.txt"

    indicator = [_parse_int(line, ind_path, i + 1)
                 for i, line in enumerate(_read_lines(ind_path))]
    num_nodes = len(indicator)
    num_graphs = max(indicator) if indicator else 0
    if indicator and (min(indicator) != 1 or set(indicator) != set(range(1, num_graphs + 1))):
        raise DataError(f"{ind_path}: graph ids must be consecutive starting at 1")
    if any(indicator[i] > indicator[i + 1] for i in range(num_nodes - 1)):
        raise DataError(f"{ind_path}: node ids must be consecutive per graph")

    raw_labels = [_parse_int(line, lab_path, i + 1)
                  for i, line in enumerate(_read_lines(lab_path))]
    if len(raw_labels) != num_graphs:
        raise DataError(f"{lab_path}: {len(raw_labels)} labels for {num_graphs} graphs")
    graph_labels = _normalize_labels(raw_labels)

    directed: set[tuple[int, int]] = set()
    for lineno, line in enumerate(_read_lines(a_path), start=1):
        parts = line.split(",")
        if len(parts) != 2:
            raise DataError(f"{a_path}:{lineno}: expected 'i, j'")
        u = _parse_int(parts[0], a_path, lineno)
        v = _parse_int(parts[1], a_path, lineno)
        if not (1 <= u <= num_nodes and 1 <= v <= num_nodes):
            raise DataError(f"{a_path}:{lineno}: node id out of range")
        if u == v:
            raise DataError(f"{a_path}:{lineno}: self-loop on node {u}")
        if indicator[u - 1] != indicator[v - 1]:
            raise DataError(f"{a_path}:{lineno}: edge ({u}, {v}) crosses graph boundaries")
        if (u, v) in directed:
            if dedupe:
                warnings.warn(f"{a_path}:{lineno}: duplicate edge ({u}, {v}) ignored")
                continue
            raise DataError(f"{a_path}:{lineno}: duplicate edge ({u}, {v}); "
                            "pass dedupe to downgrade to a warning")
        directed.add((u, v))
    for u, v in directed:
        if (v, u) not in directed:
            raise DataError(f"{a_path}: edge ({u}, {v}) lacks its mirror ({v}, {u})")

    node_labels = None
    nl_path = directory / f"{name}_node_labels.txt"
    if nl_path.is_file():
        values = [_parse_int(line, nl_path, i + 1)
                  for i, line in enumerate(_read_lines(nl_path))]
        if len(values) != num_nodes:
            raise DataError(f"{nl_path}: {len(values)} labels for {num_nodes} nodes")
        node_labels = values

    node_attrs = None
    na_path = directory / f"{name}_node_attributes.txt"
    if na_path.is_file():
        rows = []
        for lineno, line in enumerate(_read_lines(na_path), start=1):
            rows.append([_parse_float(tok, na_path, lineno) for tok in line.split(",")])
        if len(rows) != num_nodes:
            raise DataError(f"{na_path}: {len(rows)} rows for {num_nodes} nodes")
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DataError(f"{na_path}: ragged attribute rows {sorted(widths)}")
        node_attrs = rows

    # slice the global node space into per-graph blocks
    first_node = [num_nodes] * (num_graphs + 1)
    for node, g in enumerate(indicator):
        if node < first_node[g - 1]:
            first_node[g - 1] = node
    first_node[num_graphs] = num_nodes
    graphs = []
    for g in range(num_graphs):
        lo, hi = first_node[g], first_node[g + 1]
        size = hi - lo
        pairs = [(u - 1 - lo, v - 1 - lo) for (u, v) in directed
                 if u < v and lo < u <= hi]
        labels, features = _pick_initial_colors(
            name, initial_colors,
            node_labels[lo:hi] if node_labels is not None else None,
            node_attrs[lo:hi] if node_attrs is not None else None,
            size, pairs)
        graphs.append(Graph.from_edges(size, pairs, node_labels=labels,
                                       node_features=features,
                                       graph_label=graph_labels[g]))
    return Dataset(level=GRAPH_LEVEL, graphs=tuple(graphs),
                   instance_labels=graph_labels, name=name)


def _pick_initial_colors(name, policy, labels, attrs, size, pairs):
    if policy == "labels" and labels is None:
        raise DataError(f"{name}: initial_colors='labels' but no node labels present")
    if policy == "attributes" and attrs is None:
        raise DataError(f"{name}: initial_colors='attributes' but no node attributes present")
    if policy == "uniform":
        return None, None
    if policy == "degree" or (policy == "auto" and labels is None and attrs is None
                              and name in DEGREE_SEEDED_DATASETS):
        degrees = [0] * size
        for u, v in pairs:
            degrees[u] += 1
            degrees[v] += 1
        return degrees, None
    if policy in ("labels", "auto") and labels is not None:
        return labels, None
    if attrs is not None:
        return None, attrs
    return None, None


def save_tudataset(ds: Dataset, directory: str | Path, name: Optional[str] = None) -> Path:
    """Serialize a graph-level dataset back to the bundled layout (canonical form)."""
    if ds.level != GRAPH_LEVEL:
        raise DataError("save_tudataset needs a graph-level dataset")
    name = name or ds.name
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    indicator = []
    edge_lines = []
    offset = 0
    any_labels = any(g.node_labels is not None for g in ds.graphs)
    any_attrs = any(g.node_features is not None for g in ds.graphs)
    node_label_lines = []
    node_attr_lines = []
    for gi, g in enumerate(ds.graphs, start=1):
        indicator.extend([str(gi)] * g.num_nodes)
        for u, v in sorted(g.edges):
            edge_lines.append(f"{offset + u + 1}, {offset + v + 1}")
            edge_lines.append(f"{offset + v + 1}, {offset + u + 1}")
        if any_labels:
            if g.node_labels is None:
                raise DataError("cannot serialize: node labels present on only some graphs")
            node_label_lines.extend(str(l) for l in g.node_labels)
        if any_attrs:
            rows = g.feature_rows()
            if rows is None:
                raise DataError("cannot serialize: node attributes present on only some graphs")
            node_attr_lines.extend(", ".join(repr(float(x)) for x in row) for row in rows)
        offset += g.num_nodes
    labels = ds.instance_labels
    if labels is None:
        labels = tuple(g.graph_label if g.graph_label is not None else 0 for g in ds.graphs)
    (directory / f"{name}_A.txt").write_text("\n".join(sorted(
        edge_lines, key=lambda s: tuple(int(x) for x in s.split(",")))) + "\n", encoding="utf-8")
    (directory / f"{name}_graph_indicator.txt").write_text("\n".join(indicator) + "\n", encoding="utf-8")
    (directory / f"{name}_graph_labels.txt").write_text(
        "\n".join(str(l) for l in labels) + "\n", encoding="utf-8")
    if any_labels:
        (directory / f"{name}_node_labels.txt").write_text(
            "\n".join(node_label_lines) + "\n", encoding="utf-8")
    if any_attrs:
        (directory / f"{name}_node_attributes.txt").write_text(
            "\n".join(node_attr_lines) + "\n", encoding="utf-8")
    return directory


def load_node_task(directory: str | Path, name: Optional[str] = None,
                   dedupe: bool = False) -> Dataset:
    """Load a node-task layout directory into a one-graph, node-level dataset."""
    directory = Path(directory)
    lab_path = directory / "labels.csv"
    edge_path = directory / "edges.csv"
    labels = [_parse_int(line, lab_path, i + 1)
              for i, line in enumerate(_read_lines(lab_path))]
    num_nodes = len(labels)
    pairs = []
    seen = set()
    for lineno, line in enumerate(_read_lines(edge_path), start=1):
        parts = line.split(",")
        if len(parts) != 2:
            raise DataError(f"{edge_path}:{lineno}: expected 'src,dst'")
        u = _parse_int(parts[0], edge_path, lineno)
        v = _parse_int(parts[1], edge_path, lineno)
        if not (0 <= u < num_nodes and 0 <= v < num_nodes):
            raise DataError(f"{edge_path}:{lineno}: node id out of range "
                            f"(labels.csv defines {num_nodes} nodes)")
        if u == v:
            raise DataError(f"{edge_path}:{lineno}: self-loop on node {u}")
        e = canonical_edge(u, v)
        if e in seen:
            if dedupe:
                warnings.warn(f"{edge_path}:{lineno}: duplicate edge ({u}, {v}) ignored")
                continue
            raise DataError(f"{edge_path}:{lineno}: duplicate edge ({u}, {v}); "
                            "pass dedupe to downgrade to a warning")
        seen.add(e)
        pairs.append(e)

    features = None
    feat_path = directory / "features.csv"
    if feat_path.is_file():
        features = []
        for lineno, line in enumerate(_read_lines(feat_path), start=1):
            features.append([_parse_float(tok, feat_path, lineno) for tok in line.split(",")])
        if len(features) != num_nodes:
            raise DataError(f"{feat_path}: {len(features)} rows for {num_nodes} nodes")
        widths = {len(r) for r in features}
        if len(widths) > 1:
            raise DataError(f"{feat_path}: ragged feature rows {sorted(widths)}")

    groups = None
    group_path = directory / "groups.csv"
    if group_path.is_file():
        groups = [_parse_int(line, group_path, i + 1)
                  for i, line in enumerate(_read_lines(group_path))]
        if len(groups) != num_nodes:
            raise DataError(f"{group_path}: {len(groups)} rows for {num_nodes} nodes")

    graph = Graph.from_edges(num_nodes, pairs, node_features=features)
    return Dataset(
        level=NODE_LEVEL,
        graphs=(graph,),
        instance_labels=_normalize_labels(labels),
        groups=tuple(groups) if groups is not None else None,
        name=name or directory.name,
    )


def load_embeddings(file: str | Path) -> dict[int, np.ndarray]:
    """Load the embeddings interchange CSV into an id -> vector table."""
    path = Path(file)
    lines = _read_lines(path)
    if not lines:
        raise DataError(f"{path}: empty embeddings file")
    header = [h.strip() for h in lines[0].split(",")]
    if header[0] != "id" or len(header) < 2:
        raise DataError(f"{path}:1: header must be 'id,e0,...,e{{d-1}}'")
    expected = ["id"] + [f"e{i}" for i in range(len(header) - 1)]
    if header != expected:
        raise DataError(f"{path}:1: header must be {','.join(expected)!r}")
    dim = len(header) - 1
    table: dict[int, np.ndarray] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != dim + 1:
            raise DataError(f"{path}:{lineno}: expected {dim + 1} cells, got {len(parts)}")
        idx = _parse_int(parts[0], path, lineno)
        if idx in table:
            raise DataError(f"{path}:{lineno}: duplicate id {idx}")
        table[idx] = np.array([_parse_float(tok, path, lineno) for tok in parts[1:]],
                              dtype=np.float64)
    return table


def write_embeddings(table: dict[int, np.ndarray], file: str | Path) -> None:
    path = Path(file)
    if not table:
        raise DataError("refusing to write an empty embeddings table")
    dim = len(next(iter(table.values())))
    lines = ["id," + ",".join(f"e{i}" for i in range(dim))]
    for idx in sorted(table):
        row = np.asarray(table[idx], dtype=np.float64)
        if len(row) != dim:
            raise DataError("ragged embeddings table")
        lines.append(f"{idx}," + ",".join(repr(float(x)) for x in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# single-graph text format (fixtures, k-WL pairs)
# ---------------------------------------------------------------------------

def read_graph_file(path: str | Path) -> Graph:
    """Read "n m" / m edge lines / optional "labels: ..." into a Graph."""
    path = Path(path)
    lines = _read_lines(path)
    head = lines[0].split()
    if len(head) != 2:
        raise DataError(f"{path}:1: expected 'n m'")
    n = _parse_int(head[0], path, 1)
    m = _parse_int(head[1], path, 1)
    if len(lines) < 1 + m:
        raise DataError(f"{path}: expected {m} edge lines")
    pairs = []
    for lineno in range(2, 2 + m):
        parts = lines[lineno - 1].split()
        if len(parts) != 2:
            raise DataError(f"{path}:{lineno}: expected 'u v'")
        pairs.append((_parse_int(parts[0], path, lineno), _parse_int(parts[1], path, lineno)))
    labels = None
    for lineno in range(2 + m, len(lines) + 1):
        line = lines[lineno - 1].strip()
        if not line:
            continue
        if not line.startswith("labels:"):
            raise DataError(f"{path}:{lineno}: unexpected trailing line {line!r}")
        tokens = line[len("labels:"):].split()
        if len(tokens) != n:
            raise DataError(f"{path}:{lineno}: expected {n} labels, got {len(tokens)}")
        labels = [_parse_int(tok, path, lineno) for tok in tokens]
    return Graph.from_edges(n, pairs, node_labels=labels)


def write_graph_file(g: Graph, path: str | Path) -> None:
    lines = [f"{g.num_nodes} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    if g.node_labels is not None:
        lines.append("labels: " + " ".join(str(l) for l in g.node_labels))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
