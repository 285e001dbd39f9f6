import os
import random
from pathlib import Path

import pytest

from wlaudit import Dataset, Graph
from wlaudit.fixtures import chorded_cycle6, cycle6, path6, two_triangles

DATA_ENV = "WLAUDIT_DATA"


def dataset_root() -> Path | None:
    """Directory holding the published benchmark exports, if present."""
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    local = Path(__file__).resolve().parent.parent / "data"
    return local if local.is_dir() else None


def require_benchmark(name: str, kind: str = "tudataset") -> Path:
    root = dataset_root()
    probe = {
        "tudataset": lambda d: (d / name / f"{name}_A.txt").is_file(),
        "nodetask": lambda d: (d / name / "labels.csv").is_file(),
    }[kind]
    if root is None or not probe(root):
        pytest.skip(f"benchmark {name} not present (set ${DATA_ENV} or create data/{name}/); "
                    "this environment has no dataset network access")
    return root / name


@pytest.fixture
def g_cycle():
    return cycle6()


@pytest.fixture
def g_chorded():
    return chorded_cycle6()


@pytest.fixture
def g_path():
    return path6()


@pytest.fixture
def g_triangles():
    return two_triangles()


@pytest.fixture
def fig_dataset():
    return Dataset(level="graph",
                   graphs=(cycle6(), chorded_cycle6(), path6(), two_triangles()),
                   instance_labels=(0, 1, 0, 1),
                   name="fixtures")


def random_graph(rng: random.Random, n: int, p: float, labels: int = 0) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    node_labels = [rng.randrange(labels) for _ in range(n)] if labels else None
    return Graph.from_edges(n, pairs, node_labels=node_labels)


def write_tudataset(tmp: Path, name: str, graphs: list[Graph], labels: list[int]) -> Path:
    """Write a bundled-layout directory from in-memory graphs."""
    directory = tmp / name
    directory.mkdir(parents=True, exist_ok=True)
    indicator, edge_lines, node_label_lines = [], [], []
    offset = 0
    with_labels = any(g.node_labels is not None for g in graphs)
    for gi, g in enumerate(graphs, start=1):
        indicator.extend([str(gi)] * g.num_nodes)
        for u, v in sorted(g.edges):
            edge_lines.append(f"{offset + u + 1}, {offset + v + 1}")
            edge_lines.append(f"{offset + v + 1}, {offset + u + 1}")
        if with_labels:
            node_label_lines.extend(str(l) for l in (g.node_labels or [0] * g.num_nodes))
        offset += g.num_nodes
    (directory / f"{name}_A.txt").write_text("\n".join(edge_lines) + "\n")
    (directory / f"{name}_graph_indicator.txt").write_text("\n".join(indicator) + "\n")
    (directory / f"{name}_graph_labels.txt").write_text("\n".join(str(l) for l in labels) + "\n")
    if with_labels:
        (directory / f"{name}_node_labels.txt").write_text("\n".join(node_label_lines) + "\n")
    return directory


def write_node_task(tmp: Path, name: str, g: Graph, labels: list[int],
                    groups: list[int] | None = None) -> Path:
    directory = tmp / name
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "edges.csv").write_text(
        "\n".join(f"{u},{v}" for u, v in sorted(g.edges)) + ("\n" if g.edges else ""))
    (directory / "labels.csv").write_text("\n".join(str(l) for l in labels) + "\n")
    rows = g.feature_rows()
    if rows is not None:
        (directory / "features.csv").write_text(
            "\n".join(",".join(repr(float(x)) for x in row) for row in rows) + "\n")
    if groups is not None:
        (directory / "groups.csv").write_text("\n".join(str(x) for x in groups) + "\n")
    return directory
