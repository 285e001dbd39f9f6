"""Six-node demonstration graphs: a cycle, a chorded cycle, a path, and a
pair of triangles. The cycle and the triangle pair are the classic
refinement-indistinguishable, non-isomorphic couple.
"""

from __future__ import annotations

from pathlib import Path

from .model import Dataset, Graph, GRAPH_LEVEL


def cycle6() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])


def chorded_cycle6() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)])


def path6() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])


def two_triangles() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


FIXTURE_BUILDERS = {
    "cycle6": cycle6,
    "chorded_cycle6": chorded_cycle6,
    "path6": path6,
    "two_triangles": two_triangles,
}


def fixture_graphs() -> list[Graph]:
    return [build() for build in FIXTURE_BUILDERS.values()]


def fixture_dataset(labels: tuple[int, ...] | None = None) -> Dataset:
    return Dataset(
        level=GRAPH_LEVEL,
        graphs=tuple(fixture_graphs()),
        instance_labels=labels,
        name="fixtures",
    )


def emit_fixture_graphs(out: str | Path) -> list[Path]:
    """Write the four fixtures in single-graph text format; returns the paths."""
    from .ingest import write_graph_file  # local import to avoid a cycle

    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, build in FIXTURE_BUILDERS.items():
        path = out / f"{name}.graph"
        write_graph_file(build(), path)
        paths.append(path)
    return paths
