import warnings

import pytest

from wlaudit import (DataError, Graph, load_embeddings, load_node_task,
                     load_tudataset, read_graph_file, save_tudataset,
                     write_embeddings, write_graph_file)
from wlaudit.fixtures import chorded_cycle6, cycle6, path6

from conftest import write_node_task, write_tudataset


def two_triangle_dir(tmp_path, name="TOY"):
    t1 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    return write_tudataset(tmp_path, name, [t1, t1], [1, -1])


# -- bundled graph layout -------------------------------------------------------

def test_load_two_triangle_toy(tmp_path):
    ds = load_tudataset(two_triangle_dir(tmp_path), "TOY")
    assert len(ds.graphs) == 2
    assert all(g.num_nodes == 3 for g in ds.graphs)
    assert all(g.num_edges == 3 for g in ds.graphs)
    assert ds.instance_labels == (1, 0)  # normalized by sorted original value


def test_load_is_order_stable(tmp_path):
    g1 = cycle6()
    g2 = path6()
    directory = write_tudataset(tmp_path, "ORD", [g1, g2], [0, 1])
    ds = load_tudataset(directory, "ORD")
    assert ds.graphs[0].num_edges == 6
    assert ds.graphs[1].num_edges == 5


def test_round_trip(tmp_path):
    graphs = [cycle6(), chorded_cycle6(), path6()]
    directory = write_tudataset(tmp_path, "RT", graphs, [0, 1, 0])
    ds = load_tudataset(directory, "RT")
    out = tmp_path / "resaved"
    save_tudataset(ds, out, "RT")
    again = load_tudataset(out, "RT")
    assert again == ds


def test_round_trip_with_attributes(tmp_path):
    g = Graph.from_edges(2, [(0, 1)], node_features=[[0.1, -3.5], [2.0, 1e-17]])
    from wlaudit import Dataset
    ds = Dataset(level="graph", graphs=(g,), instance_labels=(0,), name="ATTR")
    save_tudataset(ds, tmp_path / "ATTR", "ATTR")
    again = load_tudataset(tmp_path / "ATTR", "ATTR")
    assert again.graphs[0].node_features == g.node_features


def test_missing_file(tmp_path):
    with pytest.raises(DataError, match="missing required file"):
        load_tudataset(tmp_path, "NOPE")


def test_malformed_edge_line_reports_lineno(tmp_path):
    directory = two_triangle_dir(tmp_path)
    (directory / "TOY_A.txt").write_text("1, 2\nbogus\n")
    with pytest.raises(DataError, match="TOY_A.txt:2"):
        load_tudataset(directory, "TOY")


def test_cross_boundary_edge(tmp_path):
    directory = two_triangle_dir(tmp_path)
    a = directory / "TOY_A.txt"
    a.write_text(a.read_text() + "1, 4\n4, 1\n")
    with pytest.raises(DataError, match="crosses graph boundaries"):
        load_tudataset(directory, "TOY")


def test_asymmetric_edge_list(tmp_path):
    directory = two_triangle_dir(tmp_path)
    a = directory / "TOY_A.txt"
    lines = a.read_text().strip().split("\n")
    a.write_text("\n".join(lines[:-1]) + "\n")  # drop one mirror
    with pytest.raises(DataError, match="mirror"):
        load_tudataset(directory, "TOY")


def test_self_loop_rejected(tmp_path):
    directory = two_triangle_dir(tmp_path)
    a = directory / "TOY_A.txt"
    a.write_text(a.read_text() + "2, 2\n")
    with pytest.raises(DataError, match="self-loop"):
        load_tudataset(directory, "TOY")


def test_duplicate_edge_rejected_and_dedupe_flag(tmp_path):
    directory = two_triangle_dir(tmp_path)
    a = directory / "TOY_A.txt"
    a.write_text(a.read_text() + "1, 2\n2, 1\n")
    with pytest.raises(DataError, match="duplicate edge"):
        load_tudataset(directory, "TOY")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        ds = load_tudataset(directory, "TOY", dedupe=True)
    assert len(caught) == 2
    assert ds.graphs[0].num_edges == 3


def test_crlf_line_endings_accepted(tmp_path):
    directory = two_triangle_dir(tmp_path)
    for f in directory.iterdir():
        f.write_bytes(f.read_text().replace("\n", "\r\n").encode())
    ds = load_tudataset(directory, "TOY")
    assert len(ds.graphs) == 2 and ds.graphs[0].num_edges == 3
    emb = tmp_path / "emb.csv"
    emb.write_bytes(b"id,e0\r\n0,1.5\r\n")
    assert load_embeddings(emb)[0][0] == 1.5


def test_whitespace_tolerated(tmp_path):
    directory = two_triangle_dir(tmp_path)
    a = directory / "TOY_A.txt"
    content = a.read_text().replace(", ", " ,  ")
    a.write_text(content + "\n\n")
    ds = load_tudataset(directory, "TOY")
    assert ds.graphs[0].num_edges == 3


def test_initial_color_policies(tmp_path):
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    directory = write_tudataset(tmp_path, "IMDB-BINARY", [g], [0])
    ds = load_tudataset(directory, "IMDB-BINARY")
    assert ds.graphs[0].node_labels == (1, 2, 1)  # degree seeding for the IMDB pair
    directory2 = write_tudataset(tmp_path, "PLAIN", [g], [0])
    ds2 = load_tudataset(directory2, "PLAIN")
    assert ds2.graphs[0].node_labels is None  # featureless default is uniform
    ds3 = load_tudataset(directory2, "PLAIN", initial_colors="degree")
    assert ds3.graphs[0].node_labels == (1, 2, 1)
    with pytest.raises(DataError, match="no node labels"):
        load_tudataset(directory2, "PLAIN", initial_colors="labels")


def test_node_labels_preferred_over_attributes(tmp_path):
    g = Graph.from_edges(2, [(0, 1)], node_labels=[3, 5])
    directory = write_tudataset(tmp_path, "BOTH", [g], [0])
    (directory / "BOTH_node_attributes.txt").write_text("1.5\n2.5\n")
    ds = load_tudataset(directory, "BOTH")
    assert ds.graphs[0].node_labels == (3, 5)
    ds_attr = load_tudataset(directory, "BOTH", initial_colors="attributes")
    assert ds_attr.graphs[0].node_labels is None
    assert ds_attr.graphs[0].node_features is not None


# -- node-task layout -------------------------------------------------------------

def test_load_node_task_toy(tmp_path):
    g = Graph.from_edges(2, [(0, 1)])
    directory = write_node_task(tmp_path, "toy", g, [0, 1])
    ds = load_node_task(directory)
    assert ds.level == "node"
    assert ds.num_instances == 2
    assert ds.name == "toy"


def test_load_node_task_with_groups_and_features(tmp_path):
    g = Graph.from_edges(3, [(0, 1), (1, 2)], node_features=[[1.0], [2.0], [1.0]])
    directory = write_node_task(tmp_path, "grp", g, [0, 1, 0], groups=[0, 0, 1])
    ds = load_node_task(directory)
    assert ds.groups == (0, 0, 1)
    assert ds.graphs[0].node_features == g.node_features


def test_node_task_edge_out_of_range(tmp_path):
    g = Graph.from_edges(2, [(0, 1)])
    directory = write_node_task(tmp_path, "bad", g, [0, 1])
    (directory / "edges.csv").write_text("0,5\n")
    with pytest.raises(DataError, match="out of range"):
        load_node_task(directory)


def test_node_task_ragged_features(tmp_path):
    g = Graph.from_edges(2, [(0, 1)])
    directory = write_node_task(tmp_path, "ragged", g, [0, 1])
    (directory / "features.csv").write_text("1.0,2.0\n3.0\n")
    with pytest.raises(DataError, match="ragged"):
        load_node_task(directory)


# -- embeddings --------------------------------------------------------------------

def test_embeddings_round_trip(tmp_path):
    import numpy as np
    table = {0: np.array([1.5, -2.0]), 1: np.array([0.25, 1e-9]), 5: np.array([3.0, 4.0])}
    path = tmp_path / "emb.csv"
    write_embeddings(table, path)
    loaded = load_embeddings(path)
    assert set(loaded) == {0, 1, 5}
    for k in table:
        assert (loaded[k] == table[k]).all()


def test_embeddings_duplicate_id(tmp_path):
    path = tmp_path / "emb.csv"
    path.write_text("id,e0\n5,1.0\n5,2.0\n")
    with pytest.raises(DataError, match="duplicate id 5"):
        load_embeddings(path)


def test_embeddings_ragged_row(tmp_path):
    path = tmp_path / "emb.csv"
    path.write_text("id,e0,e1\n0,1.0\n")
    with pytest.raises(DataError, match="expected 3 cells"):
        load_embeddings(path)


def test_embeddings_non_numeric(tmp_path):
    path = tmp_path / "emb.csv"
    path.write_text("id,e0\n0,spam\n")
    with pytest.raises(DataError, match="expected a number"):
        load_embeddings(path)


def test_embeddings_bad_header(tmp_path):
    path = tmp_path / "emb.csv"
    path.write_text("idx,a,b\n0,1.0,2.0\n")
    with pytest.raises(DataError, match="header"):
        load_embeddings(path)


# -- single-graph text format --------------------------------------------------------

def test_graph_file_round_trip(tmp_path):
    g = Graph.from_edges(4, [(0, 1), (2, 3)], node_labels=[0, 1, 0, 1])
    path = tmp_path / "g.graph"
    write_graph_file(g, path)
    assert read_graph_file(path) == g


def test_graph_file_bad_header(tmp_path):
    path = tmp_path / "g.graph"
    path.write_text("3\n")
    with pytest.raises(DataError, match="expected 'n m'"):
        read_graph_file(path)
