import pytest

from wlaudit import (Dataset, Graph, Partition, DataError, instance_count,
                     label_partition, partition_stats)


def test_graph_rejects_self_loop():
    with pytest.raises(DataError, match="self-loop"):
        Graph.from_edges(3, [(0, 0)])


def test_graph_rejects_duplicate_edge():
    with pytest.raises(DataError, match="duplicate"):
        Graph.from_edges(3, [(0, 1), (1, 0)])


def test_graph_rejects_out_of_range_edge():
    with pytest.raises(DataError, match="out of range"):
        Graph.from_edges(2, [(0, 2)])


def test_graph_rejects_ragged_features():
    with pytest.raises(DataError, match="dimensions"):
        Graph.from_edges(2, [], node_features=[[1.0, 2.0], [1.0]])


def test_neighbors_are_symmetric_and_sorted():
    g = Graph.from_edges(4, [(2, 0), (0, 1), (3, 1)])
    assert g.neighbors == ((1, 2), (0, 3), (0,), (1,))


def test_feature_equality_is_bitwise():
    g = Graph.from_edges(2, [], node_features=[[0.0], [-0.0]])
    keys = g.initial_color_keys()
    assert keys[0] != keys[1]  # 0.0 and -0.0 differ bit-for-bit


def test_instance_count_graph_level(fig_dataset):
    assert instance_count(fig_dataset) == 4


def test_instance_count_empty():
    assert instance_count(Dataset(level="graph", graphs=(), name="empty")) == 0


def test_instance_count_node_level():
    g = Graph.from_edges(6, [(0, 1)])
    ds = Dataset(level="node", graphs=(g,), instance_labels=(0,) * 6)
    assert instance_count(ds) == 6


def test_node_level_requires_single_graph():
    g = Graph.from_edges(2, [])
    with pytest.raises(DataError):
        Dataset(level="node", graphs=(g, g))


def test_labels_must_be_contiguous():
    g = Graph.from_edges(2, [])
    with pytest.raises(DataError, match="contiguous"):
        Dataset(level="graph", graphs=(g, g), instance_labels=(0, 2))


def test_label_partition_simple():
    g = Graph.from_edges(1, [])
    ds = Dataset(level="graph", graphs=(g,) * 4, instance_labels=(0, 1, 0, 2))
    p = label_partition(ds)
    assert p.class_of == (0, 1, 0, 2)
    assert partition_stats(p) == (3, 2)


def test_label_partition_all_identical():
    g = Graph.from_edges(1, [])
    ds = Dataset(level="graph", graphs=(g,) * 5, instance_labels=(0,) * 5)
    assert partition_stats(label_partition(ds)) == (1, 0)


def test_label_partition_missing_labels():
    ds = Dataset(level="graph", graphs=(Graph.from_edges(1, []),))
    with pytest.raises(DataError, match="labels"):
        label_partition(ds)


def test_partition_stats_single_class():
    p = Partition.from_assignments([7] * 5)
    assert partition_stats(p) == (1, 0)


def test_partition_stats_all_distinct():
    p = Partition.from_assignments(range(6))
    assert partition_stats(p) == (6, 6)


def test_partition_first_occurrence_ids():
    p = Partition.from_assignments(["b", "a", "b", "c"])
    assert p.class_of == (0, 1, 0, 2)
    assert p.class_sizes == (2, 1, 1)


def test_partition_matches_distinct_label_count():
    g = Graph.from_edges(1, [])
    ds = Dataset(level="graph", graphs=(g,) * 6, instance_labels=(2, 0, 1, 2, 0, 1))
    assert partition_stats(label_partition(ds))[0] == len(set(ds.instance_labels))


def test_refines():
    fine = Partition.from_assignments([0, 1, 2, 3])
    coarse = Partition.from_assignments([0, 0, 1, 1])
    assert fine.refines(coarse)
    assert not coarse.refines(fine)
