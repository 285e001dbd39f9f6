import random

import numpy as np
import pytest

from wlaudit import (Dataset, Graph, DataError, identifiability,
                     neighbor_pairs, wl_sensitivity)
from wlaudit.fixtures import cycle6

from conftest import random_graph


def test_identifiability_identical_instances():
    g = cycle6()
    ds = Dataset(level="graph", graphs=(g,) * 4, instance_labels=(0,) * 4, name="same")
    report = identifiability(ds, t=3)
    assert report.overall.count == 4
    assert report.overall.identifiable == 0
    assert report.overall.fraction == 0.0


def test_identifiability_node_level_with_groups():
    # path ends are interchangeable; the rest split by position
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    ds = Dataset(level="node", graphs=(g,), instance_labels=(0,) * 5,
                 groups=(0, 0, 1, 1, 1), name="path5")
    report = identifiability(ds, t=3, group_names={0: "left", 1: "right"})
    assert report.overall.identifiable == 1  # only the middle node is unique
    assert [g.group for g in report.by_group] == ["left", "right"]
    assert sum(g.count for g in report.by_group) == report.overall.count
    assert sum(g.identifiable for g in report.by_group) == report.overall.identifiable


def test_identifiability_monotone_in_t():
    rng = random.Random(6)
    g = random_graph(rng, 12, 0.3)
    ds = Dataset(level="node", graphs=(g,), instance_labels=(0,) * 12, name="rand")
    fractions = [identifiability(ds, t=t).overall.fraction for t in range(5)]
    for a, b in zip(fractions, fractions[1:]):
        assert b >= a


def test_group_membership_excluded_from_colors_by_default():
    # a 4-cycle with alternating groups: structurally all nodes are alike,
    # so nobody is identifiable unless groups seed the colors
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    ds = Dataset(level="node", graphs=(g,), instance_labels=(0,) * 4,
                 groups=(0, 1, 0, 1), name="ring")
    plain = identifiability(ds, t=3)
    assert plain.overall.identifiable == 0
    seeded = identifiability(ds, t=3, include_group_color=True)
    assert seeded.overall.identifiable == 0  # still symmetric under the swap
    lopsided = Dataset(level="node", graphs=(g,), instance_labels=(0,) * 4,
                       groups=(0, 1, 1, 1), name="ring2")
    assert identifiability(lopsided, t=3).overall.identifiable == 0
    # nodes 1 and 3 stay swappable by the 0-2 reflection; 0 and 2 split off
    assert identifiability(lopsided, t=3,
                           include_group_color=True).overall.identifiable == 2


def test_identifiability_group_names_without_groups():
    ds = Dataset(level="graph", graphs=(cycle6(),), instance_labels=(0,), name="one")
    with pytest.raises(DataError, match="group"):
        identifiability(ds, t=1, group_names={0: "a"})


# -- neighbor enumeration --------------------------------------------------------

def test_neighbor_pairs_cycle_counts():
    edits = neighbor_pairs(cycle6())
    kinds = [e.kind for e in edits]
    assert kinds.count("delete") == 6
    assert kinds.count("add") == 9  # C(6,2) - 6 non-edges
    assert len(edits) == 15
    for e in edits:
        assert e.graph.num_nodes == 6


def test_neighbor_pairs_empty_graph():
    g = Graph.from_edges(3, [])
    edits = neighbor_pairs(g)
    assert all(e.kind == "add" for e in edits)
    assert len(edits) == 3


def test_neighbor_pairs_seeded_sample_deterministic():
    g = cycle6()
    a = neighbor_pairs(g, budget=5, seed=11)
    b = neighbor_pairs(g, budget=5, seed=11)
    assert [(e.kind, e.u, e.v) for e in a] == [(e.kind, e.u, e.v) for e in b]
    assert len(a) == 5


def test_neighbor_pairs_budget_cap():
    with pytest.raises(DataError, match="budget"):
        neighbor_pairs(cycle6(), budget=16)


# -- sensitivity -------------------------------------------------------------------

def test_every_edit_breaks_regular_cycle():
    report = wl_sensitivity(cycle6(), t=3)
    assert report.changed_fraction == 1.0


def test_isomorphic_deletions_share_one_signature():
    report = wl_sensitivity(cycle6(), t=None or 3)
    deletion_sigs = {sig for (kind, _, _), sig in zip(report.edits, report.neighbor_signatures)
                     if kind == "delete"}
    assert len(deletion_sigs) == 1  # every C6 deletion yields the same path


def test_sensitivity_relabel_invariant():
    rng = random.Random(9)
    g = random_graph(rng, 7, 0.4)
    perm = list(range(7))
    rng.shuffle(perm)
    r1 = wl_sensitivity(g, t=2)
    r2 = wl_sensitivity(g.relabeled(perm), t=2)
    assert r1.changed_fraction == r2.changed_fraction


def test_sensitivity_with_embeddings():
    g = cycle6()
    edits = neighbor_pairs(g)
    emb = {0: np.zeros(3)}
    for i in range(1, len(edits) + 1):
        emb[i] = np.full(3, float(i))
    report = wl_sensitivity(g, t=2, embeddings=emb)
    assert report.max_l1 == pytest.approx(3.0 * len(edits))
    assert all(d is not None for d in report.l1_distances)
    assert report.missing_embeddings == ()
    assert max(d for d in report.l1_distances) == report.max_l1


def test_sensitivity_partial_embeddings_flagged():
    g = cycle6()
    emb = {0: np.zeros(2), 1: np.ones(2)}
    report = wl_sensitivity(g, t=2, embeddings=emb)
    assert report.missing_embeddings == tuple(range(2, 16))
    assert report.l1_distances[0] == pytest.approx(2.0)
    assert report.l1_distances[1] is None
