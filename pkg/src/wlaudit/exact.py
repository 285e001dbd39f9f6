"""Exact desk-scale oracles: graph isomorphism, node orbits and duplicates,
and graph edit distance. These ground-truth the refinement heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

from .errors import DataError, ResourceCapError
from .model import Dataset, Graph, Partition, canonical_edge, GRAPH_LEVEL
from .refine import wl_refine, wl_signature, wl_distinguishes
from .util import parallel_map

DEFAULT_ISO_NODE_CAP = 512
DEFAULT_ORBIT_NODE_CAP = 64
DEFAULT_GED_NODE_CAP = 8


@dataclass(frozen=True)
class IsoCertificate:
    isomorphic: bool
    witness: Optional[tuple[int, ...]] = None  # g1 node i -> g2 node witness[i]


@dataclass(frozen=True)
class GedResult:
    """Minimal unit-cost edit count; bijection indices >= num_nodes are padding."""

    distance: int
    optimal_bijection: tuple[int, ...]


# ---------------------------------------------------------------------------
# joint color refinement on a pair (list-based; tuned for small graphs)
# ---------------------------------------------------------------------------

def _refine_pair(adj1, adj2, c1, c2):
    """Refine both graphs under shared color ids until stable.

    Returns (c1, c2, next_free_color, compatible). compatible goes False as
    soon as the per-graph color histograms diverge, which proves
    non-isomorphism.
    """
    def histogram(c):
        h = {}
        for x in c:
            h[x] = h.get(x, 0) + 1
        return h

    num = None
    while True:
        if histogram(c1) != histogram(c2):
            return c1, c2, 0, False
        sig1 = [(c1[i], tuple(sorted(c1[j] for j in adj1[i]))) for i in range(len(adj1))]
        sig2 = [(c2[i], tuple(sorted(c2[j] for j in adj2[i]))) for i in range(len(adj2))]
        table = {s: i for i, s in enumerate(sorted(set(sig1) | set(sig2)))}
        c1 = [table[s] for s in sig1]
        c2 = [table[s] for s in sig2]
        if len(table) == num:
            return c1, c2, len(table), True
        num = len(table)


def _initial_pair_colors(g1: Graph, g2: Graph):
    keys1 = g1.initial_color_keys()
    keys2 = g2.initial_color_keys()
    table = {k: i for i, k in enumerate(sorted(set(keys1) | set(keys2)))}
    return [table[k] for k in keys1], [table[k] for k in keys2]


def _search_bijection(adj1, adj2, c1, c2, edges1, edges2):
    """Individualization-refinement backtracking; returns a witness or None."""
    c1, c2, free, ok = _refine_pair(adj1, adj2, list(c1), list(c2))
    if not ok:
        return None
    classes1: dict[int, list[int]] = {}
    classes2: dict[int, list[int]] = {}
    for i, c in enumerate(c1):
        classes1.setdefault(c, []).append(i)
    for i, c in enumerate(c2):
        classes2.setdefault(c, []).append(i)
    split = [(len(m), c) for c, m in classes1.items() if len(m) > 1]
    if not split:
        mapping = [0] * len(adj1)
        for c, members in classes1.items():
            mapping[members[0]] = classes2[c][0]
        if _verify_mapping(mapping, edges1, edges2):
            return tuple(mapping)
        return None
    _, color = min(split)
    pivot = classes1[color][0]
    for target in classes2[color]:
        nc1 = list(c1)
        nc2 = list(c2)
        nc1[pivot] = free
        nc2[target] = free
        found = _search_bijection(adj1, adj2, nc1, nc2, edges1, edges2)
        if found is not None:
            return found
    return None


def _verify_mapping(mapping, edges1, edges2) -> bool:
    mapped = {canonical_edge(mapping[u], mapping[v]) for u, v in edges1}
    return mapped == edges2


def is_isomorphic(g1: Graph, g2: Graph, node_cap: int = DEFAULT_ISO_NODE_CAP) -> IsoCertificate:
    """Exact isomorphism test with a verified witness on success."""
    if max(g1.num_nodes, g2.num_nodes) > node_cap:
        raise ResourceCapError(
            f"isomorphism search capped at {node_cap} nodes, "
            f"got {max(g1.num_nodes, g2.num_nodes)}")
    if g1.num_nodes != g2.num_nodes or g1.num_edges != g2.num_edges:
        return IsoCertificate(False)
    c1, c2 = _initial_pair_colors(g1, g2)
    witness = _search_bijection(
        g1.neighbors, g2.neighbors, c1, c2, set(g1.edges), set(g2.edges))
    if witness is None:
        return IsoCertificate(False)
    keys1 = g1.initial_color_keys()
    keys2 = g2.initial_color_keys()
    if any(keys1[i] != keys2[witness[i]] for i in range(g1.num_nodes)):
        raise AssertionError("witness failed initial-color verification")
    return IsoCertificate(True, witness)


def iso_partition_detailed(ds: Dataset, node_cap: int = DEFAULT_ISO_NODE_CAP,
                           threads: int = 1,
                           cap_fallback: bool = False) -> tuple[Partition, int]:
    """Partition graphs into exact isomorphism classes.

    Graphs are bucketed by their stable refinement signature (sound: equal
    signatures are necessary for isomorphism) and exhaustively compared
    within buckets. With cap_fallback, comparisons beyond node_cap use the
    refinement-only verdict (shared bucket => merged) instead of raising;
    the second return value counts those heuristic merges.
    """
    if ds.level != GRAPH_LEVEL:
        raise DataError("iso_partition requires a graph-level dataset; "
                        "use node_duplicate_partition for node instances")
    history = wl_refine(ds, t_max=None)
    buckets: dict[tuple, list[int]] = {}
    for g in range(len(ds.graphs)):
        key = wl_signature(history, g, None).color_histogram
        buckets.setdefault(key, []).append(g)

    def resolve(bucket: list[int]) -> tuple[list[list[int]], int]:
        classes: list[list[int]] = []
        heuristic = 0
        for g in bucket:
            for members in classes:
                try:
                    merge = is_isomorphic(ds.graphs[g], ds.graphs[members[0]],
                                          node_cap).isomorphic
                except ResourceCapError:
                    if not cap_fallback:
                        raise
                    merge = True  # refinement-only verdict, flagged below
                    heuristic += 1
                if merge:
                    members.append(g)
                    break
            else:
                classes.append([g])
        return classes, heuristic

    ordered_buckets = list(buckets.values())
    resolved = parallel_map(resolve, ordered_buckets, threads)
    class_key = [0] * len(ds.graphs)
    heuristic_merges = 0
    for classes, heuristic in resolved:
        heuristic_merges += heuristic
        for members in classes:
            for g in members:
                class_key[g] = members[0]
    return Partition.from_assignments(class_key), heuristic_merges


def iso_partition(ds: Dataset, node_cap: int = DEFAULT_ISO_NODE_CAP,
                  threads: int = 1, cap_fallback: bool = False) -> Partition:
    """Exact isomorphism classes; see iso_partition_detailed."""
    return iso_partition_detailed(ds, node_cap, threads, cap_fallback)[0]


def node_duplicate_partition(g: Graph) -> Partition:
    """Group twin nodes: equal initial colors and N(u)\\{v} = N(v)\\{u}.

    Twins are isomorphic nodes (the swap is an automorphism); classes are
    the transitive closure of the twin relation. Scales to large graphs,
    unlike exact orbits.
    """
    keys = g.initial_color_keys()
    parent = list(range(g.num_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    open_groups: dict = {}
    closed_groups: dict = {}
    for i in range(g.num_nodes):
        nbrs = g.neighbors[i]
        open_groups.setdefault((keys[i], nbrs), []).append(i)
        closed = tuple(sorted(nbrs + (i,)))
        closed_groups.setdefault((keys[i], closed), []).append(i)
    for members in open_groups.values():
        for other in members[1:]:
            union(members[0], other)
    for members in closed_groups.values():
        for other in members[1:]:
            union(members[0], other)
    return Partition.from_assignments(find(i) for i in range(g.num_nodes))


def node_orbit_partition(g: Graph, node_cap: int = DEFAULT_ORBIT_NODE_CAP) -> Partition:
    """Exact automorphism orbits via individualized isomorphism searches.

    Each discovered automorphism merges every node with its image, so few
    searches are needed in practice.
    """
    if g.num_nodes > node_cap:
        raise ResourceCapError(f"orbit search capped at {node_cap} nodes, got {g.num_nodes}")
    c0, _ = _initial_pair_colors(g, g)
    stable, _, free, _ = _refine_pair(g.neighbors, g.neighbors, list(c0), list(c0))
    parent = list(range(g.num_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    edges = set(g.edges)
    for i in range(g.num_nodes):
        for j in range(i + 1, g.num_nodes):
            if stable[i] != stable[j] or find(i) == find(j):
                continue
            c1 = list(stable)
            c2 = list(stable)
            c1[i] = free
            c2[j] = free
            auto = _search_bijection(g.neighbors, g.neighbors, c1, c2, edges, edges)
            if auto is not None:
                for u, v in enumerate(auto):
                    union(u, v)
    return Partition.from_assignments(find(i) for i in range(g.num_nodes))


def graph_edit_distance(g1: Graph, g2: Graph,
                        node_cap: int = DEFAULT_GED_NODE_CAP) -> GedResult:
    """Exact unit-cost edit distance by exhaustive bijection search.

    The smaller graph is padded with isolated placeholder nodes; mapping a
    placeholder to a real node costs one node insertion (resp. deletion),
    real-to-real mappings cost one substitution when initial colors differ,
    and unmatched edges cost one apiece.
    """
    n = max(g1.num_nodes, g2.num_nodes)
    if n > node_cap:
        raise ResourceCapError(f"edit distance capped at {node_cap} nodes, got {n}")
    keys1 = g1.initial_color_keys() + [None] * (n - g1.num_nodes)
    keys2 = g2.initial_color_keys() + [None] * (n - g2.num_nodes)
    edges1 = list(g1.edges)
    edges2 = set(g2.edges)
    best = None
    best_perm = None
    for perm in permutations(range(n)):
        cost = 0
        for u in range(n):
            a, b = keys1[u], keys2[perm[u]]
            if a is None or b is None:
                if a is not b:
                    cost += 1  # node insertion / deletion
            elif a != b:
                cost += 1  # color substitution
        mapped = {canonical_edge(perm[u], perm[v]) for u, v in edges1}
        cost += len(mapped - edges2) + len(edges2 - mapped)
        if best is None or cost < best:
            best = cost
            best_perm = perm
            if best == 0:
                break
    return GedResult(int(best), tuple(best_perm))


@dataclass(frozen=True)
class PairComparison:
    graph_a: int
    graph_b: int
    edit_distance: int
    wl_distinguished: bool


@dataclass(frozen=True)
class ConvergentValidityReport:
    """All-pairs edit distances vs. refinement verdicts, with inversions.

    An inversion pairs a smaller-distance pair that refinement separates
    with a larger-distance pair it cannot separate.
    """

    pairs: tuple[PairComparison, ...]
    inversions: tuple[tuple[tuple[int, int], tuple[int, int]], ...]


def convergent_validity_report(graphs: Sequence[Graph],
                               ged_node_cap: int = DEFAULT_GED_NODE_CAP) -> ConvergentValidityReport:
    ds = Dataset(level=GRAPH_LEVEL, graphs=tuple(graphs), name="pairs")
    history = wl_refine(ds, t_max=None)
    rows = []
    for a in range(len(graphs)):
        for b in range(a + 1, len(graphs)):
            rows.append(PairComparison(
                graph_a=a,
                graph_b=b,
                edit_distance=graph_edit_distance(graphs[a], graphs[b], ged_node_cap).distance,
                wl_distinguished=wl_distinguishes(history, a, b, None),
            ))
    inversions = []
    for r1 in rows:
        if not r1.wl_distinguished:
            continue
        for r2 in rows:
            if not r2.wl_distinguished and r1.edit_distance < r2.edit_distance:
                inversions.append(((r1.graph_a, r1.graph_b), (r2.graph_a, r2.graph_b)))
    return ConvergentValidityReport(tuple(rows), tuple(inversions))
