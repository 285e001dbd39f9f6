"""Classic (oblivious) k-WL refinement over ordered k-tuples, run jointly
on a pair of graphs so tuple colors are directly comparable.

In this variant 2-WL has exactly the distinguishing power of 1-WL and the
hierarchy grows strictly from k=3 on.
"""

from __future__ import annotations

from itertools import product
from typing import Optional

from .errors import ResourceCapError
from .model import Graph

DEFAULT_NODE_CAPS = {2: 16, 3: 10}


def _default_cap(k: int) -> int:
    return DEFAULT_NODE_CAPS.get(k, 6)


def _initial_tuple_keys(g: Graph, k: int) -> list[tuple]:
    """Ordered isomorphism type of each k-tuple: node keys + pair pattern."""
    keys = g.initial_color_keys()
    adj = g.adjacency_matrix
    out = []
    for tup in product(range(g.num_nodes), repeat=k):
        pattern = tuple(
            (tup[i] == tup[j], bool(adj[tup[i], tup[j]]))
            for i in range(k) for j in range(i + 1, k)
        )
        out.append((tuple(keys[v] for v in tup), pattern))
    return out


def _recode(keys1: list, keys2: list) -> tuple[list[int], list[int], int]:
    table = {key: c for c, key in enumerate(sorted(set(keys1) | set(keys2)))}
    return [table[k] for k in keys1], [table[k] for k in keys2], len(table)


def _histogram(colors: list[int]) -> dict[int, int]:
    h: dict[int, int] = {}
    for c in colors:
        h[c] = h.get(c, 0) + 1
    return h


def k_wl_refine(g1: Graph, g2: Graph, k: int, t_max: Optional[int] = None,
                node_cap: Optional[int] = None) -> tuple[bool, int]:
    """Joint k-WL run; returns (distinguishes, iterations_used).

    iterations_used is the iteration at which the tuple-color histograms
    first differ (0 = initial coloring), or the total iterations run when
    the graphs stay equivalent.
    """
    if k < 2:
        raise ValueError("k must be >= 2 (use the 1-WL refinement for k=1)")
    cap = node_cap if node_cap is not None else _default_cap(k)
    n_max = max(g1.num_nodes, g2.num_nodes)
    if n_max > cap:
        raise ResourceCapError(
            f"k-WL with k={k} capped at {cap} nodes, got {n_max}")

    c1, c2, num_colors = _recode(_initial_tuple_keys(g1, k), _initial_tuple_keys(g2, k))
    if _histogram(c1) != _histogram(c2):
        return True, 0

    def step(n: int, colors: list[int]) -> list[tuple]:
        # tuples are enumerated row-major, so position `pos` has stride
        # n**(k-1-pos) and neighbors are reached by pure index arithmetic
        strides = [n ** (k - 1 - pos) for pos in range(k)]
        sigs = []
        for idx in range(len(colors)):
            rest = idx
            multisets = []
            for pos in range(k):
                s = strides[pos]
                digit = rest // s
                rest -= digit * s
                base = idx - digit * s
                ms = sorted(colors[base + w * s] for w in range(n))
                multisets.append(tuple(ms))
            sigs.append((colors[idx], tuple(multisets)))
        return sigs

    limit = t_max if t_max is not None else len(c1) + len(c2) + 1
    t = 0
    while t < limit:
        sig1 = step(g1.num_nodes, c1)
        sig2 = step(g2.num_nodes, c2)
        c1, c2, k_new = _recode(sig1, sig2)
        t += 1
        if _histogram(c1) != _histogram(c2):
            return True, t
        if k_new == num_colors:
            break
        num_colors = k_new
    return False, t
