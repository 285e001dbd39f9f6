"""Compare subtree-kernel similarities against external embedding
similarities, split by label agreement, and measure which carries more
information about label matches.

Here the "embeddings" are synthetic: one set is label-informed, the other
is pure noise, so the study's binned-MI ordering is predictable.
"""

import numpy as np

from wlaudit import Dataset, Graph, alignment_report

rng = np.random.default_rng(3)


def random_graph(n, p):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, pairs)


graphs = tuple(random_graph(int(rng.integers(5, 9)), 0.4) for _ in range(40))
labels = tuple(int(rng.integers(2)) for _ in range(40))
ds = Dataset(level="graph", graphs=graphs, instance_labels=labels, name="demo")

label_informed = {i: np.concatenate([rng.normal(size=6), [6.0 * labels[i]]])
                  for i in range(40)}
noise = {i: rng.normal(size=7) for i in range(40)}

kernel_only = alignment_report(ds, t=4)
informed = alignment_report(ds, embeddings=label_informed, t=4)
random_emb = alignment_report(ds, embeddings=noise, t=4)

print(f"{kernel_only.num_pairs} graph pairs, 20 similarity bins, MI in bits\n")
print(f"kernel similarity ~ label match        MI = {kernel_only.kernel_mi:.4f}")
print(f"label-informed embeddings ~ label match MI = {informed.embedding_mi:.4f}")
print(f"noise embeddings ~ label match          MI = {random_emb.embedding_mi:.4f}")

print("\nhistograms (same-label pairs vs. different-label pairs, kernel source):")
print("  same      ", list(kernel_only.kernel_hist_same))
print("  different ", list(kernel_only.kernel_hist_different))

assert informed.embedding_mi > random_emb.embedding_mi
print("\nlabel-informed embeddings beat noise, as they must.")
