"""Exact desk-scale oracles: automorphism orbits, twin detection, edit
distance, and the metric inversions that make refinement a poor proxy for
edit-distance prediction.
"""

from wlaudit import (Graph, convergent_validity_report, graph_edit_distance,
                     node_duplicate_partition, node_orbit_partition)
from wlaudit.fixtures import chorded_cycle6, cycle6, path6, two_triangles

print("automorphism orbits (exact):")
for name, g in [("cycle6", cycle6()), ("path6", path6()),
                ("chorded_cycle6", chorded_cycle6())]:
    orbits = node_orbit_partition(g)
    print(f"  {name:16s} {orbits.num_classes} orbits, sizes {sorted(orbits.class_sizes)}")

star = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
twins = node_duplicate_partition(star)
print(f"\nstar graph twins: leaves collapse into one class "
      f"(sizes {sorted(twins.class_sizes)})")

print("\nunit-cost edit distances between the fixtures:")
names = ["cycle6", "chorded_cycle6", "path6", "two_triangles"]
graphs = [cycle6(), chorded_cycle6(), path6(), two_triangles()]
for a in range(4):
    for b in range(a + 1, 4):
        d = graph_edit_distance(graphs[a], graphs[b]).distance
        print(f"  {names[a]:16s} -> {names[b]:16s} {d}")

report = convergent_validity_report(graphs)
print(f"\nmetric inversions (close pair split, distant pair tied): "
      f"{len(report.inversions)}")
for (a1, b1), (a2, b2) in report.inversions:
    print(f"  distance({names[a1]}, {names[b1]}) < distance({names[a2]}, {names[b2]}) "
          "yet only the closer pair is separated")
