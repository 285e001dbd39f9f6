"""wlaudit: color-refinement expressiveness audits for graph ML benchmarks."""

__version__ = "0.1.0"

from .alignment import (PairSampling, SimilarityStudy, alignment_report,
                        binned_mi, embedding_cosine, kernel_cosine,
                        similarity_mi)
from .errors import DataError, ResourceCapError
from .exact import (ConvergentValidityReport, GedResult, IsoCertificate,
                    convergent_validity_report, graph_edit_distance,
                    is_isomorphic, iso_partition, iso_partition_detailed,
                    node_duplicate_partition,
                    node_orbit_partition)
from .fixtures import (chorded_cycle6, cycle6, emit_fixture_graphs,
                       fixture_dataset, fixture_graphs, path6, two_triangles)
from .ingest import (load_embeddings, load_node_task, load_tudataset,
                     read_graph_file, save_tudataset, write_embeddings,
                     write_graph_file)
from .kwl import k_wl_refine
from .model import (Dataset, Graph, Partition, instance_count,
                    label_partition, partition_stats)
from .partitions import (AdversarialRelabeling, AmiMatrix, EquivalenceTable,
                         adversarial_relabel, ami, ami_detailed, ami_report,
                         equivalence_table, expected_mutual_information,
                         majority_vote_accuracy)
from .refine import (ColoringHistory, WlSignature, refine_graphs,
                     wl_distinguishes, wl_kernel_features, wl_partition,
                     wl_refine, wl_signature)
from .trust import (EdgeEdit, IdentifiabilityReport, SensitivityReport,
                    identifiability, neighbor_pairs, wl_sensitivity)

__all__ = [name for name in dir() if not name.startswith("_")]
