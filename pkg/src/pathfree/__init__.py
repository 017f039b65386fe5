"""Path-free subgraphs of random graphs: samplers, path detection, DFS
decompositions, lower-bound constructions, regime bounds and edge colorings."""

from .bounds import (BetaWindow, ColoringBounds, RegimeReport, beta_solve, beta_window,
                     chernoff_lower_tail, coloring_bounds, erdos_gallai_max,
                     expected_isolated_edges, regime_classify, two_beta_log_beta)
from .coloring import (AffinePlane, ColorNumberEstimate, ColoringCheck, EdgeColoring,
                       affine_coloring, affine_plane, block_coloring, c_estimate,
                       coloring_verify, plane_axioms_hold, random_coloring)
from .construct import (ConstructionResult, DenseExtractionParams, DenseExtractionResult,
                        ExtractionFailed, blocks_construct, dense_extract,
                        isolated_edge_construct, repeated_dense_construct)
from .decomp import (Decomposition, Group, StackOverflowWitness, dense_pair_budget, sparse_pair_budget,
                     certified_upper_bound, decomposition_verify, dfs_decompose, pair_density)
from .fields import GaloisField, NotPrimePower, galois_field
from .graph import (EdgeListError, GnpParams, Graph, HashedGnp, component_sizes, gnp,
                    gnp_generate, induced_subgraph, isolated_edge_count, read_edge_list,
                    write_edge_list)
from .harness import (ExperimentResult, ExperimentSpec, InstanceTooLarge, PreconditionError,
                      brute_force_ex, emit_report, run_experiment)
from .paths import (Answer, Certificate, ComponentTooLarge, DetectionBudget, PathVerdict,
                    color_coding_rounds, has_path, longest_path_exact)

__version__ = "0.1.0"
