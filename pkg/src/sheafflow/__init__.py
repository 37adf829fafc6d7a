"""Directed sheaf (co)homology on digraphs and generalized max-flow/min-cut.

Cellular sheaves of partial semimodules over a closed family of ground
semirings, their directed (co)homology, orientation sheaves, Poincare
duality checks, and the sheaf-theoretic max-flow min-cut pipeline with
duality-gap detection.
"""

from .semiring import BOOL, INT, NAT, QPOS, GroundSemiring, finite_semiring
from .semimodule import (DefinedSet, FiniteSemimodule, FreeSemimodule, Hom,
                         PartialSemimodule, PresentedSemimodule,
                         SubSemimodule, as_partial, check_flat_certificate,
                         coequalizer, direct_sum, down_set, equalizer,
                         extend_scalars, join_semilattice,
                         join_semilattice_from_leq, natural_preorder_leq,
                         present, tensor)
from .digraph import (CellSet, Digraph, brute_force_loops, closure,
                      edge_closure, full_cellset, is_acyclic,
                      simple_directed_loops, subdivide)
from .sheaf import (CellSheaf, constant_sheaf, csection_surjection_cover,
                    pullback, pushforward, sd_sheaf, tensor_sheaf,
                    weight_sheaf)
from .cohomology import (check_sd_invariance_cohomology, delta_cohomology,
                         h0, h0_restriction, h0_sections, h1)
from .homology import (check_exactness_at, check_sd_invariance_homology,
                       delta_homology, h0_homology, h1_direct, h1_rank_over_q,
                       h1_relative, h1_via_duality, is_locally_decomposable,
                       orientation_sheaf, orientation_stalk_invariants,
                       poincare_duality_check, universal_coefficients_check)
from .homology import h1 as homology_h1
from .flowcut import (algebraic_mfmc, enumerate_flows, ford_fulkerson_oracle,
                      gap_check, h1_equals_flows_check, mfmc_report)
from .weights import (BoxSet, Cut, LatticeSet, SupportSet, WeightedNetwork,
                      cut_is_cocycle_over_z, cut_value_set, enumerate_e_cuts,
                      flow_value_set, holim_cut_values, intersect_cut_values,
                      weighted_exactness_at_edge)
from .errors import (CriteriaNotMet, MixedGround, NoFlatCertificate,
                     NotAcyclic, NotComplete, NotSemilattice, ParseError,
                     SaturationBoundExceeded, SearchBoundExceeded,
                     SheafflowError, UndeclaredId, UnsupportedRepresentation,
                     WeightOutOfSemimodule)

__version__ = "0.1.0"
