"""Pseudo 2-factors with at most max(0, f(G)) non-cycle components."""

from .deficiency import (BoundReport, BudgetExceeded, DeficiencyCertificate,
                         all_independent_satisfy_2factor_condition, classical_bound,
                         compute_f, independence_number, verify_certificate)
from .driver import (PseudoTwoFactor, SolveReport, check_theorem_consequences,
                     oracle_exact_f, oracle_max_two_regular, oracle_min_non_cycle,
                     optimal_cycle_cover_range, solve, validate, validation_errors)
from .forest import (forest_alpha, forest_max_matching, forest_pseudo_factor,
                     max_independent_set_containing)
from .graph import (Graph, GraphInputError, connected_components, from_edge_list,
                    is_forest, is_independent, min_degree_of_set, neighborhood_of_set,
                    read_edge_list, format_edge_list)
from .packer import OrientedCyclePacking, pack_to_optimum
