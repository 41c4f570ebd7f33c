"""Constructive ell-vertex-rankings of d-degenerate graphs."""
from .exact import ExactResult, exact_check_all_colourings, exact_ranking_number
from .generators import GenSpec, generate
from .graph import (
    DegeneracyOrder,
    Graph,
    MultigraphGStar,
    Orientation,
    PowerGraph,
    build_g_prime,
    build_g_star,
    degeneracy_order,
    greedy_degeneracy_order_multigraph,
    orient_acyclic,
    parse_edge_list,
    power_graph,
    read_edge_list,
)
from .paths import (
    EndpointMap,
    PathFamily,
    enumerate_paths,
    enumerate_restricted_family,
    gamma_map,
    rho_map,
    tau_map,
)
from .twophase import (
    Layering,
    Palettes,
    ProblemState,
    RankingParams,
    RankingResult,
    compute_layering,
    phase1_colour,
    phase2_recolour,
    rank_bounded_degree,
    rank_degenerate,
)
from .verify import RankedColouring, Violation, find_violations, is_valid_ranking

__version__ = "0.1.0"
