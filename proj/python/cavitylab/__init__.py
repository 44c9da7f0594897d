"""Decision-network optimization via cavity expansion."""

from ._core import (  # noqa: F401
    BoundaryCondition,
    CavitylabError,
    DecisionNetwork,
    GraphSpec,
    ModelSpec,
    WeightedGraph,
    c_bound,
    c_exact,
    cavity_exact,
    cavity_exact_all,
    ce,
    ce_decide_all,
    ce_full,
    check_conditions,
    coupling_params,
    encode_mwis,
    evaluate,
    generate,
    generate_network,
    greedy_mis,
    load_instance,
    load_weighted_graph,
    mixture_matrix_check,
    mu,
    run_two_phase,
    sample_weights,
    solve_brute,
    solve_mwis_bnb,
    solve_tree,
    suggested_depth,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
