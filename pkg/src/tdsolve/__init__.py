"""Exact treedepth solver built on tables of partial decompositions."""

from .errors import InputError, InternalError, ParseError, ResourceLimit
from .graph import (
    DfsTree,
    EliminationOrder,
    Graph,
    RootedGraph,
    add_universal_root,
    connected_components,
    dfs_tree_capped,
    induced_subgraph,
    is_chordal,
    max_clique_size_chordal,
)
from .tdd import (
    Closure,
    TreedepthDecomposition,
    closure,
    height,
    is_nice,
    make_nice_tdd,
    strip_improvable,
    validate_tdd,
)
from .treedec import (
    NiceTreeDecomposition,
    TreeDecomposition,
    clique_tree,
    heuristic_decomposition,
    make_nice,
    path_decomposition_from_dfs,
    root_and_augment,
    validate,
)
from .pd import (
    PartialDecomposition,
    canonical_key,
    decomposition_restriction,
    enumerate_witnesses,
    restrict,
)
from .dp import DpTable, decide, forget_op, introduce_op, join_op, reconstruct, run_dp
from .oracle import enumerate_nice_tdds, oracle_treedepth, treedepth_by_elimination_orders
from .solvers import (
    SolveOutcome,
    SolverConfig,
    exact_treedepth,
    solve_chordal,
    solve_fast,
    solve_simple,
)
from .io_formats import (
    RunReport,
    parse_gr,
    parse_report,
    parse_td,
    parse_treedepth_decomposition,
    write_gr,
    write_report,
    write_td,
    write_treedepth_decomposition,
)
from .generators import generate

__version__ = "0.1.0"
