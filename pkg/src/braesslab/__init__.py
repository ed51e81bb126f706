"""Exact Kemeny's constant, Braess edges and twin pendent paths on undirected graphs."""

__version__ = "0.1.0"

from .errors import (
    BraessLabError,
    ConsistencyError,
    DisconnectedGraphError,
    EdgeListParseError,
    InvalidParameterError,
    NumericError,
    OracleBoundError,
)
from .graph import (
    Graph,
    TwinPathSpec,
    attach_twin_paths,
    branches_at,
    close_twin_paths,
    example_h,
    identify,
    make_family,
    parse_edge_list,
    random_connected_graph,
    read_edge_list,
    write_edge_list,
)
from .forests import (
    dfd,
    dqd,
    dvec_dot_fv,
    forest_count,
    forest_matrix,
    one_separation_dfd,
    q_matrix,
    resistance_distance,
    tree_count,
)
from .kemeny import KemenyValue, kemeny_constant, kemeny_mfpt, kemeny_spectral
from .braess import (
    PhiBreakdown,
    big_phi,
    braess_scan,
    dfd_with_cycle,
    dfd_with_path,
    is_paradoxical_at,
    phi_polys,
    phi_v,
)
from .asymptotics import (
    FamilySpec,
    augment_until_paradoxical,
    branch_min_dqd,
    broom_dqd,
    pendant_decomposition_dqd,
    pn_dqd,
    pn_dqd_extrema,
    ratio,
    sequence_profile,
    star_pendent_thresholds,
    threshold_scan,
)
from .oracle import census, enumerate_spanning_trees, forest_tables, kemeny_bruteforce
