"""Triangle and quadrangle formation coefficients for undirected networks."""

from .graph import (
    DegreeStats,
    EdgeListParseError,
    EmptyGraphError,
    Graph,
    TemporalEdgeList,
    bfs_sample,
    degree_stats,
    graph_from_edge_pairs,
    induced_subgraph,
    load_edge_list,
)
from .quads import (
    average_i_quad,
    average_o_quad,
    global_i_quad,
    global_o_quad,
    i_quad,
    o_quad,
    quad_counts,
    quad_numerator,
    weighted_i_quad,
    weighted_o_quad,
)
from .report import CoefficientReport, full_report
from .triangles import (
    average_closure,
    average_clustering,
    global_closure,
    global_clustering,
    local_closure,
    local_clustering,
    triad_counts,
)

__version__ = "0.1.0"
