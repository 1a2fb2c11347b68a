"""Maximum likelihood thresholds of small graphs and the graphical lasso."""
from .glasso import CovarianceConfig, GlassoSolution, glasso_fit, select_graph
from .graphs import Graph, clique_number, graph_from_edges, k_core_bound, parse_graph, parse_graph6, write_graph6
from .rigidity import gcr, generic_rank, mlt

__version__ = "0.1.0"
