"""Columns of exp(P) for column-stochastic graph matrices."""

from ._core import (
    Graph,
    ParseError,
    SolveReport,
    SolverError,
    column,
    dense_normalized_laplacian_exp,
    dense_taylor_oracle,
    expmimv,
    forest_fire,
    gexpm,
    gexpmq,
    horner_full,
    laplacian_column,
    normalize_to_stochastic,
    one_norm_error,
    precision_at_k,
    psi_weights,
    random_regular,
    read_graph,
    select_degree_bound,
    select_degree_exact,
    write_smat,
)

__all__ = [
    "Graph",
    "ParseError",
    "SolveReport",
    "SolverError",
    "column",
    "dense_normalized_laplacian_exp",
    "dense_taylor_oracle",
    "expmimv",
    "forest_fire",
    "gexpm",
    "gexpmq",
    "horner_full",
    "laplacian_column",
    "normalize_to_stochastic",
    "one_norm_error",
    "precision_at_k",
    "psi_weights",
    "random_regular",
    "read_graph",
    "select_degree_bound",
    "select_degree_exact",
    "write_smat",
]
