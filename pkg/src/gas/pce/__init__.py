from .basis import (
    BasisKind,
    basis_eval_1d,
    basis_for,
    basis_table,
    build_design_matrix,
    evaluate_basis,
)
from .fit import (
    CONDITION_LIMIT,
    PceModel,
    fit_least_squares,
    fit_pce,
    pce_mean,
    pce_predict,
    pce_variance,
)
from .multi_index import MultiIndexSet, total_degree_indices

__all__ = [
    "BasisKind",
    "CONDITION_LIMIT",
    "MultiIndexSet",
    "PceModel",
    "basis_eval_1d",
    "basis_for",
    "basis_table",
    "build_design_matrix",
    "evaluate_basis",
    "fit_least_squares",
    "fit_pce",
    "pce_mean",
    "pce_predict",
    "pce_variance",
    "total_degree_indices",
]
