from .estimation import (
    as_gradient_matrix,
    assemble_bhat,
    clamp_spectrum,
    decompose,
    decompose_symmetric,
    draw_companion_design,
    first_eigenvector_cosine,
    gas_subspace,
    normalize_signs,
    select_d1,
)
from .finite_diff import finite_diff_vector
from .gamma import estimate_gamma
from .sensitivity import SobolIndexEstimate, sobol_indices_from_bhat, upper_sobol_indices
from .summary import SufficientSummary, sufficient_summary
from .surrogate import conditional_surrogate_eval, conditional_surrogate_values

__all__ = [
    "SobolIndexEstimate",
    "SufficientSummary",
    "as_gradient_matrix",
    "assemble_bhat",
    "clamp_spectrum",
    "conditional_surrogate_eval",
    "conditional_surrogate_values",
    "decompose",
    "decompose_symmetric",
    "draw_companion_design",
    "estimate_gamma",
    "finite_diff_vector",
    "first_eigenvector_cosine",
    "gas_subspace",
    "normalize_signs",
    "select_d1",
    "sobol_indices_from_bhat",
    "sufficient_summary",
    "upper_sobol_indices",
]
