from .estimators import build_subspace, choose_d1, reference_value, replicate, run_estimator
from .experiment import (
    EstimatorKind,
    EstimatorResult,
    ExperimentConfig,
    HeatmapGrid,
    efficiency,
    mse,
    validate_budget,
)
from .outputs import (
    OutputError,
    emit_estimator_result,
    emit_heatmap,
    emit_records,
    emit_spectrum,
    emit_summary,
    output_stem,
    read_json,
    write_csv,
    write_json,
)
from .runner import ExperimentRunner
from .studies import ebola_study, heatmap_sweep, heston_spectrum_study, noise_study, ridge_study
from .verbs import BUILT_IN_VERBS, Verb, model_mapping

__all__ = [
    "BUILT_IN_VERBS",
    "EstimatorKind",
    "EstimatorResult",
    "ExperimentConfig",
    "ExperimentRunner",
    "HeatmapGrid",
    "OutputError",
    "Verb",
    "build_subspace",
    "choose_d1",
    "ebola_study",
    "efficiency",
    "emit_estimator_result",
    "emit_heatmap",
    "emit_records",
    "emit_spectrum",
    "emit_summary",
    "heatmap_sweep",
    "heston_spectrum_study",
    "model_mapping",
    "mse",
    "noise_study",
    "output_stem",
    "read_json",
    "reference_value",
    "replicate",
    "ridge_study",
    "run_estimator",
    "validate_budget",
    "write_csv",
    "write_json",
]
