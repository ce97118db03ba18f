from .models import (
    COMPANION_SEQUENCES,
    FiniteDiffSample,
    GammaEstimates,
    GasConfig,
    SubspaceDecomposition,
    VerbInfo,
)

__all__ = [
    "COMPANION_SEQUENCES",
    "FiniteDiffSample",
    "GammaEstimates",
    "GasConfig",
    "SubspaceDecomposition",
    "VerbInfo",
]
