import numpy as np

from ..errors import DomainError
from ..sampling import sample_matrix
from .estimation import resolve_stream

SUMMARY_POINTS = 2000


class SufficientSummary:
    """Active coordinates of sampled inputs next to the model values."""

    def __init__(self, columns, values):
        self.columns = list(columns)
        self.values = np.asarray(values, dtype=float)

    def __len__(self):
        return self.values.shape[0]


def sufficient_summary(f, decomp, k=1, n=SUMMARY_POINTS, rng=None, seed=None):
    """Rows ``(u_1^T z[, u_2^T z], f(z))`` for ``n`` i.i.d. inputs ``z``."""
    rng = resolve_stream(rng, seed)
    if k not in (1, 2) or k > decomp.dimension:
        raise DomainError(f"Summary needs 1 or 2 active coordinates, got k={k}")
    Z = sample_matrix(f.distribution, n, rng.child(0))
    coords = Z @ decomp.U[:, :k]
    values = f.evaluate(Z, rng.child(1))
    columns = [f"w{i + 1}" for i in range(k)] + ["f"]
    return SufficientSummary(columns, np.column_stack([coords, values]))
