import logging

import numpy as np
from scipy import linalg

from ..errors import DimensionMismatchError, FitError
from .basis import BasisKind, build_design_matrix, evaluate_basis
from .multi_index import MultiIndexSet

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e10


def fit_least_squares(design, y):
    """Least-squares coefficients through a thin QR factorization.

    Raises:
        FitError: If the design is rank deficient or too ill-conditioned
    """
    design = np.asarray(design, dtype=float)
    y = np.asarray(y, dtype=float).reshape(-1)
    if design.shape[0] != y.shape[0]:
        raise DimensionMismatchError(
            f"Design has {design.shape[0]} rows but {y.shape[0]} responses were given"
        )

    Q, R = linalg.qr(design, mode="economic")
    condition = float(np.linalg.cond(R))
    if not np.isfinite(condition) or condition >= CONDITION_LIMIT:
        raise FitError(
            f"Design matrix is ill-conditioned (condition number {condition:.3e})",
            condition=condition,
        )
    return linalg.solve_triangular(R, Q.T @ y)


class PceModel:
    """Fitted total-degree expansion; coefficient 0 is the mean."""

    def __init__(self, basis, index_set, coeffs, training_rms=None):
        self.basis = BasisKind(basis)
        self.index_set = index_set
        self.coeffs = np.asarray(coeffs, dtype=float)
        if self.coeffs.shape != (len(index_set),):
            raise DimensionMismatchError(
                f"{self.coeffs.shape[0]} coefficients for {len(index_set)} basis terms"
            )
        if not np.all(np.isfinite(self.coeffs)):
            raise FitError("PCE coefficients must be finite")
        self.training_rms = training_rms

    @property
    def dim(self):
        return self.index_set.dim

    @property
    def degree(self):
        return self.index_set.degree

    def predict(self, points):
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(-1, self.dim) if self.dim == 1 else points[np.newaxis, :]
        if points.shape[1] != self.dim:
            raise DimensionMismatchError(
                f"Points have dimension {points.shape[1]}, model has dimension {self.dim}"
            )
        return evaluate_basis(points, self.index_set, self.basis) @ self.coeffs

    def mean(self):
        return float(self.coeffs[0])

    def variance(self):
        return float(np.sum(self.coeffs[1:] ** 2))

    def describe_terms(self):
        """Lines ``coefficient * psi_alpha`` for every term of the expansion."""
        return [
            f"{coeff:+.10e} * psi{tuple(alpha)}"
            for coeff, alpha in zip(self.coeffs, self.index_set)
        ]

    def to_dict(self):
        return {
            "basis": self.basis.value,
            "degree": self.degree,
            "dim": self.dim,
            "coeffs": self.coeffs.tolist(),
            "training_rms": self.training_rms,
        }

    @classmethod
    def from_dict(cls, data):
        index_set = MultiIndexSet(int(data["dim"]), int(data["degree"]))
        return cls(data["basis"], index_set, data["coeffs"], data.get("training_rms"))

    def __repr__(self):
        return f"PceModel(basis={self.basis.value}, dim={self.dim}, degree={self.degree})"


def fit_pce(points, y, basis, degree):
    """Fit a total-degree expansion and record its training RMS residual."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, np.newaxis]
    index_set = MultiIndexSet(points.shape[1], degree)
    design = build_design_matrix(points, index_set, basis)
    coeffs = fit_least_squares(design, y)
    rms = float(np.sqrt(np.mean((design @ coeffs - np.asarray(y, dtype=float)) ** 2)))
    logger.debug(f"PCE fit: {len(index_set)} terms, {points.shape[0]} points, rms={rms:.3e}")
    return PceModel(basis, index_set, coeffs, training_rms=rms)


def pce_predict(model, w):
    values = model.predict(w)
    return float(values[0]) if values.shape[0] == 1 else values


def pce_mean(model):
    return model.mean()


def pce_variance(model):
    return model.variance()
