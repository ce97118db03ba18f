from enum import Enum

import numpy as np

from ..errors import ConfigurationError, DimensionMismatchError, UnderdeterminedSystemError


class BasisKind(str, Enum):
    HERMITE = "hermite"
    LEGENDRE = "legendre"


def basis_for(distribution):
    """Hermite for standard normal inputs, shifted Legendre for the unit cube."""
    return BasisKind.HERMITE if distribution.is_normal else BasisKind.LEGENDRE


def basis_table(basis, max_order, x):
    """Orthonormal polynomials of orders ``0..max_order`` at ``x``.

    Returns an array with a trailing axis of length ``max_order + 1``.
    """
    basis = BasisKind(basis)
    x = np.asarray(x, dtype=float)
    table = np.empty(x.shape + (max_order + 1,))
    table[..., 0] = 1.0
    if max_order == 0:
        return table

    if basis is BasisKind.HERMITE:
        table[..., 1] = x
        for n in range(1, max_order):
            table[..., n + 1] = (x * table[..., n] - np.sqrt(n) * table[..., n - 1]) / np.sqrt(
                n + 1
            )
        return table

    # Legendre on [0, 1]: recurrence for P_n(2x - 1), normalised by sqrt(2n + 1) at the end
    t = 2.0 * x - 1.0
    table[..., 1] = t
    for n in range(1, max_order):
        table[..., n + 1] = ((2 * n + 1) * t * table[..., n] - n * table[..., n - 1]) / (n + 1)
    return table * np.sqrt(2.0 * np.arange(max_order + 1) + 1.0)


def basis_eval_1d(basis, n, x):
    if n < 0:
        raise ConfigurationError(f"Polynomial order must be non-negative, got {n}")
    values = basis_table(basis, n, x)[..., n]
    return float(values) if np.ndim(values) == 0 else values


def build_design_matrix(points, index_set, basis=BasisKind.HERMITE):
    """Design matrix ``Psi[n, i] = prod_k psi_{alpha_i[k]}(points[n, k])``.

    Raises:
        UnderdeterminedSystemError: If there are fewer points than basis terms
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, np.newaxis]
    if points.shape[1] != index_set.dim:
        raise DimensionMismatchError(
            f"Points have dimension {points.shape[1]}, basis has dimension {index_set.dim}"
        )
    if points.shape[0] < len(index_set):
        raise UnderdeterminedSystemError(
            f"{points.shape[0]} points cannot determine {len(index_set)} coefficients"
        )

    return evaluate_basis(points, index_set, basis)


def evaluate_basis(points, index_set, basis):
    """All basis terms at ``(N, dim)`` points, without the point-count check."""
    alphas = index_set.as_array()
    table = basis_table(basis, index_set.degree, points)
    design = np.ones((points.shape[0], len(index_set)))
    for k in range(index_set.dim):
        design *= table[:, k, alphas[:, k]]
    return design
