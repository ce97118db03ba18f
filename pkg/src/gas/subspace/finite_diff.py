import numpy as np

from ..errors import DenominatorTooSmall
from ..types import FiniteDiffSample

DEFAULT_DENOM_FLOOR = 1e-12


def coordinate_companions(z_rows, v_rows):
    """Points ``v_k : z_{-k}`` for every row pair and coordinate.

    Args:
        z_rows: ``(m, d)`` base points
        v_rows: ``(m, d)`` companion points

    Returns:
        np.ndarray: ``(m, d, d)`` array whose ``[r, k]`` entry is ``z_rows[r]``
        with coordinate ``k`` replaced by ``v_rows[r, k]``
    """
    m, d = z_rows.shape
    points = np.repeat(z_rows[:, np.newaxis, :], d, axis=1)
    idx = np.arange(d)
    points[:, idx, idx] = v_rows
    return points


def difference_rows(f, z_rows, v_rows, base_values, rng=None, divided=True):
    """One-coordinate differences of ``f`` for aligned base/companion rows.

    Returns an ``(m, d)`` array of ``f(v_k : z_{-k}) - f(z)``, divided by
    ``v_k - z_k`` when ``divided`` is true.
    """
    m, d = z_rows.shape
    points = coordinate_companions(z_rows, v_rows).reshape(m * d, d)
    values = f.evaluate(points, rng).reshape(m, d)
    diffs = values - np.asarray(base_values, dtype=float)[:, np.newaxis]
    if divided:
        diffs = diffs / (v_rows - z_rows)
    return diffs


def finite_diff_vector(f, z, v, rng=None, denom_floor=DEFAULT_DENOM_FLOOR, base_value=None):
    """Finite-difference vector of ``f`` between ``z`` and its companion ``v``.

    ``f`` is evaluated ``d + 1`` times (once if ``base_value`` is given).

    Raises:
        DenominatorTooSmall: If some ``|v_i - z_i|`` is below ``denom_floor``
    """
    z = np.asarray(z, dtype=float).reshape(-1)
    v = np.asarray(v, dtype=float).reshape(-1)
    smallest = float(np.min(np.abs(v - z)))
    if not smallest >= denom_floor:
        raise DenominatorTooSmall(smallest, denom_floor)

    if base_value is None:
        base_value = f(z, rng)
    dvec = difference_rows(f, z[np.newaxis, :], v[np.newaxis, :], [base_value], rng)[0]
    return FiniteDiffSample(z, v, dvec)
