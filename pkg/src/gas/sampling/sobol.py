import logging
from pathlib import Path

import numpy as np

from ..errors import ConfigurationError

logger = logging.getLogger(__name__)

DIRECTION_NUMBERS_PATH = Path(__file__).resolve().parent / "data" / "joe-kuo-6.40.txt"
BITS = 32
SCALE = 2.0**BITS
MAX_POINTS = 2**BITS - 1


def load_direction_table(path=DIRECTION_NUMBERS_PATH):
    """Read a Joe-Kuo style direction-number table.

    Each data row is ``d s a m_1 .. m_s``; the header row is skipped.

    Args:
        path: Location of the table

    Returns:
        list: ``(s, a, [m_1, .., m_s])`` tuples for dimensions 2, 3, ...
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Direction-number table not found: {path}")

    table = []
    with path.open("r", encoding="utf-8") as f:
        next(f, None)
        for line in f:
            fields = line.split()
            if not fields:
                continue
            s, a = int(fields[1]), int(fields[2])
            m = [int(x) for x in fields[3:]]
            if len(m) != s:
                raise ConfigurationError(
                    f"Malformed direction-number row for dimension {fields[0]}: "
                    f"expected {s} initial values, found {len(m)}"
                )
            table.append((s, a, m))
    return table


def _direction_numbers(s, a, m):
    v = [0] * BITS
    for k in range(BITS):
        if k < s:
            v[k] = m[k] << (BITS - 1 - k)
        else:
            v[k] = v[k - s] ^ (v[k - s] >> s)
            for l in range(1, s):
                if (a >> (s - 1 - l)) & 1:
                    v[k] ^= v[k - l]
    return v


class SobolGenerator:
    """Gray-code Sobol' sequence generator.

    The all-zero point that starts the raw sequence is never emitted, so the
    first value of every coordinate is 0.5.
    """

    def __init__(self, dimension, table=None):
        if dimension < 1:
            raise ConfigurationError(f"Sobol' dimension must be positive, got {dimension}")
        if table is None:
            table = load_direction_table()
        if dimension > len(table) + 1:
            raise ConfigurationError(
                f"Sobol' dimension {dimension} exceeds the direction-number table "
                f"(maximum {len(table) + 1})"
            )

        self.dimension = dimension
        rows = [[1 << (BITS - 1 - k) for k in range(BITS)]]
        for s, a, m in table[: dimension - 1]:
            rows.append(_direction_numbers(s, a, m))
        self.direction_numbers = np.array(rows, dtype=np.uint64)
        self.counter = 0

    def reset(self):
        self.counter = 0

    def next(self):
        """Return the next point as a length-``dimension`` array."""
        return self.draw(1)[0]

    def draw(self, n):
        """Return the next ``n`` points as an ``(n, dimension)`` array in [0, 1)."""
        if n < 0:
            raise ConfigurationError(f"Number of Sobol' points must be non-negative, got {n}")
        if self.counter + n > MAX_POINTS:
            raise ConfigurationError(
                f"Sobol' generator exhausted: {self.counter + n} points requested, "
                f"at most {MAX_POINTS} available"
            )
        if n == 0:
            return np.empty((0, self.dimension))

        k = np.arange(self.counter + 1, self.counter + n + 1, dtype=np.uint64)
        gray = k ^ (k >> np.uint64(1))
        x = np.zeros((n, self.dimension), dtype=np.uint64)
        for b in range(int(self.counter + n).bit_length()):
            mask = ((gray >> np.uint64(b)) & np.uint64(1)).astype(bool)
            x[mask] ^= self.direction_numbers[:, b]

        self.counter += n
        return x.astype(np.float64) / SCALE


def sobol_next(gen):
    return gen.next()


def sobol_points(dimension, n):
    """First ``n`` points (zero point excluded) of a fresh generator."""
    return SobolGenerator(dimension).draw(n)


def shifted_sobol_points(gen, count, shift):
    """Draw ``count`` points from ``gen`` and shift them componentwise mod 1.

    Args:
        gen: Generator to draw from
        count: Number of points
        shift: Shift vector in [0, 1)^d (scalar broadcast is allowed)

    Returns:
        np.ndarray: ``(count, d)`` array of shifted points in [0, 1)
    """
    return shift_mod1(gen.draw(count), shift)


def shift_mod1(points, shift):
    """``(points + shift) mod 1`` with the result kept strictly below 1."""
    y = np.mod(np.asarray(points, dtype=float) + np.asarray(shift, dtype=float), 1.0)
    return np.where(y >= 1.0, y - 1.0, y)
