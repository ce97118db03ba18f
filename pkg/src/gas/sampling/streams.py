import numpy as np

from ..errors import ConfigurationError, DomainError

SEED_LIMIT = 2**64


class RngStream:
    """Seeded pseudo-random stream identified by ``(seed, stream_id)``.

    Streams with the same seed and distinct ids are derived through
    ``numpy.random.SeedSequence`` spawn keys and are statistically independent.
    A stream is owned by one worker at a time.
    """

    def __init__(self, seed, stream_id=0, parent_key=()):
        seed = int(seed)
        if not 0 <= seed < SEED_LIMIT:
            raise ConfigurationError(f"Seed must be a 64-bit non-negative integer, got {seed}")
        if int(stream_id) < 0:
            raise ConfigurationError(f"Stream id must be non-negative, got {stream_id}")

        self.seed = seed
        self.stream_id = int(stream_id)
        self.spawn_key = tuple(parent_key) + (self.stream_id,)
        sequence = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def child(self, stream_id):
        """Independent stream derived from this one."""
        return RngStream(self.seed, stream_id, parent_key=self.spawn_key)

    def standard_normal(self, size=None):
        return self.generator.standard_normal(size)

    def uniform(self, size=None):
        return self.generator.random(size)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, spawn_key={self.spawn_key})"


def sample_matrix(dist, n, rng):
    """Draw ``n`` i.i.d. rows from ``dist``.

    Uniform draws are kept inside the open cube (0, 1)^d.
    """
    if n < 1:
        raise DomainError(f"Sample size must be at least 1, got {n}")
    shape = (int(n), dist.dimension)
    if dist.is_normal:
        return rng.standard_normal(shape)

    draws = rng.uniform(shape)
    return np.where(draws == 0.0, np.nextafter(0.0, 1.0), draws)
