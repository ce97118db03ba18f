from math import comb

import numpy as np

from ..errors import ConfigurationError


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def total_degree_indices(dim, degree):
    """Multi-indices of total degree <= ``degree`` in graded lexicographic order.

    The zero index comes first; within one total degree the first component
    runs downward.
    """
    indices = []
    for total in range(degree + 1):
        indices.extend(_compositions(total, dim))
    return indices


class MultiIndexSet:
    def __init__(self, dim, degree):
        if dim < 1 or degree < 0:
            raise ConfigurationError(f"Invalid multi-index set: dim={dim}, degree={degree}")
        self.dim = int(dim)
        self.degree = int(degree)
        self.indices = total_degree_indices(self.dim, self.degree)

    @staticmethod
    def cardinality(dim, degree):
        return comb(dim + degree, dim)

    def as_array(self):
        return np.array(self.indices, dtype=int).reshape(len(self.indices), self.dim)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, i):
        return self.indices[i]

    def __repr__(self):
        return f"MultiIndexSet(dim={self.dim}, degree={self.degree}, size={len(self)})"
