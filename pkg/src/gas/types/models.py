from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from ..errors import ConfigurationError, DomainError

COMPANION_SEQUENCES = ("continue", "restart")


@dataclass(frozen=True)
class GasConfig:
    """Sample sizes and companion-point settings for matrix and Gamma estimation."""

    M1: int
    M2: int = 1
    denom_floor: float = 1e-12
    seed: Optional[int] = None
    companion_sequence: str = "restart"
    max_redraws: int = 100

    def __post_init__(self):
        if self.M1 < 1 or self.M2 < 1:
            raise ConfigurationError(
                f"M1 and M2 must be at least 1, got M1={self.M1}, M2={self.M2}"
            )
        if not self.denom_floor > 0:
            raise ConfigurationError(f"denom_floor must be positive, got {self.denom_floor}")
        if self.companion_sequence not in COMPANION_SEQUENCES:
            raise ConfigurationError(
                f"companion_sequence must be one of {COMPANION_SEQUENCES}, "
                f"got '{self.companion_sequence}'"
            )
        if self.max_redraws < 1:
            raise ConfigurationError(f"max_redraws must be at least 1, got {self.max_redraws}")

    @property
    def budget(self):
        return self.M1 * self.M2

    def to_dict(self):
        return asdict(self)


class FiniteDiffSample:
    """One base point, its companion and the divided differences between them."""

    def __init__(self, z, v, dvec):
        self.z = np.asarray(z, dtype=float)
        self.v = np.asarray(v, dtype=float)
        self.dvec = np.asarray(dvec, dtype=float)

    def __repr__(self):
        return f"FiniteDiffSample(z={self.z}, v={self.v}, dvec={self.dvec})"


class SubspaceDecomposition:
    """Orthogonal directions ``U`` with their descending spectrum ``lambdas``.

    ``d1`` (the active dimension) may be left unset until a selection rule has
    been applied; ``U1`` and ``U2`` require it.
    """

    def __init__(self, U, lambdas, d1=None, M1=None, M2=None, seed=None, fingerprint=None):
        U = np.asarray(U, dtype=float)
        lambdas = np.asarray(lambdas, dtype=float)
        if U.ndim != 2 or U.shape[0] != U.shape[1] or lambdas.shape != (U.shape[0],):
            raise DomainError(
                f"Inconsistent decomposition shapes: U {U.shape}, lambdas {lambdas.shape}"
            )
        self.U = U
        self.lambdas = lambdas
        self.d1 = None
        self.M1 = M1
        self.M2 = M2
        self.seed = seed
        self.fingerprint = fingerprint
        if d1 is not None:
            self.d1 = self._check_d1(d1)

    @property
    def dimension(self):
        return self.U.shape[0]

    def _check_d1(self, d1):
        d1 = int(d1)
        if not 1 <= d1 <= self.dimension:
            raise DomainError(f"Active dimension must lie in [1, {self.dimension}], got {d1}")
        return d1

    def with_d1(self, d1):
        return SubspaceDecomposition(
            self.U, self.lambdas, d1, self.M1, self.M2, self.seed, self.fingerprint
        )

    def _require_d1(self):
        if self.d1 is None:
            raise DomainError("Active dimension d1 has not been chosen for this decomposition")
        return self.d1

    @property
    def U1(self):
        return self.U[:, : self._require_d1()]

    @property
    def U2(self):
        return self.U[:, self._require_d1() :]

    def active_coordinates(self, z):
        """``w1 = U1^T z`` for a point or a batch of row points."""
        return np.asarray(z, dtype=float) @ self.U1

    def inactive_coordinates(self, z):
        return np.asarray(z, dtype=float) @ self.U2

    def normalized(self):
        total = self.lambdas.sum()
        if total <= 0:
            return np.zeros_like(self.lambdas)
        return self.lambdas / total

    def to_dict(self):
        return {
            "lambdas": self.lambdas.tolist(),
            "U": self.U.reshape(-1).tolist(),
            "dimension": self.dimension,
            "d1": self.d1,
            "M1": self.M1,
            "M2": self.M2,
            "seed": self.seed,
            "model_fingerprint": self.fingerprint,
        }

    @classmethod
    def from_dict(cls, data):
        d = int(data["dimension"])
        return cls(
            np.asarray(data["U"], dtype=float).reshape(d, d),
            data["lambdas"],
            d1=data.get("d1"),
            M1=data.get("M1"),
            M2=data.get("M2"),
            seed=data.get("seed"),
            fingerprint=data.get("model_fingerprint"),
        )

    def __repr__(self):
        return (
            f"SubspaceDecomposition(dimension={self.dimension}, d1={self.d1}, "
            f"lambdas={np.array2string(self.lambdas, precision=4)})"
        )


class GammaEstimates:
    """Mean squared directional differences, one per column of ``U``."""

    def __init__(
        self, gammas, standard_errors=None, M1=None, M2=None, seed=None, fingerprint=None
    ):
        gammas = np.asarray(gammas, dtype=float)
        if np.any(gammas < 0):
            raise DomainError("Gamma estimates must be non-negative")
        self.gammas = gammas
        self.standard_errors = (
            None if standard_errors is None else np.asarray(standard_errors, dtype=float)
        )
        self.M1 = M1
        self.M2 = M2
        self.seed = seed
        self.fingerprint = fingerprint

    def normalized(self):
        total = self.gammas.sum()
        if total <= 0:
            return np.zeros_like(self.gammas)
        return self.gammas / total

    def to_dict(self):
        return {
            "gammas": self.gammas.tolist(),
            "standard_errors": (
                None if self.standard_errors is None else self.standard_errors.tolist()
            ),
            "M1": self.M1,
            "M2": self.M2,
            "seed": self.seed,
            "model_fingerprint": self.fingerprint,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            data["gammas"],
            standard_errors=data.get("standard_errors"),
            M1=data.get("M1"),
            M2=data.get("M2"),
            seed=data.get("seed"),
            fingerprint=data.get("model_fingerprint"),
        )

    def __len__(self):
        return len(self.gammas)

    def __repr__(self):
        return f"GammaEstimates(gammas={np.array2string(self.gammas, precision=4)})"


class VerbInfo:
    def __init__(self, name, description, version, parameters=None, requires_seed=True):
        self.name = name
        self.description = description
        self.version = version
        self.parameters = parameters or {}
        self.requires_seed = requires_seed

    def __repr__(self):
        return f"VerbInfo(name={self.name}, description={self.description}, version={self.version})"
