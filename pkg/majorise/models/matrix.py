from dataclasses import dataclass, field

import numpy as np

from majorise.utils.exceptions import DimensionMismatch, NotDoublyStochastic, NotHermitian


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    entries: np.ndarray
    tol: float

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatch(message=f"expected a square matrix, got shape {entries.shape}")
        object.__setattr__(self, "entries", entries)
        asymmetry = float(np.max(np.abs(entries - entries.conj().T))) if entries.size else 0.0
        if asymmetry > self.tol:
            raise NotHermitian(
                message=f"‖A - A*‖ = {asymmetry:.3e} exceeds tolerance {self.tol:.3e}",
                details={"asymmetry": asymmetry},
            )

    @property
    def n(self):
        return self.entries.shape[0]

    def diagonal(self):
        return np.real(np.diag(self.entries)).copy()

    def is_diagonal(self):
        off = self.entries - np.diag(np.diag(self.entries))
        return float(np.max(np.abs(off))) <= self.tol if off.size else True


@dataclass(frozen=True, eq=False)
class DoublyStochastic:
    entries: np.ndarray
    tol: float

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise NotDoublyStochastic(message=f"expected a square matrix, got shape {entries.shape}")
        if entries.size and float(entries.min()) < -self.tol:
            raise NotDoublyStochastic(message="matrix has negative entries")
        worst = max(
            float(np.max(np.abs(entries.sum(axis=0) - 1.0), initial=0.0)),
            float(np.max(np.abs(entries.sum(axis=1) - 1.0), initial=0.0)),
        )
        if worst > self.tol:
            raise NotDoublyStochastic(
                message=f"row or column sum off by {worst:.3e}", details={"deviation": worst}
            )

    @property
    def n(self):
        return self.entries.shape[0]

    def serialize(self):
        return {"n": self.n, "entries": self.entries.tolist()}


@dataclass(frozen=True)
class BirkhoffDecomposition:
    """Σ cᵢ Pᵢ with Pᵢ given as permutations (row i -> column perm[i])."""

    n: int
    terms: tuple = field(default=())

    def coefficient_sum(self):
        return sum(c for c, _ in self.terms)

    def reconstruct(self):
        matrix = np.zeros((self.n, self.n))
        for coefficient, perm in self.terms:
            matrix[np.arange(self.n), list(perm)] += coefficient
        return matrix

    def serialize(self):
        return {
            "n": self.n,
            "terms": [{"coefficient": c, "permutation": list(p)} for c, p in self.terms],
        }
