"""
Dense real symmetric matrices (packed upper triangle) and their spectral decompositions.
"""
import math
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator


def packed_size(n: int) -> int:
    return n * (n + 1) // 2


class SymmetricMatrix(BaseModel):
    """Real symmetric n x n matrix stored as its packed upper triangle (row-major).

    Symmetry is structural: the packed layout cannot hold an asymmetric matrix.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    entries: Tuple[float, ...]

    @model_validator(mode="after")
    def _check(self) -> "SymmetricMatrix":
        if self.n < 0:
            raise ValueError(f"Matrix dimension must be non-negative, got {self.n}")
        if len(self.entries) != packed_size(self.n):
            raise ValueError(f"Expected {packed_size(self.n)} packed entries for n={self.n}, got {len(self.entries)}")
        if not all(math.isfinite(x) for x in self.entries):
            raise ValueError("Matrix entries must be finite")
        return self

    # --- constructors -------------------------------------------------

    @classmethod
    def from_dense(cls, array: Any) -> "SymmetricMatrix":
        """Pack the upper triangle of a square array (the lower triangle is not read)."""
        array = np.asarray(array, dtype=float)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError(f"Expected a square matrix, got shape {array.shape}")
        n = array.shape[0]
        rows, cols = np.triu_indices(n)
        return cls(n=n, entries=tuple(float(x) for x in array[rows, cols]))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "SymmetricMatrix":
        return cls.from_dense(np.array(rows, dtype=float).reshape(len(rows), -1) if rows else np.zeros((0, 0)))

    @classmethod
    def diagonal(cls, values: Sequence[float]) -> "SymmetricMatrix":
        return cls.from_dense(np.diag(np.asarray(values, dtype=float)))

    @classmethod
    def identity(cls, n: int) -> "SymmetricMatrix":
        return cls.from_dense(np.eye(n))

    @classmethod
    def zeros(cls, n: int) -> "SymmetricMatrix":
        return cls(n=n, entries=(0.0,) * packed_size(n))

    # --- views --------------------------------------------------------

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        rows, cols = np.triu_indices(self.n)
        out[rows, cols] = self.entries
        out[cols, rows] = self.entries
        return out

    def to_rows(self) -> List[List[float]]:
        return self.to_dense().tolist()

    def entry(self, i: int, j: int) -> float:
        if i > j:
            i, j = j, i
        return self.entries[i * self.n - i * (i - 1) // 2 + (j - i)]

    def diagonal_entries(self) -> List[float]:
        return [self.entry(i, i) for i in range(self.n)]

    # --- algebra ------------------------------------------------------

    def add(self, other: "SymmetricMatrix") -> "SymmetricMatrix":
        if other.n != self.n:
            raise ValueError(f"Dimension mismatch: {self.n} vs {other.n}")
        return SymmetricMatrix(n=self.n, entries=tuple(x + y for x, y in zip(self.entries, other.entries)))

    def sub(self, other: "SymmetricMatrix") -> "SymmetricMatrix":
        return self.add(other.scaled(-1.0))

    def scaled(self, c: float) -> "SymmetricMatrix":
        return SymmetricMatrix(n=self.n, entries=tuple(c * x for x in self.entries))

    def conjugate(self, q: np.ndarray) -> "SymmetricMatrix":
        """Q^T A Q."""
        q = np.asarray(q, dtype=float)
        return SymmetricMatrix.from_dense(q.T @ self.to_dense() @ q)

    def inner(self, other: "SymmetricMatrix") -> float:
        """Frobenius inner product tr(AB)."""
        return float(np.sum(self.to_dense() * other.to_dense()))

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "rows": self.to_rows()}

    __add__ = add
    __sub__ = sub


class SpectralDecomposition(BaseModel):
    """A = C^T diag(eigenvalues) C, rows of C are eigenvectors, eigenvalues descending."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rotation: np.ndarray
    eigenvalues: np.ndarray

    @model_validator(mode="after")
    def _check(self) -> "SpectralDecomposition":
        n = len(self.eigenvalues)
        if self.rotation.shape != (n, n):
            raise ValueError(f"Rotation shape {self.rotation.shape} does not match {n} eigenvalues")
        if n > 1 and np.any(np.diff(self.eigenvalues) > 0):
            raise ValueError("Eigenvalues must be sorted descending")
        return self

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self, eigenvalues: Any = None) -> SymmetricMatrix:
        """C^T diag(values) C, by default with the decomposition's own eigenvalues."""
        values = self.eigenvalues if eigenvalues is None else np.asarray(eigenvalues, dtype=float)
        c = self.rotation
        return SymmetricMatrix.from_dense(c.T @ np.diag(values) @ c)

    def orthogonality_residual(self) -> float:
        c = self.rotation
        return float(np.linalg.norm(c.T @ c - np.eye(self.n)))

    def reconstruction_residual(self, source: SymmetricMatrix) -> float:
        return float(np.linalg.norm(self.reconstruct().to_dense() - source.to_dense()))
