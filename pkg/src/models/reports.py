"""
Solver and experiment outputs, plus the CLI run configuration.
"""
import math
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import DEFAULT_SEED, DEFAULT_THREADS, OUTPUT_FORMATS
from models.partitions import MultiplicityVector, SetPartition
from models.symmetric_matrix import SymmetricMatrix


class CriticalPoint(BaseModel):
    """One critical point of the distance from A to a stratum."""

    model_config = ConfigDict(frozen=True)

    partition: SetPartition
    matrix: SymmetricMatrix
    distance: float
    is_global_min: bool = False
    degenerate: bool = False
    spherical_distance: Optional[float] = None

    def to_json(self) -> Dict[str, Any]:
        payload = {
            "partition": self.partition.to_json(),
            "distance": self.distance,
            "matrix": self.matrix.to_json(),
            "global_min": self.is_global_min,
            "degenerate": self.degenerate,
        }
        if self.spherical_distance is not None:
            payload["spherical_distance"] = self.spherical_distance
        return payload


class MonteCarloReport(BaseModel):
    """Estimate with its standard error, reproducible from (seed, params)."""

    experiment: str
    params: Dict[str, Any] = Field(default_factory=dict)
    estimate: float
    std_error: float
    n_samples: int
    seed: int
    extras: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_samples(
        cls,
        experiment: str,
        values: Sequence[float],
        seed: int,
        params: Optional[Dict[str, Any]] = None,
        extras: Optional[Dict[str, Any]] = None,
    ) -> "MonteCarloReport":
        """Sample mean and standard error (sample std / sqrt(N))."""
        values = np.asarray(values, dtype=float)
        count = len(values)
        if count == 0:
            raise ValueError(f"{experiment}: no samples to aggregate")
        mean = float(values.mean())
        std_error = float(values.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
        return cls(
            experiment=experiment,
            params=params or {},
            estimate=mean,
            std_error=std_error,
            n_samples=count,
            seed=seed,
            extras=extras or {},
        )

    def within(self, reference: float, sigmas: float) -> bool:
        return abs(self.estimate - reference) <= sigmas * self.std_error

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump()


class QuadratureRule(BaseModel):
    """Gauss-Hermite nodes/weights for integrals against exp(-u^2)."""

    model_config = ConfigDict(frozen=True)

    nodes: Tuple[float, ...]
    weights: Tuple[float, ...]

    @model_validator(mode="after")
    def _check(self) -> "QuadratureRule":
        if len(self.nodes) != len(self.weights):
            raise ValueError("nodes and weights must have the same length")
        return self

    @property
    def size(self) -> int:
        return len(self.nodes)

    def integrate(self, f: Callable[[float], float]) -> float:
        return float(sum(w * f(x) for x, w in zip(self.nodes, self.weights)))


class RunConfig(BaseModel):
    """Parsed command line of one CLI invocation."""

    command: str
    matrix: Optional[str] = None
    input: Optional[str] = None
    w: Optional[MultiplicityVector] = None
    k: Optional[int] = None
    n: Optional[int] = None
    max_k: Optional[int] = None
    max_n: Optional[int] = None
    eps: Optional[float] = None
    eps_sweep: Optional[List[float]] = None
    u: Optional[float] = None
    samples: Optional[int] = None
    trials: Optional[int] = None
    count: Optional[int] = None
    config: Optional[int] = None
    quadrature: Optional[int] = None
    grid_density: Optional[int] = None
    starts: Optional[int] = None
    seed: int = DEFAULT_SEED
    threads: int = DEFAULT_THREADS
    format: str = "json"
    output: Optional[str] = None
    tolerances: Dict[str, float] = Field(default_factory=dict)

    @field_validator("format")
    @classmethod
    def _check_format(cls, value: str) -> str:
        if value not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {OUTPUT_FORMATS}, got {value!r}")
        return value

    @field_validator("threads")
    @classmethod
    def _check_threads(cls, value: int) -> int:
        if value < 1:
            raise ValueError("threads must be >= 1")
        return value


def per_trial_rows(report: MonteCarloReport, key: str = "per_trial") -> List[Dict[str, Any]]:
    """Rows for CSV export of per-trial values stored in report extras."""
    return [{"trial": i, "value": v} for i, v in enumerate(report.extras.get(key, []))]
