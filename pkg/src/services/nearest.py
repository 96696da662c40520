"""
Nearest points on the discriminant and on its multiplicity strata.

Every critical point of the distance from a generic A to the stratum of type w
is C^T diag(mu) C, where A = C^T diag(lambda) C and mu is the orthogonal
projection of lambda onto the plane of one set partition of type w (block
means). Partition indices refer to positions in the descending spectrum of A.
"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import DEGENERACY_TOL, DISTANCE_TIE_TOL, MULTIPLICITY_TOL, logger
from models.partitions import MultiplicityVector, SetPartition
from models.reports import CriticalPoint
from models.symmetric_matrix import SymmetricMatrix
from utils.errors import DegenerateInput, OutOfRange
from utils.strata import enumerate_partitions_of_type
from utils.symmat import (
    eigendecompose,
    eigenvalue_blocks,
    frobenius_norm,
    haar_orthogonal,
    min_gap_of,
    with_spectrum,
)

UNIT_NORM_TOL = 1e-10


def project_eigenvalues(values: Sequence[float], partition: SetPartition) -> np.ndarray:
    """Replace the entries of each block (1-based indices) by the block mean."""
    values = np.asarray(values, dtype=float)
    if partition.n != len(values):
        raise ValueError(f"Partition of {{1..{partition.n}}} does not fit {len(values)} eigenvalues")
    out = values.copy()
    for block in partition.blocks:
        idx = [i - 1 for i in block]
        out[idx] = values[idx].mean()
    return out


def _block_means(projected: np.ndarray, partition: SetPartition) -> List[float]:
    return [float(projected[block[0] - 1]) for block in partition.blocks]


def critical_points(
    a: SymmetricMatrix,
    w: MultiplicityVector,
    degeneracy_tol: float = DEGENERACY_TOL,
    tie_tol: float = DISTANCE_TIE_TOL,
) -> List[CriticalPoint]:
    """All critical points of the distance from A to the stratum of type w, in canonical partition order."""
    if w.n != a.n:
        raise ValueError(f"Multiplicity vector {w} is for n={w.n}, matrix has n={a.n}")
    if not w.is_proper:
        raise ValueError(f"{w} is the open stratum; pick a proper stratum (w_1 < n)")

    decomposition = eigendecompose(a)
    values = decomposition.eigenvalues
    scale = degeneracy_tol * (1.0 + frobenius_norm(a))
    gap = min_gap_of(values)
    if gap <= scale:
        raise DegenerateInput(f"Eigenvalue gap {gap:.3e} is below the genericity threshold {scale:.3e}")

    candidates = []
    for partition in enumerate_partitions_of_type(w):
        projected = project_eigenvalues(values, partition)
        distance = float(np.linalg.norm(values - projected))
        degenerate = min_gap_of(_block_means(projected, partition)) <= scale
        if degenerate:
            logger.warning(f"Critical point for {partition} lands on a finer stratum")
        candidates.append((partition, with_spectrum(projected, decomposition.rotation), distance, degenerate))

    eligible = [c for c in candidates if not c[3]] or candidates
    ranked = sorted(eligible, key=lambda c: c[2])
    if len(ranked) > 1 and ranked[1][2] - ranked[0][2] <= tie_tol:
        raise DegenerateInput(
            f"Critical distances of {ranked[0][0]} and {ranked[1][0]} tie ({ranked[0][2]:.12g}); global minimum is not unique"
        )
    best = ranked[0][0]

    return [
        CriticalPoint(partition=p, matrix=m, distance=d, is_global_min=(p == best), degenerate=deg)
        for p, m, d, deg in candidates
    ]


def nearest_on_stratum(a: SymmetricMatrix, w: MultiplicityVector, **tolerances) -> CriticalPoint:
    """Global minimizer of the distance from A to the stratum of type w."""
    best = next(cp for cp in critical_points(a, w, **tolerances) if cp.is_global_min)
    if best.degenerate:
        raise DegenerateInput(f"Minimizing projection {best.partition} lands on a finer stratum than {w}")
    return best


def nearest_in_discriminant(a: SymmetricMatrix, **tolerances) -> CriticalPoint:
    """Closest matrix with a repeated eigenvalue; its distance is min_{i<j} |lambda_i - lambda_j| / sqrt(2)."""
    if a.n < 2:
        raise ValueError("The discriminant is empty for n < 2")
    return nearest_on_stratum(a, MultiplicityVector.pair(a.n), **tolerances)


def spherical_nearest(a: SymmetricMatrix, **tolerances) -> CriticalPoint:
    """Nearest unit-norm matrix with a repeated eigenvalue, with its angular distance."""
    norm = frobenius_norm(a)
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise ValueError(f"Spherical variant needs ||A|| = 1, got {norm:.15g}")

    planar = nearest_in_discriminant(a, **tolerances)
    # planar distance is |lambda_i - lambda_j| / sqrt(2) for the minimizing pair
    ratio = planar.distance
    if ratio > 1.0 + UNIT_NORM_TOL:
        raise OutOfRange(f"arcsin argument {ratio:.15g} exceeds 1")
    ratio = min(ratio, 1.0)
    angle = math.asin(ratio)

    remaining = 1.0 - ratio * ratio
    tie_tol = tolerances.get("tie_tol", DISTANCE_TIE_TOL)
    if remaining <= tie_tol:
        # A is orthogonal to the whole pair plane; 1/sqrt(n) is on the cone and orthogonal to A
        logger.warning("Pair projection vanishes; returning the scaled identity as a minimizer")
        point = SymmetricMatrix.identity(a.n).scaled(1.0 / math.sqrt(a.n))
        degenerate = True
    else:
        point = planar.matrix.scaled(1.0 / math.sqrt(remaining))
        degenerate = False

    distance = frobenius_norm(a.sub(point))
    return CriticalPoint(
        partition=planar.partition,
        matrix=point,
        distance=distance,
        is_global_min=True,
        degenerate=degenerate,
        spherical_distance=angle,
    )


def tangent_basis(point: SymmetricMatrix, tol: float = MULTIPLICITY_TOL) -> List[np.ndarray]:
    """Spanning set of the tangent space of the stratum through `point`.

    Built in the eigenframe of the point: diagonal directions constant on each
    eigenvalue block, plus the commutators [E_kl, diag(mu)] for skew E_kl
    joining indices in different blocks. Returned in the original coordinates.
    """
    decomposition = eigendecompose(point)
    mu = decomposition.eigenvalues
    c = decomposition.rotation
    sizes = eigenvalue_blocks(mu, tol * (1.0 + frobenius_norm(point)))

    labels = np.repeat(np.arange(len(sizes)), sizes)
    n = point.n
    basis = []
    for block in range(len(sizes)):
        basis.append(np.diag((labels == block).astype(float)))
    for k in range(n):
        for l in range(k + 1, n):
            if labels[k] == labels[l]:
                continue
            t = np.zeros((n, n))
            t[k, l] = t[l, k] = mu[l] - mu[k]
            basis.append(t)
    return [c.T @ t @ c for t in basis]


def verify_criticality(a: SymmetricMatrix, cp: CriticalPoint, w: Optional[MultiplicityVector] = None) -> float:
    """max |<A - A~, t>| / (||A - A~|| ||t||) over the tangent basis at A~; 0 when A is on the stratum."""
    residual = a.to_dense() - cp.matrix.to_dense()
    residual_norm = float(np.linalg.norm(residual))
    if residual_norm <= 1e-14 * (1.0 + frobenius_norm(a)):
        return 0.0

    basis = tangent_basis(cp.matrix)
    if w is not None and cp.partition.multiplicity_vector() != w:
        logger.warning(f"Critical point partition {cp.partition} is not of type {w}")

    worst = 0.0
    for t in basis:
        t_norm = float(np.linalg.norm(t))
        if t_norm == 0.0:
            continue
        worst = max(worst, abs(float(np.sum(residual * t))) / (residual_norm * t_norm))
    return worst


# --- brute-force oracle --------------------------------------------------


def _pair_objective(m: np.ndarray) -> float:
    """Squared distance from M to the closest diagonal matrix with a repeated entry."""
    diag = np.diag(m)
    off = float(np.sum(m * m) - np.sum(diag * diag))
    d = np.sort(diag)
    return off + float(np.min(np.diff(d)) ** 2) / 2.0


def _frame_descent(a: np.ndarray, v: np.ndarray, max_rounds: int = 200, min_step: float = 1e-10) -> Tuple[float, np.ndarray]:
    """Coordinate descent over Givens rotations of the frame V, minimizing the pair objective of V A V^T."""
    n = a.shape[0]
    best = _pair_objective(v @ a @ v.T)
    step = 0.5
    for _ in range(max_rounds):
        improved = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                for angle in (step, -step):
                    c, s = math.cos(angle), math.sin(angle)
                    trial = v.copy()
                    trial[p], trial[q] = c * v[p] - s * v[q], s * v[p] + c * v[q]
                    value = _pair_objective(trial @ a @ trial.T)
                    if value < best:
                        best, v, improved = value, trial, True
                        break
        if not improved:
            step /= 2.0
            if step < min_step:
                break
    return best, v


def discriminant_distance_oracle(a: SymmetricMatrix, starts: int, rng: np.random.Generator) -> Tuple[float, SymmetricMatrix]:
    """Best distance to the discriminant found by multi-start local descent over orthogonal frames.

    Every value it reports is attained by an actual matrix with a repeated
    eigenvalue (returned alongside), so it can only over-estimate the true distance.
    """
    if a.n < 2:
        raise ValueError("The discriminant is empty for n < 2")
    dense = a.to_dense()
    best_value, best_frame = math.inf, None
    for _ in range(starts):
        value, frame = _frame_descent(dense, haar_orthogonal(a.n, rng))
        if value < best_value:
            best_value, best_frame = value, frame

    m = best_frame @ dense @ best_frame.T
    diag = np.diag(m).copy()
    order = np.argsort(diag)
    k = int(np.argmin(np.diff(diag[order])))
    i, j = order[k], order[k + 1]
    diag[i] = diag[j] = (diag[i] + diag[j]) / 2.0
    point = SymmetricMatrix.from_dense(best_frame.T @ np.diag(diag) @ best_frame)
    logger.debug(f"Descent oracle: best distance {math.sqrt(best_value):.12g} over {starts} starts")
    return math.sqrt(best_value), point
