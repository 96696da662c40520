"""
Intersection of the discriminant with random projective 2-planes.

A trial spans a uniformly distributed 3-dimensional subspace of Sym(n) by three
orthonormalized GOE draws A_1, A_2, A_3 and counts the points x of the
projective plane (x on S^2, antipodes identified) where x_1 A_1 + x_2 A_2 + x_3 A_3
has a repeated eigenvalue.
"""
import math
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from config import (
    CLUSTER_RADIUS,
    DEFAULT_GRID_DENSITY,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    REJECT_CEILING,
    ZERO_THRESHOLD,
    logger,
)
from models.reports import MonteCarloReport
from utils.errors import UnresolvedZero
from utils.exactform import binomial
from utils.parallel import run_replicas
from utils.symmat import goe_batch

NEWTON_MAX_ITER = 60
BACKTRACK_STEPS = 30
MAX_STEP = 0.5


@lru_cache(maxsize=8)
def icosphere(min_points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Subdivided icosahedron with at least `min_points` vertices: (unit vertices, directed edge list)."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    vertices = [
        (-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0),
        (0, -1, phi), (0, 1, phi), (0, -1, -phi), (0, 1, -phi),
        (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1),
    ]
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    points = [np.array(v, dtype=float) / np.linalg.norm(v) for v in vertices]

    while len(points) < min_points:
        midpoints: Dict[Tuple[int, int], int] = {}

        def midpoint(i: int, j: int) -> int:
            key = (min(i, j), max(i, j))
            if key not in midpoints:
                m = points[i] + points[j]
                points.append(m / np.linalg.norm(m))
                midpoints[key] = len(points) - 1
            return midpoints[key]

        refined = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            refined.extend([(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)])
        faces = refined

    edges = set()
    for a, b, c in faces:
        edges.update({(a, b), (b, a), (b, c), (c, b), (c, a), (a, c)})
    return np.array(points), np.array(sorted(edges))


def random_plane(n: int, rng: np.random.Generator) -> np.ndarray:
    """Three GOE(n) draws orthonormalized in the Frobenius inner product, shape (3, n, n)."""
    draws = goe_batch(n, 3, rng)
    basis: List[np.ndarray] = []
    for m in draws:
        for b in basis:
            m = m - np.sum(m * b) * b
        basis.append(m / np.linalg.norm(m))
    return np.array(basis)


def _pencil(plane: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.tensordot(x, plane, axes=1)


def _closest_pair(m: np.ndarray):
    values, vectors = np.linalg.eigh(m)
    k = int(np.argmin(np.diff(values)))
    return values[k + 1] - values[k], vectors[:, k], vectors[:, k + 1]


def _tangent_frame(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    helper = np.eye(3)[int(np.argmin(np.abs(x)))]
    e1 = helper - np.dot(helper, x) * x
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(x, e1)


def refine_zero(plane: np.ndarray, x: np.ndarray, threshold: float = ZERO_THRESHOLD) -> Tuple[np.ndarray, float]:
    """Newton iteration on the closest eigenvalue pair, with backtracking on the gap.

    Linearizing the 2x2 block of the pencil in the eigenbasis (v_i, v_j) gives two
    equations in the two tangent coordinates: the gap closes and the coupling
    v_i^T dM v_j stays zero.
    """
    x = x / np.linalg.norm(x)
    gap, vi, vj = _closest_pair(_pencil(plane, x))
    for _ in range(NEWTON_MAX_ITER):
        if gap <= threshold:
            break
        e1, e2 = _tangent_frame(x)
        d1, d2 = _pencil(plane, e1), _pencil(plane, e2)
        jac = np.array(
            [
                [vj @ d1 @ vj - vi @ d1 @ vi, vj @ d2 @ vj - vi @ d2 @ vi],
                [vi @ d1 @ vj, vi @ d2 @ vj],
            ]
        )
        step = np.linalg.lstsq(jac, np.array([-gap, 0.0]), rcond=None)[0]
        length = float(np.linalg.norm(step))
        if length > MAX_STEP:
            step *= MAX_STEP / length

        for _ in range(BACKTRACK_STEPS):
            trial = x + step[0] * e1 + step[1] * e2
            trial /= np.linalg.norm(trial)
            trial_gap, ti, tj = _closest_pair(_pencil(plane, trial))
            if trial_gap < gap:
                x, gap, vi, vj = trial, trial_gap, ti, tj
                break
            step *= 0.5
        else:
            break
    return x, float(gap)


def _grid_seeds(plane: np.ndarray, grid_density: int) -> np.ndarray:
    """Grid vertices that are local minima of the squared smallest gap, one per antipodal pair."""
    vertices, edges = icosphere(grid_density)
    values = np.linalg.eigvalsh(np.einsum("pk,kab->pab", vertices, plane))
    f = np.min(np.diff(values, axis=1), axis=1) ** 2
    neighbour_min = np.full(len(vertices), np.inf)
    np.minimum.at(neighbour_min, edges[:, 0], f[edges[:, 1]])
    is_min = f <= neighbour_min
    # f is even under x -> -x; keep one representative of each antipodal pair
    hemisphere = vertices @ np.array([0.5773502691896258, 0.5773502691896258, 0.5773502691896258]) >= 0
    return vertices[is_min & hemisphere]


def _projective_distance(x: np.ndarray, y: np.ndarray) -> float:
    return min(float(np.linalg.norm(x - y)), float(np.linalg.norm(x + y)))


def count_zeros(
    plane: np.ndarray,
    grid_density: int = DEFAULT_GRID_DENSITY,
    zero_threshold: float = ZERO_THRESHOLD,
    reject_ceiling: float = REJECT_CEILING,
    cluster_radius: float = CLUSTER_RADIUS,
) -> List[np.ndarray]:
    """Distinct projective zeros of the discriminant on the plane's unit sphere."""
    zeros: List[np.ndarray] = []
    for seed_point in _grid_seeds(plane, grid_density):
        x, gap = refine_zero(plane, seed_point, zero_threshold)
        if gap > zero_threshold:
            if gap <= reject_ceiling:
                raise UnresolvedZero(f"Refinement stalled at gap {gap:.3e} (threshold {zero_threshold:.1e})")
            continue
        if all(_projective_distance(x, z) > cluster_radius for z in zeros):
            zeros.append(x)
    return zeros


def two_plane_count(
    n: int,
    trials: int,
    seed: int = DEFAULT_SEED,
    grid_density: int = DEFAULT_GRID_DENSITY,
    threads: int = DEFAULT_THREADS,
    zero_threshold: float = ZERO_THRESHOLD,
    reject_ceiling: float = REJECT_CEILING,
    cluster_radius: float = CLUSTER_RADIUS,
) -> MonteCarloReport:
    """Mean number of discriminant points on a random projective 2-plane; C(n,2) in expectation."""
    if n < 3:
        raise ValueError(f"two_plane_count needs n >= 3, got {n}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    def trial(index: int, rng: np.random.Generator) -> Optional[int]:
        plane = random_plane(n, rng)
        try:
            return len(count_zeros(plane, grid_density, zero_threshold, reject_ceiling, cluster_radius))
        except UnresolvedZero as e:
            logger.warning(f"Trial {index} flagged: {e}")
            return None

    counts = run_replicas(trial, trials, seed, threads, label=f"two-plane n={n}")
    resolved = [c for c in counts if c is not None]
    if not resolved:
        raise UnresolvedZero(f"All {trials} trials had unresolved zeros")

    upper = binomial(n + 1, 3)
    extras: Dict[str, Any] = {
        "per_trial": counts,
        "max": max(resolved),
        "unresolved": trials - len(resolved),
        "expected": binomial(n, 2),
        "upper_bound": upper,
        "anomalies": sum(1 for c in resolved if c > upper),
    }
    if extras["anomalies"]:
        logger.warning(f"{extras['anomalies']} trial(s) exceeded the bound C(n+1,3) = {upper}")
    return MonteCarloReport.from_samples(
        "two-plane",
        resolved,
        seed,
        params={"n": n, "trials": trials, "grid_density": grid_density},
        extras=extras,
    )
