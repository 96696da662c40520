"""
Monte Carlo experiments on GOE matrices: second moments of the characteristic
polynomial, eigenvalue-gap probabilities and restricted discriminant volumes,
plus the exact volume identity they are checked against.
"""
import math
from typing import Any, Dict, List, Sequence

import numpy as np

from config import DEFAULT_SEED, DEFAULT_THREADS, logger
from models.closed_form import ClosedFormScalar
from models.reports import MonteCarloReport
from utils.exactform import binomial, volume_constant
from utils.parallel import sample_batches
from utils.polyhermite import second_moment_integral, second_moment_poly
from utils.quadrature import gauss_hermite
from utils.symmat import goe_batch

MIN_MOMENT_SAMPLES = 1_000


def _goe_eigenvalues(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Eigenvalues of `size` GOE(n) draws, shape (size, n)."""
    if n == 0:
        return np.zeros((size, 0))
    return np.linalg.eigvalsh(goe_batch(n, size, rng))


def mc_second_moment(
    k: int,
    u: float,
    samples: int,
    seed: int = DEFAULT_SEED,
    threads: int = DEFAULT_THREADS,
) -> MonteCarloReport:
    """Sample mean of det(Q - u)^2 over GOE(k) draws, next to the exact polynomial value."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if samples < MIN_MOMENT_SAMPLES:
        raise ValueError(f"Need at least {MIN_MOMENT_SAMPLES} samples, got {samples}")

    def draw(size: int, rng: np.random.Generator) -> np.ndarray:
        return np.prod((_goe_eigenvalues(k, size, rng) - u) ** 2, axis=1)

    values = sample_batches(draw, samples, seed, threads, label=f"moment k={k}")
    exact = second_moment_poly(k).evaluate(float(u))
    return MonteCarloReport.from_samples(
        "moment",
        values,
        seed,
        params={"k": k, "u": u},
        extras={"exact": float(exact)},
    )


def volume_identity_check(n: int) -> ClosedFormScalar:
    """2^(n-1) / (sqrt(pi) n!) * C(n,2) * integral of E det(Q - u)^2 exp(-u^2), Q ~ GOE(n-2); equals C(n,2)."""
    if n < 2:
        raise ValueError(f"volume_identity_check needs n >= 2, got {n}")
    return volume_constant(n) * binomial(n, 2) * second_moment_integral(n - 2)


def goe2_gap_probability(eps: float) -> float:
    """Exact P(|lambda_1 - lambda_2| <= eps) for GOE(2): 1 - exp(-eps^2 / 8)."""
    return -math.expm1(-eps * eps / 8.0)


def _min_gaps(n: int, samples: int, seed: int, threads: int) -> np.ndarray:
    def draw(size: int, rng: np.random.Generator) -> np.ndarray:
        return np.min(np.diff(_goe_eigenvalues(n, size, rng), axis=1), axis=1)

    return sample_batches(draw, samples, seed, threads, label=f"gaps n={n}")


def _gap_report(n: int, eps: float, gaps: np.ndarray, seed: int) -> MonteCarloReport:
    extras: Dict[str, Any] = {"bound": 0.25 * binomial(n, 2) * eps * eps}
    if n == 2:
        extras["exact"] = goe2_gap_probability(eps)
    report = MonteCarloReport.from_samples(
        "gap-prob", (gaps <= eps).astype(float), seed, params={"n": n, "eps": eps}, extras=extras
    )
    if eps > 0:
        report.extras["ratio"] = report.estimate / (eps * eps)
    return report


def gap_probability(
    n: int,
    eps: float,
    samples: int,
    seed: int = DEFAULT_SEED,
    threads: int = DEFAULT_THREADS,
) -> MonteCarloReport:
    """Fraction of GOE(n) draws whose smallest eigenvalue gap is at most eps."""
    if n < 2:
        raise ValueError(f"Gap probability needs n >= 2, got {n}")
    if eps < 0:
        raise ValueError(f"eps must be non-negative, got {eps}")
    return _gap_report(n, eps, _min_gaps(n, samples, seed, threads), seed)


def gap_ratio_sweep(
    n: int,
    eps_values: Sequence[float],
    samples: int,
    seed: int = DEFAULT_SEED,
    threads: int = DEFAULT_THREADS,
) -> List[MonteCarloReport]:
    """Gap probabilities for several eps on one shared sample; extras carry estimate / eps^2."""
    if n < 2:
        raise ValueError(f"Gap probability needs n >= 2, got {n}")
    gaps = _min_gaps(n, samples, seed, threads)
    return [_gap_report(n, float(eps), gaps, seed) for eps in eps_values]


def _restricted_contributions(n: int, samples: int, quadrature_m: int, seed: int, threads: int) -> np.ndarray:
    """Per-sample quadrature sums, shape (samples, n-1); column i-1 holds configuration i."""
    rule = gauss_hermite(quadrature_m)
    nodes = np.asarray(rule.nodes)
    weights = np.asarray(rule.weights)

    def draw(size: int, rng: np.random.Generator) -> np.ndarray:
        values = _goe_eigenvalues(n - 2, size, rng)[:, :, None]  # (size, n-2, 1)
        shifted = values - nodes[None, None, :]  # (size, n-2, m)
        dets = np.prod(shifted**2, axis=1)  # (size, m)
        below = np.sum(shifted < 0, axis=1)  # eigenvalues of Q below u
        out = np.empty((size, n - 1))
        for i in range(1, n):
            out[:, i - 1] = np.sum(weights * dets * (below == i - 1), axis=1)
        return out

    return sample_batches(draw, samples, seed, threads, label=f"restricted n={n}")


def _prefactor(n: int) -> float:
    return (volume_constant(n) * binomial(n, 2)).to_float()


def restricted_volume_estimate(
    n: int,
    config: int,
    samples: int,
    quadrature_m: int = 40,
    seed: int = DEFAULT_SEED,
    threads: int = DEFAULT_THREADS,
) -> MonteCarloReport:
    """Normalized volume of the part of the discriminant where the double eigenvalue has exactly config-1 eigenvalues below it."""
    if n < 3:
        raise ValueError(f"Restricted volumes need n >= 3, got {n}")
    if not 1 <= config <= n - 1:
        raise ValueError(f"config must be in [1, {n - 1}], got {config}")
    contributions = _restricted_contributions(n, samples, quadrature_m, seed, threads)
    return MonteCarloReport.from_samples(
        "restricted-volume",
        _prefactor(n) * contributions[:, config - 1],
        seed,
        params={"n": n, "config": config, "quadrature": quadrature_m},
        extras={"total": binomial(n, 2)},
    )


def restricted_volume_sum(
    n: int,
    samples: int,
    quadrature_m: int = 40,
    seed: int = DEFAULT_SEED,
    threads: int = DEFAULT_THREADS,
) -> MonteCarloReport:
    """All configurations on one shared sample; the summed estimate should reproduce C(n,2)."""
    if n < 3:
        raise ValueError(f"Restricted volumes need n >= 3, got {n}")
    scaled = _prefactor(n) * _restricted_contributions(n, samples, quadrature_m, seed, threads)
    per_config = []
    for i in range(1, n):
        column = MonteCarloReport.from_samples("restricted-volume", scaled[:, i - 1], seed)
        per_config.append({"config": i, "estimate": column.estimate, "std_error": column.std_error})
    report = MonteCarloReport.from_samples(
        "restricted-volume-sum",
        scaled.sum(axis=1),
        seed,
        params={"n": n, "quadrature": quadrature_m},
        extras={"total": binomial(n, 2), "configs": per_config},
    )
    logger.info(f"Restricted volumes n={n}: sum {report.estimate:.6f} +/- {report.std_error:.6f} (expected {binomial(n, 2)})")
    return report
