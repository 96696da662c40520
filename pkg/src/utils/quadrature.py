"""
Gauss-Hermite quadrature for integrals against exp(-u^2).
"""
import math

from config import logger
from models.reports import QuadratureRule
from utils.errors import NoConvergence

MAX_NODES = 64
NEWTON_MAX_ITER = 100
NEWTON_EPS = 3e-14


def _orthonormal_hermite(z: float, m: int):
    """Values of the orthonormal Hermite functions of degree m and m-1 at z."""
    p1 = math.pi**-0.25
    p2 = 0.0
    for j in range(1, m + 1):
        p3 = p2
        p2 = p1
        p1 = z * math.sqrt(2.0 / j) * p2 - math.sqrt((j - 1) / j) * p3
    return p1, p2


def gauss_hermite(m: int) -> QuadratureRule:
    """m-point rule exact for polynomials of degree <= 2m-1.

    Roots of H_m are refined by Newton's method from the usual asymptotic
    guesses, largest root first, and mirrored by symmetry.
    """
    if not 1 <= m <= MAX_NODES:
        raise ValueError(f"Gauss-Hermite node count must be in [1, {MAX_NODES}], got {m}")

    roots = [0.0] * m
    weights = [0.0] * m
    z = 0.0
    for i in range((m + 1) // 2):
        if i == 0:
            z = math.sqrt(2 * m + 1) - 1.85575 * (2 * m + 1) ** (-1 / 6)
        elif i == 1:
            z -= 1.14 * m**0.426 / z
        elif i == 2:
            z = 1.86 * z - 0.86 * roots[0]
        elif i == 3:
            z = 1.91 * z - 0.91 * roots[1]
        else:
            z = 2.0 * z - roots[i - 2]

        for _ in range(NEWTON_MAX_ITER):
            p1, p2 = _orthonormal_hermite(z, m)
            derivative = math.sqrt(2.0 * m) * p2
            previous = z
            z = previous - p1 / derivative
            if abs(z - previous) <= NEWTON_EPS:
                break
        else:
            logger.error(f"Newton refinement of Gauss-Hermite root {i} (m={m}) did not converge")
            raise NoConvergence(f"Gauss-Hermite root {i} for m={m} did not converge")

        p1, p2 = _orthonormal_hermite(z, m)
        derivative = math.sqrt(2.0 * m) * p2
        roots[i] = z
        roots[m - 1 - i] = -z
        weights[i] = weights[m - 1 - i] = 2.0 / (derivative * derivative)

    if m % 2:
        roots[m // 2] = 0.0
    order = sorted(range(m), key=lambda k: roots[k])
    return QuadratureRule(nodes=tuple(roots[k] for k in order), weights=tuple(weights[k] for k in order))
