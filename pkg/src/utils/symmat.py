"""
Symmetric-matrix core: Frobenius norm, cyclic Jacobi eigensolver, characteristic
polynomial, discriminant, eigenvalue gaps and GOE sampling.
"""
import math
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from config import JACOBI_REL_THRESHOLD, JACOBI_SWEEP_CAP, MULTIPLICITY_TOL, logger
from models.partitions import MultiplicityVector
from models.polynomial import RatPolynomial
from models.symmetric_matrix import SpectralDecomposition, SymmetricMatrix
from utils.errors import NoConvergence

# Entries whose denominator exceeds this are treated as genuine floats by char_poly
EXACT_DENOMINATOR_LIMIT = 2**20


def frobenius_norm(a: SymmetricMatrix) -> float:
    """sqrt(tr(A^2)) = sqrt(sum a_ii^2 + 2 sum_{i<j} a_ij^2)."""
    total = 0.0
    for i in range(a.n):
        for j in range(i, a.n):
            x = a.entry(i, j)
            total += x * x if i == j else 2.0 * x * x
    return math.sqrt(total)


def _off_norm(m: np.ndarray) -> float:
    return float(np.sqrt(max(np.sum(m * m) - np.sum(np.diag(m) ** 2), 0.0)))


def _canonical_signs(rows: np.ndarray) -> np.ndarray:
    """Flip each row so its first entry of magnitude > 1e-12 is positive."""
    out = rows.copy()
    for r in range(out.shape[0]):
        nonzero = np.flatnonzero(np.abs(out[r]) > 1e-12)
        if nonzero.size and out[r, nonzero[0]] < 0:
            out[r] = -out[r]
    return out


def eigendecompose(a: SymmetricMatrix, sweep_cap: int = JACOBI_SWEEP_CAP) -> SpectralDecomposition:
    """Cyclic-by-row Jacobi: A = C^T diag(lambda) C, lambda descending, rows of C canonically signed."""
    n = a.n
    m = a.to_dense()
    v = np.eye(n)
    norm = frobenius_norm(a)
    threshold = JACOBI_REL_THRESHOLD * norm

    sweeps = 0
    while _off_norm(m) > threshold:
        if sweeps >= sweep_cap:
            logger.error(f"Jacobi did not converge in {sweep_cap} sweeps (n={n}, off={_off_norm(m):.3e})")
            raise NoConvergence(f"Jacobi eigensolver exceeded {sweep_cap} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if apq == 0.0:
                    continue
                app, aqq = m[p, p], m[q, q]
                theta = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = m[:, p].copy()
                col_q = m[:, q].copy()
                m[:, p] = c * col_p - s * col_q
                m[:, q] = s * col_p + c * col_q
                m[p, :] = m[:, p]
                m[q, :] = m[:, q]
                m[p, p] = app - t * apq
                m[q, q] = aqq + t * apq
                m[p, q] = m[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    values = np.diag(m).copy()
    order = np.argsort(-values, kind="stable")
    rotation = _canonical_signs(v[:, order].T)
    logger.debug(f"Jacobi converged after {sweeps} sweeps (n={n})")
    return SpectralDecomposition(rotation=rotation, eigenvalues=values[order])


def eigenvalues(a: SymmetricMatrix) -> np.ndarray:
    return eigendecompose(a).eigenvalues


def _is_exact(a: SymmetricMatrix) -> bool:
    return all(Fraction(x).denominator <= EXACT_DENOMINATOR_LIMIT for x in a.entries)


def char_poly(a: SymmetricMatrix, exact: Optional[bool] = None) -> RatPolynomial:
    """det(x I - A) by the Faddeev-LeVerrier recurrence.

    Runs over exact rationals when the entries are (small-denominator) rationals,
    otherwise in floating point with the result stored exactly.
    """
    n = a.n
    if exact is None:
        exact = _is_exact(a)
    coeffs: List = [0] * (n + 1)
    coeffs[n] = 1
    if exact:
        dense = [[Fraction(a.entry(i, j)) for j in range(n)] for i in range(n)]
        mk = [[Fraction(0)] * n for _ in range(n)]
        for k in range(1, n + 1):
            # M_k = A M_{k-1} + c_{n-k+1} I
            prod = [[sum((dense[i][l] * mk[l][j] for l in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
            for i in range(n):
                prod[i][i] += coeffs[n - k + 1]
            mk = prod
            trace = sum((sum((dense[i][l] * mk[l][i] for l in range(n)), Fraction(0)) for i in range(n)), Fraction(0))
            coeffs[n - k] = -trace / k
        return RatPolynomial(coeffs=coeffs)

    dense = a.to_dense()
    mk = np.zeros((n, n))
    float_coeffs = [0.0] * (n + 1)
    float_coeffs[n] = 1.0
    for k in range(1, n + 1):
        mk = dense @ mk + float_coeffs[n - k + 1] * np.eye(n)
        float_coeffs[n - k] = -float(np.trace(dense @ mk)) / k
    return RatPolynomial(coeffs=[Fraction(c) for c in float_coeffs])


def discriminant(a: SymmetricMatrix) -> float:
    """prod_{i<j} (lambda_i - lambda_j)^2 over the Jacobi eigenvalues."""
    values = eigenvalues(a)
    out = 1.0
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            out *= (values[i] - values[j]) ** 2
    return out


def min_gap_of(values: Sequence[float]) -> float:
    """Smallest distance between two entries; +inf with fewer than two."""
    ordered = np.sort(np.asarray(values, dtype=float))
    if len(ordered) < 2:
        return math.inf
    return float(np.min(np.diff(ordered)))


def min_gap(a: SymmetricMatrix) -> float:
    """min_{i<j} |l_i - l_j|; a 1x1 matrix has no eigenvalue pair and is rejected."""
    if a.n < 2:
        raise ValueError(f"min_gap needs n >= 2, got n={a.n}")
    return min_gap_of(eigenvalues(a))


# --- random streams and sampling ----------------------------------------


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Counter-based (Philox) stream derived from (master seed, replica index)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def spawn_streams(seed: int, count: int) -> List[np.random.Generator]:
    """Streams (seed, 0) .. (seed, count - 1), one per replica."""
    return [stream(seed, i) for i in range(count)]


def goe_sample(n: int, rng: np.random.Generator) -> SymmetricMatrix:
    """Density proportional to exp(-||A||^2 / 2): diagonal N(0,1), off-diagonal N(0,1/2)."""
    if n < 1:
        raise ValueError(f"GOE dimension must be >= 1, got {n}")
    return SymmetricMatrix.from_dense(goe_batch(n, 1, rng)[0])


def goe_batch(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """`count` GOE(n) matrices as a dense (count, n, n) array."""
    out = np.zeros((count, n, n))
    if n == 0:
        return out
    diag = rng.standard_normal((count, n))
    rows, cols = np.triu_indices(n, k=1)
    off = rng.standard_normal((count, len(rows))) * math.sqrt(0.5)
    idx = np.arange(n)
    out[:, idx, idx] = diag
    out[:, rows, cols] = off
    out[:, cols, rows] = off
    return out


def haar_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign fix)."""
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def with_spectrum(values: Sequence[float], rotation: np.ndarray) -> SymmetricMatrix:
    """C^T diag(values) C."""
    c = np.asarray(rotation, dtype=float)
    return SymmetricMatrix.from_dense(c.T @ np.diag(np.asarray(values, dtype=float)) @ c)


def eigenvalue_blocks(values: Sequence[float], tol: float) -> List[int]:
    """Sizes of runs of sorted eigenvalues whose consecutive gaps are <= tol."""
    ordered = sorted(values, reverse=True)
    if not ordered:
        return []
    sizes = [1]
    for prev, cur in zip(ordered, ordered[1:]):
        if prev - cur <= tol:
            sizes[-1] += 1
        else:
            sizes.append(1)
    return sizes


def multiplicity_pattern(a: SymmetricMatrix, tol: float = MULTIPLICITY_TOL) -> MultiplicityVector:
    """Stratum label of A: eigenvalues within tol*(1+||A||) are merged into one block."""
    values = eigenvalues(a)
    scale = tol * (1.0 + frobenius_norm(a))
    return MultiplicityVector.from_block_sizes(a.n, eigenvalue_blocks(values, scale))


def random_in_stratum(w: MultiplicityVector, rng: np.random.Generator) -> SymmetricMatrix:
    """C^T Lambda C with Haar C and a spectrum of multiplicity pattern exactly w."""
    sizes = w.block_sizes()
    rng.shuffle(sizes)
    # distinct block values at least 0.5 apart
    steps = 0.5 + rng.random(len(sizes))
    levels = np.cumsum(steps) - steps.sum() / 2
    values = np.repeat(levels, sizes)
    return with_spectrum(values, haar_orthogonal(w.n, rng))
