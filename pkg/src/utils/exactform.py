"""
Exact constants of the GOE volume computation: half-integer Gamma values,
the Selberg-type normalization Z_n, P_m, |O(n)| and sphere volumes.
"""
import math
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from models.closed_form import ClosedFormScalar

SQRT2 = ClosedFormScalar.sqrt2()
SQRTPI = ClosedFormScalar.sqrtpi()


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return math.factorial(n)


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def gamma_half(k: int) -> ClosedFormScalar:
    """Gamma(k/2) for k >= 1: rational for even k, rational * sqrt(pi) for odd k."""
    if k < 1:
        raise ValueError(f"gamma_half needs k >= 1, got {k}")
    if k % 2 == 0:
        return ClosedFormScalar.of(factorial(k // 2 - 1))
    j = (k - 1) // 2
    # Gamma(j + 1/2) = (2j)! / (4^j j!) * sqrt(pi)
    return ClosedFormScalar.of(Fraction(factorial(2 * j), 4**j * factorial(j)), b=1)


@lru_cache(maxsize=None)
def z_const(n: int) -> ClosedFormScalar:
    """Z_n = sqrt(2 pi)^n prod_{i=1..n} Gamma(1 + i/2) / Gamma(3/2)."""
    if n < 0:
        raise ValueError(f"z_const needs n >= 0, got {n}")
    out = (SQRT2 * SQRTPI).power(n)
    g32 = gamma_half(3)
    for i in range(1, n + 1):
        out = out * gamma_half(i + 2) / g32
    return out


def p_const(m: int) -> ClosedFormScalar:
    """P_m = 2^(1 - m^2) sqrt(pi)^m prod_{i=0..m} (2i)!."""
    if m < 0:
        raise ValueError(f"p_const needs m >= 0, got {m}")
    product = 1
    for i in range(m + 1):
        product *= factorial(2 * i)
    return ClosedFormScalar.of(Fraction(2) ** (1 - m * m) * product, b=m)


def volume_orthogonal_group(n: int) -> ClosedFormScalar:
    """|O(n)| = 2^n pi^(n(n+1)/4) / prod_{i=1..n} Gamma(i/2)."""
    if n < 1:
        raise ValueError(f"volume_orthogonal_group needs n >= 1, got {n}")
    out = ClosedFormScalar.of(2**n, b=n * (n + 1) // 2)
    for i in range(1, n + 1):
        out = out / gamma_half(i)
    return out


def volume_sphere(d: int) -> ClosedFormScalar:
    """|S^d| = 2 pi^((d+1)/2) / Gamma((d+1)/2)."""
    if d < 0:
        raise ValueError(f"volume_sphere needs d >= 0, got {d}")
    return ClosedFormScalar.of(2, b=d + 1) / gamma_half(d + 1)


def volume_constant(n: int) -> ClosedFormScalar:
    """Prefactor 2^(n-1) / (sqrt(pi) n!) of the discriminant volume integral."""
    return ClosedFormScalar.of(Fraction(2 ** (n - 1), factorial(n)), b=-1)


def orthogonal_group_times_z(n: int) -> Tuple[ClosedFormScalar, ClosedFormScalar]:
    """(|O(n)| * Z_{n-2}, sqrt(2)^(5n-6) pi^(n(n+1)/4 - 1/2)) for n >= 2; the two must agree."""
    if n < 2:
        raise ValueError(f"orthogonal_group_times_z needs n >= 2, got {n}")
    computed = volume_orthogonal_group(n) * z_const(n - 2)
    closed = ClosedFormScalar.of(1, a=5 * n - 6, b=n * (n + 1) // 2 - 1)
    return computed, closed


def duplication_check(n: int) -> Tuple[ClosedFormScalar, ClosedFormScalar]:
    """(Gamma(n/2) Gamma((n-1)/2), 2^(2-n) sqrt(pi) (n-2)!) for n >= 2."""
    if n < 2:
        raise ValueError(f"duplication_check needs n >= 2, got {n}")
    lhs = gamma_half(n) * gamma_half(n - 1)
    rhs = ClosedFormScalar.of(Fraction(2) ** (2 - n) * factorial(n - 2), b=1)
    return lhs, rhs
