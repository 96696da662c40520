"""
Physicists' Hermite polynomials, Gaussian-weight integration and the exact
second moment E det(Q - u)^2 of the characteristic polynomial of a GOE(k) matrix.
"""
from fractions import Fraction
from functools import lru_cache

from config import logger
from models.closed_form import ClosedFormScalar
from models.polynomial import IntPolynomial, RatPolynomial, _Polynomial
from utils.exactform import factorial, gamma_half

X = IntPolynomial(coeffs=[0, 1])


@lru_cache(maxsize=None)
def hermite(i: int) -> IntPolynomial:
    """H_i via H_{i+1} = 2x H_i - 2i H_{i-1}."""
    if i < 0:
        raise ValueError(f"Hermite index must be non-negative, got {i}")
    if i == 0:
        return IntPolynomial.constant(1)
    if i == 1:
        return IntPolynomial(coeffs=[0, 2])
    return (X * hermite(i - 1)).scale(2) - hermite(i - 2).scale(2 * (i - 1))


def derivative(p: _Polynomial) -> _Polynomial:
    return p.derivative()


def gaussian_moment(k: int) -> Fraction:
    """Rational part of the integral of u^k exp(-u^2): (2j)!/(4^j j!) for k = 2j, zero for odd k."""
    if k % 2:
        return Fraction(0)
    j = k // 2
    return Fraction(factorial(2 * j), 4**j * factorial(j))


def gaussian_integral(p: _Polynomial) -> ClosedFormScalar:
    """Exact integral over R of p(u) exp(-u^2) du, always a rational multiple of sqrt(pi)."""
    total = sum((Fraction(c) * gaussian_moment(k) for k, c in enumerate(p.coeffs) if k % 2 == 0), Fraction(0))
    return ClosedFormScalar.of(total, b=1)


def _x_rows(j: int):
    """Rows (H_2j, H_2j') and (H_2j+1 - H_2j', H_2j+1' - H_2j'')."""
    h0 = hermite(2 * j)
    h1 = hermite(2 * j + 1)
    d0 = h0.derivative()
    top = (h0, d0)
    bottom = (h1 - d0, h1.derivative() - d0.derivative())
    return top, bottom


def _det2(r0, r1) -> _Polynomial:
    return r0[0] * r1[1] - r0[1] * r1[0]


def x_matrix_det(j: int) -> RatPolynomial:
    if j < 0:
        raise ValueError(f"j must be non-negative, got {j}")
    top, bottom = _x_rows(j)
    return _det2(top, bottom).to_rat()


def y_matrix_det(j: int, m: int) -> RatPolynomial:
    """3x3 determinant with first column ((2j)!/j!, 0, (2m+2)!/(m+1)!), expanded along it."""
    if not 0 <= j <= m:
        raise ValueError(f"Need 0 <= j <= m, got j={j}, m={m}")
    top, middle = _x_rows(j)
    h = hermite(2 * m + 2)
    bottom = (h, h.derivative())
    c_top = Fraction(factorial(2 * j), factorial(j))
    c_bottom = Fraction(factorial(2 * m + 2), factorial(m + 1))
    return (_det2(middle, bottom).scale(c_top) + _det2(top, middle).scale(c_bottom)).to_rat()


def _odd_prefactor(m: int) -> Fraction:
    """sqrt(pi) (2m+1)! / (2^(4m+2) Gamma(m+3/2)), which is rational."""
    value = ClosedFormScalar.of(factorial(2 * m + 1), b=1) / (gamma_half(2 * m + 3) * 2 ** (4 * m + 2))
    if not value.is_rational:
        raise ArithmeticError(f"Odd-case prefactor for m={m} is not rational: {value}")
    return value.q


@lru_cache(maxsize=None)
def second_moment_poly(k: int) -> RatPolynomial:
    """p_k(u) = E_{Q ~ GOE(k)} det(Q - u)^2; k = 0 is the empty determinant, p_0 = 1."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k == 0:
        return RatPolynomial.constant(1)
    m, odd = divmod(k, 2)
    total = RatPolynomial()
    if not odd:
        for j in range(m + 1):
            total = total + x_matrix_det(j).scale(Fraction(1, 2 ** (2 * j + 1) * factorial(2 * j)))
        result = total.scale(Fraction(factorial(2 * m), 2 ** (2 * m)))
    else:
        for j in range(m + 1):
            total = total + y_matrix_det(j, m).scale(Fraction(1, 2 ** (2 * j + 2) * factorial(2 * j)))
        result = total.scale(_odd_prefactor(m))
    if result.degree != 2 * k or not result.is_monic() or not result.is_even():
        logger.error(f"second_moment_poly({k}) is not an even monic polynomial of degree {2 * k}: {result}")
        raise ArithmeticError(f"Second moment polynomial for k={k} has the wrong shape")
    logger.debug(f"second_moment_poly({k}) has degree {result.degree}")
    return result.to_rat()


def second_moment_integral(k: int) -> ClosedFormScalar:
    """Integral of p_k(u) exp(-u^2) du, computed from the polynomial."""
    return gaussian_integral(second_moment_poly(k))


def second_moment_integral_closed_form(k: int) -> ClosedFormScalar:
    """sqrt(pi) (k+2)! / 2^(k+1)."""
    return ClosedFormScalar.of(Fraction(factorial(k + 2), 2 ** (k + 1)), b=1)


def x_matrix_integral_sum(m: int) -> ClosedFormScalar:
    """sum_{j<=m} 2^(-2j-1)/(2j)! * integral of det X_j(u) exp(-u^2); equals sqrt(pi)(m+1)(2m+1)."""
    total = ClosedFormScalar.zero()
    for j in range(m + 1):
        total = total + gaussian_integral(x_matrix_det(j)) * Fraction(1, 2 ** (2 * j + 1) * factorial(2 * j))
    return total
