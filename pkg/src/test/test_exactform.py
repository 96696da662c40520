"""
Exact closed-form arithmetic and the constants of the volume computation.
"""
import math
import os
import sys
from fractions import Fraction
from typing import Optional

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.closed_form import ClosedFormScalar
from utils.errors import IncompatibleBasis
from utils.exactform import (
    SQRT2,
    SQRTPI,
    binomial,
    double_factorial,
    duplication_check,
    factorial,
    gamma_half,
    orthogonal_group_times_z,
    p_const,
    volume_constant,
    volume_orthogonal_group,
    volume_sphere,
    z_const,
)


def test_canonical_form():
    assert SQRT2 * SQRT2 == ClosedFormScalar.of(2)
    assert SQRTPI * SQRTPI == ClosedFormScalar.pi()
    assert ClosedFormScalar.of(3, a=5, b=1) == ClosedFormScalar.of(12, a=1, b=1)
    assert ClosedFormScalar.of(0, a=3, b=7) == ClosedFormScalar.zero()
    assert ClosedFormScalar.of(1, a=-1) == ClosedFormScalar.of(Fraction(1, 2), a=1)
    print("✓ canonical form folds even powers of sqrt(2)")


def test_addition_rules():
    half_sqrtpi = ClosedFormScalar.of(Fraction(1, 2), b=1)
    assert half_sqrtpi + half_sqrtpi == SQRTPI
    assert ClosedFormScalar.zero() + SQRT2 == SQRT2
    assert (SQRTPI - SQRTPI).is_zero
    try:
        SQRT2 + SQRTPI
        raise AssertionError("adding sqrt(2) and sqrt(pi) must fail")
    except IncompatibleBasis:
        pass
    try:
        ClosedFormScalar.one() + SQRT2
        raise AssertionError("adding 1 and sqrt(2) must fail")
    except IncompatibleBasis:
        pass
    print("✓ addition requires a common irrational part")


def test_division_and_powers():
    assert (SQRTPI / SQRTPI).is_rational
    assert SQRT2.inv() == ClosedFormScalar.of(Fraction(1, 2), a=1)
    assert ClosedFormScalar.of(3, b=1).power(-2) == ClosedFormScalar.of(Fraction(1, 9), b=-2)
    assert 1 / ClosedFormScalar.of(4) == ClosedFormScalar.of(Fraction(1, 4))
    try:
        ClosedFormScalar.zero().inv()
        raise AssertionError("inverting zero must fail")
    except ZeroDivisionError:
        pass


def test_to_float_and_json():
    value = ClosedFormScalar.of(Fraction(3, 2), a=1, b=1)
    assert abs(value.to_float() - 1.5 * 2**0.5 * 3.141592653589793**0.5) < 1e-12
    assert ClosedFormScalar.pi().to_float(precision=3) == 3.14
    payload = value.to_json()
    assert payload == {"q": "3/2", "sqrt2_exp": 1, "sqrtpi_exp": 1}
    assert ClosedFormScalar.from_json(payload) == value
    assert str(SQRTPI) == "√π"
    print("✓ float and JSON views")


def test_integer_helpers():
    assert factorial(0) == 1 and factorial(6) == 720
    assert double_factorial(-1) == 1 and double_factorial(7) == 105 and double_factorial(8) == 384
    assert binomial(10, 2) == 45 and binomial(4, 3) == 4 and binomial(2, 5) == 0


def test_gamma_half():
    assert gamma_half(1) == SQRTPI
    assert gamma_half(2) == ClosedFormScalar.one()
    assert gamma_half(3) == ClosedFormScalar.of(Fraction(1, 2), b=1)
    assert gamma_half(5) == ClosedFormScalar.of(Fraction(3, 4), b=1)
    assert gamma_half(8) == ClosedFormScalar.of(6)
    print("✓ Gamma at half integers")


def test_group_and_sphere_volumes():
    assert volume_orthogonal_group(1) == ClosedFormScalar.of(2)
    assert volume_orthogonal_group(2) == ClosedFormScalar.of(4, b=2)
    assert volume_orthogonal_group(3) == ClosedFormScalar.of(16, b=4)
    assert volume_sphere(1) == ClosedFormScalar.of(2, b=2)
    assert volume_sphere(2) == ClosedFormScalar.of(4, b=2)
    assert z_const(0) == ClosedFormScalar.one()
    assert z_const(1) == SQRT2 * SQRTPI
    assert p_const(0) == ClosedFormScalar.of(2)
    assert p_const(1) == ClosedFormScalar.of(2, b=1)
    assert z_const(2) == ClosedFormScalar.of(4, b=1)


def test_orthogonal_group_numeric():
    for n in range(1, 7):
        expected = 2**n * math.pi ** (n * (n + 1) / 4) / math.prod(math.gamma(i / 2) for i in range(1, n + 1))
        assert abs(volume_orthogonal_group(n).to_float() - expected) <= 1e-12 * expected, f"|O({n})| mismatch"
    assert abs(volume_orthogonal_group(3).to_float() - 16 * math.pi**2) < 1e-10


def test_gamma_recurrence():
    for k in range(1, 41):
        assert gamma_half(k + 2) == gamma_half(k) * Fraction(k, 2), f"Gamma((k+2)/2) = (k/2) Gamma(k/2) fails at k={k}"
    print("✓ Gamma recurrence for k = 1..40")


def test_normalization_constants():
    for m in range(0, 21):
        assert p_const(m) == z_const(2 * m) * Fraction(2) ** (1 - 2 * m), f"P_m = 2^(1-2m) Z_2m fails at m={m}"
    for m in range(0, 16):
        assert z_const(2 * m + 1) == 2 * SQRT2 * gamma_half(2 * m + 3) * z_const(2 * m), f"odd step of Z fails at m={m}"
    print("✓ P_m and Z_n relations")


def _random_scalar(rng: np.random.Generator, a: Optional[int] = None, b: Optional[int] = None) -> ClosedFormScalar:
    q = Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 30)))
    a = int(rng.integers(0, 2)) if a is None else a
    b = int(rng.integers(-4, 5)) if b is None else b
    return ClosedFormScalar.of(q, a=a, b=b)


def test_field_laws():
    rng = np.random.default_rng(11)
    for _ in range(200):
        x, y, z = (_random_scalar(rng) for _ in range(3))
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        a, b = int(rng.integers(0, 2)), int(rng.integers(-4, 5))
        x, y, z = (_random_scalar(rng, a, b) for _ in range(3))
        assert x + y == y + x
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
    print("✓ multiplication and addition commute and associate")


def test_volume_identities():
    for n in range(2, 16):
        computed, closed = orthogonal_group_times_z(n)
        assert computed == closed, f"|O(n)| Z_(n-2) mismatch at n={n}: {computed} vs {closed}"
    for n in range(2, 25):
        lhs, rhs = duplication_check(n)
        assert lhs == rhs, f"duplication identity fails at n={n}"
    assert volume_constant(2) == ClosedFormScalar.of(1, b=-1)
    assert volume_constant(3) == ClosedFormScalar.of(Fraction(2, 3), b=-1)
    print("✓ intermediate identities of the volume formula")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
    print("\n✅ All exactform tests passed!")
