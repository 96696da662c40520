"""
Gauss-Hermite rules against exact Gaussian moments and numpy's reference nodes.
"""
import math
import os
import sys

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.polynomial import RatPolynomial
from utils.polyhermite import gaussian_integral
from utils.quadrature import gauss_hermite

SQRT_PI = math.sqrt(math.pi)


def test_small_rules():
    rule = gauss_hermite(1)
    assert rule.nodes == (0.0,) and abs(rule.weights[0] - SQRT_PI) < 1e-14

    rule = gauss_hermite(2)
    assert np.allclose(rule.nodes, [-1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-15)
    assert np.allclose(rule.weights, [SQRT_PI / 2, SQRT_PI / 2], atol=1e-15)
    print("✓ one- and two-point rules")


def test_degree_exactness():
    rule = gauss_hermite(10)
    for degree in range(0, 20):
        exact = gaussian_integral(RatPolynomial.monomial(degree)).to_float()
        value = rule.integrate(lambda x: x**degree)
        assert abs(value - exact) <= 1e-10 * max(1.0, abs(exact)), f"u^{degree}: {value} vs {exact}"
    print("✓ ten-point rule integrates u^0..u^19 exactly")


def test_against_numpy():
    for m in (3, 7, 16, 40, 64):
        nodes, weights = np.polynomial.hermite.hermgauss(m)
        rule = gauss_hermite(m)
        assert rule.size == m
        assert np.allclose(rule.nodes, nodes, atol=1e-12)
        assert np.allclose(rule.weights, weights, rtol=1e-8, atol=0)
        assert abs(sum(rule.weights) - SQRT_PI) < 1e-12


def test_invalid_sizes():
    for m in (0, 65, -3):
        try:
            gauss_hermite(m)
            raise AssertionError(f"m={m} must be rejected")
        except ValueError:
            pass


if __name__ == "__main__":
    test_small_rules()
    test_degree_exactness()
    test_against_numpy()
    test_invalid_sizes()
    print("\n✅ All quadrature tests passed!")
