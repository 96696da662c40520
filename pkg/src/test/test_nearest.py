"""
Nearest points on the discriminant, critical points on each stratum and their criticality residuals.
"""
import math
import os
import sys

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.partitions import MultiplicityVector, SetPartition
from models.reports import CriticalPoint
from models.symmetric_matrix import SymmetricMatrix
from services.nearest import (
    critical_points,
    discriminant_distance_oracle,
    nearest_in_discriminant,
    nearest_on_stratum,
    project_eigenvalues,
    spherical_nearest,
    tangent_basis,
    verify_criticality,
)
from utils import strata
from utils.errors import DegenerateInput
from utils.symmat import frobenius_norm, goe_sample, haar_orthogonal, min_gap, multiplicity_pattern, stream


def _partition(*blocks) -> SetPartition:
    return SetPartition(blocks=blocks)


def test_project_eigenvalues():
    assert np.allclose(project_eigenvalues([3, 1], _partition((1, 2))), [2, 2])
    assert np.allclose(project_eigenvalues([5, 1, 0], _partition((1,), (2, 3))), [5, 0.5, 0.5])
    assert np.allclose(project_eigenvalues([5, 1, 0], _partition((1, 2, 3))), [2, 2, 2])


def test_critical_point_examples():
    points = critical_points(SymmetricMatrix.diagonal([1, 3]), MultiplicityVector.of(0, 1))
    assert len(points) == 1
    assert np.allclose(points[0].matrix.to_dense(), np.diag([2, 2]))
    assert abs(points[0].distance - math.sqrt(2)) < 1e-12 and points[0].is_global_min

    a = SymmetricMatrix.diagonal([0, 1, 5])
    points = critical_points(a, MultiplicityVector.of(1, 1, 0))
    assert sorted(round(cp.distance * math.sqrt(2), 10) for cp in points) == [1.0, 4.0, 5.0]
    best = [cp for cp in points if cp.is_global_min]
    assert len(best) == 1 and np.allclose(best[0].matrix.to_dense(), np.diag([0.5, 0.5, 5]))

    (single,) = critical_points(a, MultiplicityVector.of(0, 0, 1))
    assert np.allclose(single.matrix.to_dense(), 2 * np.eye(3))
    assert abs(single.distance - math.sqrt(14)) < 1e-12
    print("✓ critical points of diagonal examples")


def test_nearest_in_discriminant():
    assert abs(nearest_in_discriminant(SymmetricMatrix.diagonal([1, 3])).distance - math.sqrt(2)) < 1e-12
    assert abs(nearest_in_discriminant(SymmetricMatrix.diagonal([0, 1, 5])).distance - 1 / math.sqrt(2)) < 1e-12

    rng = stream(21)
    for n in range(3, 9):
        for _ in range(10):
            a = goe_sample(n, rng)
            cp = nearest_in_discriminant(a)
            expected = min_gap(a) / math.sqrt(2)
            assert abs(cp.distance - expected) <= 1e-10 * max(1.0, expected)
            assert abs(frobenius_norm(a.sub(cp.matrix)) - cp.distance) <= 1e-10 * (1 + frobenius_norm(a))
            assert multiplicity_pattern(cp.matrix) == MultiplicityVector.pair(n)
    print("✓ distance equals the smallest gap over sqrt(2) for n = 3..8")


def test_counts_match_ed_degree():
    rng = stream(5)
    for n in range(2, 9):
        a = goe_sample(n, rng)
        for w in strata.enumerate_multiplicity_vectors(n, proper_only=True):
            points = critical_points(a, w)
            assert len(points) == strata.eddeg(w), f"n={n}, w={w}: {len(points)} critical points"
            assert sum(cp.is_global_min for cp in points) == 1
            if n <= 6:
                for cp in points:
                    assert verify_criticality(a, cp, w) <= 1e-8, f"residual too large for {cp.partition}"
    print("✓ critical point counts equal ED degrees for n <= 8")


def test_equivariance():
    rng = stream(8)
    a = goe_sample(4, rng)
    q = haar_orthogonal(4, rng)
    rotated = a.conjugate(q)
    for w in (MultiplicityVector.pair(4), MultiplicityVector.of(1, 0, 1, 0)):
        for cp, cp_rotated in zip(critical_points(a, w), critical_points(rotated, w)):
            assert cp.partition == cp_rotated.partition
            assert np.allclose(cp.matrix.conjugate(q).to_dense(), cp_rotated.matrix.to_dense(), atol=1e-8)
            assert abs(cp.distance - cp_rotated.distance) < 1e-8


def test_finer_stratum_flag():
    a = SymmetricMatrix.diagonal([3, 1, 0.2, -1])
    points = critical_points(a, MultiplicityVector.pair(4))
    flagged = [str(cp.partition) for cp in points if cp.degenerate]
    assert flagged == ["{14|2|3}"]
    best = nearest_in_discriminant(a)
    assert str(best.partition) == "{1|23|4}" and not best.degenerate


def test_degenerate_inputs():
    for a, w in (
        (SymmetricMatrix.identity(3), MultiplicityVector.of(1, 1, 0)),
        (SymmetricMatrix.diagonal([0, 1, 2]), MultiplicityVector.of(1, 1, 0)),
    ):
        try:
            nearest_on_stratum(a, w)
            raise AssertionError(f"{a.to_rows()} must be rejected as degenerate")
        except DegenerateInput:
            pass
    try:
        critical_points(SymmetricMatrix.diagonal([1, 2, 3]), MultiplicityVector.generic(3))
        raise AssertionError("the open stratum must be rejected")
    except ValueError:
        pass
    print("✓ repeated eigenvalues and tied distances are rejected")


def test_spherical_examples():
    cp = spherical_nearest(SymmetricMatrix.diagonal([1, 0]))
    assert abs(cp.spherical_distance - math.pi / 4) < 1e-12
    assert abs(frobenius_norm(cp.matrix) - 1.0) < 1e-10 and not cp.degenerate

    cp = spherical_nearest(SymmetricMatrix.diagonal([1 / math.sqrt(2), -1 / math.sqrt(2)]))
    assert abs(cp.spherical_distance - math.pi / 2) < 1e-12
    assert cp.degenerate and np.allclose(cp.matrix.to_dense(), np.eye(2) / math.sqrt(2))

    rng = stream(4)
    for _ in range(5):
        a = goe_sample(4, rng)
        a = a.scaled(1.0 / frobenius_norm(a))
        cp = spherical_nearest(a)
        assert abs(frobenius_norm(cp.matrix) - 1.0) < 1e-10
        assert abs(cp.spherical_distance - math.asin(min_gap(a) / math.sqrt(2))) < 1e-10
        assert min_gap(cp.matrix) < 1e-8

    try:
        spherical_nearest(SymmetricMatrix.diagonal([2, 0]))
        raise AssertionError("non-unit input must be rejected")
    except ValueError:
        pass


def test_residual_detects_non_critical_points():
    a = SymmetricMatrix.diagonal([0, 1, 5])
    cp = nearest_in_discriminant(a)
    assert verify_criticality(a, cp) <= 1e-12
    direction = tangent_basis(cp.matrix)[0]
    direction = direction / np.linalg.norm(direction)
    moved = SymmetricMatrix.from_dense(cp.matrix.to_dense() + 1e-2 * direction)
    perturbed = CriticalPoint(partition=cp.partition, matrix=moved, distance=frobenius_norm(a.sub(moved)))
    assert verify_criticality(a, perturbed) > 1e-3

    on_stratum = SymmetricMatrix.diagonal([2, 2, 7])
    point = CriticalPoint(partition=_partition((1, 2), (3,)), matrix=on_stratum, distance=0.0)
    assert verify_criticality(on_stratum, point) == 0.0


def test_descent_oracle():
    distance, point = discriminant_distance_oracle(SymmetricMatrix.diagonal([1, 3]), 3, stream(2))
    assert abs(distance - math.sqrt(2)) < 1e-12

    rng = stream(17)
    for n in (3, 4):
        a = goe_sample(n, rng)
        formula = nearest_in_discriminant(a).distance
        distance, point = discriminant_distance_oracle(a, 5, rng)
        assert distance >= formula - 1e-6
        assert abs(frobenius_norm(a.sub(point)) - distance) < 1e-8
        assert min_gap(point) < 1e-8
    print("✓ descent oracle never beats the closed formula")


if __name__ == "__main__":
    test_project_eigenvalues()
    test_critical_point_examples()
    test_nearest_in_discriminant()
    test_counts_match_ed_degree()
    test_equivariance()
    test_finer_stratum_flag()
    test_degenerate_inputs()
    test_spherical_examples()
    test_residual_detects_non_critical_points()
    test_descent_oracle()
    print("\n✅ All nearest tests passed!")
