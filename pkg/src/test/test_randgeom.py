"""
Monte Carlo experiments: moment estimates, gap probabilities, restricted volumes and the exact volume identity.
"""
import math
import os
import sys

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.closed_form import ClosedFormScalar
from services.randgeom import (
    gap_probability,
    gap_ratio_sweep,
    goe2_gap_probability,
    mc_second_moment,
    restricted_volume_estimate,
    restricted_volume_sum,
    volume_identity_check,
)
from utils.exactform import binomial
from utils.polyhermite import second_moment_poly

SEED = 12345


def test_second_moment_estimates():
    for k, u, exact in ((1, 0.0, 1.0), (2, 1.0, 3.75), (3, 0.0, float(second_moment_poly(3).evaluate(0)))):
        report = mc_second_moment(k, u, 100_000, SEED)
        assert report.n_samples == 100_000
        assert abs(report.extras["exact"] - exact) < 1e-12
        assert report.within(exact, 5), f"k={k}, u={u}: {report.estimate} +/- {report.std_error} vs {exact}"
    try:
        mc_second_moment(2, 0.0, 999)
        raise AssertionError("too few samples must be rejected")
    except ValueError:
        pass
    print("✓ Monte Carlo second moments agree with the exact polynomials")


def test_volume_identity():
    for n in range(2, 31):
        assert volume_identity_check(n) == ClosedFormScalar.of(binomial(n, 2)), f"volume identity fails at n={n}"
    print("✓ volume formula gives C(n,2) exactly for n = 2..30")


def test_gap_probability_goe2():
    eps = 0.1
    report = gap_probability(2, eps, 400_000, SEED)
    exact = goe2_gap_probability(eps)
    assert abs(exact - (1 - math.exp(-eps * eps / 8))) < 1e-15
    assert report.estimate <= 0.25 * eps * eps + 3 * report.std_error
    assert report.within(exact, 5)
    assert report.extras["exact"] == exact and report.extras["bound"] == 0.25 * eps * eps
    assert gap_probability(2, 0.0, 20_000, SEED).estimate == 0.0
    print("✓ GOE(2) gap probability follows 1 - exp(-eps^2/8)")


def test_gap_probability_goe3():
    eps = 0.1
    report = gap_probability(3, eps, 200_000, SEED)
    assert report.estimate <= 0.75 * eps * eps + 3 * report.std_error
    assert report.extras["ratio"] == report.estimate / (eps * eps)


def test_gap_ratio_sweep():
    reports = gap_ratio_sweep(2, [0.05, 0.1, 0.2], 200_000, SEED)
    assert [r.params["eps"] for r in reports] == [0.05, 0.1, 0.2]
    assert reports[0].estimate <= reports[1].estimate <= reports[2].estimate
    for r in reports:
        eps = r.params["eps"]
        assert abs(r.extras["ratio"] - 1 / 8) <= 5 * r.std_error / (eps * eps) + 0.01


def test_thread_independence():
    single = gap_probability(3, 0.2, 30_000, SEED, threads=1)
    pooled = gap_probability(3, 0.2, 30_000, SEED, threads=4)
    assert single == pooled
    assert mc_second_moment(2, 0.5, 25_000, SEED, threads=1) == mc_second_moment(2, 0.5, 25_000, SEED, threads=3)
    print("✓ reports do not depend on the thread count")


def test_restricted_volumes():
    samples = 50_000
    total = restricted_volume_sum(3, samples, 40, SEED)
    assert total.within(3.0, 5), f"sum {total.estimate} +/- {total.std_error}"
    assert [c["config"] for c in total.extras["configs"]] == [1, 2]

    first = restricted_volume_estimate(3, 1, samples, 40, SEED)
    second = restricted_volume_estimate(3, 2, samples, 40, SEED)
    assert abs(first.estimate - total.extras["configs"][0]["estimate"]) < 1e-12
    assert abs(first.estimate - second.estimate) <= 5 * (first.std_error + second.std_error)
    assert 0 < first.estimate < 3
    for bad in (0, 3):
        try:
            restricted_volume_estimate(3, bad, 1000)
            raise AssertionError(f"config {bad} must be rejected for n=3")
        except ValueError:
            pass
    print("✓ restricted volumes split C(3,2) symmetrically")


if __name__ == "__main__":
    test_second_moment_estimates()
    test_volume_identity()
    test_gap_probability_goe2()
    test_gap_probability_goe3()
    test_gap_ratio_sweep()
    test_thread_independence()
    test_restricted_volumes()
    print("\n✅ All randgeom tests passed!")
