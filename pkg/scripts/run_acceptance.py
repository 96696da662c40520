#!/usr/bin/env python3
"""
Full-scale acceptance runs. Slow: the Monte Carlo criteria use their full sample counts.

    python scripts/run_acceptance.py                 # everything
    python scripts/run_acceptance.py --only 1 2 9    # selected criteria
"""

import argparse
import io
import json
import math
import os
import sys
import time
from contextlib import redirect_stdout

import numpy as np
import sympy as sp

# Add src directory to path to import the package modules
sys.path.append(os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))
from config import DEFAULT_SEED, logger
from main import EXIT_OK, run
from models.symmetric_matrix import SymmetricMatrix
from services.nearest import critical_points, discriminant_distance_oracle, nearest_in_discriminant, verify_criticality
from utils import strata
from utils.symmat import discriminant, eigendecompose, frobenius_norm, goe_sample, min_gap, stream


def _cli(*argv):
    """Run one CLI command, returning (exit code, parsed JSON report)."""
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = run([str(a) for a in argv])
    text = buffer.getvalue()
    return code, (json.loads(text) if text.strip() else None)


def exact_moment_identity(args) -> bool:
    code, report = _cli("verify-charpol", "--max-k", 30)
    print(f"   {report['summary']}")
    return code == EXIT_OK


def exact_volume_identity(args) -> bool:
    code, report = _cli("volume-check", "--max-n", 30)
    print(f"   {report['summary']}")
    return code == EXIT_OK


def moment_monte_carlo(args) -> bool:
    ok = True
    for k in (2, 3, 4):
        for u in (0.0, 0.5, 1.0):
            _, report = _cli("moment", "--k", k, "--u", u, "--samples", 100_000, "--seed", args.seed, "--threads", args.threads)
            mc = report["monte_carlo"]
            exact = mc["extras"]["exact"]
            within = abs(mc["estimate"] - exact) <= 5 * mc["std_error"]
            print(f"   k={k} u={u}: {mc['estimate']:.5f} +/- {mc['std_error']:.5f} (exact {exact:.5f}) {'ok' if within else 'FAIL'}")
            ok = ok and within
    return ok


def nearest_formula_and_oracle(args) -> bool:
    rng = stream(args.seed, 4)
    ok = True
    for n in range(3, 9):
        worst_formula, worst_margin = 0.0, math.inf
        for _ in range(args.oracle_matrices):
            a = goe_sample(n, rng)
            distance = nearest_in_discriminant(a).distance
            expected = min_gap(a) / math.sqrt(2)
            worst_formula = max(worst_formula, abs(distance - expected) / expected)
            found, _ = discriminant_distance_oracle(a, args.oracle_starts, rng)
            worst_margin = min(worst_margin, found - distance)
        passed = worst_formula <= 1e-10 and worst_margin >= -1e-6
        print(f"   n={n}: formula rel. error {worst_formula:.2e}, oracle margin {worst_margin:.2e} {'ok' if passed else 'FAIL'}")
        ok = ok and passed
    return ok


def critical_point_counts(args) -> bool:
    rng = stream(args.seed, 5)
    ok = True
    for n in range(2, 9):
        a = goe_sample(n, rng)
        for w in strata.enumerate_multiplicity_vectors(n, proper_only=True):
            points = critical_points(a, w)
            residual = max(verify_criticality(a, cp, w) for cp in points)
            minima = sum(cp.is_global_min for cp in points)
            if len(points) != strata.eddeg(w) or residual > 1e-8 or minima != 1:
                print(f"   n={n} w={w}: {len(points)} points (eddeg {strata.eddeg(w)}), residual {residual:.2e}, {minima} minima FAIL")
                ok = False
        print(f"   n={n}: all proper strata checked")
    return ok


def two_plane_counts(args) -> bool:
    ok = True
    for n, expected in ((3, 3), (4, 6)):
        _, report = _cli("two-plane", "--n", n, "--trials", args.trials, "--seed", args.seed, "--threads", args.threads)
        within = abs(report["estimate"] - expected) <= 3 * report["std_error"]
        anomalies = report["extras"]["anomalies"]
        passed = within and (n != 3 or anomalies == 0)
        print(
            f"   n={n}: mean {report['estimate']:.3f} +/- {report['std_error']:.3f} (expected {expected}), "
            f"max {report['extras']['max']}, unresolved {report['extras']['unresolved']}, anomalies {anomalies} "
            f"{'ok' if passed else 'FAIL'}"
        )
        ok = ok and passed
    return ok


def gap_probabilities(args) -> bool:
    eps = 0.1
    _, two = _cli("gap-prob", "--n", 2, "--eps", eps, "--samples", 1_000_000, "--seed", args.seed, "--threads", args.threads)
    _, three = _cli("gap-prob", "--n", 3, "--eps", eps, "--samples", 1_000_000, "--seed", args.seed, "--threads", args.threads)
    bound_two = two["estimate"] <= 0.25 * eps**2 + 3 * two["std_error"]
    exact_two = abs(two["estimate"] - two["extras"]["exact"]) <= 5 * two["std_error"]
    bound_three = three["estimate"] <= 0.75 * eps**2 + 3 * three["std_error"]
    print(f"   n=2: {two['estimate']:.6f} +/- {two['std_error']:.6f}, exact {two['extras']['exact']:.6f}")
    print(f"   n=3: {three['estimate']:.6f} +/- {three['std_error']:.6f}, bound {0.75 * eps**2:.6f}")
    return bound_two and exact_two and bound_three


def restricted_volumes(args) -> bool:
    _, report = _cli("restricted-volume", "--n", 3, "--samples", 200_000, "--seed", args.seed, "--threads", args.threads)
    first, second = report["extras"]["configs"]
    total_ok = abs(report["estimate"] - 3) <= 5 * report["std_error"]
    symmetric = abs(first["estimate"] - second["estimate"]) <= 5 * (first["std_error"] + second["std_error"])
    print(f"   sum {report['estimate']:.5f} +/- {report['std_error']:.5f}; configs {first['estimate']:.5f}, {second['estimate']:.5f}")
    return total_ok and symmetric


def combinatorics(args) -> bool:
    ok = True
    for n in range(1, 11):
        _, report = _cli("strata", "--n", n)
        planes = sum(row["planes"] for row in report["strata"]) + 1  # plus the open stratum
        ok = ok and planes == report["bell"] == strata.bell_number(n)
    for n in range(2, 11):
        ok = ok and strata.codim(strata.MultiplicityVector.pair(n)) == 2
    print(f"   Bell closure and pair codimension for n <= 10: {'ok' if ok else 'FAIL'}")
    return ok


def numerical_core(args) -> bool:
    rng = stream(args.seed, 10)
    worst = 0.0
    for index in range(1000):
        n = 1 + index % 50
        a = goe_sample(n, rng)
        decomposition = eigendecompose(a)
        scale = 1.0 + frobenius_norm(a)
        worst = max(worst, decomposition.reconstruction_residual(a) / scale, decomposition.orthogonality_residual() / scale)
    worst_disc = 0.0
    integers = np.random.default_rng(args.seed)
    for n in range(2, 6):
        for _ in range(20):
            quarters = integers.integers(-5, 6, size=(n, n))
            quarters = np.triu(quarters) + np.triu(quarters, 1).T
            a = SymmetricMatrix.from_dense(quarters / 4)
            x = sp.Symbol("x")
            charpoly = sp.Matrix(n, n, [sp.Rational(int(v), 4) for v in quarters.flat]).charpoly(x)
            exact = float(sp.discriminant(charpoly.as_expr(), x))
            worst_disc = max(worst_disc, abs(discriminant(a) - exact) / max(1.0, abs(exact)))
    print(f"   Jacobi residual {worst:.2e}, discriminant vs sympy {worst_disc:.2e}")
    return worst <= 1e-10 and worst_disc <= 1e-8


CRITERIA = {
    1: ("exact second-moment identity, k = 1..30", exact_moment_identity),
    2: ("exact volume identity, n = 2..30", exact_volume_identity),
    3: ("Monte Carlo second moments", moment_monte_carlo),
    4: ("nearest-point formula and descent oracle", nearest_formula_and_oracle),
    5: ("critical point counts and residuals", critical_point_counts),
    6: ("random 2-plane intersection counts", two_plane_counts),
    7: ("eigenvalue gap probabilities", gap_probabilities),
    8: ("restricted volumes", restricted_volumes),
    9: ("stratification combinatorics", combinatorics),
    10: ("numerical core", numerical_core),
}


def main():
    parser = argparse.ArgumentParser(description="Run the full-scale acceptance checks")
    parser.add_argument("--only", type=int, nargs="+", choices=sorted(CRITERIA), help="criteria to run")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--threads", type=int, default=4)
    parser.add_argument("--trials", type=int, default=500, help="two-plane trials per n")
    parser.add_argument("--oracle-matrices", type=int, default=100, help="random matrices per n for the descent oracle")
    parser.add_argument("--oracle-starts", type=int, default=200, help="descent starts per matrix")
    args = parser.parse_args()

    failed = []
    for number in args.only or sorted(CRITERIA):
        title, check = CRITERIA[number]
        print(f"\n[{number}] {title}")
        start = time.time()
        try:
            passed = check(args)
        except Exception as e:
            logger.error(f"Criterion {number} raised: {e}")
            passed = False
        print(f"{'✅' if passed else '❌'} [{number}] {title} ({time.time() - start:.1f}s)")
        if not passed:
            failed.append(number)

    if failed:
        print(f"\n❌ Failed criteria: {failed}")
        sys.exit(1)
    print("\n✅ All acceptance criteria passed!")


if __name__ == "__main__":
    main()
