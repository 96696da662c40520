"""
Define the commands exposed by the command line, each with its handler.
"""
from typing import Any, Dict, List, Optional

from config import DEFAULT_GRID_DENSITY, logger
from models.closed_form import ClosedFormScalar
from models.reports import RunConfig, per_trial_rows
from models.symmetric_matrix import SymmetricMatrix
from services import nearest, randgeom, two_plane
from utils import strata
from utils.exactform import binomial, duplication_check, orthogonal_group_times_z
from utils.matrix_io import load_matrix
from utils.polyhermite import second_moment_integral, second_moment_integral_closed_form, second_moment_poly
from utils.symmat import eigendecompose, goe_sample, stream

# A handler returns {"report": dict, "rows": optional CSV rows, "exit_code": int}

DEFAULT_SAMPLES = 100_000
DEFAULT_TRIALS = 500
DEFAULT_QUADRATURE = 40
DEFAULT_STARTS = 200

NEAREST_TOLERANCES = ("degeneracy_tol", "tie_tol")
TWO_PLANE_TOLERANCES = ("zero_threshold", "reject_ceiling", "cluster_radius")


def _result(report: Dict[str, Any], rows: Optional[List[Dict[str, Any]]] = None, exit_code: int = 0) -> Dict[str, Any]:
    return {"report": report, "rows": rows, "exit_code": exit_code}


def _require(config: RunConfig, field: str) -> Any:
    value = getattr(config, field)
    if value is None:
        raise ValueError(f"'{config.command}' needs --{field.replace('_', '-')}")
    return value


def _matrix(config: RunConfig) -> SymmetricMatrix:
    source = config.matrix if config.matrix is not None else config.input
    if source is None:
        raise ValueError(f"'{config.command}' needs --matrix or --input")
    return load_matrix(source)


def _tolerances(config: RunConfig, names) -> Dict[str, float]:
    return {k: v for k, v in config.tolerances.items() if k in names}


def _scalar_json(value: ClosedFormScalar) -> Dict[str, Any]:
    return {**value.to_json(), "text": str(value), "float": value.to_float()}


# --- handlers -------------------------------------------------------------


def run_nearest(config: RunConfig) -> Dict[str, Any]:
    a = _matrix(config)
    cp = nearest.nearest_in_discriminant(a, **_tolerances(config, NEAREST_TOLERANCES))
    report = cp.to_json()
    report["eigenvalues"] = eigendecompose(a).eigenvalues.tolist()
    return _result(report, [{"partition": str(cp.partition), "distance": cp.distance}])


def run_critical(config: RunConfig) -> Dict[str, Any]:
    a = _matrix(config)
    w = _require(config, "w")
    points = nearest.critical_points(a, w, **_tolerances(config, NEAREST_TOLERANCES))
    rows = []
    for cp in points:
        rows.append(
            {
                "partition": str(cp.partition),
                "distance": cp.distance,
                "global_min": cp.is_global_min,
                "degenerate": cp.degenerate,
                "residual": nearest.verify_criticality(a, cp, w),
            }
        )
    report = {
        "w": list(w.w),
        "count": len(points),
        "eddeg": strata.eddeg(w),
        "critical_points": [dict(cp.to_json(), residual=row["residual"]) for cp, row in zip(points, rows)],
    }
    return _result(report, rows)


def run_spherical(config: RunConfig) -> Dict[str, Any]:
    cp = nearest.spherical_nearest(_matrix(config), **_tolerances(config, NEAREST_TOLERANCES))
    return _result(cp.to_json(), [{"partition": str(cp.partition), "spherical_distance": cp.spherical_distance}])


def run_strata(config: RunConfig) -> Dict[str, Any]:
    n = _require(config, "n")
    table = strata.strata_table(n)
    rows = [dict(row, w=",".join(str(x) for x in row["w"])) for row in table]
    return _result({"n": n, "bell": strata.bell_number(n), "strata": table}, rows)


def run_moment(config: RunConfig) -> Dict[str, Any]:
    k = _require(config, "k")
    poly = second_moment_poly(k)
    integral = second_moment_integral(k)
    closed = second_moment_integral_closed_form(k)
    report: Dict[str, Any] = {
        "k": k,
        "polynomial": str(poly),
        "coefficients": [str(c) for c in poly.coeffs],
        "integral": _scalar_json(integral),
        "closed_form": _scalar_json(closed),
        "exact_match": integral == closed,
    }
    if config.u is not None:
        report["value_at_u"] = {"u": config.u, "value": float(poly.evaluate(config.u))}
        if config.samples:
            report["monte_carlo"] = randgeom.mc_second_moment(k, config.u, config.samples, config.seed, config.threads).to_json()
    return _result(report, [{"k": k, "integral": str(integral), "closed_form": str(closed), "exact_match": integral == closed}])


def run_verify_charpol(config: RunConfig) -> Dict[str, Any]:
    max_k = _require(config, "max_k")
    rows = []
    for k in range(1, max_k + 1):
        integral = second_moment_integral(k)
        closed = second_moment_integral_closed_form(k)
        rows.append({"k": k, "integral": str(integral), "closed_form": str(closed), "exact": integral == closed})
    exact = sum(1 for row in rows if row["exact"])
    summary = f"{exact}/{max_k} exact"
    logger.info(f"verify-charpol: {summary}")
    return _result({"summary": summary, "checked": max_k, "exact": exact, "results": rows}, rows, 0 if exact == max_k else 1)


def run_volume_check(config: RunConfig) -> Dict[str, Any]:
    max_n = _require(config, "max_n")
    rows = []
    for n in range(2, max_n + 1):
        value = randgeom.volume_identity_check(n)
        expected = binomial(n, 2)
        orthogonal, orthogonal_closed = orthogonal_group_times_z(n)
        gammas, gammas_closed = duplication_check(n)
        rows.append(
            {
                "n": n,
                "value": str(value),
                "expected": expected,
                "exact": value == ClosedFormScalar.of(expected),
                "orthogonal_group_identity": orthogonal == orthogonal_closed,
                "duplication_identity": gammas == gammas_closed,
            }
        )
    passed = sum(1 for row in rows if row["exact"] and row["orthogonal_group_identity"] and row["duplication_identity"])
    summary = f"{passed}/{len(rows)} exact"
    logger.info(f"volume-check: {summary}")
    return _result({"summary": summary, "results": rows}, rows, 0 if passed == len(rows) else 1)


def run_gap_prob(config: RunConfig) -> Dict[str, Any]:
    n = _require(config, "n")
    samples = config.samples or DEFAULT_SAMPLES
    if config.eps_sweep:
        reports = randgeom.gap_ratio_sweep(n, config.eps_sweep, samples, config.seed, config.threads)
        rows = [
            {"eps": r.params["eps"], "estimate": r.estimate, "std_error": r.std_error, "ratio": r.extras.get("ratio")} for r in reports
        ]
        return _result({"n": n, "samples": samples, "seed": config.seed, "sweep": [r.to_json() for r in reports]}, rows)
    report = randgeom.gap_probability(n, _require(config, "eps"), samples, config.seed, config.threads)
    return _result(report.to_json())


def run_two_plane(config: RunConfig) -> Dict[str, Any]:
    report = two_plane.two_plane_count(
        _require(config, "n"),
        config.trials or DEFAULT_TRIALS,
        config.seed,
        config.grid_density or DEFAULT_GRID_DENSITY,
        config.threads,
        **_tolerances(config, TWO_PLANE_TOLERANCES),
    )
    return _result(report.to_json(), per_trial_rows(report))


def run_restricted_volume(config: RunConfig) -> Dict[str, Any]:
    n = _require(config, "n")
    samples = config.samples or DEFAULT_SAMPLES
    quadrature = config.quadrature or DEFAULT_QUADRATURE
    if config.config is None:
        report = randgeom.restricted_volume_sum(n, samples, quadrature, config.seed, config.threads)
        return _result(report.to_json(), report.extras["configs"])
    report = randgeom.restricted_volume_estimate(n, config.config, samples, quadrature, config.seed, config.threads)
    return _result(report.to_json())


def run_goe_sample(config: RunConfig) -> Dict[str, Any]:
    n = _require(config, "n")
    count = config.count or 1
    matrices = [goe_sample(n, stream(config.seed, i)).to_json() for i in range(count)]
    rows = [{"index": i, "rows": m["rows"]} for i, m in enumerate(matrices)]
    return _result({"n": n, "count": count, "seed": config.seed, "matrices": matrices}, rows)


def run_descent_oracle(config: RunConfig) -> Dict[str, Any]:
    a = _matrix(config)
    starts = config.starts or DEFAULT_STARTS
    found, point = nearest.discriminant_distance_oracle(a, starts, stream(config.seed, 0))
    formula = nearest.nearest_in_discriminant(a, **_tolerances(config, NEAREST_TOLERANCES)).distance
    report = {
        "starts": starts,
        "oracle_distance": found,
        "formula_distance": formula,
        "margin": found - formula,
        "matrix": point.to_json(),
    }
    return _result(report, [{"oracle_distance": found, "formula_distance": formula, "margin": found - formula}])


# Define available commands
COMMANDS: Dict[str, Dict[str, Any]] = {
    "nearest": {
        "id": "nearest",
        "description": "Closest matrix with a repeated eigenvalue and its distance min|l_i - l_j|/sqrt(2)",
        "handler": run_nearest,
    },
    "critical": {
        "id": "critical",
        "description": "All critical points of the distance to the stratum of type --w, with criticality residuals",
        "handler": run_critical,
    },
    "spherical": {
        "id": "spherical",
        "description": "Nearest unit-norm point of the discriminant and the spherical distance (needs ||A|| = 1)",
        "handler": run_spherical,
    },
    "strata": {
        "id": "strata",
        "description": "Strata of the discriminant for --n: w, codimension, plane count, ED degree",
        "handler": run_strata,
    },
    "moment": {
        "id": "moment",
        "description": "Exact E det(Q-u)^2 polynomial for GOE(--k) and its Gaussian integral",
        "handler": run_moment,
    },
    "verify-charpol": {
        "id": "verify-charpol",
        "description": "Exact check of the second-moment integral identity for k = 1..--max-k",
        "handler": run_verify_charpol,
    },
    "volume-check": {
        "id": "volume-check",
        "description": "Exact check that the volume formula gives C(n,2) for n = 2..--max-n",
        "handler": run_volume_check,
    },
    "gap-prob": {
        "id": "gap-prob",
        "description": "Monte Carlo probability that the smallest GOE(--n) eigenvalue gap is <= --eps, or per value of --eps-sweep",
        "handler": run_gap_prob,
    },
    "two-plane": {
        "id": "two-plane",
        "description": "Mean number of discriminant points on random projective 2-planes",
        "handler": run_two_plane,
    },
    "restricted-volume": {
        "id": "restricted-volume",
        "description": "Volume of the part of the discriminant with a given eigenvalue configuration (all when --config is omitted)",
        "handler": run_restricted_volume,
    },
    "goe-sample": {
        "id": "goe-sample",
        "description": "Draw --count GOE(--n) matrices from the seeded stream",
        "handler": run_goe_sample,
    },
    "descent-oracle": {
        "id": "descent-oracle",
        "description": "Multi-start descent estimate of the distance to the discriminant, next to the closed formula",
        "handler": run_descent_oracle,
    },
}


def get_command(name: str) -> Dict[str, Any]:
    """Get a command definition by name.

    Raises:
        ValueError: If the command is not registered
    """
    if name not in COMMANDS:
        raise ValueError(f"Command '{name}' not found")
    return COMMANDS[name].copy()


def get_all_commands() -> List[Dict[str, Any]]:
    """All commands without their handlers, in registration order."""
    return [{k: v for k, v in command.items() if k != "handler"} for command in COMMANDS.values()]


def execute(config: RunConfig) -> Dict[str, Any]:
    command = get_command(config.command)
    logger.debug(f"Running {config.command} (seed={config.seed}, threads={config.threads})")
    return command["handler"](config)
