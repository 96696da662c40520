import sys
import logging
import os
from dotenv import load_dotenv

load_dotenv()

# Configure basic logging (stderr keeps stdout free for reports)
logging.basicConfig(
    level=os.getenv("SYMDISC_LOG_LEVEL", "INFO").upper(),
    format='%(asctime)s %(levelname)-8s %(name)-10s | %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S',
    stream=sys.stderr
)

# Create logger instance
logger = logging.getLogger()


def _env_float(name: str, default: float) -> float:
    """Read a float override from the environment, falling back to the default"""
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return float(value)
    except ValueError:
        logger.warning(f"Ignoring non-numeric {name}={value!r}, using {default}")
        return default


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={value!r}, using {default}")
        return default


# Fixed, documented seed so default runs are reproducible
DEFAULT_SEED = _env_int("SYMDISC_SEED", 20240229)

# Replica parallelism for Monte Carlo experiments (results do not depend on it)
DEFAULT_THREADS = _env_int("SYMDISC_THREADS", 1)

# Jacobi eigensolver
JACOBI_SWEEP_CAP = _env_int("SYMDISC_JACOBI_SWEEPS", 30)
JACOBI_REL_THRESHOLD = 1e-14

# Eigenvalues closer than MULTIPLICITY_TOL * (1 + ||A||) are one block
MULTIPLICITY_TOL = _env_float("SYMDISC_MULTIPLICITY_TOL", 1e-8)

# Nearest-point solvers: genericity gap and critical-distance tie thresholds
DEGENERACY_TOL = _env_float("SYMDISC_DEGENERACY_TOL", 1e-6)
DISTANCE_TIE_TOL = _env_float("SYMDISC_DISTANCE_TIE_TOL", 1e-9)

# Two-plane zero detection on the sphere
ZERO_THRESHOLD = _env_float("SYMDISC_ZERO_THRESHOLD", 1e-7)
REJECT_CEILING = _env_float("SYMDISC_REJECT_CEILING", 1e-3)
CLUSTER_RADIUS = _env_float("SYMDISC_CLUSTER_RADIUS", 1e-3)
DEFAULT_GRID_DENSITY = _env_int("SYMDISC_GRID_DENSITY", 2562)

# Matrix files: symmetry tolerance on load
SYMMETRY_TOL = 1e-12

# Report formats accepted by the CLI
OUTPUT_FORMATS = ("json", "csv", "pretty")
