"""
Domain exceptions.

Each one subclasses a builtin so callers can keep catching ValueError /
RuntimeError broadly.
"""


class IncompatibleBasis(ValueError):
    """Sum of closed-form values with different irrational parts."""


class NoConvergence(RuntimeError):
    """An iterative numerical method hit its iteration cap."""


class DegenerateInput(ValueError):
    """Input is off the generic locus a solver is stated for."""


class OutOfRange(ValueError):
    """A closed-form expression left its domain (e.g. arcsin argument > 1)."""


class UnresolvedZero(RuntimeError):
    """A candidate zero neither converged nor could be rejected."""


class MatrixFormatError(ValueError):
    """Malformed matrix input (non-square, asymmetric, non-finite)."""
