"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: invalid requests exit 2,
numerical failures (non-convergence, runaway refinement) exit 3, and a
failed verification suite exits 1.
"""


class GrapheneError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GrapheneError, ValueError):
    """A scalar argument lies outside the documented domain."""


class ConfigError(GrapheneError, ValueError):
    """A physics configuration is inconsistent or incomplete."""


class CapacityError(GrapheneError, ValueError):
    """A basis index exceeds the supported truncation cap."""


class FamilyError(GrapheneError, ValueError):
    """A ladder family violates the admissible zero pattern."""


class UnsupportedFamilyError(GrapheneError, ValueError):
    """No closed form ships for this family; use the generic path."""


class InvalidRequestError(GrapheneError, ValueError):
    """A CLI request cannot be fulfilled as stated (exit code 2)."""


class NumericalError(GrapheneError, RuntimeError):
    """A numerical procedure failed to reach its target (exit code 3)."""


class NonConvergenceError(NumericalError):
    """A truncated series failed to meet its tail tolerance."""
