"""Landau-level basis for a Dirac electron in a constant magnetic field.

Works in the gauge where the vector potential grows along x, so the
transverse momentum k is conserved and every basis state reduces to a
harmonic-oscillator eigenfunction of the shifted dimensionless
coordinate z = sqrt(omega/2) * (x + 2 k / omega).  Natural units are
used throughout (hbar = c = e = v_F = 1), so the cyclotron parameter is
omega = 2 * b0 and the Landau energies are the dimensionless numbers
sqrt(n * omega).

The module provides the oscillator eigenfunctions through a stable
normalized recurrence, the tridiagonal ladder and quadrature matrix
elements, the spinor component products rho_{n,m}(x) that probability
densities expand over, and an adaptive trapezoid quadrature suited to
integrands with Gaussian decay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import CapacityError, ConfigError, DomainError, NumericalError

# Hard cap on the Landau index; the builders refuse to truncate above it.
N_MAX = 500

# Adaptive trapezoid settings: starting interval count, refinement
# agreement target, and the cap on total intervals.
_QUAD_START = 4096
_QUAD_ATOL = 1e-11
_QUAD_MAX = 1 << 22

_INV_PI_QUARTER = math.pi ** -0.25
_SQRT_HALF = math.sqrt(0.5)


@dataclass(frozen=True)
class PhysicsConfig:
    """Field strength and conserved transverse momentum.

    Parameters
    ----------
    b0:
        Magnetic field magnitude, must be positive.  The cyclotron
        parameter omega = 2 * b0 is derived, never stored.
    k:
        Conserved transverse wavenumber.  It only shifts the guiding
        center, so observables built from z are k-independent while
        x-space densities are rigidly translated.
    """

    b0: float
    k: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.b0) or self.b0 <= 0.0:
            raise ConfigError(f"b0 must be finite and positive, got {self.b0!r}")
        if not math.isfinite(self.k):
            raise ConfigError(f"k must be finite, got {self.k!r}")

    @property
    def omega(self) -> float:
        return 2.0 * self.b0

    @property
    def scale(self) -> float:
        """dz/dx, equal to sqrt(omega / 2)."""
        return math.sqrt(self.omega / 2.0)

    def z_of_x(self, x):
        return self.scale * (np.asarray(x, dtype=float) + 2.0 * self.k / self.omega)

    def x_of_z(self, z):
        return np.asarray(z, dtype=float) / self.scale - 2.0 * self.k / self.omega


def spinor_weight(n: int) -> float:
    """Component weight of the n-th spinor: 1 for n = 0, else 1/sqrt(2)."""
    if n < 0:
        raise DomainError(f"spinor index must be >= 0, got {n}")
    return 1.0 if n == 0 else _SQRT_HALF


def landau_energy(cfg: PhysicsConfig, n: int) -> float:
    """Positive-branch Landau energy sqrt(n * omega)."""
    if n < 0:
        raise DomainError(f"Landau index must be >= 0, got {n}")
    return math.sqrt(n * cfg.omega)


def oscillator_eigenvalue(cfg: PhysicsConfig, branch: str, n: int) -> float:
    """Squared-energy bookkeeping for the two spinor components.

    The upper component of the n-th spinor solves the oscillator
    problem with eigenvalue (m + 1) * omega at its own index m = n - 1,
    the lower one with eigenvalue m * omega at m = n.  Both reduce to
    n * omega exactly (products of exact integers with omega), which is
    what makes the two components degenerate.
    """
    if n < 0:
        raise DomainError(f"oscillator index must be >= 0, got {n}")
    if branch == "+":
        return (n + 1) * cfg.omega
    if branch == "-":
        return n * cfg.omega
    raise DomainError(f"branch must be '+' or '-', got {branch!r}")


@dataclass(frozen=True)
class SpinorBasisState:
    """Index bookkeeping for one normalized Landau spinor.

    The n-th spinor stacks oscillator functions of adjacent index:
    (psi_{n-1}, i psi_n) up to the component weight.  n = 0 has no
    upper component, recorded as upper_index None.
    """

    n: int
    upper_index: Optional[int]
    lower_index: int
    component_weight: float
    energy: float


def spinor_state(cfg: PhysicsConfig, n: int) -> SpinorBasisState:
    if n < 0:
        raise DomainError(f"Landau index must be >= 0, got {n}")
    if n > N_MAX:
        raise CapacityError(f"Landau index {n} exceeds the cap {N_MAX}")
    return SpinorBasisState(
        n=n,
        upper_index=None if n == 0 else n - 1,
        lower_index=n,
        component_weight=spinor_weight(n),
        energy=landau_energy(cfg, n),
    )


def ho_eigenfunction(n: int, z):
    """Normalized harmonic-oscillator eigenfunction phi_n at z.

    Evaluated through the normalized three-term recurrence

        phi_0 = pi**-0.25 * exp(-z**2 / 2)
        phi_{m} = z * sqrt(2/m) * phi_{m-1} - sqrt((m-1)/m) * phi_{m-2}

    which is forward stable for the dominant solution.  Accepts a float
    or an ndarray of z values and returns a matching shape.  For |z|
    beyond the double-precision underflow of phi_0 (|z| > ~38.5) the
    returned values degrade to zero; every magnitude there is far below
    the tolerances used in this package.

    Raises CapacityError for n above the truncation cap.
    """
    if n < 0:
        raise DomainError(f"oscillator index must be >= 0, got {n}")
    if n > N_MAX:
        raise CapacityError(f"oscillator index {n} exceeds the cap {N_MAX}")
    z_arr = np.asarray(z, dtype=float)
    prev = _INV_PI_QUARTER * np.exp(-0.5 * z_arr * z_arr)
    if n == 0:
        return float(prev) if np.isscalar(z) or z_arr.ndim == 0 else prev
    cur = math.sqrt(2.0) * z_arr * prev
    for m in range(2, n + 1):
        cur, prev = z_arr * math.sqrt(2.0 / m) * cur - math.sqrt((m - 1.0) / m) * prev, cur
    return float(cur) if np.isscalar(z) or z_arr.ndim == 0 else cur


def ho_table(n_max: int, z) -> np.ndarray:
    """Stack phi_0 .. phi_{n_max} evaluated on a z grid, shape (n_max+1, len(z))."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    if n_max > N_MAX:
        raise CapacityError(f"n_max {n_max} exceeds the cap {N_MAX}")
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    table = np.empty((n_max + 1, z_arr.size), dtype=float)
    table[0] = _INV_PI_QUARTER * np.exp(-0.5 * z_arr * z_arr)
    if n_max >= 1:
        table[1] = math.sqrt(2.0) * z_arr * table[0]
    for m in range(2, n_max + 1):
        table[m] = z_arr * math.sqrt(2.0 / m) * table[m - 1] - math.sqrt((m - 1.0) / m) * table[m - 2]
    return table


def ladder_matrix_elements(op_kind: str, m: int, n: int) -> float:
    """Matrix element <phi_m | op | phi_n> of the elementary operators.

    op_kind selects among:

    - "lower":  the oscillator lowering operator, sqrt(n) on m = n - 1.
    - "raise":  its adjoint, sqrt(n + 1) on m = n + 1.
    - "position":  the dimensionless coordinate z, tridiagonal
      sqrt(max(m, n) / 2) on |m - n| = 1.
    - "momentum-imag-part":  the real coefficient c(m, n) in
      <phi_m | p | phi_n> = i * c(m, n); antisymmetric, with
      c(n+1, n) = sqrt((n+1)/2).

    Indices outside the basis (negative) give 0.0, which encodes the
    absent upper component of the lowest spinor.
    """
    if m < 0 or n < 0:
        return 0.0
    if op_kind == "lower":
        return math.sqrt(n) if m == n - 1 else 0.0
    if op_kind == "raise":
        return math.sqrt(n + 1.0) if m == n + 1 else 0.0
    if op_kind == "position":
        if abs(m - n) != 1:
            return 0.0
        return math.sqrt(max(m, n) / 2.0)
    if op_kind == "momentum-imag-part":
        if m == n + 1:
            return math.sqrt((n + 1.0) / 2.0)
        if m == n - 1:
            return -math.sqrt(n / 2.0)
        return 0.0
    raise DomainError(f"unknown operator kind {op_kind!r}")


def rho_matrix_element(cfg: PhysicsConfig, n: int, m: int, x):
    """Spinor component product rho_{n,m}(x).

    This is the x-space overlap density of two Landau spinors without
    their component weights:

        rho_{n,m}(x) = psi_{n-1}(x) psi_{m-1}(x) + psi_n(x) psi_m(x)

    with psi_{-1} identically zero and psi_j(x) the oscillator function
    of the shifted coordinate carrying the Jacobian factor
    (omega/2)**0.25.  Symmetric in (n, m).  Accepts scalar or ndarray
    x.
    """
    if n < 0 or m < 0:
        raise DomainError(f"spinor indices must be >= 0, got ({n}, {m})")
    top = max(n, m)
    if top > N_MAX:
        raise CapacityError(f"spinor index {top} exceeds the cap {N_MAX}")
    x_arr = np.asarray(x, dtype=float)
    z_flat = np.ravel(cfg.z_of_x(x_arr))
    table = ho_table(top, z_flat)
    jac = cfg.scale  # two factors of (omega/2)**0.25
    out = np.zeros(z_flat.shape, dtype=float)
    if n >= 1 and m >= 1:
        out += table[n - 1] * table[m - 1]
    out += table[n] * table[m]
    out *= jac
    if np.isscalar(x) or x_arr.ndim == 0:
        return float(out[0])
    return out.reshape(x_arr.shape)


def quadrature_half_width(order_hint: int) -> float:
    """Half-width of the integration window for oscillator content up to order_hint."""
    if order_hint < 0:
        raise DomainError(f"order_hint must be >= 0, got {order_hint}")
    return math.sqrt(4.0 * order_hint + 8.0) + 8.0


def integrate_interval(
    integrand: Callable[[np.ndarray], np.ndarray], lo: float, hi: float
) -> float:
    """Adaptive composite trapezoid rule on [lo, hi].

    Doubles the interval count from 4096 until two successive
    refinements agree to 1e-11 absolutely.  The integrand must accept
    an ndarray and return a same-shaped ndarray of finite values;
    non-finite output raises NumericalError, as does failure to reach
    agreement within the refinement cap.
    """
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise DomainError(f"bad integration interval [{lo}, {hi}]")

    def evaluate(zs: np.ndarray) -> np.ndarray:
        vals = np.asarray(integrand(zs), dtype=float)
        if vals.shape != zs.shape:
            raise NumericalError(
                f"integrand returned shape {vals.shape} for input shape {zs.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise NumericalError("integrand returned non-finite values")
        return vals

    intervals = _QUAD_START
    grid = np.linspace(lo, hi, intervals + 1)
    vals = evaluate(grid)
    h = (hi - lo) / intervals
    current = h * (np.sum(vals) - 0.5 * (vals[0] + vals[-1]))
    while intervals <= _QUAD_MAX:
        mids = np.linspace(lo + 0.5 * h, hi - 0.5 * h, intervals)
        mid_vals = evaluate(mids)
        refined = 0.5 * current + 0.5 * h * np.sum(mid_vals)
        if abs(refined - current) <= _QUAD_ATOL:
            return float(refined)
        current = refined
        intervals *= 2
        h *= 0.5
    raise NumericalError(
        f"quadrature failed to converge below {_QUAD_ATOL} within {_QUAD_MAX} intervals"
    )


def quadrature(integrand: Callable[[np.ndarray], np.ndarray], order_hint: int) -> float:
    """Integrate a Gaussian-decay integrand over the real z line.

    Composite trapezoid rule on [-Z, Z] with Z = sqrt(4*order_hint + 8) + 8,
    refined by interval doubling until successive estimates agree to
    1e-11.  For integrands dominated by oscillator functions of index
    at most order_hint this window makes the clipped tail negligible,
    so the absolute error is at or below 1e-10.
    """
    half = quadrature_half_width(order_hint)
    return integrate_interval(integrand, -half, half)


def overlap_gram(n_max: int) -> np.ndarray:
    """Gram matrix of phi_0 .. phi_{n_max} under the same adaptive trapezoid.

    Refines until successive Gram estimates agree entrywise to 1e-11;
    used by the verification suite to certify orthonormality of the
    recurrence output.
    """
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    half = quadrature_half_width(n_max)
    intervals = _QUAD_START
    grid = np.linspace(-half, half, intervals + 1)
    table = ho_table(n_max, grid)
    h = 2.0 * half / intervals
    weighted = table.copy()
    weighted[:, 0] *= 0.5
    weighted[:, -1] *= 0.5
    current = h * (weighted @ table.T)
    while intervals <= _QUAD_MAX:
        mids = np.linspace(-half + 0.5 * h, half - 0.5 * h, intervals)
        mid_table = ho_table(n_max, mids)
        refined = 0.5 * current + 0.5 * h * (mid_table @ mid_table.T)
        if np.max(np.abs(refined - current)) <= _QUAD_ATOL:
            return refined
        current = refined
        intervals *= 2
        h *= 0.5
    raise NumericalError("overlap_gram failed to converge within the refinement cap")
