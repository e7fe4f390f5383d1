"""Observables of the coherent states via the index-space contraction.

Every quantity here is computed directly from the coefficient vector
and the tridiagonal ladder elements: first and second moments of the
dimensionless coordinate and momentum, the uncertainty product, the
x-space probability density, and the mean energy.  This path is the
governing one; the closed-form series in closed_forms.py are checked
against it.

The spinor structure enters through the component weights and the
pairing of adjacent oscillator indices, which turn the scalar
tridiagonal elements into effective couplings between Landau levels n
and n +/- 1 (moments) or n and n, n +/- 2 (squared moments).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import basis
from .basis import PhysicsConfig, ho_table, integrate_interval, landau_energy, quadrature_half_width, spinor_weight
from .coherent import CoherentState
from .errors import DomainError

OBSERVABLES = ("z", "z2", "p", "p2", "H")


@dataclass(frozen=True)
class MeanValues:
    """First and second moments of z and p plus the derived spread measures."""

    z_mean: float
    z2_mean: float
    p_mean: float
    p2_mean: float
    var_z: float
    var_p: float
    product: float


def _phi_element(obs: str, m: int, n: int) -> float:
    """Oscillator matrix element of z, z^2, or the momentum coefficient c.

    For p the returned number is the real coefficient c(m, n) in
    <phi_m|p|phi_n> = i c(m, n); p2 composes those with the sign from
    i * i.  Out-of-basis indices yield 0.
    """
    if m < 0 or n < 0:
        return 0.0
    if obs == "z":
        return basis.ladder_matrix_elements("position", m, n)
    if obs == "p":
        return basis.ladder_matrix_elements("momentum-imag-part", m, n)
    if obs == "z2":
        total = 0.0
        for k in (n - 1, n + 1):
            if k >= 0:
                total += basis.ladder_matrix_elements("position", m, k) * basis.ladder_matrix_elements(
                    "position", k, n
                )
        return total
    if obs == "p2":
        total = 0.0
        for k in (n - 1, n + 1):
            if k >= 0:
                total += basis.ladder_matrix_elements("momentum-imag-part", m, k) * basis.ladder_matrix_elements(
                    "momentum-imag-part", k, n
                )
        return -total
    raise DomainError(f"unknown observable {obs!r}")


def _spinor_element(obs: str, m: int, n: int) -> float:
    """Effective coupling between Landau spinors m and n for one observable."""
    if m < 0 or n < 0:
        return 0.0
    w = spinor_weight(m) * spinor_weight(n)
    return w * (_phi_element(obs, m - 1, n - 1) + _phi_element(obs, m, n))


def expectation_generic(state: CoherentState, observable: str) -> float:
    """Expectation value over the truncated coefficient vector.

    observable is one of "z", "z2", "p", "p2", "H".  The momentum
    moments keep their algebraic structure: the first moment picks up
    only Im(conj(a_m) a_n) factors, so it vanishes exactly for
    coefficient vectors with a real phase profile.
    """
    if observable not in OBSERVABLES:
        raise DomainError(f"observable must be one of {OBSERVABLES}, got {observable!r}")
    a = state.coeffs
    top = a.size - 1
    if observable == "H":
        total = 0.0
        for n in range(top + 1):
            mag2 = a[n].real * a[n].real + a[n].imag * a[n].imag
            if mag2 != 0.0:
                total += mag2 * landau_energy(state.cfg, n)
        return total

    band = 1 if observable in ("z", "p") else 2
    total = 0.0
    if observable in ("z", "z2"):
        for n in range(top + 1):
            for m in range(max(0, n - band), min(top, n + band) + 1):
                el = _spinor_element(observable, m, n)
                if el != 0.0:
                    prod = np.conj(a[m]) * a[n]
                    total += prod.real * el
    else:
        for n in range(top + 1):
            for m in range(max(0, n - band), min(top, n + band) + 1):
                el = _spinor_element(observable, m, n)
                if el != 0.0:
                    prod = np.conj(a[m]) * a[n]
                    if observable == "p":
                        total -= prod.imag * el
                    else:
                        total += prod.real * el
    return float(total)


def uncertainty_product(state: CoherentState) -> MeanValues:
    """All four moments plus variances and their product for one state."""
    z_mean = expectation_generic(state, "z")
    z2_mean = expectation_generic(state, "z2")
    p_mean = expectation_generic(state, "p")
    p2_mean = expectation_generic(state, "p2")
    var_z = z2_mean - z_mean * z_mean
    var_p = p2_mean - p_mean * p_mean
    return MeanValues(
        z_mean=z_mean,
        z2_mean=z2_mean,
        p_mean=p_mean,
        p2_mean=p2_mean,
        var_z=var_z,
        var_p=var_p,
        product=var_z * var_p,
    )


def mean_energy(state: CoherentState) -> float:
    """Mean of the Dirac Hamiltonian, a weighted sum of sqrt(n * omega)."""
    return expectation_generic(state, "H")


def _component_amplitudes(state: CoherentState, z_flat: np.ndarray):
    """Upper and lower component amplitude functions on a flat z grid."""
    a = state.coeffs
    top = a.size - 1
    weights = np.full(top + 1, 1.0 / math.sqrt(2.0))
    weights[0] = 1.0
    aw = a * weights
    table = ho_table(top, z_flat)
    lower = aw @ table
    upper = aw[1:] @ table[:top] if top >= 1 else np.zeros_like(z_flat, dtype=complex)
    return upper, lower


def probability_density(state: CoherentState, x):
    """Total x-space probability density of the state.

    Sums the squared magnitudes of the two spinor component
    amplitudes, each an O(N) combination of oscillator functions per
    grid point, with the coordinate Jacobian folded in.  Accepts a
    float or an ndarray of x values.
    """
    x_arr = np.asarray(x, dtype=float)
    z_flat = np.ravel(state.cfg.z_of_x(x_arr))
    upper, lower = _component_amplitudes(state, z_flat)
    rho = state.cfg.scale * (np.abs(upper) ** 2 + np.abs(lower) ** 2)
    if np.isscalar(x) or x_arr.ndim == 0:
        return float(rho[0])
    return rho.reshape(x_arr.shape)


def suggest_x_range(state: CoherentState) -> tuple:
    """x interval that captures the density support of the truncated state."""
    half = quadrature_half_width(state.trunc_order)
    lo = float(state.cfg.x_of_z(-half))
    hi = float(state.cfg.x_of_z(half))
    return (lo, hi)


def density_normalization(state: CoherentState, x_lo: float = None, x_hi: float = None) -> float:
    """Quadrature of the probability density over an x interval.

    Defaults to the suggested support interval, where the result must
    come out as 1 up to the truncation tail and quadrature error.
    """
    if (x_lo is None) != (x_hi is None):
        raise DomainError("give both interval endpoints or neither")
    if x_lo is None:
        x_lo, x_hi = suggest_x_range(state)
    if not (x_hi > x_lo):
        raise DomainError(f"empty integration interval [{x_lo}, {x_hi}]")
    return integrate_interval(lambda xs: probability_density(state, xs), float(x_lo), float(x_hi))
