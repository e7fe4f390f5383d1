"""Coherent states as eigenstates of an adjustable annihilation operator.

The operator acts on the Landau spinors through a modifier function f:
its only nonzero matrix elements are c_n on the step n -> n - 1, with

    c_0 = 0,   c_1 = f(1) / sqrt(2),   c_n = sqrt(n) * f(n)  (n >= 2).

Choosing f fixes the family.  Three ship with the package:

- ONE:      f(n) = 1, eigenstates supported on every Landau level.
- SHIFTED:  f(n) = sqrt(n-1)/sqrt(n), support starts at n = 1.
- CUBIC:    f(n) = (n-2) sqrt(n-1)/sqrt(n), support starts at n = 2.

Eigenvector coefficients follow from the one-step recursion
c_n a_n = alpha * a_{n-1} above the first supported level, so they are
built multiplicatively in signed log space and normalized at the end.
That keeps |alpha| of a few hundred representable without overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .basis import N_MAX, PhysicsConfig
from .errors import DomainError, FamilyError, NonConvergenceError
from .specfun import SignedLogValue

# Tail-mass tolerance domain accepted by build_coefficients.
TOL_MAX = 1e-8
_TOL_DEFAULT = 1e-16
_GUARD_TERMS = 10


@dataclass(frozen=True, eq=False)
class LadderFamily:
    """A modifier function f together with its leading zero pattern.

    first_nonzero is the smallest n with f(n) != 0; admissible values
    are 1, 2 and 3, and every f(n) with n > first_nonzero must be
    nonzero for the eigenvalue recursion to close.
    """

    kind: str
    f: Callable[[int], float]
    first_nonzero: int


def _f_one(n: int) -> float:
    return 1.0


def _f_shifted(n: int) -> float:
    return math.sqrt(n - 1.0) / math.sqrt(n)


def _f_cubic(n: int) -> float:
    return (n - 2.0) * math.sqrt(n - 1.0) / math.sqrt(n)


ONE = LadderFamily("one", _f_one, 1)
SHIFTED = LadderFamily("shifted", _f_shifted, 2)
CUBIC = LadderFamily("cubic", _f_cubic, 3)

BUILTIN_FAMILIES = {fam.kind: fam for fam in (ONE, SHIFTED, CUBIC)}


def family_by_name(name: str) -> LadderFamily:
    try:
        return BUILTIN_FAMILIES[name]
    except KeyError:
        raise DomainError(
            f"unknown family {name!r}; expected one of {sorted(BUILTIN_FAMILIES)}"
        ) from None


def custom_family(f: Callable[[int], float], label: str = "custom") -> LadderFamily:
    """Wrap a user modifier after checking its zero pattern.

    Zeros of f must form a leading prefix of {1, 2}: either none,
    f(1) = 0 alone, or f(1) = f(2) = 0.  A zero at n = 3, or a zero
    reappearing after a nonzero value, leaves no normalizable
    eigenstate for alpha != 0 and is rejected.  Values of f past n = 3
    are probed lazily during builds, which raise FamilyError on a late
    zero.
    """
    probes = []
    for n in (1, 2, 3):
        try:
            v = float(f(n))
        except Exception as exc:
            raise FamilyError(f"modifier failed to evaluate at n={n}: {exc}") from exc
        if not math.isfinite(v):
            raise FamilyError(f"modifier returned non-finite value {v!r} at n={n}")
        probes.append(v)
    z1, z2, z3 = (v == 0.0 for v in probes)
    if z3:
        raise FamilyError("modifier zeros must be confined to n in {1, 2}")
    if z2 and not z1:
        raise FamilyError("modifier zeros must form a leading prefix")
    first_nonzero = 1 if not z1 else (2 if not z2 else 3)
    return LadderFamily(str(label), f, first_nonzero)


def c_n(family: LadderFamily, n: int) -> float:
    """Matrix element of the family's annihilation operator on step n -> n-1."""
    if n < 0:
        raise DomainError(f"ladder index must be >= 0, got {n}")
    if n == 0:
        return 0.0
    if n == 1:
        return family.f(1) / math.sqrt(2.0)
    return math.sqrt(float(n)) * family.f(n)


def f1_consistency(family: LadderFamily, n: int) -> float:
    """Upper-block modifier value f1(n - 2) forced by degeneracy of the spinor components.

    Acting on the two components of the same spinor must produce one
    and the same eigen-relation, which pins the upper-block modifier to

        f1(n - 2) = sqrt(n) * f(n) / sqrt(n - 1),   n >= 2.
    """
    if n < 2:
        raise DomainError(f"f1_consistency requires n >= 2, got {n}")
    return math.sqrt(float(n)) * family.f(n) / math.sqrt(n - 1.0)


def apply_annihilation(family: LadderFamily, coeffs: np.ndarray) -> np.ndarray:
    """Apply the family's annihilation operator to a coefficient vector.

    Input a_n over Landau indices 0..L; output b with
    b_{n-1} = c_n * a_n and a zero top entry, same length as the input.
    """
    a = np.asarray(coeffs, dtype=complex)
    if a.ndim != 1 or a.size == 0:
        raise DomainError("coefficients must be a non-empty 1-D vector")
    b = np.zeros_like(a)
    if a.size > 1:
        steps = np.array([c_n(family, n) for n in range(1, a.size)], dtype=float)
        b[:-1] = steps * a[1:]
    return b


@dataclass(frozen=True, eq=False)
class CoherentState:
    """A normalized eigenstate of the family's annihilation operator.

    coeffs holds the complex amplitudes over Landau indices
    0..trunc_order; the array is frozen after construction.  tail_bound
    is a geometric-series bound on the squared-amplitude mass dropped
    by the truncation, relative to the retained mass.
    """

    family: LadderFamily
    alpha: complex
    cfg: PhysicsConfig
    coeffs: np.ndarray = field(repr=False)
    trunc_order: int
    tail_bound: float


def _logaddexp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))


def _log_geometric(log_q: float) -> float:
    """log(q / (1 - q)) for q = exp(log_q) < 1, stable for tiny q."""
    q = math.exp(log_q)
    return log_q - math.log1p(-q)


def build_coefficients(
    family: LadderFamily,
    alpha: complex,
    cfg: PhysicsConfig,
    tol: float = _TOL_DEFAULT,
) -> CoherentState:
    """Build the normalized coherent state for eigenvalue alpha.

    The coefficient recursion c_n a_n = alpha a_{n-1} is run in signed
    log space starting from the family's first supported level.  The
    series is truncated once a geometric bound on the remaining
    squared-amplitude tail drops below tol relative to the retained
    mass, then extended by a few guard terms; the recorded tail_bound
    is recomputed at the final truncation order.  The config rides
    along unused here (the coefficients do not depend on the field in
    these units) so downstream observables carry their physics context.

    tol must lie in (0, 1e-8].  Raises NonConvergenceError when the
    tail tolerance is unreachable within the supported basis size.
    """
    if not (isinstance(tol, float) or isinstance(tol, int)):
        raise DomainError(f"tol must be a real number, got {tol!r}")
    tol = float(tol)
    if not (0.0 < tol <= TOL_MAX) or not math.isfinite(tol):
        raise DomainError(f"tol must lie in (0, {TOL_MAX}], got {tol!r}")
    alpha = complex(alpha)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise DomainError(f"alpha must be finite, got {alpha!r}")
    if not isinstance(cfg, PhysicsConfig):
        raise DomainError("cfg must be a PhysicsConfig")

    offset = family.first_nonzero - 1
    r = abs(alpha)
    if r == 0.0:
        coeffs = np.zeros(offset + 1, dtype=complex)
        coeffs[offset] = 1.0
        coeffs.setflags(write=False)
        return CoherentState(family, alpha, cfg, coeffs, offset, 0.0)

    log_r = math.log(r)
    log_tol = math.log(tol)

    # Signed log magnitudes of the unnormalized amplitudes, ell = offset..N.
    logs = [0.0]
    signs = [1]
    log_mass2 = 0.0  # log of the running sum of squared magnitudes
    cur = SignedLogValue.unit()
    stop_at = None
    ell = offset
    while True:
        ell += 1
        if ell > N_MAX:
            raise NonConvergenceError(
                f"family {family.kind!r} with |alpha|={r:.6g} cannot reach "
                f"tail tolerance {tol:g} within {N_MAX} basis states"
            )
        step = c_n(family, ell)
        if step == 0.0:
            raise FamilyError(
                f"family {family.kind!r} has a zero ladder factor at n={ell}, "
                "above its first supported level"
            )
        cur = cur.times_slv(SignedLogValue(log_r - math.log(abs(step)), 1 if step > 0 else -1))
        logs.append(cur.log_magnitude)
        signs.append(cur.sign)
        log_mass2 = _logaddexp(log_mass2, 2.0 * cur.log_magnitude)
        if stop_at is None:
            if len(logs) >= 3:
                delta = logs[-1] - logs[-2]
                if delta < 0.0:
                    log_tail = 2.0 * logs[-1] + _log_geometric(2.0 * delta)
                    if log_tail - log_mass2 < log_tol:
                        stop_at = min(ell + _GUARD_TERMS, N_MAX)
        if stop_at is not None and ell >= stop_at:
            break

    n_top = ell
    delta = logs[-1] - logs[-2]
    tail_bound = math.exp(2.0 * logs[-1] + _log_geometric(2.0 * delta) - log_mass2)

    # Exponentiate with the peak shifted out, attach phases, normalize.
    log_arr = np.asarray(logs, dtype=float)
    amps = np.exp(log_arr - log_arr.max()) * np.asarray(signs, dtype=float)
    unit = alpha / r
    phases = np.empty(amps.size, dtype=complex)
    phase = 1.0 + 0.0j
    for i in range(amps.size):
        phases[i] = phase
        phase = phase * unit
    coeffs = np.zeros(n_top + 1, dtype=complex)
    coeffs[offset:] = amps * phases
    coeffs /= np.linalg.norm(coeffs)
    coeffs.setflags(write=False)
    return CoherentState(family, alpha, cfg, coeffs, n_top, tail_bound)
