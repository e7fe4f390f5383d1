"""Scalar special-function kernels used by the coherent-state builders.

Everything here is pure and deterministic: log-gamma, the generalized
hypergeometric series 0F2, and signed log-space running products of
ladder-function values.  The coefficient builders compose these in log
space because the raw products span hundreds of orders of magnitude
before normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NonConvergenceError

# A series stops once two consecutive terms fall below TERM_EPS times
# the running partial sum; MAX_TERMS guards against a stuck recurrence.
TERM_EPS = 1e-17
MAX_TERMS = 10000


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0.

    Thin wrapper that pins down the domain contract; the underlying
    libm implementation is accurate to well below 1e-13 relative error
    for the argument range used here.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"log_gamma requires a finite x > 0, got {x!r}")
    return math.lgamma(x)


def hyper_0F2(b1: float, b2: float, x: float) -> float:
    """Generalized hypergeometric function 0F2(; b1, b2; x) for x >= 0.

    Summed term by term with the exact ratio recurrence
    t_{n+1} = t_n * x / ((n+1)(b1+n)(b2+n)), which avoids cancellation
    since every term is positive on this domain.
    """
    b1 = float(b1)
    b2 = float(b2)
    x = float(x)
    for name, b in (("b1", b1), ("b2", b2)):
        if not math.isfinite(b) or (b <= 0.0 and b == math.floor(b)):
            raise DomainError(f"hyper_0F2 parameter {name}={b!r} hits a Gamma pole")
        if b <= 0.0:
            raise DomainError(f"hyper_0F2 requires {name} > 0 for a positive-term series, got {b!r}")
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"hyper_0F2 requires finite x >= 0, got {x!r}")

    total = 1.0
    term = 1.0
    small_streak = 0
    for n in range(MAX_TERMS):
        term *= x / ((n + 1.0) * (b1 + n) * (b2 + n))
        total += term
        if term < TERM_EPS * total:
            small_streak += 1
            if small_streak >= 2:
                return total
        else:
            small_streak = 0
    raise NonConvergenceError(
        f"hyper_0F2({b1}, {b2}, {x}) did not settle within {MAX_TERMS} terms"
    )


@dataclass(frozen=True)
class SignedLogValue:
    """A real number v carried as (log|v|, sign), with sign 0 meaning v == 0.

    For v == 0 the log_magnitude is fixed at 0.0 so equality stays
    well defined.
    """

    log_magnitude: float
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0 and self.log_magnitude != 0.0:
            raise DomainError("zero values must carry log_magnitude 0.0")

    @classmethod
    def unit(cls) -> "SignedLogValue":
        return cls(0.0, 1)

    @classmethod
    def from_value(cls, v: float) -> "SignedLogValue":
        v = float(v)
        if not math.isfinite(v):
            raise DomainError(f"cannot take the log of a non-finite value {v!r}")
        if v == 0.0:
            return cls(0.0, 0)
        return cls(math.log(abs(v)), 1 if v > 0.0 else -1)

    def times(self, factor: float) -> "SignedLogValue":
        """Multiply by a plain float, staying in log space."""
        return self.times_slv(SignedLogValue.from_value(factor))

    def times_slv(self, other: "SignedLogValue") -> "SignedLogValue":
        sign = self.sign * other.sign
        if sign == 0:
            return SignedLogValue(0.0, 0)
        return SignedLogValue(self.log_magnitude + other.log_magnitude, sign)

    def value(self) -> float:
        """Collapse to a float; may overflow to inf or underflow to 0."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)


def f_factorial(family, n: int, offset: int = 0) -> SignedLogValue:
    """Signed log-space running product of ladder-function values.

    Returns prod_{j=1..n} f(j + offset) for the family's modifier f,
    as a SignedLogValue.  n == 0 gives the empty product 1.  The
    offset form serves the shifted coefficient routes, which need
    products of f evaluated past the family's leading zeros; offset=0
    is the plain product over 1..n.
    """
    n = int(n)
    offset = int(offset)
    if n < 0:
        raise DomainError(f"f_factorial requires n >= 0, got {n}")
    if offset < 0:
        raise DomainError(f"f_factorial requires offset >= 0, got {offset}")
    acc = SignedLogValue.unit()
    for j in range(1, n + 1):
        acc = acc.times(family.f(j + offset))
        if acc.sign == 0:
            # Every later factor keeps the product at zero.
            return SignedLogValue(0.0, 0)
    return acc
