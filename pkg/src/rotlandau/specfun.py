"""Special functions for the analytic radial solution.

The bound-state radial profiles are built from Kummer's confluent
hypergeometric function M(a, b, x), which collapses to a polynomial when
a is a non-positive integer -- that truncation is what quantizes the
spectrum.  Associated Laguerre polynomials provide an independent route
to the same polynomials, and log-gamma supplies the normalization ratios
connecting the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ConvergenceError",
    "HypergeometricParams",
    "log_gamma",
    "confluent_m",
    "laguerre",
]


class ConvergenceError(RuntimeError):
    """The Kummer series failed its tail bound within the iteration cap."""


@dataclass(frozen=True)
class HypergeometricParams:
    """Arguments (a, b, x) of M(a, b, x) with x >= 0 and b off the poles."""

    a: float
    b: float
    x: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "x"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.b <= 0 and self.b == round(self.b):
            raise ValueError(
                f"b must not be a non-positive integer (series pole), got {self.b}"
            )
        if self.x < 0:
            raise ValueError(f"x must be non-negative, got {self.x}")


# Lanczos approximation, g = 7, 9 coefficients.  Relative error well below
# the 1e-12 contract for all x > 0.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    if x < 0.5:
        # Reflection keeps the Lanczos sum in its accurate range; sin(pi*x)
        # is positive for 0 < x < 1/2.
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, coeff in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += coeff / (z + i)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(acc)


def _kummer_polynomial(n: int, b: float, x: float) -> float:
    """Exact (n+1)-term sum of M(-n, b, x)."""
    a = -float(n)
    total = 1.0
    term = 1.0
    for k in range(n):
        term *= (a + k) * x / ((b + k) * (k + 1))
        total += term
    return total


def _kummer_series(
    a: float, b: float, x: float, eps: float = 1e-15, max_terms: int = 500
) -> float:
    """Forward power series for M(a, b, x).

    Stops once three consecutive terms fall below eps times the running
    sum; raises ConvergenceError if that never happens within max_terms.
    """
    total = 1.0
    term = 1.0
    small_streak = 0
    for k in range(max_terms):
        term *= (a + k) * x / ((b + k) * (k + 1))
        total += term
        if not math.isfinite(total):
            raise ConvergenceError(
                f"Kummer series overflowed for a={a}, b={b}, x={x}"
            )
        # <= so an exactly-zero term counts even against a zero partial sum
        if abs(term) <= eps * abs(total):
            small_streak += 1
            if small_streak >= 3:
                return total
        else:
            small_streak = 0
    raise ConvergenceError(
        f"Kummer series did not converge within {max_terms} terms "
        f"for a={a}, b={b}, x={x}"
    )


def kummer_poly_coeffs(n: int, b: float) -> list[float]:
    """Power-series coefficients c_k of the degree-n polynomial M(-n, b, x).

    Used by the wavefunction module to evaluate the radial polynomial and
    its derivatives on whole grids at once.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    a = -float(n)
    coeffs = [1.0]
    c = 1.0
    for k in range(n):
        c *= (a + k) / ((b + k) * (k + 1))
        coeffs.append(c)
    return coeffs


def confluent_m(p: HypergeometricParams) -> float:
    """Kummer's confluent hypergeometric function M(a, b, x).

    When a is a non-positive integer the series terminates exactly and the
    polynomial sum is used; otherwise the capped forward series runs.
    """
    if p.a <= 0 and p.a == round(p.a):
        return _kummer_polynomial(int(round(-p.a)), p.b, p.x)
    return _kummer_series(p.a, p.b, p.x)


def laguerre(n: int, alpha: float, x: float) -> float:
    """Associated Laguerre polynomial L_n^alpha(x) by the three-term recurrence."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if alpha <= -1:
        raise ValueError(f"alpha must exceed -1, got {alpha}")
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    if n == 0:
        return 1.0
    prev = 1.0
    curr = 1.0 + alpha - x
    for k in range(1, n):
        prev, curr = curr, ((2 * k + 1 + alpha - x) * curr - (k + alpha) * prev) / (k + 1)
    return curr
