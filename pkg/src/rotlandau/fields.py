"""The external field configuration and its consistency checks.

The source is a non-conducting cylinder with a radially growing charge
density, giving E = (lambda rho^2 / 2) rho_hat.  A moving quadrupole with
tensor components M_rho_z = M_z_rho = M acquires the effective vector
potential A_eff = lambda M rho phi_hat, whose curl is a uniform axial
field -- the precondition for Landau-type quantization.  The checks here
recompute that curl numerically and confirm the electric field is
curl-free (electrostatic), guarding the implementation rather than the
algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

__all__ = [
    "CylindricalVector",
    "ElectrostaticReport",
    "electric_field",
    "effective_vector_potential",
    "curl_z_numeric",
    "electrostatic_check",
]

#: Central-difference step for the field checks; the fields of interest
#: are polynomials of degree <= 2, so the stencil is exact to rounding.
DEFAULT_STEP = 1e-4


@dataclass(frozen=True)
class CylindricalVector:
    """Vector components in the local cylindrical basis at a point."""

    rho_comp: float
    phi_comp: float
    z_comp: float

    def __post_init__(self) -> None:
        for name in ("rho_comp", "phi_comp", "z_comp"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class ElectrostaticReport:
    """Outcome of the curl-free check: verdict, worst violation, vacuity flag."""

    passed: bool
    max_violation: float
    vacuous: bool = False


def electric_field(lam: float, rho: float) -> CylindricalVector:
    """E = (lambda rho^2 / 2) rho_hat."""
    if rho < 0:
        raise ValueError(f"rho must be non-negative, got {rho}")
    return CylindricalVector(0.5 * lam * rho * rho, 0.0, 0.0)


def effective_vector_potential(quad_moment: float, lam: float, rho: float) -> CylindricalVector:
    """A_eff = lambda M rho phi_hat seen by the moving quadrupole."""
    if rho < 0:
        raise ValueError(f"rho must be non-negative, got {rho}")
    return CylindricalVector(0.0, lam * quad_moment * rho, 0.0)


def curl_z_numeric(
    field: Callable[[float], CylindricalVector], rho: float, h: float
) -> float:
    """z-component of the curl of an azimuthally symmetric field.

    Central-difference evaluation of (1/rho) d(rho F_phi)/d(rho),
    second-order accurate in h.
    """
    if not 0 < h < rho:
        raise ValueError(f"need 0 < h < rho, got h={h}, rho={rho}")
    upper = (rho + h) * field(rho + h).phi_comp
    lower = (rho - h) * field(rho - h).phi_comp
    return (upper - lower) / (2.0 * h * rho)


def _curl_phi_numeric(
    field: Callable[[float], CylindricalVector], rho: float, h: float
) -> float:
    """phi-component of the curl, -d(F_z)/d(rho), for rho-only fields."""
    return -(field(rho + h).z_comp - field(rho - h).z_comp) / (2.0 * h)


def electrostatic_check(
    lam: float,
    sample_points: Sequence[float],
    field: Callable[[float], CylindricalVector] | None = None,
    h: float = DEFAULT_STEP,
    tol: float = 1e-8,
) -> ElectrostaticReport:
    """Verify a field is curl-free at the sample points.

    By default the cylinder field of the given lambda is checked; any
    azimuthally symmetric rho-dependent field can be injected instead.
    For such fields the rho-component of the curl vanishes identically,
    so the numeric check covers the z- and phi-components.  An empty
    sample list passes vacuously, flagged as such.
    """
    if field is None:
        field = lambda rho: electric_field(lam, rho)  # noqa: E731
    if not sample_points:
        return ElectrostaticReport(passed=True, max_violation=0.0, vacuous=True)
    worst = 0.0
    for rho in sample_points:
        if rho <= 0:
            raise ValueError(f"sample points must be positive, got {rho}")
        step = min(h, 0.5 * rho)
        worst = max(
            worst,
            abs(curl_z_numeric(field, rho, step)),
            abs(_curl_phi_numeric(field, rho, step)),
        )
    return ElectrostaticReport(passed=worst < tol, max_violation=worst)
