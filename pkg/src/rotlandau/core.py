"""Analytic Landau-type spectrum of a magnetic-quadrupole atom in a rotating frame.

A neutral atom whose magnetic quadrupole tensor has the two nonzero
components M_rho_z = M_z_rho = M moves through the electric field of a
uniformly charged non-conducting cylinder, E = (lambda rho^2 / 2) rho_hat.
The moving quadrupole sees an effective vector potential A_eff =
lambda M rho phi_hat whose curl is a uniform effective magnetic field, so
the planar motion Landau-quantizes.  Observing the system from a frame
rotating at rate Omega about the symmetry axis modifies the level spacing
and breaks the Landau degeneracy.

Everything is expressed in natural units (hbar = c = 1).  The scalar
potential of the single-particle Hamiltonian is zero in this field
configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "OMEGA_L_SIGN",
    "NoBoundStatesError",
    "SystemParams",
    "QuantumNumbers",
    "SpectrumLine",
    "Spectrum",
    "DegeneracyGroup",
    "cyclotron_frequency",
    "effective_frequency",
    "energy_level",
    "page_werner_term",
    "spectrum",
    "degeneracy_groups",
]

#: Sign of the (omega/2)*l term in the energy levels.  Acting with the
#: angular-derivative terms of the rotating-frame Hamiltonian on the
#: exp(i*l*phi) factor fixes this sign to +1; the independent
#: finite-difference diagonalization in :mod:`rotlandau.eigensolve`
#: confirms the choice (see the arbitration tests).
OMEGA_L_SIGN = 1

#: Default energy tolerance when grouping analytically degenerate levels.
#: Analytic degeneracies are exact up to rounding; numerically computed
#: spectra should pass a looser, discretization-aware tolerance instead.
DEGENERACY_TOL = 1e-9


class NoBoundStatesError(ValueError):
    """The rotation rate has collapsed the confining potential.

    Bound states require omega**2 + 4*omega_rot*omega > 0, i.e.
    omega_rot > -omega/4.  At or below that boundary the effective level
    spacing vanishes and no normalizable states exist.
    """


@dataclass(frozen=True)
class SystemParams:
    """Physical inputs in natural units (hbar = c = 1).

    mass: particle mass m > 0.
    quad_moment: magnitude M > 0 of the two nonzero quadrupole-tensor
        components.
    lam: charge-density constant lambda > 0 of the cylinder field, so the
        cyclotron frequency 2*M*lam/m is strictly positive.
    omega_rot: rotation rate Omega of the observing frame (may be
        negative, but must stay above -omega/4).
    """

    mass: float
    quad_moment: float
    lam: float
    omega_rot: float = 0.0

    def __post_init__(self) -> None:
        for name in ("mass", "quad_moment", "lam", "omega_rot"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.mass <= 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if self.quad_moment <= 0:
            raise ValueError(f"quad_moment must be positive, got {self.quad_moment}")
        if self.lam <= 0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        omega = 2.0 * self.quad_moment * self.lam / self.mass
        radicand = omega * omega + 4.0 * self.omega_rot * omega
        if radicand <= 0.0:
            raise NoBoundStatesError(
                "no bound-state regime: omega**2 + 4*omega_rot*omega = "
                f"{radicand:.6g} <= 0 (omega = {omega:.6g} requires "
                f"omega_rot > {-omega / 4.0:.6g})"
            )


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial quantum number n >= 0 and angular momentum l (any sign)."""

    n: int
    l: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"n must be an integer, got {self.n!r}")
        if not isinstance(self.l, int) or isinstance(self.l, bool):
            raise ValueError(f"l must be an integer, got {self.l!r}")
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")


@dataclass(frozen=True)
class SpectrumLine:
    """One (n, l, energy) record."""

    n: int
    l: int
    energy: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.energy):
            raise ValueError(f"energy must be finite, got {self.energy}")


@dataclass(frozen=True)
class Spectrum:
    """A batch of spectrum lines for fixed physical parameters."""

    params: SystemParams
    lines: tuple[SpectrumLine, ...]

    def __iter__(self):
        return iter(self.lines)

    def __len__(self) -> int:
        return len(self.lines)

    def energies(self) -> list[float]:
        return [line.energy for line in self.lines]


@dataclass(frozen=True)
class DegeneracyGroup:
    """Levels whose energies agree within the grouping tolerance.

    ``energy`` is the representative value (mean of the members);
    ``members`` holds the (n, l) labels.
    """

    energy: float
    members: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("a degeneracy group must have at least one member")

    @property
    def size(self) -> int:
        return len(self.members)


def cyclotron_frequency(params: SystemParams) -> float:
    """Level-spacing frequency omega = 2*M*lambda/m of the non-rotating system."""
    return 2.0 * params.quad_moment * params.lam / params.mass


def effective_frequency(params: SystemParams) -> float:
    """Rotation-corrected spacing delta = sqrt(omega**2 + 4*Omega*omega).

    Reduces to omega at omega_rot = 0.  Raises NoBoundStatesError when the
    radicand is non-positive (unreachable through a validated
    SystemParams, but kept as a guard for hand-built inputs).
    """
    omega = cyclotron_frequency(params)
    radicand = omega * omega + 4.0 * params.omega_rot * omega
    if radicand <= 0.0:
        raise NoBoundStatesError(
            f"no bound-state regime: omega**2 + 4*omega_rot*omega = {radicand:.6g} <= 0"
        )
    return math.sqrt(radicand)


def page_werner_term(params: SystemParams, l: int) -> float:
    """Rotation/angular-momentum coupling energy -Omega*l."""
    return -params.omega_rot * l


def energy_level(params: SystemParams, qn: QuantumNumbers) -> float:
    """Bound-state energy of the level (n, l).

    E(n, l) = delta*(n + |l|/2 + 1/2) + s*(omega/2)*l - Omega*l with
    s = OMEGA_L_SIGN.  At omega_rot = 0 this reduces to the Landau-type
    ladder omega*(n + |l|/2 + 1/2 + s*l/2), which on the branch
    s*l = -|l| is omega*(n + 1/2) independent of l (the familiar infinite
    degeneracy).
    """
    delta = effective_frequency(params)
    omega = cyclotron_frequency(params)
    radial = delta * (qn.n + 0.5 * abs(qn.l) + 0.5)
    return radial + OMEGA_L_SIGN * 0.5 * omega * qn.l + page_werner_term(params, qn.l)


def spectrum(params: SystemParams, n_max: int, l_min: int, l_max: int) -> Spectrum:
    """All levels with 0 <= n <= n_max and l_min <= l <= l_max.

    Lines are sorted by energy, then by (n, l) to break ties
    deterministically.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    if l_min > l_max:
        raise ValueError(f"l_min must not exceed l_max, got [{l_min}, {l_max}]")
    lines = [
        SpectrumLine(n, l, energy_level(params, QuantumNumbers(n, l)))
        for n in range(n_max + 1)
        for l in range(l_min, l_max + 1)
    ]
    lines.sort(key=lambda line: (line.energy, line.n, line.l))
    return Spectrum(params=params, lines=tuple(lines))


def degeneracy_groups(spec: Spectrum, tol: float = DEGENERACY_TOL) -> list[DegeneracyGroup]:
    """Partition a spectrum into maximal groups of pairwise-close energies.

    Two lines belong to the same group when every pair of member energies
    differs by less than ``tol`` (equivalently max - min < tol within the
    group).  Groups are returned sorted by energy.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    ordered = sorted(spec.lines, key=lambda line: (line.energy, line.n, line.l))
    groups: list[DegeneracyGroup] = []
    start = 0
    while start < len(ordered):
        stop = start + 1
        while stop < len(ordered) and ordered[stop].energy - ordered[start].energy < tol:
            stop += 1
        block = ordered[start:stop]
        rep = math.fsum(line.energy for line in block) / len(block)
        members = tuple(sorted((line.n, line.l) for line in block))
        groups.append(DegeneracyGroup(energy=rep, members=members))
        start = stop
    return groups
