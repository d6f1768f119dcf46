"""Independent numeric oracle for the analytic spectrum.

The rotating-frame radial problem at fixed angular momentum l splits into
a constant channel shift (the linear-in-l terms) plus a radial operator

    H_l u = -(1/2m) u'' + [ l^2/(2 m rho^2) + (m delta^2 / 8) rho^2 ] u

acting on u = sqrt(rho) * R.  H_l is discretized in flux (finite-volume)
form on cell centers, which keeps the matrix symmetric tridiagonal,
treats the axis rho = 0 through a zero-flux inner face instead of an
artificial wall, and converges at second order in the cell width for
every channel including l = 0.  Eigenvalues come from a from-scratch
Sturm-sequence bisection; eigenvectors from one inverse-iteration sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SystemParams, cyclotron_frequency, effective_frequency

__all__ = [
    "IterationCapError",
    "RadialGrid",
    "TridiagonalOperator",
    "NumericSpectrum",
    "build_operator",
    "sturm_count",
    "gershgorin_interval",
    "lowest_eigenvalues",
    "eigenvector",
    "solve_radial",
    "labeled_energies",
    "richardson",
    "turning_point_rho_max",
    "default_grid",
]

_BISECT_CAP = 300
_SAFE_MIN = 2.2250738585072014e-308


class IterationCapError(RuntimeError):
    """Bisection failed to bracket an eigenvalue; the matrix is pathological."""


@dataclass(frozen=True)
class RadialGrid:
    """Uniform cell-centered discretization of [rho_min, rho_max].

    The interval is tiled by n_points cells of width
    h = (rho_max - rho_min)/n_points; unknowns live at the cell centers
    rho_min + (i - 1/2) h and fluxes at the faces rho_min + i h.  Doubling
    n_points halves h exactly, which is what Richardson extrapolation
    assumes.
    """

    rho_min: float
    rho_max: float
    n_points: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rho_min) and math.isfinite(self.rho_max)):
            raise ValueError("grid bounds must be finite")
        if not 0 < self.rho_min < self.rho_max:
            raise ValueError(
                f"need 0 < rho_min < rho_max, got [{self.rho_min}, {self.rho_max}]"
            )
        if not isinstance(self.n_points, int) or self.n_points < 16:
            raise ValueError(f"n_points must be an integer >= 16, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return (self.rho_max - self.rho_min) / self.n_points

    def cell_centers(self) -> np.ndarray:
        h = self.spacing
        return self.rho_min + h * (np.arange(1, self.n_points + 1) - 0.5)

    def faces(self) -> np.ndarray:
        return self.rho_min + self.spacing * np.arange(self.n_points + 1)


@dataclass(frozen=True, eq=False)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix plus the channel energy offset.

    Only one off-diagonal is stored, so symmetry holds by construction.
    ``energy_offset`` is the constant the discretized operator leaves out;
    adding it back to an eigenvalue gives the total energy.
    """

    diagonal: np.ndarray
    off_diagonal: np.ndarray
    energy_offset: float = 0.0

    def __post_init__(self) -> None:
        diag = np.asarray(self.diagonal, dtype=float)
        off = np.asarray(self.off_diagonal, dtype=float)
        object.__setattr__(self, "diagonal", diag)
        object.__setattr__(self, "off_diagonal", off)
        if diag.ndim != 1 or off.ndim != 1:
            raise ValueError("diagonal and off_diagonal must be 1-D")
        if diag.size < 1 or off.size != diag.size - 1:
            raise ValueError(
                f"off_diagonal length must be len(diagonal)-1, got {off.size} vs {diag.size}"
            )
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
            raise ValueError("matrix entries must be finite")
        if not math.isfinite(self.energy_offset):
            raise ValueError("energy_offset must be finite")

    @property
    def size(self) -> int:
        return int(self.diagonal.size)


@dataclass(frozen=True, eq=False)
class NumericSpectrum:
    """Lowest total energies of one l-channel on one grid."""

    l: int
    energies: np.ndarray
    grid: RadialGrid

    def __post_init__(self) -> None:
        energies = np.asarray(self.energies, dtype=float)
        object.__setattr__(self, "energies", energies)
        if energies.ndim != 1 or energies.size == 0:
            raise ValueError("energies must be a non-empty 1-D array")
        if np.any(np.diff(energies) <= 0):
            raise ValueError("energies must be strictly ascending")


def build_operator(params: SystemParams, l: int, grid: RadialGrid) -> TridiagonalOperator:
    """Discretize the radial channel operator H_l on the grid.

    Flux form: row i couples through the face weights f_i = rho at the
    cell faces,

        (H u)_i = [ f_{i-1}(u_i-ish) ... ] / (2 m h^2 rho_i) + V_i u_i,

    with the inner face carrying zero flux (regularity at the axis) and
    the outer face holding R = 0 through a ghost cell.  The off-diagonal
    entries are -f_i / (2 m h^2 sqrt(rho_i rho_{i+1})), which makes the
    matrix symmetric for the plain Euclidean inner product in
    u_i = sqrt(rho_i) R_i.

    The eigenvalues of H_l equal E - (omega/2 - Omega) l; that linear
    channel shift is recorded in ``energy_offset`` so callers recover the
    total energy directly.
    """
    mass = params.mass
    delta = effective_frequency(params)
    omega = cyclotron_frequency(params)
    h = grid.spacing
    rho = grid.cell_centers()
    weight = grid.faces().copy()
    weight[0] = 0.0  # no flux through the inner face: regular at the axis
    kin = 1.0 / (2.0 * mass * h * h)
    potential = (l * l) / (2.0 * mass * rho * rho) + (mass * delta * delta / 8.0) * rho * rho
    diagonal = kin * (weight[1:] + weight[:-1]) / rho + potential
    diagonal[-1] += kin * weight[-1] / rho[-1]  # ghost cell: R = 0 at the outer face
    off_diagonal = -kin * weight[1:-1] / np.sqrt(rho[:-1] * rho[1:])
    offset = 0.5 * omega * l - params.omega_rot * l
    return TridiagonalOperator(diagonal, off_diagonal, energy_offset=offset)


def _negcount(diag: list[float], off_sq: list[float], x: float, pivmin: float) -> int:
    """Number of eigenvalues strictly below x (Sturm sign-agreement count).

    Vanishing pivots are clamped to -pivmin before their sign is read, so
    a pivot that underflows (an eigenvalue of a leading submatrix hit
    exactly) is treated as negative -- the convention that agrees with the
    count's one-sided limits.
    """
    q = diag[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    count = 1 if q < 0.0 else 0
    for i in range(1, len(diag)):
        q = diag[i] - x - off_sq[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def _pivmin(off_sq: list[float]) -> float:
    return _SAFE_MIN * max(1.0, max(off_sq, default=0.0))


def sturm_count(op: TridiagonalOperator, x: float) -> int:
    """Number of eigenvalues of ``op`` strictly less than x."""
    off_sq = (op.off_diagonal * op.off_diagonal).tolist()
    return _negcount(op.diagonal.tolist(), off_sq, x, _pivmin(off_sq))


def gershgorin_interval(op: TridiagonalOperator) -> tuple[float, float]:
    """Closed interval guaranteed to contain the whole spectrum."""
    radius = np.zeros(op.size)
    radius[:-1] += np.abs(op.off_diagonal)
    radius[1:] += np.abs(op.off_diagonal)
    return float(np.min(op.diagonal - radius)), float(np.max(op.diagonal + radius))


def lowest_eigenvalues(op: TridiagonalOperator, k: int) -> np.ndarray:
    """The k smallest eigenvalues, ascending, via Sturm bisection.

    Each eigenvalue is bracketed to an absolute width of
    1e-12 * max(1, |eigenvalue|).  Tying the width to the eigenvalue
    rather than the Gershgorin bound matters for fine radial grids, where
    the bound grows like 1/h^2 and a bound-relative bracket would be as
    wide as the discretization error itself.
    """
    n = op.size
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    diag = op.diagonal.tolist()
    off_sq = (op.off_diagonal * op.off_diagonal).tolist()
    pivmin = _pivmin(off_sq)
    lo, hi = gershgorin_interval(op)
    found = []
    lower = lo
    for j in range(1, k + 1):
        a, b = lower, hi
        iterations = 0
        while b - a > 1e-12 * max(1.0, abs(a), abs(b)):
            iterations += 1
            if iterations > _BISECT_CAP:
                raise IterationCapError(
                    f"bisection for eigenvalue {j} exceeded {_BISECT_CAP} iterations"
                )
            mid = 0.5 * (a + b)
            if _negcount(diag, off_sq, mid, pivmin) >= j:
                b = mid
            else:
                a = mid
        found.append(0.5 * (a + b))
        lower = a  # the (j+1)-th eigenvalue cannot lie below this bracket
    return np.asarray(found)


def _solve_shifted(
    diag: np.ndarray, off: np.ndarray, shift: float, rhs: np.ndarray
) -> np.ndarray:
    """Solve (T - shift*I) x = rhs with partial pivoting.

    The shift sits next to an eigenvalue during inverse iteration, so the
    unpivoted Thomas algorithm would divide by near-zero pivots.
    """
    n = diag.size
    b = (diag - shift).tolist()  # main diagonal
    c = off.tolist() + [0.0]  # first superdiagonal
    d = [0.0] * n  # second superdiagonal fill-in
    a = [0.0] + off.tolist()  # subdiagonal
    x = rhs.tolist()
    for i in range(n - 1):
        sub = a[i + 1]
        if abs(b[i]) >= abs(sub):
            piv = b[i] if b[i] != 0.0 else _SAFE_MIN
            mult = sub / piv
            b[i + 1] -= mult * c[i]
            c[i + 1] -= mult * d[i]
            x[i + 1] -= mult * x[i]
        else:
            # swap rows i and i+1, then eliminate
            mult = b[i] / sub
            new_b = c[i] - mult * b[i + 1]
            new_c = d[i] - mult * c[i + 1]
            new_x = x[i] - mult * x[i + 1]
            b[i], c[i], d[i], x[i] = sub, b[i + 1], c[i + 1], x[i + 1]
            b[i + 1], c[i + 1], x[i + 1] = new_b, new_c, new_x
    piv = b[n - 1] if b[n - 1] != 0.0 else _SAFE_MIN
    x[n - 1] /= piv
    if n >= 2:
        piv = b[n - 2] if b[n - 2] != 0.0 else _SAFE_MIN
        x[n - 2] = (x[n - 2] - c[n - 2] * x[n - 1]) / piv
    for i in range(n - 3, -1, -1):
        piv = b[i] if b[i] != 0.0 else _SAFE_MIN
        x[i] = (x[i] - c[i] * x[i + 1] - d[i] * x[i + 2]) / piv
    return np.asarray(x)


def eigenvector(op: TridiagonalOperator, eigenvalue: float) -> np.ndarray:
    """Unit eigenvector from a single inverse-iteration sweep.

    The solve is shifted slightly off the converged eigenvalue so the
    system stays (barely) nonsingular.  The start vector is a fixed-seed
    random draw: a structured start (all ones, say) can be exactly
    orthogonal to the target and never pick it up.  The sign is fixed so
    the largest component is positive.
    """
    shift = eigenvalue + 1e-10 * max(1.0, abs(eigenvalue))
    start = np.random.default_rng(20260808).standard_normal(op.size)
    start /= np.linalg.norm(start)
    vec = _solve_shifted(op.diagonal, op.off_diagonal, shift, start)
    vec /= np.linalg.norm(vec)
    if vec[int(np.argmax(np.abs(vec)))] < 0:
        vec = -vec
    return vec


def count_sign_changes(values: np.ndarray, rel_floor: float = 1e-8) -> int:
    """Strict sign changes among entries above a relative magnitude floor."""
    values = np.asarray(values, dtype=float)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    if scale == 0.0:
        return 0
    significant = values[np.abs(values) > rel_floor * scale]
    signs = np.sign(significant)
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def solve_radial(params: SystemParams, l: int, grid: RadialGrid, k: int) -> NumericSpectrum:
    """The k lowest total energies of channel l (offset re-applied)."""
    op = build_operator(params, l, grid)
    energies = lowest_eigenvalues(op, k) + op.energy_offset
    return NumericSpectrum(l=l, energies=energies, grid=grid)


def labeled_energies(
    params: SystemParams, l: int, grid: RadialGrid, k: int
) -> list[tuple[int, float]]:
    """The k lowest total energies labeled by their node count.

    Node counts come from inverse-iteration eigenvectors, giving an
    identification of the radial quantum number that is independent of
    the analytic formula.
    """
    op = build_operator(params, l, grid)
    eigenvalues = lowest_eigenvalues(op, k)
    labeled = []
    for ev in eigenvalues:
        nodes = count_sign_changes(eigenvector(op, ev))
        labeled.append((nodes, float(ev + op.energy_offset)))
    return labeled


def richardson(e_h: float, e_h2: float) -> float:
    """Eliminate the O(h^2) error from two second-order results.

    ``e_h`` comes from cell width h, ``e_h2`` from h/2; the combination
    (4*e_h2 - e_h)/3 is accurate to O(h^4).  Written in update form so a
    converged pair returns its common value exactly.
    """
    return e_h2 + (e_h2 - e_h) / 3.0


def turning_point_rho_max(params: SystemParams, l: int, n_max: int) -> float:
    """Box radius far beyond the classical turning point.

    Solves (m*delta/2) rho^2 = |l| + 4*n_max + 80, which puts the squared
    tail of every targeted state below 1e-10 at the wall.
    """
    delta = effective_frequency(params)
    return math.sqrt(2.0 * (abs(l) + 4 * n_max + 80) / (params.mass * delta))


def default_grid(
    params: SystemParams,
    l: int,
    n_max: int,
    n_points: int = 2000,
    rho_min: float = 1e-4,
    rho_max: float | None = None,
) -> RadialGrid:
    """Grid sized by the turning-point heuristic unless rho_max is given."""
    if rho_max is None:
        rho_max = turning_point_rho_max(params, l, n_max)
    return RadialGrid(rho_min=rho_min, rho_max=rho_max, n_points=n_points)
