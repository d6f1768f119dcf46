"""Command-line front door.

Subcommands: ``spectrum`` (analytic levels), ``sweep`` (levels across a
range of rotation rates with per-point degeneracy counts), ``verify``
(analytic vs. finite-difference energies matched by node count),
``wavefunction`` (normalized radial profile samples) and ``fields`` (the
external field configuration and its consistency checks).

Tables are written as CSV with ``#``-prefixed metadata comments or as
JSON with the same rows under a ``meta``/``rows`` pair.  Floats are
printed with 17 significant digits so every emitted value re-parses
exactly; identical configurations produce byte-identical files.  An
optional ``--fig`` flag renders a matplotlib figure of the same report
next to the delimited output.

Exit codes: 0 success, 2 domain error (no bound-state regime or invalid
configuration), 3 empty result, 4 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass

from .core import (
    NoBoundStatesError,
    QuantumNumbers,
    SystemParams,
    cyclotron_frequency,
    degeneracy_groups,
    effective_frequency,
    energy_level,
    page_werner_term,
    spectrum,
)
from .eigensolve import RadialGrid, labeled_energies, richardson, turning_point_rho_max
from .wavefn import node_count, normalize, radial_overlap, radial_value

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_EMPTY = 3
EXIT_VERIFY = 4

_DEFAULTS = {
    "mass": 1.0,
    "quad_moment": 1.0,
    "lam": 1.0,
    "omega_rot": 0.0,
    "n_max": 3,
    "l_min": -3,
    "l_max": 3,
    "sweep": None,
    "grid_points": 2000,
    "rho_max": None,
    "tol": 1e-4,
    "fmt": "csv",
    "out": None,
    "fig": None,
    "n": 0,
    "l": 0,
    "samples": 200,
}

_CONFIG_KEYS = {
    "mass": float,
    "quad_moment": float,
    "lambda": float,
    "omega_rot": float,
    "n_max": int,
    "l_min": int,
    "l_max": int,
    "sweep": str,
    "grid_points": int,
    "rho_max": float,
    "tol": float,
    "format": str,
    "out": str,
}


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs of one CLI invocation."""

    params: SystemParams
    n_max: int
    l_min: int
    l_max: int
    omega_rot_sweep: tuple[float, float, int] | None
    grid_points: int
    rho_max: float | None
    tol: float
    output_format: str
    output_path: str | None
    fig_path: str | None

    def __post_init__(self) -> None:
        if self.n_max < 0:
            raise ValueError(f"n_max must be non-negative, got {self.n_max}")
        if self.l_min > self.l_max:
            raise ValueError(f"l_min must not exceed l_max, got [{self.l_min}, {self.l_max}]")
        if self.omega_rot_sweep is not None and self.omega_rot_sweep[2] < 2:
            raise ValueError("a sweep needs at least 2 steps")
        if self.grid_points < 16:
            raise ValueError(f"grid_points must be >= 16, got {self.grid_points}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.output_format}")
        if self.tol < 0:
            raise ValueError(f"tol must be non-negative, got {self.tol}")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(stream, comments: list[str], columns: list[str], rows: list[tuple]) -> None:
    for comment in comments:
        stream.write(f"# {comment}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(v) for v in row) + "\n")


def _write_json(stream, meta: dict, columns: list[str], rows: list[tuple]) -> None:
    payload = {
        "meta": meta,
        "rows": [dict(zip(columns, row)) for row in rows],
    }
    json.dump(payload, stream, indent=2, allow_nan=True)
    stream.write("\n")


def _emit(cfg: RunConfig, meta: dict, columns: list[str], rows: list[tuple]) -> None:
    comments = [f"{key} = {_fmt(value)}" for key, value in meta.items()]
    if cfg.output_path:
        with open(cfg.output_path, "w", newline="\n") as stream:
            if cfg.output_format == "csv":
                _write_csv(stream, comments, columns, rows)
            else:
                _write_json(stream, meta, columns, rows)
    else:
        if cfg.output_format == "csv":
            _write_csv(sys.stdout, comments, columns, rows)
        else:
            _write_json(sys.stdout, meta, columns, rows)


def _render_figure(kind: str, cfg: RunConfig, meta: dict, columns: list[str], rows) -> None:
    if not cfg.fig_path:
        return
    from . import plotting  # deferred: matplotlib import is slow

    records = [dict(zip(columns, row)) for row in rows]
    plotting.render(kind, records, meta, cfg.fig_path)


def _param_meta(params: SystemParams) -> dict:
    return {
        "mass": params.mass,
        "quad_moment": params.quad_moment,
        "lambda": params.lam,
        "omega_rot": params.omega_rot,
        "omega": cyclotron_frequency(params),
        "delta": effective_frequency(params),
        "units": "natural (hbar = c = 1)",
    }


def cmd_spectrum(cfg: RunConfig) -> int:
    """Analytic levels over the configured (n, l) window."""
    params = cfg.params
    delta = effective_frequency(params)
    columns = ["n", "l", "energy", "page_werner_term", "delta"]
    rows = [
        (line.n, line.l, line.energy, page_werner_term(params, line.l), delta)
        for line in spectrum(params, cfg.n_max, cfg.l_min, cfg.l_max)
    ]
    meta = _param_meta(params)
    meta.update(n_max=cfg.n_max, l_min=cfg.l_min, l_max=cfg.l_max, rows=len(rows))
    _emit(cfg, meta, columns, rows)
    _render_figure("spectrum", cfg, meta, columns, rows)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    """Levels across a range of rotation rates; out-of-domain points are skipped."""
    start, stop, steps = cfg.omega_rot_sweep
    columns = ["omega_rot", "n", "l", "energy", "status"]
    rows: list[tuple] = []
    group_counts: list[tuple[float, int]] = []
    skipped: list[float] = []
    for i in range(steps):
        omega_rot = start + (stop - start) * i / (steps - 1)
        try:
            params = dataclasses.replace(cfg.params, omega_rot=omega_rot)
        except NoBoundStatesError:
            rows.append((omega_rot, math.nan, math.nan, math.nan, "skipped"))
            skipped.append(omega_rot)
            continue
        spec = spectrum(params, cfg.n_max, cfg.l_min, cfg.l_max)
        group_counts.append((omega_rot, len(degeneracy_groups(spec))))
        rows.extend((omega_rot, line.n, line.l, line.energy, "ok") for line in spec)
    if not group_counts:
        print("error: every sweep point falls outside the bound-state regime", file=sys.stderr)
        return EXIT_EMPTY
    meta = _param_meta(cfg.params)
    del meta["omega_rot"], meta["delta"]  # varies across the sweep
    meta.update(
        sweep_start=start,
        sweep_stop=stop,
        sweep_steps=steps,
        n_max=cfg.n_max,
        l_min=cfg.l_min,
        l_max=cfg.l_max,
        skipped_points=len(skipped),
    )
    for omega_rot, count in group_counts:
        meta[f"degeneracy_groups omega_rot={_fmt(omega_rot)}"] = count
    _emit(cfg, meta, columns, rows)
    _render_figure("sweep", cfg, meta, columns, rows)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    """Finite-difference cross-check of the analytic levels.

    Each l-channel is solved on the configured grid and on one twice as
    fine; numeric levels are matched to analytic ones by node count,
    Richardson-extrapolated, and compared at the configured tolerance.
    """
    params = cfg.params
    columns = ["n", "l", "analytic", "numeric", "abs_err", "conv_order"]
    rows: list[tuple] = []
    k = cfg.n_max + 1
    for l in range(cfg.l_min, cfg.l_max + 1):
        rho_max = cfg.rho_max or turning_point_rho_max(params, l, cfg.n_max)
        coarse = RadialGrid(1e-4, rho_max, cfg.grid_points)
        fine = RadialGrid(1e-4, rho_max, 2 * cfg.grid_points)
        by_node_coarse = dict(labeled_energies(params, l, coarse, k))
        by_node_fine = dict(labeled_energies(params, l, fine, k))
        if sorted(by_node_coarse) != list(range(k)) or sorted(by_node_fine) != list(range(k)):
            print(
                f"error: node-count labeling failed for l={l}; refine the grid",
                file=sys.stderr,
            )
            return EXIT_VERIFY
        for n in range(k):
            exact = energy_level(params, QuantumNumbers(n, l))
            e_coarse = by_node_coarse[n]
            e_fine = by_node_fine[n]
            extrapolated = richardson(e_coarse, e_fine)
            err_coarse = abs(e_coarse - exact)
            err_fine = abs(e_fine - exact)
            order = math.log2(err_coarse / err_fine) if err_fine > 0 else math.inf
            rows.append((n, l, exact, extrapolated, abs(extrapolated - exact), order))
    worst = max(rows, key=lambda row: row[4])
    meta = _param_meta(params)
    meta.update(
        n_max=cfg.n_max,
        l_min=cfg.l_min,
        l_max=cfg.l_max,
        grid_points=cfg.grid_points,
        tol=cfg.tol,
        max_abs_err=worst[4],
    )
    _emit(cfg, meta, columns, rows)
    _render_figure("verify", cfg, meta, columns, rows)
    if worst[4] >= cfg.tol:
        print(
            f"verification failure: worst level (n={worst[0]}, l={worst[1]}) "
            f"has abs_err = {worst[4]:.6g} >= tol = {cfg.tol:.6g}",
            file=sys.stderr,
        )
        return EXIT_VERIFY
    return EXIT_OK


def cmd_wavefunction(cfg: RunConfig, n: int, l: int, samples: int) -> int:
    """Normalized radial profile of one level, sampled on [0, rho_plot]."""
    if samples < 2:
        print("error: samples must be >= 2", file=sys.stderr)
        return EXIT_DOMAIN
    params = cfg.params
    try:
        state = normalize(params, QuantumNumbers(n, l))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    mass_delta = params.mass * effective_frequency(params)
    rho_plot = cfg.rho_max or math.sqrt(2.0 * (abs(l) + 4 * n + 16) / mass_delta)
    grid = RadialGrid(1e-4, math.sqrt(2.0 * (abs(l) + 4 * n + 60) / mass_delta),
                      max(2048, 64 * (n + 1)))
    nodes = node_count(state, grid)
    norm_check = radial_overlap(state, state)
    columns = ["rho", "R", "prob_density"]
    rows = []
    for i in range(samples):
        rho = rho_plot * i / (samples - 1)
        value = float(radial_value(state, rho))
        rows.append((rho, value, rho * value * value))
    meta = _param_meta(params)
    meta.update(
        n=n,
        l=l,
        node_count=nodes,
        norm_integral=norm_check,
        norm_constant=state.norm_constant,
        samples=samples,
    )
    _emit(cfg, meta, columns, rows)
    _render_figure("wavefunction", cfg, meta, columns, rows)
    return EXIT_OK


def cmd_fields(cfg: RunConfig, samples: int) -> int:
    """Field configuration samples plus the electrostatic verdict."""
    if samples < 2:
        print("error: samples must be >= 2", file=sys.stderr)
        return EXIT_DOMAIN
    from . import fields as fd

    params = cfg.params
    lam, quad = params.lam, params.quad_moment
    rho_hi = cfg.rho_max or 5.0
    rho_lo = 0.5  # keep the difference stencil well inside the domain
    rhos = [rho_lo + (rho_hi - rho_lo) * i / (samples - 1) for i in range(samples)]
    potential = lambda rho: fd.effective_vector_potential(quad, lam, rho)  # noqa: E731
    columns = ["rho", "E_rho", "A_phi", "B_eff_z_numeric"]
    rows = [
        (
            rho,
            fd.electric_field(lam, rho).rho_comp,
            potential(rho).phi_comp,
            fd.curl_z_numeric(potential, rho, fd.DEFAULT_STEP),
        )
        for rho in rhos
    ]
    report = fd.electrostatic_check(lam, rhos)
    meta = _param_meta(params)
    meta.update(
        electrostatic_check="pass" if report.passed else "fail",
        electrostatic_max_violation=report.max_violation,
        m_times_omega=params.mass * cyclotron_frequency(params),
        samples=samples,
    )
    _emit(cfg, meta, columns, rows)
    _render_figure("fields", cfg, meta, columns, rows)
    return EXIT_OK


def _read_config_file(path: str) -> dict:
    """Flat key=value file; '#' comments and blank lines are ignored."""
    values: dict = {}
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _CONFIG_KEYS[key](value.strip())
    return values


def _parse_sweep(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"sweep must be start:stop:steps, got {text!r}")
    start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 2:
        raise ValueError(f"sweep needs at least 2 steps, got {steps}")
    return start, stop, steps


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotlandau",
        description=(
            "Landau-type levels of a magnetic-quadrupole atom in a rotating "
            "frame. All quantities are in natural units (hbar = c = 1); the "
            "cyclotron frequency is omega = 2*M*lambda/m and rotation "
            "modifies the spacing to delta = sqrt(omega**2 + 4*Omega*omega)."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mass", type=float, help="particle mass m > 0")
    common.add_argument("--quad-moment", dest="quad_moment", type=float,
                        help="quadrupole constant M > 0")
    common.add_argument("--lambda", dest="lam", type=float,
                        help="charge-density constant lambda > 0")
    common.add_argument("--omega-rot", dest="omega_rot", type=float,
                        help="rotation rate Omega (must stay above -omega/4)")
    common.add_argument("--n-max", dest="n_max", type=int, help="largest radial number n")
    common.add_argument("--l-min", dest="l_min", type=int, help="smallest angular number l")
    common.add_argument("--l-max", dest="l_max", type=int, help="largest angular number l")
    common.add_argument("--sweep", type=str, metavar="START:STOP:STEPS",
                        help="rotation-rate sweep specification")
    common.add_argument("--grid-points", dest="grid_points", type=int,
                        help="radial cells for the numeric solver")
    common.add_argument("--rho-max", dest="rho_max", type=float,
                        help="override the automatic box radius / sampling range")
    common.add_argument("--tol", type=float, help="verification tolerance")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"),
                        help="output format (default csv)")
    common.add_argument("--out", type=str, metavar="PATH",
                        help="write the table to PATH instead of stdout")
    common.add_argument("--fig", type=str, metavar="PATH",
                        help="also render a matplotlib figure to PATH")
    common.add_argument("--config", type=str, metavar="PATH",
                        help="key=value defaults file; explicit flags win")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common],
                   help="analytic energy levels over an (n, l) window")
    sub.add_parser("sweep", parents=[common],
                   help="levels across a range of rotation rates")
    sub.add_parser("verify", parents=[common],
                   help="finite-difference cross-check of the analytic levels")
    wave = sub.add_parser("wavefunction", parents=[common],
                          help="normalized radial profile of one level")
    wave.add_argument("--n", type=int, default=0, help="radial quantum number")
    wave.add_argument("--l", type=int, default=0, help="angular quantum number")
    wave.add_argument("--samples", type=int, default=200, help="number of sample rows")
    flds = sub.add_parser("fields", parents=[common],
                          help="field configuration and electrostatic check")
    flds.add_argument("--samples", type=int, default=200, help="number of sample rows")
    return parser


def _make_config(args: argparse.Namespace) -> RunConfig:
    merged = dict(_DEFAULTS)
    if args.config:
        for key, value in _read_config_file(args.config).items():
            alias = {"lambda": "lam", "format": "fmt"}.get(key, key)
            merged[alias] = value
    for key in ("mass", "quad_moment", "lam", "omega_rot", "n_max", "l_min", "l_max",
                "sweep", "grid_points", "rho_max", "tol", "fmt", "out", "fig"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    sweep = merged["sweep"]
    if isinstance(sweep, str):
        sweep = _parse_sweep(sweep)
    params = SystemParams(
        mass=merged["mass"],
        quad_moment=merged["quad_moment"],
        lam=merged["lam"],
        omega_rot=merged["omega_rot"],
    )
    return RunConfig(
        params=params,
        n_max=merged["n_max"],
        l_min=merged["l_min"],
        l_max=merged["l_max"],
        omega_rot_sweep=sweep,
        grid_points=merged["grid_points"],
        rho_max=merged["rho_max"],
        tol=merged["tol"],
        output_format=merged["fmt"],
        output_path=merged["out"],
        fig_path=merged["fig"],
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _make_config(args)
    except NoBoundStatesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.command == "spectrum":
        return cmd_spectrum(cfg)
    if args.command == "sweep":
        if cfg.omega_rot_sweep is None:
            print("error: sweep requires --sweep START:STOP:STEPS", file=sys.stderr)
            return EXIT_DOMAIN
        return cmd_sweep(cfg)
    if args.command == "verify":
        return cmd_verify(cfg)
    if args.command == "wavefunction":
        return cmd_wavefunction(cfg, args.n, args.l, args.samples)
    if args.command == "fields":
        return cmd_fields(cfg, args.samples)
    raise AssertionError(f"unhandled command {args.command!r}")


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
