"""Figure rendering for the CLI reports.

Each renderer draws the same rows the delimited output carries and writes
the figure straight to a file; nothing is shown interactively.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")  # headless: render to files only

import matplotlib.pyplot as plt  # noqa: E402


def render(kind: str, rows: list[dict], meta: dict, path: str) -> None:
    """Dispatch to the renderer for one report kind."""
    _RENDERERS[kind](rows, meta, path)


def _save(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _spectrum(rows: list[dict], meta: dict, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    n_values = sorted({row["n"] for row in rows})
    for n in n_values:
        pts = [(row["l"], row["energy"]) for row in rows if row["n"] == n]
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-", ms=4, label=f"n={n}")
    ax.set_xlabel("angular momentum l")
    ax.set_ylabel("energy")
    ax.set_title(f"levels at omega_rot = {meta.get('omega_rot', 0.0):g}")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    _save(fig, path)


def _sweep(rows: list[dict], meta: dict, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ok = [row for row in rows if row["status"] == "ok"]
    states = sorted({(row["n"], row["l"]) for row in ok})
    for n, l in states:
        pts = sorted(
            (row["omega_rot"], row["energy"]) for row in ok if (row["n"], row["l"]) == (n, l)
        )
        ax.plot([p[0] for p in pts], [p[1] for p in pts], lw=1)
    ax.set_xlabel("rotation rate omega_rot")
    ax.set_ylabel("energy")
    ax.set_title("level fan across the rotation sweep")
    ax.grid(alpha=0.3)
    _save(fig, path)


def _verify(rows: list[dict], meta: dict, path: str) -> None:
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    labels = [f"({row['n']},{row['l']})" for row in rows]
    errs = [max(row["abs_err"], 1e-18) for row in rows]
    axes[0].semilogy(range(len(rows)), errs, "o", ms=4)
    axes[0].axhline(meta.get("tol", 1e-4), color="red", ls="--", lw=1, label="tol")
    axes[0].set_xticks(range(len(rows)))
    axes[0].set_xticklabels(labels, rotation=90, fontsize=6)
    axes[0].set_ylabel("|numeric - analytic|")
    axes[0].legend(fontsize=8)
    orders = [row["conv_order"] for row in rows if math.isfinite(row["conv_order"])]
    axes[1].plot(range(len(orders)), orders, "s", ms=4)
    axes[1].axhline(2.0, color="gray", ls=":", lw=1)
    axes[1].set_ylabel("measured convergence order")
    axes[1].set_xlabel("state index")
    for ax in axes:
        ax.grid(alpha=0.3)
    _save(fig, path)


def _wavefunction(rows: list[dict], meta: dict, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    rho = [row["rho"] for row in rows]
    ax.plot(rho, [row["R"] for row in rows], label="R(rho)")
    ax.plot(rho, [row["prob_density"] for row in rows], label="rho |R|^2")
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.set_xlabel("rho")
    ax.set_title(f"n={meta.get('n')}, l={meta.get('l')}, nodes={meta.get('node_count')}")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    _save(fig, path)


def _fields(rows: list[dict], meta: dict, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    rho = [row["rho"] for row in rows]
    ax.plot(rho, [row["E_rho"] for row in rows], label="E_rho")
    ax.plot(rho, [row["A_phi"] for row in rows], label="A_phi")
    ax.plot(rho, [row["B_eff_z_numeric"] for row in rows], label="B_eff_z (numeric curl)")
    ax.set_xlabel("rho")
    ax.set_title(f"electrostatic check: {meta.get('electrostatic_check')}")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    _save(fig, path)


_RENDERERS = {
    "spectrum": _spectrum,
    "sweep": _sweep,
    "verify": _verify,
    "wavefunction": _wavefunction,
    "fields": _fields,
}
