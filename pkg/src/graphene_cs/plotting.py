"""Figure rendering for the CLI report paths (file output only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import InvalidRequestError
from .gridio import GridResult


def render_figure(result: GridResult, path: str) -> None:
    """Render one report to an image file; the format follows the extension."""
    command = result.command
    if command in ("uncertainty", "energy"):
        _render_surface(result, path)
    elif command == "density":
        _render_density(result, path)
    elif command == "coeffs":
        _render_coeffs(result, path)
    else:
        raise InvalidRequestError(f"no figure is defined for command {command!r}")


def _context_title(result: GridResult) -> str:
    cfg = result.meta.get("config", {})
    return f"family {result.meta.get('family', '?')}, b0={cfg.get('b0')}, k={cfg.get('k')}"


def _render_surface(result: GridResult, path: str) -> None:
    value_col = result.columns[-1]
    rows = np.asarray(result.rows, dtype=float)
    re_vals = np.unique(rows[:, 0])
    im_vals = np.unique(rows[:, 1])
    fig, ax = plt.subplots(figsize=(6.4, 5.2), constrained_layout=True)
    if re_vals.size >= 2 and im_vals.size >= 2:
        grid = rows[:, -1].reshape(re_vals.size, im_vals.size)
        mesh = ax.pcolormesh(re_vals, im_vals, grid.T, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label=value_col)
        ax.set_xlabel("Re alpha")
        ax.set_ylabel("Im alpha")
    elif re_vals.size >= 2 or im_vals.size >= 2:
        sweep = 0 if re_vals.size >= 2 else 1
        ax.plot(rows[:, sweep], rows[:, -1], lw=1.4)
        ax.set_xlabel("Re alpha" if sweep == 0 else "Im alpha")
        ax.set_ylabel(value_col)
        ax.grid(alpha=0.3)
    else:
        labels = list(result.columns[2:])
        ax.bar(labels, rows[0, 2:].tolist(), color="tab:blue")
        ax.set_ylabel("value")
    ax.set_title(f"{value_col}: {_context_title(result)}")
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _render_density(result: GridResult, path: str) -> None:
    rows = np.asarray(result.rows, dtype=float)
    thetas = sorted(set(rows[:, 2]))
    radii = sorted(set(rows[:, 1]))
    fig, axes = plt.subplots(
        1, len(thetas), figsize=(4.6 * len(thetas), 4.0), sharey=True, constrained_layout=True
    )
    axes = np.atleast_1d(axes)
    for ax, theta in zip(axes, thetas):
        for r in radii:
            mask = (rows[:, 1] == r) & (rows[:, 2] == theta)
            ax.plot(rows[mask, 0], rows[mask, 3], lw=1.3, label=f"r={r:g}")
        ax.set_title(f"theta={theta:.4g}")
        ax.set_xlabel("x")
        ax.grid(alpha=0.3)
    axes[0].set_ylabel("density")
    axes[-1].legend(loc="best", fontsize=8)
    fig.suptitle(_context_title(result))
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _render_coeffs(result: GridResult, path: str) -> None:
    rows = np.asarray(result.rows, dtype=float)
    fig, ax = plt.subplots(figsize=(6.4, 4.2), constrained_layout=True)
    ax.bar(rows[:, 0].astype(int), rows[:, 3], width=0.85, color="tab:purple")
    ax.set_xlabel("Landau index n")
    ax.set_ylabel("probability")
    ax.set_title(f"level occupation: {_context_title(result)}")
    fig.savefig(path, dpi=150)
    plt.close(fig)
