"""Figure rendering for the report commands.

Everything here draws to an in-memory figure and saves to a file; nothing
opens a window.  Imported lazily by the CLI so plain library use never
touches matplotlib.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KIND_STYLE = {
    "squashed": dict(color="tab:blue", marker="o"),
    "squeezed": dict(color="tab:red", marker="s"),
    "classical": dict(color="tab:green", marker="^"),
    "vacuum": dict(color="0.5", marker="."),
    "custom": dict(color="tab:purple", marker="x"),
}


def population_scan_figure(rows):
    """Log-log upper-level population vs intensity, one curve per kind."""
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    by_kind: dict[str, list] = {}
    for row in rows:
        by_kind.setdefault(row.kind.value, []).append(row)
    for kind, kind_rows in by_kind.items():
        ns = [r.intensity for r in kind_rows]
        style = KIND_STYLE.get(kind, {})
        ax.loglog(ns, [r.rho33_closed_form for r in kind_rows],
                  color=style.get("color"), lw=1.2, label=f"{kind} (closed form)")
        ax.loglog(ns, [r.rho33_numeric for r in kind_rows], ls="none",
                  marker=style.get("marker", "o"), ms=4, mfc="none",
                  color=style.get("color"), label=f"{kind} (numeric)")
    ax.set_xlabel("intensity")
    ax.set_ylabel(r"upper-level population $\rho_{33}$")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    return fig


def transient_figure(trace):
    """Populations and the real two-photon coherence along a trajectory."""
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for name, series in trace.observables.items():
        ax.plot(trace.times, series, lw=1.2, label=name)
    ax.set_xlabel("time (units of 1/linewidth)")
    ax.set_ylabel("matrix elements")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    return fig


def spectrum_figure(curve):
    """In-loop quadrature spectra vs frequency, with the shot-noise line."""
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.plot(curve.omegas, curve.s_x, lw=1.4, label=r"$S_X$")
    ax.plot(curve.omegas, curve.s_y, lw=1.4, ls="--", label=r"$S_Y$")
    ax.axhline(1.0, color="0.6", lw=0.8, label="shot noise")
    ax.set_xlabel("frequency (units of linewidth)")
    ax.set_ylabel("spectrum")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    return fig


def phase_contour_figure(thetas, values, label=None):
    """Radial contour of the rotated-quadrature spectrum against vacuum."""
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    xs = values * np.cos(thetas)
    ys = values * np.sin(thetas)
    circle = np.linspace(0.0, 2.0 * np.pi, 256)
    ax.plot(np.cos(circle), np.sin(circle), color="0.6", lw=0.8, label="vacuum")
    ax.plot(xs, ys, lw=1.4, label=label or "contour")
    ax.set_aspect("equal")
    ax.set_xlabel(r"$S\,\cos\theta$")
    ax.set_ylabel(r"$S\,\sin\theta$")
    ax.legend(fontsize=8)
    return fig


def save_figure(fig, path: str, dpi: int = 150):
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
