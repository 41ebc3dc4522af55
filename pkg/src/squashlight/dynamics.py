"""Steady states, time evolution, and rate extraction for any generator.

Two independent propagation routes are provided: a scaling-and-squaring
matrix exponential (the default) and a fixed-step classical RK4 integrator
with a halved-step error estimate.  The tests require them to agree, which
guards both against coding slips in either path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .master import BlochRates
from .superop import Generator, atom_ops, devectorize, vectorize

NULL_EIGENVALUE_TOL = 1e-10
EIGENVALUE_GAP_TOL = 1e-6
RESIDUAL_TOL = 1e-10
TRACE_DRIFT_TOL = 1e-9
RK_STEP = 0.01
RK_ESTIMATE_TOL = 1e-10
BLOCH_CLOSURE_ATOL = 1e-12


class SteadyStateError(RuntimeError):
    """Null-space extraction failed: degenerate, missing, or non-normalizable."""


def _hermitize(rho: np.ndarray) -> np.ndarray:
    # numerical hygiene, not physics: suppresses anti-Hermitian drift
    return 0.5 * (rho + rho.conj().T)


def steady_state(gen: Generator) -> np.ndarray:
    """Unique trace-one fixed point of the generator.

    Eigen-decomposes the superoperator matrix and takes the eigenvector of
    the (required unique) eigenvalue of smallest magnitude.  Raises
    :class:`SteadyStateError` when there is no eigenvalue within
    1e-10 of zero, when the next eigenvalue is closer than 1e-6 (degenerate
    null space), or when the null vector has zero trace.
    """
    eigvals, eigvecs = scipy.linalg.eig(gen.matrix)
    order = np.argsort(np.abs(eigvals))
    smallest = abs(eigvals[order[0]])
    if smallest > NULL_EIGENVALUE_TOL:
        raise SteadyStateError(
            f"no null eigenvalue: smallest magnitude is {smallest:.3e} "
            f"({gen.provenance})")
    gap = abs(eigvals[order[1]]) - smallest
    if gap < EIGENVALUE_GAP_TOL:
        raise SteadyStateError(
            f"degenerate null space: eigenvalue gap {gap:.3e} "
            f"({gen.provenance})")
    rho = _hermitize(devectorize(eigvecs[:, order[0]], gen.dim))
    tr = np.trace(rho).real
    if abs(tr) < 1e-12:
        raise SteadyStateError(
            f"null vector is traceless and cannot be normalized ({gen.provenance})")
    rho = rho / tr
    residual = np.abs(gen.apply(rho)).max()
    if residual > RESIDUAL_TOL:
        raise SteadyStateError(
            f"steady-state residual {residual:.3e} exceeds {RESIDUAL_TOL} "
            f"({gen.provenance})")
    return rho


def evolve(gen: Generator, rho0: np.ndarray, t: float) -> np.ndarray:
    """Propagate a state for time ``t`` with the matrix exponential."""
    if t < 0:
        raise ValueError(f"evolution time must be nonnegative, got {t}")
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (gen.dim, gen.dim):
        raise ValueError(
            f"state shape {rho0.shape} does not match generator dimension {gen.dim}")
    if t == 0:
        return rho0.copy()
    rho = devectorize(scipy.linalg.expm(gen.matrix * t) @ vectorize(rho0), gen.dim)
    rho = _hermitize(rho)
    drift = abs(np.trace(rho) - np.trace(rho0))
    if drift > TRACE_DRIFT_TOL:
        raise RuntimeError(f"trace drifted by {drift:.3e} during evolution")
    return rho


def _rk4_run(matrix: np.ndarray, v0: np.ndarray, t: float, steps: int) -> np.ndarray:
    h = t / steps
    v = v0.copy()
    for _ in range(steps):
        k1 = matrix @ v
        k2 = matrix @ (v + 0.5 * h * k1)
        k3 = matrix @ (v + 0.5 * h * k2)
        k4 = matrix @ (v + h * k3)
        v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return v


def evolve_rk4(gen: Generator, rho0: np.ndarray, t: float) -> np.ndarray:
    """Independent propagation route: classical RK4 at fixed step.

    Uses h = min(0.01, t/100), runs again at half the step, and raises if
    the two runs disagree by more than 1e-10 (stiffness guard; never
    triggered at the rates this package produces).  Returns the finer run.
    """
    if t < 0:
        raise ValueError(f"evolution time must be nonnegative, got {t}")
    rho0 = np.asarray(rho0, dtype=complex)
    if t == 0:
        return rho0.copy()
    steps = max(1, int(np.ceil(t / min(RK_STEP, t / 100.0))))
    coarse = _rk4_run(gen.matrix, vectorize(rho0), t, steps)
    fine = _rk4_run(gen.matrix, vectorize(rho0), t, 2 * steps)
    estimate = np.abs(coarse - fine).max()
    if estimate > RK_ESTIMATE_TOL:
        raise RuntimeError(
            f"RK4 halved-step estimate {estimate:.3e} exceeds {RK_ESTIMATE_TOL}; "
            "generator too stiff for the fixed step")
    return _hermitize(devectorize(fine, gen.dim))


@dataclass(frozen=True)
class TransientTrace:
    """A trajectory: times, states, and named real observables.

    Observables are the populations plus the real two-photon coherence for
    the cascade atom (rho11, rho22, rho33, re_rho13), or the populations
    for the two-level atom.
    """

    times: np.ndarray
    states: np.ndarray
    observables: dict

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or len(t) == 0:
            raise ValueError("times must be a nonempty 1-d array")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        if t[0] < 0:
            raise ValueError("times must be nonnegative")


def transient_trace(gen: Generator, rho0: np.ndarray, times: np.ndarray) -> TransientTrace:
    """Evolve ``rho0`` over a strictly increasing time grid.

    Steps with cached per-interval propagators, so uniform grids cost one
    matrix exponential.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise ValueError("times must be a nonempty 1-d array")
    rho0 = np.asarray(rho0, dtype=complex)
    propagators: dict[float, np.ndarray] = {}
    states = np.empty((len(times), gen.dim, gen.dim), dtype=complex)
    v = vectorize(rho0)
    prev = 0.0
    for k, t in enumerate(times):
        dt = t - prev
        if dt > 0:
            key = round(dt, 15)
            if key not in propagators:
                propagators[key] = scipy.linalg.expm(gen.matrix * dt)
            v = propagators[key] @ v
        states[k] = _hermitize(devectorize(v, gen.dim))
        prev = t
    observables = {f"rho{i + 1}{i + 1}": states[:, i, i].real for i in range(gen.dim)}
    if gen.dim == 3:
        observables["re_rho13"] = states[:, 0, 2].real
    return TransientTrace(times, states, observables)


def short_time_slope(gen: Generator, rho0: np.ndarray, element: tuple) -> complex:
    """Exact t -> 0 derivative of one matrix element along the evolution.

    ``element`` uses the 1-based physics labeling, so (1, 3) is the
    two-photon coherence of the cascade atom.  Equals the corresponding
    entry of the generator applied to the initial state.
    """
    i, j = element
    if not (1 <= i <= gen.dim and 1 <= j <= gen.dim):
        raise IndexError(f"element {element} out of range for dimension {gen.dim}")
    return complex(gen.apply(np.asarray(rho0, dtype=complex))[i - 1, j - 1])


def decay_rates_2la(gen: Generator) -> BlochRates:
    """Extract the Bloch decay rates from a two-level generator.

    Expands the dynamics over the Pauli basis and demands that each
    component decays independently; any cross-coupling means the generator
    is not of the unified two-level form and raises ValueError.
    """
    if gen.dim != 2:
        raise ValueError(f"Bloch rates are defined for dimension 2, got {gen.dim}")
    ops = atom_ops(2)
    paulis = (ops.sigma_x, ops.sigma_y, ops.sigma_z)
    coupling = np.empty((3, 3))
    constant = np.empty(3)
    g_of_identity = gen.apply(np.eye(2, dtype=complex))
    for k, pk in enumerate(paulis):
        constant[k] = 0.5 * np.trace(pk @ g_of_identity).real
        for l, pl in enumerate(paulis):
            coupling[k, l] = 0.5 * np.trace(pk @ gen.apply(pl)).real
    off_diag = np.abs(coupling - np.diag(np.diag(coupling))).max()
    drive_xy = np.abs(constant[:2]).max()
    if off_diag > BLOCH_CLOSURE_ATOL or drive_xy > BLOCH_CLOSURE_ATOL:
        raise ValueError(
            f"Bloch dynamics do not close: cross-coupling {off_diag:.3e}, "
            f"transverse drive {drive_xy:.3e} ({gen.provenance})")
    gx, gy, gz = (-coupling[i, i] for i in range(3))
    return BlochRates(gx, gy, gz, -constant[2])
