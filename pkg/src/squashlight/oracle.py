"""Hand-derived reduced rate equations for the cascade atom.

The populations and the real part of the two-photon coherence form a closed
4-variable linear system whenever the one-photon coherences start at zero.
The matrix below was derived by expanding the three-level master equation
element by element on paper; it deliberately shares no code with the
superoperator machinery, so propagating it and the full 9-dimensional
generator gives two genuinely independent routes to the same numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .dynamics import evolve
from .light import LightParams
from .master import gen_3la_unified

COLUMN_SUM_ATOL = 1e-12
COHERENCE_ATOL = 1e-12


@dataclass(frozen=True)
class ReducedSystem:
    """4x4 real system d/dt (rho11, rho22, rho33, Re rho13) = matrix @ (...)."""

    matrix: np.ndarray
    params: LightParams

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"reduced system must be 4x4, got {m.shape}")
        # probability conservation: population rows sum to zero column-wise
        col_sums = np.abs(m[:3, :].sum(axis=0)).max()
        if col_sums > COLUMN_SUM_ATOL:
            raise ValueError(f"population columns do not conserve probability: {col_sums:.3e}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


def reduced_system(p: LightParams) -> ReducedSystem:
    """Reduced equations of motion for the given light parameters.

    With x = (rho11, rho22, rho33, r) and r = Re rho13:

        rho11' = (1+N_D) rho22 - N_U rho11 + M_D r
        rho22' = (1+N_D)(rho33 - rho22) + N_U (rho11 - rho22) - (M_D+M_U) r
        rho33' = -(1+N_D) rho33 + N_U rho22 + M_U r
        r'     = -(1+N_D+N_U) r/2 + M_D (rho33 - rho22)/2 + M_U (rho11 - rho22)/2
    """
    nu, nd, mu, md = p.n_up, p.n_down, p.m_up, p.m_down
    matrix = np.array([
        [-nu, 1.0 + nd, 0.0, md],
        [nu, -(1.0 + nd + nu), 1.0 + nd, -(md + mu)],
        [0.0, nu, -(1.0 + nd), mu],
        [mu / 2.0, -(md + mu) / 2.0, md / 2.0, -(1.0 + nd + nu) / 2.0],
    ])
    return ReducedSystem(matrix, p)


def reduce_state(rho: np.ndarray) -> np.ndarray:
    """Project a cascade density matrix onto the reduced variables.

    Requires the one-photon coherences (rho12, rho23) to vanish; raises
    ValueError otherwise since the reduced system does not track them.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (3, 3):
        raise ValueError(f"expected a 3x3 state, got {rho.shape}")
    one_photon = max(abs(rho[0, 1]), abs(rho[1, 0]), abs(rho[1, 2]), abs(rho[2, 1]))
    if one_photon > COHERENCE_ATOL:
        raise ValueError(
            f"state has one-photon coherences ({one_photon:.3e}) outside the "
            "reduced subspace")
    return np.array([rho[0, 0].real, rho[1, 1].real, rho[2, 2].real, rho[0, 2].real])


def reduced_steady_state(system: ReducedSystem) -> np.ndarray:
    """Stationary reduced vector with unit total population."""
    stacked = np.vstack([system.matrix, [1.0, 1.0, 1.0, 0.0]])
    rhs = np.array([0.0, 0.0, 0.0, 0.0, 1.0])
    solution, *_ = np.linalg.lstsq(stacked, rhs, rcond=None)
    return solution


def crosscheck(p: LightParams, rho0: np.ndarray, tgrid) -> float:
    """Max deviation between the reduced and full evolutions over a grid.

    Both routes start from the same state (which must live in the reduced
    subspace) and the deviation is taken over all four reduced variables at
    every grid time.
    """
    tgrid = np.asarray(tgrid, dtype=float)
    x0 = reduce_state(rho0)
    system = reduced_system(p)
    gen = gen_3la_unified(p)
    worst = 0.0
    for t in tgrid:
        x_reduced = scipy.linalg.expm(system.matrix * t) @ x0
        x_full = reduce_state(evolve(gen, rho0, float(t)))
        worst = max(worst, float(np.abs(x_reduced - x_full).max()))
    return worst
