"""Liouvillian builders for every master-equation variant.

Each physical situation comes in two independently coded forms: a "direct"
builder that transcribes the printed equation for that situation, and the
"unified" builder driven purely by the four effective rates.  Their
entrywise equality is the package's central cross-check and is enforced in
the test suite.  All rates are in units of the natural linewidth; the
cascade decay rates are fixed at one except in the general twin-beam
builder.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .light import GeneralTwinParams, LightParams, Sign, twin_beam_spectra
from .superop import (
    Generator,
    atom_ops,
    dissipator,
    double_commutator,
    left_mult,
    right_mult,
    sandwich_sum,
)

RATE_ATOL = 1e-12


@dataclass(frozen=True)
class BlochRates:
    """Decay rates of the two-level Bloch components and the constant drive.

    gamma_x/gamma_y/gamma_z damp the respective Pauli expectations; c is
    the inhomogeneous term pushing sigma_z toward inversion -c/gamma_z.
    The total rate always splits as gamma_z = gamma_x + gamma_y.
    """

    gamma_x: float
    gamma_y: float
    gamma_z: float
    c: float

    def __post_init__(self):
        if abs(self.gamma_z - self.gamma_x - self.gamma_y) > RATE_ATOL:
            raise ValueError("gamma_z must equal gamma_x + gamma_y")


def _params_tag(p: LightParams) -> str:
    return (f"kind={p.kind.value}, n_up={p.n_up:.12g}, n_down={p.n_down:.12g}, "
            f"m_up={p.m_up:.12g}, m_down={p.m_down:.12g}")


def gen_2la_unified(p: LightParams) -> Generator:
    """Two-level atom in effective-rate form.

    rho' = (1+N_D) D[s] rho + N_U D[s^dag] rho
           - (1/2)(M_D+M_U) (s rho s + s^dag rho s^dag).
    """
    ops = atom_ops(2)
    s = ops.sigma
    mat = ((1.0 + p.n_down) * dissipator(s).matrix
           + p.n_up * dissipator(s.conj().T).matrix
           - 0.5 * (p.m_down + p.m_up) * sandwich_sum(s, s).matrix)
    return Generator(2, mat, f"two-level unified ({_params_tag(p)})")


def gen_2la_squeezed_direct(l_value: float) -> Generator:
    """Two-level atom in minimum-uncertainty squeezed light, single-dissipator
    form rho' = (1/4L) D[(L+1)s - (L-1)s^dag] rho."""
    if l_value <= 0:
        raise ValueError(f"squeezing number L must be positive, got {l_value}")
    ops = atom_ops(2)
    s = ops.sigma
    op = (l_value + 1.0) * s - (l_value - 1.0) * s.conj().T
    mat = dissipator(op).matrix / (4.0 * l_value)
    return Generator(2, mat, f"two-level squeezed direct (L={l_value:.12g})")


def gen_2la_squashed_direct(lam: float) -> Generator:
    """Two-level atom inside the feedback loop.

    rho' = D[s] rho - i(lam/2) [s_y, s rho + rho s^dag] + (lam^2/4) D[s_y] rho.
    Valid for lam >= -1; the light is only squashed for lam in [-1, 0).
    """
    if lam < -1.0:
        raise ValueError(f"feedback parameter must be >= -1, got {lam}")
    if lam >= 0.0:
        warnings.warn(f"lambda = {lam} is outside the squashing regime [-1, 0)",
                      stacklevel=2)
    ops = atom_ops(2)
    s, sy = ops.sigma, ops.sigma_y
    comm_sy = left_mult(sy) - right_mult(sy)
    inner = left_mult(s) + right_mult(s.conj().T)
    mat = (dissipator(s).matrix
           - 1j * (lam / 2.0) * comm_sy @ inner
           + (lam * lam / 4.0) * dissipator(sy).matrix)
    return Generator(2, mat, f"two-level squashed direct (lambda={lam:.12g})")


def gen_3la_unified(p: LightParams) -> Generator:
    """Cascade three-level atom in effective-rate form.

    rho' = (1+N_D){D[s1]+D[s2]} rho + N_U{D[s1^dag]+D[s2^dag]} rho
           + (M_D/2){[s1,[s2,rho]] + [s1^dag,[s2^dag,rho]]}
           + (M_U/2){[s2,[s1,rho]] + [s2^dag,[s1^dag,rho]]}.
    """
    ops = atom_ops(3)
    s1, s2 = ops.lowering
    s1d, s2d = s1.conj().T, s2.conj().T
    mat = ((1.0 + p.n_down) * (dissipator(s1).matrix + dissipator(s2).matrix)
           + p.n_up * (dissipator(s1d).matrix + dissipator(s2d).matrix)
           + 0.5 * p.m_down * (double_commutator(s1, s2).matrix
                               + double_commutator(s1d, s2d).matrix)
           + 0.5 * p.m_up * (double_commutator(s2, s1).matrix
                             + double_commutator(s2d, s1d).matrix))
    return Generator(3, mat, f"three-level unified ({_params_tag(p)})")


def gen_3la_squeezed_general(tp: GeneralTwinParams) -> Generator:
    """Cascade atom coupled to an un-simplified squeezed twin-beam.

    Carries separate decay rates and photon numbers per beam and a complex
    cross correlation M; reduces to the symmetric form at
    gamma1 = gamma2 = 1, N1 = N2, M real.
    """
    ops = atom_ops(3)
    s1, s2 = ops.lowering
    s1d, s2d = s1.conj().T, s2.conj().T
    root = np.sqrt(tp.gamma1 * tp.gamma2)
    mat = ((1.0 + tp.n1) * tp.gamma1 * dissipator(s1).matrix
           + (1.0 + tp.n2) * tp.gamma2 * dissipator(s2).matrix
           + tp.n1 * tp.gamma1 * dissipator(s1d).matrix
           + tp.n2 * tp.gamma2 * dissipator(s2d).matrix
           + 0.5 * np.conj(tp.m) * root * (double_commutator(s1, s2).matrix
                                           + double_commutator(s2, s1).matrix)
           + 0.5 * tp.m * root * (double_commutator(s1d, s2d).matrix
                                  + double_commutator(s2d, s1d).matrix))
    return Generator(3, mat,
                     f"three-level general twin-beam (gamma1={tp.gamma1:.12g}, "
                     f"gamma2={tp.gamma2:.12g}, n1={tp.n1:.12g}, n2={tp.n2:.12g}, "
                     f"m={tp.m})")


def gen_3la_squashed_direct(lam: float, sign: Sign = Sign.PLUS) -> Generator:
    """Cascade atom driven by the twin-beam feedback loop.

    rho' = (1+lam+lam^2/4){D[s1]+D[s2]} rho + (lam^2/4){D[s1^dag]+D[s2^dag]} rho
           +/- (lam/2){[s1,[s2,rho]] + [s1^dag,[s2^dag,rho]]}
           +/- (lam^2/8){all four nested commutators}.
    MINUS flips the last two groups (the conjugate quadrature pair squashed).
    """
    if lam < -1.0:
        raise ValueError(f"feedback parameter must be >= -1, got {lam}")
    if lam > 0.0:
        warnings.warn(f"lambda = {lam} is outside the squashing regime [-1, 0]",
                      stacklevel=2)
    ops = atom_ops(3)
    s1, s2 = ops.lowering
    s1d, s2d = s1.conj().T, s2.conj().T
    sgn = float(sign.value)
    down_pair = double_commutator(s1, s2).matrix + double_commutator(s1d, s2d).matrix
    up_pair = double_commutator(s2, s1).matrix + double_commutator(s2d, s1d).matrix
    mat = ((1.0 + lam + lam * lam / 4.0) * (dissipator(s1).matrix + dissipator(s2).matrix)
           + (lam * lam / 4.0) * (dissipator(s1d).matrix + dissipator(s2d).matrix)
           + sgn * (lam / 2.0) * down_pair
           + sgn * (lam * lam / 8.0) * (down_pair + up_pair))
    return Generator(3, mat,
                     f"three-level squashed direct (lambda={lam:.12g}, "
                     f"sign={sign.name.lower()})")


def bloch_rates(p: LightParams) -> BlochRates:
    """Closed-form Bloch decay rates of the two-level unified equation.

    gamma_x and gamma_y are half the X and Y quadrature spectra, and the
    drive constant is c = 1 + N_D - N_U.  The numeric extraction in
    dynamics.decay_rates_2la must reproduce these, which the tests enforce.
    """
    spectra = twin_beam_spectra(p)
    gx = 0.5 * spectra.s_x
    gy = 0.5 * spectra.s_y
    return BlochRates(gx, gy, gx + gy, 1.0 + p.n_down - p.n_up)
