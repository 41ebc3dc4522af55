"""Frequency-domain model of the electro-optical feedback loop.

The loop is characterized by its round-trip gain g, minimum delay tau, and
a normalized response function.  The measured in-loop X-quadrature spectrum
is |1 - g h(w) e^{-i w tau}|^-2 while the conjugate quadrature stays at the
vacuum level, so their product can drop below one: in-loop light is not a
free field and the usual uncertainty bound does not apply to it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

ROUNDTRIP_ATOL = 1e-14


class ResponseVariant(enum.Enum):
    IDEAL = "ideal"
    ONE_POLE = "onepole"


@dataclass(frozen=True)
class ResponseSpec:
    """Closed-form loop response, normalized to unity at zero frequency.

    IDEAL is flat (h = 1 everywhere); ONE_POLE is a single-pole low-pass
    1/(1 + i w/B) with bandwidth B.
    """

    variant: ResponseVariant = ResponseVariant.IDEAL
    bandwidth: float | None = None

    def __post_init__(self):
        if self.variant is ResponseVariant.ONE_POLE:
            if self.bandwidth is None or self.bandwidth <= 0:
                raise ValueError("one-pole response requires a positive bandwidth")
        elif self.bandwidth is not None:
            raise ValueError("ideal response takes no bandwidth")

    @classmethod
    def ideal(cls) -> "ResponseSpec":
        return cls(ResponseVariant.IDEAL)

    @classmethod
    def one_pole(cls, bandwidth: float) -> "ResponseSpec":
        return cls(ResponseVariant.ONE_POLE, bandwidth)

    def h_tilde(self, omega):
        """Frequency response; h_tilde(0) = 1 for both variants."""
        if self.variant is ResponseVariant.IDEAL:
            return np.ones_like(np.asarray(omega, dtype=complex))
        return 1.0 / (1.0 + 1j * np.asarray(omega, dtype=float) / self.bandwidth)


@dataclass(frozen=True)
class FeedbackLoop:
    """Round-trip gain, delay, and response of one feedback loop."""

    g: float
    tau: float = 0.0
    response: ResponseSpec = field(default_factory=ResponseSpec.ideal)

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError(f"loop delay must be nonnegative, got {self.tau}")


@dataclass(frozen=True)
class SpectrumCurve:
    """In-loop spectra on a frequency grid; the conjugate quadrature is flat."""

    omegas: np.ndarray
    s_x: np.ndarray
    s_y: np.ndarray

    @property
    def uncertainty_product(self) -> np.ndarray:
        return self.s_x * self.s_y


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    margin: float
    worst_omega: float


class UnstableLoopError(RuntimeError):
    """The loop gain condition fails somewhere on the frequency grid."""

    def __init__(self, message: str, omega: float):
        super().__init__(message)
        self.omega = omega


def loop_transfer(loop: FeedbackLoop, omega):
    """Open-loop transfer g h(w) e^{-i w tau}; broadcasts over arrays."""
    omega = np.asarray(omega, dtype=float)
    value = loop.g * loop.response.h_tilde(omega) * np.exp(-1j * omega * loop.tau)
    return value if value.ndim else complex(value)


def default_omega_grid(loop: FeedbackLoop, points: int = 2001) -> np.ndarray:
    """Stability-check grid: log-spaced over six decades around the response
    bandwidth (reference scale 1 for the ideal response), plus zero."""
    scale = loop.response.bandwidth if loop.response.bandwidth else 1.0
    grid = np.logspace(np.log10(1e-3 * scale), np.log10(1e3 * scale), points)
    return np.concatenate(([0.0], grid))


def stability_check(loop: FeedbackLoop, omegas=None) -> StabilityReport:
    """Grid check of the loop criterion g Re[h(w) e^{-i w tau}] < 1.

    Grid-based and therefore approximate: the caller must supply (or accept)
    a grid that covers the band of interest.  Returns the minimum margin
    1 - g Re[...] and where it occurs; a nonpositive margin means unstable.
    """
    if omegas is None:
        omegas = default_omega_grid(loop)
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    margins = 1.0 - loop.g * np.real(loop.response.h_tilde(omegas)
                                     * np.exp(-1j * omegas * loop.tau))
    worst = int(np.argmin(margins))
    return StabilityReport(stable=bool(margins[worst] > 0.0),
                           margin=float(margins[worst]),
                           worst_omega=float(omegas[worst]))


def inloop_spectrum(loop: FeedbackLoop, omegas) -> SpectrumCurve:
    """Measured in-loop spectra on a frequency grid.

    S_X(w) = |1 - g h(w) e^{-i w tau}|^-2, S_Y(w) = 1.  Raises
    :class:`UnstableLoopError` (carrying the offending frequency) when the
    stability criterion fails on the grid.
    """
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    report = stability_check(loop, omegas)
    if not report.stable:
        raise UnstableLoopError(
            f"loop unstable at omega = {report.worst_omega:.6g} "
            f"(margin {report.margin:.3e}, g = {loop.g})", report.worst_omega)
    s_x = np.abs(1.0 - loop_transfer(loop, omegas)) ** -2.0
    return SpectrumCurve(omegas=omegas, s_x=s_x, s_y=np.ones_like(s_x))


def lambda_from_gain(g: float) -> float:
    """Feedback parameter lambda = g/(1-g), a bijection from g < 1 onto (-1, inf)."""
    if g >= 1.0:
        raise ValueError(f"round-loop gain must be below 1, got {g}")
    return g / (1.0 - g)


def gain_from_lambda(lam: float) -> float:
    """Inverse map g = lambda/(1+lambda) for lambda > -1."""
    if lam <= -1.0:
        raise ValueError(f"feedback parameter must exceed -1, got {lam}")
    return lam / (1.0 + lam)
