"""Effective parameterizations of broadband light fields.

Squashed (in-loop), maximally squeezed, and maximally correlated classical
fields are all described here by four dimensionless rates: upward and
downward one-photon rates (``n_up``, ``n_down``) and the matching two-photon
correlation rates (``m_up``, ``m_down``).  The same four numbers feed the
two-level and cascade three-level master equations and fix every quadrature
spectrum, so the three kinds of light can be compared on one footing.

All rates are in units of the natural linewidth, which is set to one
throughout the package.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

VALIDATION_ATOL = 1e-12


class LightKind(enum.Enum):
    """Which family of field correlations a parameter set belongs to."""

    SQUASHED = "squashed"
    SQUEEZED = "squeezed"
    CLASSICAL = "classical"
    VACUUM = "vacuum"
    CUSTOM = "custom"


class Sign(enum.Enum):
    """Which twin-beam quadrature pair carries the modified noise.

    PLUS affects X+ and Y- (the sum/difference combinations of the two
    beams); MINUS affects Y+ and X-.
    """

    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class LightParams:
    """Four effective rates plus the kind tag they were built for.

    Attributes
    ----------
    n_up, n_down : float
        One-photon excitation / de-excitation rates.
    m_up, m_down : float
        Two-photon correlation rates for excitation / de-excitation.
        Real by construction; complex correlations live in
        :class:`GeneralTwinParams` only.
    kind : LightKind
        Family tag.  Constructors for the named kinds enforce the tight
        per-kind constraints; CUSTOM only requires nonnegative spectra.
    """

    n_up: float
    n_down: float
    m_up: float
    m_down: float
    kind: LightKind

    def __post_init__(self):
        a = VALIDATION_ATOL
        k = self.kind
        if k is LightKind.VACUUM:
            if any(abs(v) > a for v in (self.n_up, self.n_down, self.m_up, self.m_down)):
                raise ValueError("vacuum light must have all four rates equal to zero")
        elif k is LightKind.SQUASHED:
            if self.n_up <= 0:
                raise ValueError("squashed light requires n_up > 0")
            lam = -2.0 * math.sqrt(self.n_up)
            if not -1.0 - a <= lam < 0.0:
                raise ValueError("squashed light requires a feedback parameter in [-1, 0)")
            if abs(self.n_down - (lam + lam * lam / 4.0)) > a:
                raise ValueError("squashed n_down inconsistent with n_up")
            plus = abs(self.m_up - self.n_up) <= a and abs(self.m_down - self.n_down) <= a
            minus = abs(self.m_up + self.n_up) <= a and abs(self.m_down + self.n_down) <= a
            if not (plus or minus):
                raise ValueError("squashed light requires (m_up, m_down) = +/-(n_up, n_down)")
        elif k is LightKind.SQUEEZED:
            self._check_symmetric("squeezed")
            bound = math.sqrt(max(self.n_up, 0.0) * (self.n_up + 1.0))
            if abs(self.m_up) > bound + a:
                raise ValueError("squeezed light requires |M| <= sqrt(N(N+1))")
        elif k is LightKind.CLASSICAL:
            self._check_symmetric("classical")
            if abs(self.m_up) > self.n_up + a:
                raise ValueError("classically impossible correlation: |M| > N")
        s = 1.0 + self.n_up + self.n_down
        if s + self.m_up + self.m_down < -a or s - self.m_up - self.m_down < -a:
            raise ValueError("parameters give a negative quadrature spectrum")

    def _check_symmetric(self, label):
        a = VALIDATION_ATOL
        if self.n_up < -a:
            raise ValueError(f"{label} light requires N >= 0")
        if abs(self.n_up - self.n_down) > a or abs(self.m_up - self.m_down) > a:
            raise ValueError(f"{label} light requires n_up = n_down and m_up = m_down")

    @property
    def l_value(self) -> float:
        """Single-number description 1 + N_U + N_D + M_U + M_D.

        Equals 1 + 2N + 2M for the symmetric kinds and is exactly the
        X-quadrature spectrum; for minimum-uncertainty squeezing it
        characterizes the field completely (the Y spectrum is its inverse).
        """
        return 1.0 + self.n_up + self.n_down + self.m_up + self.m_down


@dataclass(frozen=True)
class GeneralTwinParams:
    """Un-simplified twin-beam squeezing: per-beam decay rates and photon
    numbers plus one complex cross correlation."""

    gamma1: float
    gamma2: float
    n1: float
    n2: float
    m: complex

    def __post_init__(self):
        a = VALIDATION_ATOL
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ValueError("decay rates must be nonnegative")
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError("photon numbers must be nonnegative")
        if abs(self.m) ** 2 > self.n1 * self.n2 + min(self.n1, self.n2) + a:
            raise ValueError("correlation bound violated: |M|^2 > N1*N2 + min(N1, N2)")


@dataclass(frozen=True)
class SpectraSet:
    """Single-beam and twin-beam quadrature spectra of one parameter set.

    The twin-beam combinations pair up: X+ with Y-, and X- with Y+.
    Vacuum gives 1.0 (the shot-noise limit) in every entry.
    """

    s_x: float
    s_y: float
    s_x_plus: float
    s_y_plus: float
    s_x_minus: float
    s_y_minus: float

    def __post_init__(self):
        a = VALIDATION_ATOL
        for name, value in self.__dict__.items():
            if value < -a:
                raise ValueError(f"negative spectrum {name} = {value}")


def vacuum() -> LightParams:
    """The trivial field: all four rates zero, unit spectra."""
    return LightParams(0.0, 0.0, 0.0, 0.0, LightKind.VACUUM)


def make_squashed(lam: float, sign: Sign = Sign.PLUS) -> LightParams:
    """Effective rates of in-loop (squashed) light at feedback parameter ``lam``.

    Parameters
    ----------
    lam : float
        Feedback parameter in [-1, 0); -1 is optimal squashing.
    sign : Sign
        PLUS squashes X+/Y- (positive correlation rates), MINUS squashes
        Y+/X- (negated correlation rates).

    Returns
    -------
    LightParams
        n_up = lam^2/4, n_down = lam + lam^2/4, correlations +/- those.
    """
    if not -1.0 <= lam < 0.0:
        raise ValueError(f"squashed light requires lambda in [-1, 0), got {lam}")
    n_up = lam * lam / 4.0
    n_down = lam + n_up
    s = float(sign.value)
    return LightParams(n_up, n_down, s * n_up, s * n_down, LightKind.SQUASHED)


def make_squeezed_max(n: float, sign_of_m: int = -1) -> LightParams:
    """Minimum-uncertainty (maximally squeezed) light with photon number ``n``.

    ``sign_of_m`` picks which quadrature is squeezed: -1 squeezes X
    (M = -sqrt(N(N+1))), +1 squeezes Y.
    """
    if n < 0:
        raise ValueError(f"photon number must be nonnegative, got {n}")
    if sign_of_m not in (-1, 1):
        raise ValueError("sign_of_m must be +1 or -1")
    m = sign_of_m * math.sqrt(n * (n + 1.0))
    return LightParams(n, n, m, m, LightKind.SQUEEZED)


def make_classical(n: float, m: float) -> LightParams:
    """Classically correlated noise with photon number ``n`` and correlation ``m``.

    Requires |m| <= n; equality is maximal classical correlation.
    """
    if n < 0:
        raise ValueError(f"photon number must be nonnegative, got {n}")
    if abs(m) > n + VALIDATION_ATOL:
        raise ValueError(f"classically impossible correlation: |M| = {abs(m)} > N = {n}")
    return LightParams(n, n, m, m, LightKind.CLASSICAL)


def make_custom(n_up: float, n_down: float, m_up: float, m_down: float) -> LightParams:
    """Arbitrary rates for exploratory use; only spectra-nonnegativity is enforced."""
    return LightParams(n_up, n_down, m_up, m_down, LightKind.CUSTOM)


def intensity(p: LightParams) -> float:
    """Photon flux of the field; equal to the upward one-photon rate."""
    return p.n_up


def lambda_for_intensity(n: float) -> float:
    """Feedback parameter giving squashed light of photon flux ``n``.

    Inverts n_up = lam^2/4 on the squashing branch: lam = -2 sqrt(n).
    Only fluxes in the open interval (0, 0.25) are reachable.
    """
    if not 0.0 < n < 0.25:
        raise ValueError(f"squashed intensity must lie in (0, 0.25), got {n}")
    return -2.0 * math.sqrt(n)


def twin_beam_spectra(p: LightParams) -> SpectraSet:
    """All six quadrature spectra of a parameter set.

    The single-beam X spectrum and the twin-beam X+/Y- pair are
    1 + N_U + N_D + M_U + M_D; the conjugate set is the same with the
    correlation rates negated.
    """
    base = 1.0 + p.n_up + p.n_down
    s_plus = base + p.m_up + p.m_down
    s_minus = base - p.m_up - p.m_down
    return SpectraSet(
        s_x=s_plus,
        s_y=s_minus,
        s_x_plus=s_plus,
        s_y_plus=s_minus,
        s_x_minus=s_minus,
        s_y_minus=s_plus,
    )
