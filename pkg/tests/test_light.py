import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from squashlight.light import (
    LightKind,
    LightParams,
    GeneralTwinParams,
    Sign,
    intensity,
    lambda_for_intensity,
    make_classical,
    make_custom,
    make_squashed,
    make_squeezed_max,
    twin_beam_spectra,
    vacuum,
)

ATOL = 1e-12

# frozen with 40-digit arithmetic: sqrt(0.1 * 1.1) and 1 + 0.2 - 2*sqrt(0.11)
SQRT_M_01 = 0.33166247903553998491
L_01 = 0.53667504192892003018


def test_squashed_optimal_boundary():
    p = make_squashed(-1.0, Sign.PLUS)
    assert (p.n_up, p.n_down, p.m_up, p.m_down) == (0.25, -0.75, 0.25, -0.75)
    assert p.kind is LightKind.SQUASHED


def test_squashed_half_plus():
    p = make_squashed(-0.5, Sign.PLUS)
    assert (p.n_up, p.n_down, p.m_up, p.m_down) == (0.0625, -0.4375, 0.0625, -0.4375)


def test_squashed_half_minus():
    p = make_squashed(-0.5, Sign.MINUS)
    assert (p.n_up, p.n_down, p.m_up, p.m_down) == (0.0625, -0.4375, -0.0625, 0.4375)


@pytest.mark.parametrize("lam", [-1.0001, -2.0, 0.0, 0.3])
def test_squashed_range_error(lam):
    with pytest.raises(ValueError, match=r"\[-1, 0\)"):
        make_squashed(lam)


def test_squeezed_max_zero_is_vacuum_equivalent():
    for sign in (-1, 1):
        p = make_squeezed_max(0.0, sign)
        v = vacuum()
        assert (p.n_up, p.n_down, p.m_up, p.m_down) == (v.n_up, v.n_down, v.m_up, v.m_down)


def test_squeezed_max_values():
    p = make_squeezed_max(0.1, -1)
    assert p.n_up == p.n_down == 0.1
    assert p.m_up == p.m_down == pytest.approx(-SQRT_M_01, abs=ATOL)
    assert p.l_value == pytest.approx(L_01, abs=ATOL)


def test_squeezed_max_negative_n():
    with pytest.raises(ValueError):
        make_squeezed_max(-0.1)
    with pytest.raises(ValueError):
        make_squeezed_max(0.1, sign_of_m=2)


def test_classical_examples():
    p = make_classical(0.1, -0.1)
    assert p.kind is LightKind.CLASSICAL
    assert p.m_up == p.m_down == -0.1
    s = twin_beam_spectra(make_classical(0.1, 0.0))
    assert s.s_x == pytest.approx(1.2, abs=ATOL)
    assert s.s_y == pytest.approx(1.2, abs=ATOL)


def test_classical_impossible_correlation():
    with pytest.raises(ValueError, match="classically impossible"):
        make_classical(0.1, -0.2)


def test_intensity():
    assert intensity(make_squashed(-0.5)) == 0.0625
    assert intensity(vacuum()) == 0.0
    assert intensity(make_squeezed_max(0.1)) == 0.1


def test_lambda_for_intensity_exact_squares():
    assert lambda_for_intensity(0.0625) == -0.5
    assert lambda_for_intensity(0.01) == pytest.approx(-0.2, abs=1e-15)


@pytest.mark.parametrize("n", [0.25, 0.0, -0.1, 0.3])
def test_lambda_for_intensity_range(n):
    with pytest.raises(ValueError):
        lambda_for_intensity(n)


def test_lambda_intensity_round_trip():
    for n in np.logspace(-6, math.log10(0.2499), 40):
        p = make_squashed(lambda_for_intensity(float(n)))
        assert abs(intensity(p) - n) < 1e-14


def test_spectra_squashed():
    for lam in (-0.5, -0.2, -0.9):
        s = twin_beam_spectra(make_squashed(lam, Sign.PLUS))
        assert s.s_x == pytest.approx(1 + 2 * lam + lam * lam, abs=ATOL)
        assert s.s_y == pytest.approx(1.0, abs=ATOL)


def test_spectra_squeezed_product():
    s = twin_beam_spectra(make_squeezed_max(0.1, -1))
    assert s.s_x == pytest.approx(L_01, abs=ATOL)
    assert s.s_y == pytest.approx(1.0 / L_01, abs=ATOL)
    assert s.s_x * s.s_y == pytest.approx(1.0, abs=ATOL)


def test_spectra_classical_negative_m():
    s = twin_beam_spectra(make_classical(0.1, -0.1))
    assert s.s_x == pytest.approx(1.0, abs=ATOL)
    assert s.s_y == pytest.approx(1.4, abs=ATOL)


def test_spectra_vacuum_all_ones():
    s = twin_beam_spectra(vacuum())
    assert (s.s_x, s.s_y, s.s_x_plus, s.s_y_plus, s.s_x_minus, s.s_y_minus) == (1,) * 6


def test_spectra_pairings():
    for p in (make_squashed(-0.3, Sign.MINUS), make_squeezed_max(0.4, 1),
              make_classical(0.2, 0.15)):
        s = twin_beam_spectra(p)
        assert s.s_x_plus == s.s_y_minus == s.s_x
        assert s.s_x_minus == s.s_y_plus == s.s_y


@given(n=st.floats(min_value=0.0, max_value=5.0),
       frac=st.floats(min_value=-1.0, max_value=1.0))
def test_squeezed_heisenberg_inequality(n, frac):
    m = frac * math.sqrt(n * (n + 1.0))
    p = LightParams(n, n, m, m, LightKind.SQUEEZED)
    s = twin_beam_spectra(p)
    assert s.s_x * s.s_y >= 1.0 - 1e-9


@given(n=st.floats(min_value=0.0, max_value=5.0))
def test_squeezed_max_saturates_heisenberg(n):
    s = twin_beam_spectra(make_squeezed_max(n, -1))
    assert s.s_x * s.s_y == pytest.approx(1.0, abs=1e-9)


@given(lam=st.floats(min_value=-1.0, max_value=-1e-6))
def test_squashed_apparent_violation(lam):
    s = twin_beam_spectra(make_squashed(lam, Sign.PLUS))
    assert s.s_x < 1.0
    assert s.s_y == pytest.approx(1.0, abs=1e-12)
    assert s.s_x * s.s_y < 1.0


@given(n=st.floats(min_value=0.0, max_value=5.0),
       frac=st.floats(min_value=-1.0, max_value=1.0))
def test_classical_never_below_shot_noise(n, frac):
    s = twin_beam_spectra(make_classical(n, frac * n))
    assert min(s.s_x, s.s_y) >= 1.0 - 1e-9


def test_vacuum_requires_zero_rates():
    with pytest.raises(ValueError):
        LightParams(0.1, 0.0, 0.0, 0.0, LightKind.VACUUM)


def test_squashed_params_must_be_consistent():
    with pytest.raises(ValueError):
        LightParams(0.0625, -0.4, 0.0625, -0.4375, LightKind.SQUASHED)
    with pytest.raises(ValueError):
        LightParams(0.0625, -0.4375, 0.0625, 0.4375, LightKind.SQUASHED)


def test_custom_rejects_negative_spectrum():
    with pytest.raises(ValueError, match="negative quadrature spectrum"):
        make_custom(0.0, 0.0, -0.6, -0.6)
    p = make_custom(0.3, -0.1, 0.05, 0.1)
    assert p.kind is LightKind.CUSTOM


def test_general_twin_params_bound():
    GeneralTwinParams(1.0, 1.0, 0.1, 0.1, -math.sqrt(0.11))
    with pytest.raises(ValueError, match="correlation bound"):
        GeneralTwinParams(1.0, 1.0, 0.1, 0.1, 0.5)
    with pytest.raises(ValueError):
        GeneralTwinParams(-1.0, 1.0, 0.1, 0.1, 0.0)
    GeneralTwinParams(1.3, 0.7, 0.2, 0.4, 0.3 + 0.2j)
