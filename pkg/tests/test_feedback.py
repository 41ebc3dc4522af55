import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from squashlight.feedback import (
    FeedbackLoop,
    ResponseSpec,
    UnstableLoopError,
    default_omega_grid,
    gain_from_lambda,
    inloop_spectrum,
    lambda_from_gain,
    loop_transfer,
    stability_check,
)

ATOL = 1e-12


def ideal_loop(g, tau=0.0):
    return FeedbackLoop(g=g, tau=tau, response=ResponseSpec.ideal())


def test_loop_transfer_ideal():
    assert loop_transfer(ideal_loop(-1.0), 3.7) == pytest.approx(-1.0)
    assert loop_transfer(ideal_loop(0.5), 0.0) == pytest.approx(0.5)


def test_loop_transfer_one_pole():
    loop = FeedbackLoop(g=-1.0, tau=0.0, response=ResponseSpec.one_pole(100.0))
    value = loop_transfer(loop, 100.0)
    assert value == pytest.approx(-(1.0 - 1.0j) / 2.0, abs=ATOL)


def test_loop_transfer_delay_phase():
    loop = ideal_loop(1.0, tau=np.pi)
    assert loop_transfer(loop, 1.0) == pytest.approx(-1.0, abs=ATOL)


def test_inloop_spectrum_broadband_value():
    curve = inloop_spectrum(ideal_loop(-1.0), [0.0, 1.0, 5.0])
    assert np.allclose(curve.s_x, 0.25, atol=ATOL)
    assert np.array_equal(curve.s_y, np.ones(3))
    assert np.allclose(curve.uncertainty_product, curve.s_x, atol=ATOL)


def test_inloop_spectrum_one_pole_value():
    loop = FeedbackLoop(g=-1.0, tau=0.0, response=ResponseSpec.one_pole(100.0))
    curve = inloop_spectrum(loop, [100.0])
    assert curve.s_x[0] == pytest.approx(0.4, abs=ATOL)


def test_inloop_spectrum_open_loop():
    curve = inloop_spectrum(ideal_loop(0.0), np.linspace(0, 10, 11))
    assert np.allclose(curve.s_x, 1.0, atol=ATOL)


def test_inloop_spectrum_unstable_loop_error():
    with pytest.raises(UnstableLoopError) as err:
        inloop_spectrum(ideal_loop(1.5), [0.0, 1.0])
    assert err.value.omega in (0.0, 1.0)


def test_stability_examples():
    assert stability_check(ideal_loop(0.99)).stable
    assert stability_check(ideal_loop(0.99)).margin == pytest.approx(0.01, abs=ATOL)
    assert not stability_check(ideal_loop(1.5)).stable
    assert stability_check(ideal_loop(-5.0)).stable


def test_stability_grid_shape():
    grid = default_omega_grid(FeedbackLoop(g=0.1, response=ResponseSpec.one_pole(50.0)))
    assert grid[0] == 0.0
    assert len(grid) == 2002
    assert grid[1] == pytest.approx(1e-3 * 50.0)
    assert grid[-1] == pytest.approx(1e3 * 50.0)


def test_one_pole_response_normalized_at_zero():
    spec = ResponseSpec.one_pole(7.0)
    assert spec.h_tilde(0.0) == pytest.approx(1.0, abs=ATOL)
    with pytest.raises(ValueError):
        ResponseSpec.one_pole(-2.0)
    with pytest.raises(ValueError):
        ResponseSpec(bandwidth=3.0)  # ideal takes no bandwidth


def test_negative_delay_rejected():
    with pytest.raises(ValueError):
        FeedbackLoop(g=0.0, tau=-0.1)


def test_lambda_gain_examples():
    assert lambda_from_gain(-1.0) == -0.5
    assert gain_from_lambda(-0.5) == -1.0
    assert lambda_from_gain(-1e6) == pytest.approx(-0.999999, abs=1e-9)


def test_lambda_gain_domain_errors():
    with pytest.raises(ValueError):
        lambda_from_gain(1.0)
    with pytest.raises(ValueError):
        gain_from_lambda(-1.0)


def test_lambda_gain_round_trip_grid():
    for g in np.linspace(-50.0, 0.999, 1000):
        assert abs(gain_from_lambda(lambda_from_gain(float(g))) - g) < 1e-12


def test_broadband_identity():
    for g in (-1.0, -0.5, 0.5, -3.0, 0.9):
        lam = lambda_from_gain(g)
        assert abs((1.0 - g) ** -2 - (1.0 + 2.0 * lam + lam * lam)) < 1e-12


@given(g=st.floats(min_value=-100.0, max_value=-1e-3))
def test_negative_feedback_squashes(g):
    curve = inloop_spectrum(ideal_loop(g), [0.0, 0.5, 2.0])
    assert np.all(curve.s_x <= 1.0)
    assert np.all(curve.uncertainty_product < 1.0)


def test_zero_frequency_spectrum_matches_closed_form_any_response():
    for response in (ResponseSpec.ideal(), ResponseSpec.one_pole(3.0)):
        loop = FeedbackLoop(g=-0.7, tau=0.0, response=response)
        curve = inloop_spectrum(loop, [0.0])
        assert curve.s_x[0] == pytest.approx((1.0 - loop.g) ** -2, abs=1e-14)
