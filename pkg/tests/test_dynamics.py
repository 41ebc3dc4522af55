import math

import numpy as np
import pytest

from squashlight.dynamics import (
    SteadyStateError,
    decay_rates_2la,
    evolve,
    evolve_rk4,
    short_time_slope,
    steady_state,
    transient_trace,
)
from squashlight.light import Sign, make_classical, make_squashed, make_squeezed_max, vacuum
from squashlight.master import (
    gen_2la_squashed_direct,
    gen_2la_squeezed_direct,
    gen_2la_unified,
    gen_3la_unified,
)
from squashlight.superop import (
    Generator,
    basis_state,
    dissipator,
    left_mult,
    maximally_mixed,
    right_mult,
    atom_ops,
)

rng = np.random.default_rng(5)


def test_steady_state_vacuum_cascade():
    rho = steady_state(gen_3la_unified(vacuum()))
    assert np.allclose(rho, basis_state(3, 0), atol=1e-12)


def test_steady_state_squeezed_population():
    rho = steady_state(gen_3la_unified(make_squeezed_max(0.1, -1)))
    assert rho[2, 2].real == pytest.approx(0.1 / 1.2, abs=1e-10)


def test_steady_state_classical_population():
    rho = steady_state(gen_3la_unified(make_classical(0.1, -0.1)))
    assert rho[2, 2].real == pytest.approx(0.02 / (1.2 * 1.3), abs=1e-10)


def test_steady_state_residual_is_small():
    gen = gen_3la_unified(make_squashed(-0.5, Sign.PLUS))
    rho = steady_state(gen)
    assert np.abs(gen.apply(rho)).max() < 1e-10
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)


def test_steady_state_degenerate_null_space():
    # at optimal squashing the x component stops decaying: two null directions
    with pytest.raises(SteadyStateError, match="degenerate"):
        steady_state(gen_2la_squashed_direct(-1.0))


def test_steady_state_zero_generator_rejected():
    with pytest.raises(SteadyStateError):
        steady_state(dissipator(np.eye(2)))


def test_evolve_zero_time_identity():
    gen = gen_2la_unified(vacuum())
    rho0 = maximally_mixed(2)
    assert np.array_equal(evolve(gen, rho0, 0.0), rho0)


def test_evolve_unit_rate_decay():
    gen = gen_2la_unified(vacuum())
    rho = evolve(gen, basis_state(2, 1), 1.0)
    assert rho[1, 1].real == pytest.approx(math.exp(-1.0), abs=1e-12)


def test_evolve_rejects_negative_time_and_bad_shape():
    gen = gen_2la_unified(vacuum())
    with pytest.raises(ValueError):
        evolve(gen, basis_state(2, 0), -1.0)
    with pytest.raises(ValueError):
        evolve(gen, basis_state(3, 0), 1.0)


def test_evolve_converges_to_steady_state():
    gen = gen_3la_unified(make_squeezed_max(0.1, -1))
    rho = evolve(gen, basis_state(3, 2), 200.0)
    assert np.abs(rho - steady_state(gen)).max() < 1e-8


def test_evolve_semigroup_property():
    gen = gen_3la_unified(make_squashed(-0.4, Sign.PLUS))
    rho0 = basis_state(3, 2)
    two_step = evolve(gen, evolve(gen, rho0, 1.3), 2.2)
    one_step = evolve(gen, rho0, 3.5)
    assert np.abs(two_step - one_step).max() < 1e-10


def test_steady_state_is_fixed_point():
    gen = gen_3la_unified(make_classical(0.2, -0.2))
    rho = steady_state(gen)
    assert np.abs(evolve(gen, rho, 10.0) - rho).max() < 1e-8


@pytest.mark.parametrize("t", [0.3, 1.0, 10.0, 50.0])
def test_rk4_agrees_with_expm(t):
    gen = gen_3la_unified(make_squashed(-2 * math.sqrt(0.1), Sign.PLUS))
    rho0 = basis_state(3, 2)
    assert np.abs(evolve_rk4(gen, rho0, t) - evolve(gen, rho0, t)).max() < 1e-8


def test_rk4_zero_time():
    gen = gen_2la_unified(vacuum())
    assert np.array_equal(evolve_rk4(gen, basis_state(2, 1), 0.0), basis_state(2, 1))


def test_transient_trace_observables():
    gen = gen_3la_unified(make_squeezed_max(0.05, -1))
    times = np.linspace(0.0, 5.0, 26)
    trace = transient_trace(gen, basis_state(3, 0), times)
    assert set(trace.observables) == {"rho11", "rho22", "rho33", "re_rho13"}
    assert trace.observables["rho11"][0] == pytest.approx(1.0, abs=1e-14)
    populations = sum(trace.observables[f"rho{i}{i}"] for i in (1, 2, 3))
    assert np.abs(populations - 1.0).max() < 1e-10


def test_transient_trace_rejects_bad_grid():
    gen = gen_2la_unified(vacuum())
    with pytest.raises(ValueError, match="strictly increasing"):
        transient_trace(gen, basis_state(2, 0), [0.0, 1.0, 1.0])
    with pytest.raises(ValueError, match="nonnegative"):
        transient_trace(gen, basis_state(2, 0), [-1.0, 1.0])


def test_short_time_slope_examples():
    squashed = gen_3la_unified(make_squashed(-0.2, Sign.PLUS))
    down = short_time_slope(squashed, basis_state(3, 2), (1, 3))
    assert down.real == pytest.approx(-0.095, abs=1e-14)
    up = short_time_slope(squashed, basis_state(3, 0), (1, 3))
    assert up.real == pytest.approx(0.005, abs=1e-14)
    squeezed = gen_3la_unified(make_squeezed_max(0.01, -1))
    slope = short_time_slope(squeezed, basis_state(3, 2), (1, 3))
    # frozen: -sqrt(0.01 * 1.01) / 2 at 40-digit precision
    assert slope.real == pytest.approx(-0.050249378105604451, abs=1e-12)


def test_short_time_slope_matches_finite_differences():
    gen = gen_3la_unified(make_squashed(-0.2, Sign.PLUS))
    rho0 = basis_state(3, 2)
    exact = short_time_slope(gen, rho0, (1, 3)).real
    h1, h2 = 1e-4, 1e-5
    s1 = (evolve(gen, rho0, h1)[0, 2].real - rho0[0, 2].real) / h1
    s2 = (evolve(gen, rho0, h2)[0, 2].real - rho0[0, 2].real) / h2
    richardson = (h1 * s2 - h2 * s1) / (h1 - h2)
    assert abs(richardson - exact) < 1e-6


def test_short_time_slope_index_range():
    gen = gen_2la_unified(vacuum())
    with pytest.raises(IndexError):
        short_time_slope(gen, basis_state(2, 0), (1, 3))


def test_decay_rates_optimal_squashing():
    rates = decay_rates_2la(gen_2la_squashed_direct(-1.0))
    assert rates.gamma_x == pytest.approx(0.0, abs=1e-12)
    assert rates.gamma_y == pytest.approx(0.5, abs=1e-12)
    assert rates.gamma_z == pytest.approx(0.5, abs=1e-12)
    assert rates.c == pytest.approx(0.0, abs=1e-12)


def test_decay_rates_vacuum():
    rates = decay_rates_2la(gen_2la_unified(vacuum()))
    assert (rates.gamma_x, rates.gamma_y, rates.gamma_z, rates.c) == \
        pytest.approx((0.5, 0.5, 1.0, 1.0), abs=1e-14)


def test_decay_rates_stretched_squeezing():
    rates = decay_rates_2la(gen_2la_squeezed_direct(2.0))
    assert rates.gamma_x == pytest.approx(1.0, abs=1e-12)
    assert rates.gamma_y == pytest.approx(0.25, abs=1e-12)
    assert rates.gamma_z == pytest.approx(1.25, abs=1e-12)
    assert rates.c == pytest.approx(1.0, abs=1e-12)


def test_decay_rates_detect_cross_coupling():
    base = gen_2la_unified(vacuum())
    sz = atom_ops(2).sigma_z
    hamiltonian_part = -1j * (left_mult(sz) - right_mult(sz))
    malformed = Generator(2, base.matrix + hamiltonian_part, "decay plus detuning drive")
    with pytest.raises(ValueError, match="do not close"):
        decay_rates_2la(malformed)


def test_decay_rates_rejects_dim3():
    with pytest.raises(ValueError):
        decay_rates_2la(gen_3la_unified(vacuum()))
