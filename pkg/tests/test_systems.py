import math

import numpy as np
import pytest
from scipy import integrate, stats

from ranndy.errors import AbsorbingStateError, BlowUpError, ConfigError, ContractError
from ranndy.models import SdeSpec
from ranndy.systems import (
    BickleyParams,
    bickley_trajectories,
    bickley_velocity,
    block_graphon,
    constant_graphon,
    degree_function,
    double_well,
    double_well_potential,
    euler_maruyama,
    gaussian_sampler,
    graphon_walk,
    grid_points,
    initial_positions,
    ornstein_uhlenbeck,
    params_from_config,
    preset_graphon,
    uniform_sampler,
)
from ranndy.systems.sde import BLOCK_SIZE


def _periodic_diff(a, b, period):
    return np.mod(a - b + 0.5 * period, period) - 0.5 * period


# --- Grafones ---

def test_preset_graphon_values():
    g = preset_graphon().g
    assert g(0.2, 0.2) == pytest.approx(0.2, abs=1e-4)
    assert g(0.5, 0.5) == pytest.approx(0.1, abs=1e-3)
    assert g(0.8, 0.8) == pytest.approx(0.2, abs=1e-4)


def test_preset_graphon_symmetric_and_bounded():
    x = grid_points(300)
    G = preset_graphon().g(x[:, None], x[None, :])
    np.testing.assert_allclose(G, G.T, rtol=0, atol=1e-15)
    assert G.min() >= 0.0
    assert G.max() <= 0.30001


def test_grid_points_are_midpoints():
    np.testing.assert_allclose(grid_points(4), [0.125, 0.375, 0.625, 0.875])


def test_walk_length_and_range():
    walk = graphon_walk(preset_graphon(), 500, 0.5, seed=1, burn_in=10)
    assert walk.shape == (501,)
    assert np.all((walk >= 0) & (walk <= 1))


def test_walk_is_seeded():
    spec = preset_graphon()
    assert np.array_equal(graphon_walk(spec, 200, 0.5, seed=4), graphon_walk(spec, 200, 0.5, seed=4))
    assert not np.array_equal(graphon_walk(spec, 200, 0.5, seed=4), graphon_walk(spec, 200, 0.5, seed=5))


def test_constant_graphon_walk_is_uniform():
    walk = graphon_walk(constant_graphon(), 20_000, 0.5, seed=7)
    counts, _ = np.histogram(walk[1:], bins=10, range=(0, 1))
    assert stats.chisquare(counts).pvalue > 1e-3


def test_block_walk_stays_in_its_block():
    walk = graphon_walk(block_graphon(), 2000, 0.25, seed=3)
    assert walk.max() <= 0.5


def test_absorbing_state():
    with pytest.raises(AbsorbingStateError) as info:
        graphon_walk(block_graphon(levels=(1.0, 0.0)), 10, 0.75, seed=0)
    assert info.value.state == 0.75


@pytest.mark.parametrize("steps,x0", [(0, 0.5), (10, 1.5), (10, -0.1)])
def test_walk_arguments_checked(steps, x0):
    with pytest.raises(ContractError):
        graphon_walk(constant_graphon(), steps, x0, seed=0)


def test_block_degree():
    d = degree_function(block_graphon(levels=(2.0, 1.0), off=0.5), grid=[0.25, 0.75])
    np.testing.assert_allclose(d, [1.25, 0.75], atol=1e-12)


def test_walk_transitions_are_reversible():
    walk = graphon_walk(preset_graphon(), 50_000, 0.5, seed=11, burn_in=100)
    bins = np.minimum((walk * 5).astype(int), 4)
    counts = np.zeros((5, 5))
    np.add.at(counts, (bins[:-1], bins[1:]), 1.0)
    flows = counts / (walk.size - 1)
    assert np.max(np.abs(flows - flows.T)) < 5e-3


# --- Chorro de Bickley ---

def test_bickley_constants():
    p = BickleyParams()
    assert p.sigma2 == pytest.approx(2 * p.sigma1)
    assert p.sigma1 == pytest.approx(0.5 * p.k(2) * (p.c2 - p.c3))
    assert p.period == pytest.approx(math.pi * 6.371)


def test_velocity_is_periodic_in_x():
    params = BickleyParams()
    x = np.linspace(0.0, params.period, 37)
    y = np.linspace(-3.0, 3.0, 37)
    np.testing.assert_allclose(bickley_velocity(x + params.period, y, 1.7, params),
                               bickley_velocity(x, y, 1.7, params), atol=1e-10)
    # sin ondas viajeras quedan tres pares de vórtices por período
    steady = BickleyParams(A1=0.0, A2=0.0)
    np.testing.assert_allclose(bickley_velocity(x + params.period / 3.0, y, 0.0, steady),
                               bickley_velocity(x, y, 0.0, steady), atol=1e-10)


def test_zero_amplitude_is_zonal_shear():
    params = BickleyParams(A1=0.0, A2=0.0, A3=0.0)
    saves = bickley_trajectories(100, 0.0, 5.0, 2, seed=2, params=params)
    x0, y0 = saves[0]
    x1, y1 = saves[1]
    assert np.array_equal(y0, y1)
    sech2 = 1.0 / np.cosh(y0 / params.L) ** 2
    expected = x0 + (-params.c3 + params.U0 * sech2) * 5.0
    assert np.max(np.abs(_periodic_diff(x1, expected, params.period))) < 1e-8


def test_bickley_shapes_and_domain():
    saves = bickley_trajectories(200, 0.0, 10.0, 3, seed=1)
    assert saves.shape == (3, 2, 200)
    assert np.all(np.isfinite(saves))
    period = BickleyParams().period
    assert np.all((saves[:, 0] >= 0) & (saves[:, 0] < period))
    assert np.all(np.abs(saves[0, 1]) <= 4.0)


def test_bickley_is_seeded():
    a = bickley_trajectories(50, 0.0, 2.0, 2, seed=9)
    assert np.array_equal(a, bickley_trajectories(50, 0.0, 2.0, 2, seed=9))
    assert not np.array_equal(a, bickley_trajectories(50, 0.0, 2.0, 2, seed=10))


def test_rk4_converges_at_fourth_order():
    period = BickleyParams().period
    runs = [bickley_trajectories(50, 0.0, 2.0, 2, seed=3, step=h)[-1] for h in (0.1, 0.05, 0.025)]
    reference = runs[-1]

    def error(run):
        dx = _periodic_diff(run[0], reference[0], period)
        return max(np.max(np.abs(dx)), np.max(np.abs(run[1] - reference[1])))

    assert error(runs[0]) / error(runs[1]) > 8.0


def test_rk4_halving_agrees_over_one_step():
    period = BickleyParams().period
    coarse = bickley_trajectories(500, 0.0, 0.1, 2, seed=6, step=0.1)[-1]
    fine = bickley_trajectories(500, 0.0, 0.1, 2, seed=6, step=0.05)[-1]
    dx = _periodic_diff(coarse[0], fine[0], period)
    assert max(np.max(np.abs(dx)), np.max(np.abs(coarse[1] - fine[1]))) < 1e-6


def test_initial_positions_cover_one_period():
    params = BickleyParams()
    x, y = initial_positions(20_000, 3, params.period)
    assert x.min() >= 0.0 and x.max() < params.period
    assert x.max() > 20.0
    assert np.abs(y).max() <= 4.0


def test_bickley_params_from_config():
    params = params_from_config({"U0": 6.0, "L": 2.0, "step": 0.1})
    assert params.U0 == 6.0 and params.L == 2.0
    assert params.r0 == BickleyParams().r0
    with pytest.raises(ConfigError):
        params_from_config({"L": 0.0})


def test_bickley_time_order_checked():
    with pytest.raises(ContractError):
        bickley_trajectories(10, 5.0, 5.0, 2, seed=0)


# --- Euler-Maruyama ---

def test_frozen_dynamics():
    spec = SdeSpec(drift=lambda x: np.zeros_like(x), diffusion=lambda x: np.zeros((1, 1)), dt=0.1, lag=1.0)
    data = euler_maruyama(spec, 100, gaussian_sampler(), seed=0)
    assert np.array_equal(data.X, data.Y)


def test_ou_autocorrelation():
    data = euler_maruyama(ornstein_uhlenbeck(lag=0.5), 100_000, gaussian_sampler(), seed=12)
    rho = np.corrcoef(data.X[0], data.Y[0])[0, 1]
    assert abs(rho - math.exp(-0.5)) < 0.01
    assert data.lag == 0.5
    assert data.system_label == "ou"


def test_single_block_matches_plain_euler():
    spec = ornstein_uhlenbeck(dt=0.01, lag=0.1)
    data = euler_maruyama(spec, 30, gaussian_sampler(), seed=5)
    rng = np.random.default_rng(np.random.SeedSequence(5).spawn(1)[0])
    x = rng.standard_normal((1, 30))
    np.testing.assert_array_equal(data.X, x)
    for _ in range(10):
        noise = rng.standard_normal(x.shape)
        x = x + (-x) * 0.01 + math.sqrt(2.0) * noise * math.sqrt(0.01)
    np.testing.assert_allclose(data.Y, x, rtol=1e-13, atol=1e-15)


def test_worker_count_does_not_change_result():
    spec = ornstein_uhlenbeck(dt=0.05, lag=0.1)
    m = 2 * BLOCK_SIZE + 10
    a = euler_maruyama(spec, m, gaussian_sampler(), seed=8, workers=1)
    b = euler_maruyama(spec, m, gaussian_sampler(), seed=8, workers=3)
    assert np.array_equal(a.X, b.X)
    assert np.array_equal(a.Y, b.Y)


def test_blow_up_is_reported():
    spec = SdeSpec(drift=lambda x: 1e3 * x ** 3, diffusion=lambda x: np.zeros((1, 1)), dt=0.1, lag=2.0)
    with np.errstate(over="ignore", invalid="ignore"):
        with pytest.raises(BlowUpError) as info:
            euler_maruyama(spec, 10, uniform_sampler(5.0, 10.0), seed=0)
    assert info.value.block == 0


def test_double_well_is_bimodal():
    data = euler_maruyama(double_well(lag=1.0), 20_000, uniform_sampler(-2.0, 2.0), seed=4)
    y = data.Y[0]
    near_zero = np.sum(np.abs(y) < 0.2)
    assert near_zero < 0.7 * np.sum(np.abs(y - 1.0) < 0.2)
    assert near_zero < 0.7 * np.sum(np.abs(y + 1.0) < 0.2)


def test_double_well_reaches_boltzmann_density():
    # tras un lag largo las muestras siguen e^{−βV}/Z con β = 1
    data = euler_maruyama(double_well(lag=10.0), 20_000, uniform_sampler(-2.0, 2.0), seed=8)
    density, edges = np.histogram(data.Y[0], bins=20, range=(-2.0, 2.0), density=True)
    Z, _ = integrate.quad(lambda x: math.exp(-double_well_potential(x)), -3.0, 3.0)
    expected = [
        integrate.quad(lambda x: math.exp(-double_well_potential(x)), a, b)[0] / (Z * (b - a))
        for a, b in zip(edges[:-1], edges[1:])
    ]
    assert np.max(np.abs(density - expected)) < 0.05


def test_lag_must_be_a_multiple_of_dt():
    with pytest.raises(ContractError):
        euler_maruyama(ornstein_uhlenbeck(dt=0.3, lag=0.5), 10, gaussian_sampler(), seed=0)


def test_needs_two_trajectories():
    with pytest.raises(ContractError):
        euler_maruyama(ornstein_uhlenbeck(), 1, gaussian_sampler(), seed=0)
