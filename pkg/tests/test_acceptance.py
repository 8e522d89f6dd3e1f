"""Corridas de referencia completas. Solo se ejecutan con --runslow."""

import math
import time

import numpy as np
import pytest
from sklearn.metrics import adjusted_rand_score

from ranndy.coherent import coherent_sets, edmd_reference_partition
from ranndy.config import RunConfig
from ranndy.covariance import estimate
from ranndy.features import build_feature_map
from ranndy.graphon_analysis import (
    density_from_features,
    estimate_invariant_density,
    reconstruct,
    relative_l2_error,
)
from ranndy.hyperopt import features, optimize
from ranndy.pipeline import simulate
from ranndy.spectral import solve
from ranndy.systems import BickleyParams, degree_function, grid_points, preset_graphon

pytestmark = pytest.mark.slow


def _fit(system: str, **overrides):
    config = RunConfig.preset(system).with_overrides(**overrides)
    data, _ = simulate(system, config)
    spec = build_feature_map(config, data.dim)
    trace = optimize(spec, config, data)
    omega = trace.final_omega
    cov = estimate(*features(spec, omega, data))
    return config, data, spec, trace, solve(cov, config.n_outputs, config.mode, config.pinv_rel_tol)


def test_ou_spectrum_matches_analytic_values():
    start = time.perf_counter()
    _, _, _, _, result = _fit("ou")
    elapsed = time.perf_counter() - start
    expected = [math.exp(-0.5 * k) for k in range(4)]
    np.testing.assert_allclose(result.values[:4], expected, atol=0.02)
    assert elapsed < 60.0


@pytest.fixture(scope="module")
def graphon_fit():
    start = time.perf_counter()
    fit = _fit("graphon")
    return fit, time.perf_counter() - start


def test_graphon_spectral_gap_and_monotone_training(graphon_fit):
    (_, _, _, trace, result), elapsed = graphon_fit
    assert np.all(np.diff(trace.losses) >= 0)
    assert result.values[2] > 2 * result.values[3]
    assert elapsed < 300.0


def test_graphon_rank_three_reconstruction(graphon_fit):
    (config, data, spec, trace, result), _ = graphon_fit
    grid = grid_points(200)
    graphon = preset_graphon()
    degree = degree_function(graphon, grid)
    phi_hat = density_from_features(spec, trace.final_omega, data.X, grid, config.pinv_rel_tol)
    pi_hat, Z_hat = estimate_invariant_density(grid, phi_hat=phi_hat, degree=degree)
    pi_kde, _ = estimate_invariant_density(grid, samples=data.X, degree=degree)
    assert relative_l2_error(pi_hat, pi_kde) < 0.1
    recon = reconstruct(result, spec, trace.final_omega, pi_hat, Z_hat, grid, 3)
    assert relative_l2_error(recon.g_hat, graphon.g(grid[:, None], grid[None, :])) < 0.15


def test_bickley_partition_matches_edmd_baseline():
    config, data, spec, trace, result = _fit("bickley")
    labels = coherent_sets(spec, trace.final_omega, result, data.X, 9, seed=config.seed).labels
    reference = edmd_reference_partition(data.X, data.Y, 9, seed=config.seed,
                                         periods=(BickleyParams().period, None)).labels
    assert adjusted_rand_score(reference, labels) > 0.8
