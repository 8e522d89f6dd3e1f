import math

import numpy as np
import pytest
from sklearn.metrics import adjusted_rand_score

from ranndy.coherent import coherent_sets, gaussian_dictionary, grid_centers, kmeans, singular_embedding
from ranndy.config import build_config
from ranndy.covariance import estimate
from ranndy.errors import ContractError, DegenerateInputError, ModeError
from ranndy.features import build_feature_map, evaluate
from ranndy.models import OmegaVector
from ranndy.spectral import solve
from ranndy.systems import BickleyParams, bickley_trajectories


def _clouds(seed=0, per_cloud=50):
    rng = np.random.default_rng(seed)
    means = np.array([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]])
    points = np.vstack([mu + 0.3 * rng.standard_normal((per_cloud, 2)) for mu in means])
    return points, np.repeat(np.arange(3), per_cloud)


def test_separated_clouds_are_recovered():
    points, truth = _clouds()
    result = kmeans(points, 3, seed=1)
    assert adjusted_rand_score(truth, result.labels) == 1.0
    assert result.k == 3


def test_single_cluster_is_the_mean():
    points, _ = _clouds()
    result = kmeans(points, 1, seed=0)
    assert not result.labels.any()
    np.testing.assert_allclose(result.centers[0], points.mean(axis=0))


def test_one_cluster_per_point():
    points = np.arange(12.0).reshape(6, 2)
    result = kmeans(points, 6, seed=0)
    assert sorted(result.labels) == list(range(6))
    assert result.inertia == 0.0


def test_too_few_distinct_points():
    with pytest.raises(DegenerateInputError):
        kmeans(np.ones((5, 2)), 2, seed=0)


@pytest.mark.parametrize("k,restarts", [(0, 1), (2, 0)])
def test_arguments_checked(k, restarts):
    points, _ = _clouds()
    with pytest.raises(ContractError):
        kmeans(points, k, seed=0, restarts=restarts)


def test_inertia_history_never_increases():
    points = np.random.default_rng(3).standard_normal((300, 3))
    result = kmeans(points, 5, seed=2)
    history = np.array(result.inertia_history)
    assert np.all(np.diff(history) <= 1e-9 * history[0])
    assert history[-1] == result.inertia


def test_inertia_matches_assignment():
    points = np.random.default_rng(4).standard_normal((200, 2))
    result = kmeans(points, 4, seed=5)
    recomputed = np.sum((points - result.centers[result.labels]) ** 2)
    assert result.inertia == pytest.approx(recomputed, rel=1e-10)
    assert np.all(np.bincount(result.labels, minlength=4) > 0)


def test_vector_input_is_a_column():
    result = kmeans(np.array([0.0, 0.1, 5.0, 5.1]), 2, seed=0)
    assert result.centers.shape == (2, 1)
    assert result.labels[0] == result.labels[1] != result.labels[2]


def test_seeded_and_independent_of_workers():
    points = np.random.default_rng(6).standard_normal((400, 2))
    a = kmeans(points, 6, seed=9, workers=1)
    b = kmeans(points, 6, seed=9, workers=4)
    assert np.array_equal(a.labels, b.labels)
    assert a.inertia == b.inertia


def _embedding_setup(mode):
    rng = np.random.default_rng(7)
    X = rng.uniform(-1, 1, (2, 400))
    Y = 0.9 * X + 0.05 * rng.standard_normal((2, 400))
    spec = build_feature_map(build_config({"seed": 1, "layer_sizes": [15], "n_outputs": 3}), 2)
    omega = OmegaVector(1.0, 1.0)
    result = solve(estimate(evaluate(spec, omega, X), evaluate(spec, omega, Y)), 3, mode)
    return spec, omega, result, X


def test_coherent_sets_need_singular_functions():
    spec, omega, result, X = _embedding_setup("self_adjoint")
    with pytest.raises(ModeError):
        coherent_sets(spec, omega, result, X, 2)


def test_weighted_embedding():
    spec, omega, result, X = _embedding_setup("non_self_adjoint")
    plain = singular_embedding(spec, omega, result, X)
    weighted = singular_embedding(spec, omega, result, X, weight_by_values=True)
    assert plain.shape == (400, 3)
    np.testing.assert_allclose(weighted, plain * result.values)
    labels = coherent_sets(spec, omega, result, X, 3, seed=4).labels
    assert labels.shape == (400,)


def test_zonal_flow_splits_into_bands():
    params = BickleyParams(A1=0.0, A2=0.0, A3=0.0)
    saves = bickley_trajectories(3000, 0.0, 40.0, 2, seed=5, params=params, half_height=1.0)
    X, Y = saves[0], saves[-1]
    spec = build_feature_map(build_config({"seed": 2, "layer_sizes": [30], "n_outputs": 2}), 2)
    omega = OmegaVector(0.3, 0.3)
    result = solve(estimate(evaluate(spec, omega, X), evaluate(spec, omega, Y)), 2, "non_self_adjoint")
    labels = coherent_sets(spec, omega, result, X, 2, seed=0).labels

    groups = np.array_split(labels[np.argsort(X[1])], 20)
    purity = [np.bincount(g, minlength=2).max() / g.size for g in groups]
    assert np.mean(purity) > 0.85


def test_gaussian_dictionary_values():
    psi = gaussian_dictionary(np.array([[0.0, 1.0]]), 1.0)
    np.testing.assert_allclose(psi(np.array([[0.0]])).ravel(), [1.0, math.exp(-0.5)])
    periodic = gaussian_dictionary(np.array([[0.5]]), 1.0, periods=(10.0,))
    assert periodic(np.array([[9.5]]))[0, 0] == pytest.approx(math.exp(-0.5))
    with pytest.raises(ContractError):
        gaussian_dictionary(np.zeros((1, 1)), 0.0)


def test_grid_centers_cover_data():
    X = np.array([[0.0, 20.0, 5.0], [-3.0, 3.0, 0.0]])
    centers, spacing = grid_centers(X, (25, 10))
    assert centers.shape == (2, 250)
    np.testing.assert_allclose(spacing, [20.0 / 24, 6.0 / 9])
    assert centers[0].min() == 0.0 and centers[1].max() == 3.0


def test_gaussian_dictionary_per_axis_width():
    psi = gaussian_dictionary(np.zeros((2, 1)), [2.0, 0.5])
    value = psi(np.array([[2.0], [0.5]]))[0, 0]
    assert value == pytest.approx(math.exp(-1.0))
    with pytest.raises(ContractError):
        gaussian_dictionary(np.zeros((2, 1)), [1.0, 1.0, 1.0])


def test_flat_axis_borrows_spacing():
    X = np.array([[0.0, 4.0, 2.0], [1.0, 1.0, 1.0]])
    _, spacing = grid_centers(X, (5, 3))
    np.testing.assert_allclose(spacing, [1.0, 1.0])
