import numpy as np
import pytest

from ranndy.covariance import effective_rank, estimate, inverse_sqrt, pseudo_inverse
from ranndy.errors import ContractError, DimensionError


def _random_psd(rng, n, rank):
    B = rng.standard_normal((n, rank))
    return B @ B.T


def test_constant_feature():
    cov = estimate(np.ones((1, 6)), np.ones((1, 6)))
    for C in (cov.C00, cov.C01, cov.C10, cov.C11):
        np.testing.assert_array_equal(C, [[1.0]])
    assert cov.m_samples == 6


def test_hand_computed_pair():
    cov = estimate(np.array([[1.0, -1.0]]), np.array([[1.0, 1.0]]))
    np.testing.assert_array_equal(cov.C00, [[1.0]])
    np.testing.assert_array_equal(cov.C01, [[0.0]])


def test_c10_is_transpose():
    rng = np.random.default_rng(0)
    cov = estimate(rng.standard_normal((4, 30)), rng.standard_normal((4, 30)))
    assert np.array_equal(cov.C10, cov.C01.T)
    assert np.array_equal(cov.C00, cov.C00.T)
    assert np.array_equal(cov.C11, cov.C11.T)


def test_shape_errors():
    with pytest.raises(DimensionError):
        estimate(np.ones((2, 5)), np.ones((3, 5)))
    with pytest.raises(DimensionError):
        estimate(np.ones((2, 1)), np.ones((2, 1)))


def test_scaling_and_permutation():
    rng = np.random.default_rng(1)
    psi0, psi1 = rng.standard_normal((3, 40)), rng.standard_normal((3, 40))
    base = estimate(psi0, psi1)
    np.testing.assert_allclose(estimate(2.5 * psi0, psi1).C01, 2.5 * base.C01, rtol=1e-12)
    perm = rng.permutation(40)
    shuffled = estimate(psi0[:, perm], psi1[:, perm])
    np.testing.assert_allclose(shuffled.C00, base.C00, rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(shuffled.C01, base.C01, rtol=1e-12, atol=1e-14)


def test_pinv_identity_and_rank_deficient():
    np.testing.assert_allclose(pseudo_inverse(np.eye(3)), np.eye(3), atol=1e-14)
    np.testing.assert_allclose(pseudo_inverse(np.diag([4.0, 0.0]), 1e-8), np.diag([0.25, 0.0]), atol=1e-14)


def test_pinv_of_zero_matrix():
    assert not pseudo_inverse(np.zeros((3, 3))).any()


def test_moore_penrose_identities():
    rng = np.random.default_rng(2)
    for rank in (1, 3, 6):
        M = _random_psd(rng, 6, rank)
        P = pseudo_inverse(M)
        scale = np.linalg.norm(M)
        assert np.linalg.norm(M @ P @ M - M) <= 1e-9 * scale
        assert np.linalg.norm(P @ M @ P - P) <= 1e-9 * np.linalg.norm(P)
        assert np.linalg.norm((M @ P).T - M @ P) <= 1e-9
        assert np.linalg.norm((P @ M).T - P @ M) <= 1e-9


def test_asymmetric_input_rejected():
    with pytest.raises(ContractError):
        pseudo_inverse(np.array([[1.0, 0.5], [0.0, 1.0]]))


def test_effective_rank_and_whitening():
    rng = np.random.default_rng(3)
    M = _random_psd(rng, 7, 3)
    assert effective_rank(M) == 3
    T = inverse_sqrt(M)
    assert T.shape == (7, 3)
    np.testing.assert_allclose(T.T @ M @ T, np.eye(3), atol=1e-8)
