"""Referencia EDMD con un diccionario fijo de gaussianas sobre una malla.

Sirve de oráculo para comparar la partición obtenida con el mapa aleatorio.
"""

import logging
from typing import Callable, Sequence

import numpy as np

from ..covariance import estimate
from ..errors import ContractError
from ..models import ClusterAssignment
from ..spectral import solve_non_self_adjoint
from .kmeans import kmeans


def gaussian_dictionary(centers, bandwidth,
                        periods: Sequence[float | None] | None = None) -> Callable[[np.ndarray], np.ndarray]:
    """ψ_j(x) = exp(−½ Σ_i (x_i − c_ij)² / h_i²).

    `bandwidth` es un escalar común o un h_i por eje; `periods` marca
    coordenadas periódicas.
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    dim = centers.shape[0]
    widths = np.asarray(bandwidth, dtype=np.float64).ravel()
    if widths.size == 1:
        widths = np.full(dim, widths[0])
    if widths.size != dim:
        raise ContractError(f"Se esperaban 1 o {dim} anchos de banda, se recibieron {widths.size}.")
    if not np.all(widths > 0):
        raise ContractError(f"El ancho de banda debe ser positivo, se recibió {bandwidth}.")
    periods = tuple(periods) if periods is not None else (None,) * dim

    def psi(X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        d2 = np.zeros((centers.shape[1], X.shape[1]))
        for i, period in enumerate(periods):
            diff = np.abs(centers[i][:, None] - X[i][None, :])
            if period:
                diff = np.mod(diff, period)
                diff = np.minimum(diff, period - diff)
            d2 += (diff / widths[i]) ** 2
        return np.exp(-0.5 * d2)

    return psi


def grid_centers(X, shape: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Centros en una malla regular que cubre los datos y el espaciado de cada eje.

    Un eje con un solo punto toma el mayor espaciado de los demás (1 si no hay).
    """
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    axes = [np.linspace(lo, hi, n) for lo, hi, n in zip(X.min(axis=1), X.max(axis=1), shape)]
    mesh = np.meshgrid(*axes, indexing="ij")
    steps = [a[1] - a[0] if a.size > 1 else 0.0 for a in axes]
    fallback = max((s for s in steps if s > 0), default=1.0)
    spacing = np.array([s if s > 0 else fallback for s in steps])
    return np.stack([c.ravel() for c in mesh]), spacing


def edmd_reference_partition(X, Y, k: int, n: int | None = None, seed: int = 0,
                             grid_shape: Sequence[int] = (25, 10), bandwidth=None,
                             periods: Sequence[float | None] | None = None, restarts: int = 10,
                             rel_tol: float = 1e-8) -> ClusterAssignment:
    """Partición de referencia: gaussianas fijas con ancho igual al espaciado de cada eje."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    n = k if n is None else n
    centers, spacing = grid_centers(np.hstack([X, Y]), grid_shape)
    psi = gaussian_dictionary(centers, spacing if bandwidth is None else bandwidth, periods)
    cov = estimate(psi(X), psi(Y))
    result = solve_non_self_adjoint(cov, n, rel_tol)
    logging.info(
        f"EDMD de referencia: {centers.shape[1]} gaussianas, valores singulares "
        f"{np.array2string(result.values, precision=4)}"
    )
    embedding = (result.W_o.T @ psi(X)).T
    return kmeans(embedding, k, seed, restarts)
