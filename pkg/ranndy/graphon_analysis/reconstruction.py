"""Reconstrucción del grafón y de la densidad de transición.

Con autofunciones de Koopman φ_i (ortonormales en L²_π) y φ̂_i = π·φ_i:

    p(x, y) ≈ Σ λ_i φ_i(x) φ̂_i(y)
    g(x, y) ≈ Z Σ λ_i φ̂_i(x) φ̂_i(y)

Todas las integrales se aproximan sobre la malla dada con pesos de celda.
"""

import logging

import numpy as np
from scipy import linalg, stats

from ..errors import ContractError, DimensionError, NotADensityError, RankError
from ..features import evaluate
from ..models import FeatureMapSpec, GraphonReconstruction, OmegaVector, SpectralResult
from ..spectral import evaluate_functions

# fracción de masa negativa tolerada como ruido de cuadratura
NEGATIVE_MASS_TOL = 0.1


def quadrature_weights(grid) -> np.ndarray:
    """Ancho de la celda de [0, 1] que rodea a cada punto de la malla."""
    grid = np.asarray(grid, dtype=np.float64).ravel()
    if grid.size == 0:
        raise ContractError("La malla está vacía.")
    edges = np.concatenate([[0.0], 0.5 * (grid[1:] + grid[:-1]), [1.0]])
    return np.diff(edges)


def density_from_samples(samples, grid) -> np.ndarray:
    """Estimación por núcleo gaussiano, reflejada en 0 y 1, sin normalizar."""
    samples = np.asarray(samples, dtype=np.float64).ravel()
    grid = np.asarray(grid, dtype=np.float64).ravel()
    if samples.size < 2:
        raise ContractError(f"Se necesitan al menos 2 muestras, hay {samples.size}.")
    kde = stats.gaussian_kde(samples)
    return kde(grid) + kde(-grid) + kde(2.0 - grid)


def density_from_features(spec: FeatureMapSpec, omega: OmegaVector, samples, grid,
                          rel_tol: float = 1e-8) -> np.ndarray:
    """Proyección L² de π sobre el diccionario más la constante: c = G⁺ E_π[ψ], π̂ = ψᵀc.

    G = ∫ ψψᵀ dx se aproxima en la malla; E_π[ψ] con el promedio sobre las
    muestras del paseo estacionario. Con la constante en el diccionario, ∫π̂ = 1
    y una π uniforme se representa sin error de truncamiento.
    """
    samples = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    grid = np.asarray(grid, dtype=np.float64).ravel()
    psi_grid = np.vstack([np.ones(grid.size), evaluate(spec, omega, grid.reshape(1, -1))])
    w = quadrature_weights(grid)
    G = (psi_grid * w) @ psi_grid.T
    b = np.concatenate([[1.0], evaluate(spec, omega, samples).mean(axis=1)])
    c = linalg.pinvh(0.5 * (G + G.T), rtol=rel_tol) @ b
    return psi_grid.T @ c


def estimate_invariant_density(grid, phi_hat=None, samples=None, degree=None) -> tuple[np.ndarray, float]:
    """Devuelve (π̂, Ẑ) en la malla.

    π̂ sale de la primera autofunción de Perron-Frobenius `phi_hat` (valores en
    la malla, ver `density_from_features`) o, si no se da, de la estimación por
    núcleo de `samples`, que sirve de contraste. Se fija
    el signo, se recorta el ruido negativo y se normaliza a integral 1. Ẑ es la
    integral del grado `degree`; sin él se toma Ẑ = 1.
    """
    grid = np.asarray(grid, dtype=np.float64).ravel()
    w = quadrature_weights(grid)
    if phi_hat is None:
        if samples is None:
            raise ContractError("Se necesita phi_hat o samples para estimar la densidad invariante.")
        phi_hat = density_from_samples(samples, grid)
    values = np.asarray(phi_hat, dtype=np.float64).ravel()
    if values.shape != grid.shape:
        raise DimensionError(f"phi_hat tiene {values.size} valores pero la malla {grid.size} puntos.")

    if np.sum(w * values) < 0:
        values = -values
    total_mass = np.sum(w * np.abs(values))
    if not total_mass > 0:
        raise NotADensityError("La autofunción es idénticamente nula en la malla.")
    negative_mass = np.sum(w * np.clip(-values, 0.0, None)) / total_mass
    if negative_mass > NEGATIVE_MASS_TOL:
        raise NotADensityError(
            f"La autofunción cambia de signo: {negative_mass:.1%} de la masa es negativa."
        )
    pi_hat = np.clip(values, 0.0, None)
    pi_hat /= np.sum(w * pi_hat)

    if degree is None:
        logging.warning("No se conoce el grado del grafón; se usa Z = 1.")
        Z_hat = 1.0
    else:
        Z_hat = float(np.sum(w * np.asarray(degree, dtype=np.float64).ravel()))
        if not Z_hat > 0:
            raise NotADensityError(f"La integral del grado no es positiva: Z={Z_hat}")
    return pi_hat, Z_hat


def perron_frobenius_functions(functions, pi_hat) -> np.ndarray:
    """φ̂_i = π̂·φ_i, fila a fila."""
    functions = np.atleast_2d(np.asarray(functions, dtype=np.float64))
    return functions * np.asarray(pi_hat, dtype=np.float64).ravel()[None, :]


def expand(values, phi, pi_hat, Z_hat: float, rank: int, grid=None) -> GraphonReconstruction:
    """Desarrollos de rango `rank` de p y g a partir de valores en la malla."""
    values = np.asarray(values, dtype=np.float64).ravel()
    phi = np.atleast_2d(np.asarray(phi, dtype=np.float64))
    pi_hat = np.asarray(pi_hat, dtype=np.float64).ravel()
    if rank < 0 or rank > min(values.size, phi.shape[0]):
        raise RankError(rank, min(values.size, phi.shape[0]), what="la descomposición")
    size = pi_hat.size
    grid = np.arange(size, dtype=np.float64) if grid is None else np.asarray(grid, dtype=np.float64).ravel()

    lam = values[:rank]
    phi_r = phi[:rank]
    phi_hat = perron_frobenius_functions(phi_r, pi_hat)
    if rank == 0:
        p_hat = np.zeros((size, size))
        g_hat = np.zeros((size, size))
    else:
        p_hat = (phi_r.T * lam) @ phi_hat
        g_hat = Z_hat * ((phi_hat.T * lam) @ phi_hat)
    return GraphonReconstruction(rank=rank, grid=grid, p_hat=p_hat, g_hat=g_hat, pi_hat=pi_hat, Z_hat=Z_hat)


def reconstruct(result: SpectralResult, spec: FeatureMapSpec, omega: OmegaVector, pi_hat, Z_hat: float,
                grid, rank: int) -> GraphonReconstruction:
    if rank > result.n:
        raise RankError(rank, result.n, what="la descomposición")
    grid = np.asarray(grid, dtype=np.float64).ravel()
    phi = evaluate_functions(spec, omega, result, grid.reshape(1, -1))
    logging.info(f"Reconstruyendo el grafón con rango {rank} en una malla de {grid.size} puntos.")
    return expand(result.values, phi, pi_hat, Z_hat, rank, grid)


def relative_l2_error(estimate, reference) -> float:
    reference = np.asarray(reference, dtype=np.float64)
    norm = np.linalg.norm(reference)
    if not norm > 0:
        raise ContractError("La referencia es nula; el error relativo no está definido.")
    return float(np.linalg.norm(np.asarray(estimate, dtype=np.float64) - reference) / norm)
