"""Estimadores empíricos de covarianza y pseudoinversa truncada.

Los momentos son crudos (sin centrar): la función constante vive en el
diccionario y es la autofunción de λ = 1.
"""

import numpy as np
from scipy import linalg

from ..errors import ContractError, DimensionError
from ..models import CovarianceSet

SYMMETRY_TOL = 1e-8


def _symmetrize(C: np.ndarray) -> np.ndarray:
    return 0.5 * (C + C.T)


def estimate(psi0, psi1) -> CovarianceSet:
    """Ĉ00 = Ψ0Ψ0ᵀ/m, Ĉ01 = Ψ0Ψ1ᵀ/m, Ĉ10 = Ĉ01ᵀ, Ĉ11 = Ψ1Ψ1ᵀ/m."""
    psi0 = np.atleast_2d(np.asarray(psi0, dtype=np.float64))
    psi1 = np.atleast_2d(np.asarray(psi1, dtype=np.float64))
    if psi0.shape != psi1.shape:
        raise DimensionError(f"Ψ0 y Ψ1 deben tener la misma forma: {psi0.shape} != {psi1.shape}")
    m = psi0.shape[1]
    if m < 2:
        raise DimensionError(f"Se necesitan al menos 2 muestras, hay {m}.")
    C00 = _symmetrize(psi0 @ psi0.T / m)
    C01 = psi0 @ psi1.T / m
    C11 = _symmetrize(psi1 @ psi1.T / m)
    return CovarianceSet(C00=C00, C01=C01, C10=C01.T.copy(), C11=C11, m_samples=m)


def _check_symmetric(M: np.ndarray) -> None:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"Se esperaba una matriz cuadrada, forma {M.shape}.")
    scale = max(np.linalg.norm(M), np.finfo(float).tiny)
    asym = np.linalg.norm(M - M.T)
    if asym > SYMMETRY_TOL * scale:
        raise ContractError(f"Matriz no simétrica: ‖M - Mᵀ‖/‖M‖ = {asym / scale:.3e}")


def _truncated_eigh(M: np.ndarray, rel_tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Autopares de M con λ_i > rel_tol·λ_max, en orden descendente."""
    _check_symmetric(M)
    evals, evecs = linalg.eigh(_symmetrize(M))
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    lam_max = evals[0] if evals.size else 0.0
    if lam_max <= 0:
        return evals[:0], evecs[:, :0]
    keep = evals > rel_tol * lam_max
    return evals[keep], evecs[:, keep]


def effective_rank(M, rel_tol: float = 1e-8) -> int:
    evals, _ = _truncated_eigh(np.asarray(M, dtype=np.float64), rel_tol)
    return int(evals.size)


def pseudo_inverse(M, rel_tol: float = 1e-8) -> np.ndarray:
    """M⁺ = QΛ⁺Qᵀ invirtiendo solo los autovalores por encima de rel_tol·λ_max."""
    M = np.asarray(M, dtype=np.float64)
    evals, evecs = _truncated_eigh(M, rel_tol)
    if evals.size == 0:
        return np.zeros_like(M)
    return _symmetrize((evecs / evals) @ evecs.T)


def inverse_sqrt(M, rel_tol: float = 1e-8) -> np.ndarray:
    """Blanqueo truncado T = Q_r Λ_r^{-1/2} (N×r), con TᵀMT = I_r."""
    M = np.asarray(M, dtype=np.float64)
    evals, evecs = _truncated_eigh(M, rel_tol)
    return evecs / np.sqrt(evals)
