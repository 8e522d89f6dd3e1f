"""Capa de salida en forma cerrada.

Ambos caminos trabajan en coordenadas blanqueadas (T = C^{-1/2} truncada) para
que los espectros calculados sean reales y estables aun con matrices de Gram
casi singulares.
"""

import logging
from pathlib import Path

import numpy as np
from scipy import linalg

from .. import matrixio
from ..covariance import inverse_sqrt
from ..errors import ArtifactMissingError, DimensionError, ModeError, RankError
from ..features import evaluate
from ..models import CovarianceSet, FeatureMapSpec, OmegaVector, SpectralResult


def _fix_signs(W: np.ndarray, *companions: np.ndarray) -> tuple[np.ndarray, ...]:
    # la entrada de mayor magnitud de cada columna queda positiva
    if W.shape[1] == 0:
        return (W, *companions)
    rows = np.argmax(np.abs(W), axis=0)
    signs = np.sign(W[rows, np.arange(W.shape[1])])
    signs[signs == 0] = 1.0
    return (W * signs, *(C * signs for C in companions))


def _self_adjoint_eigh(cov: CovarianceSet, rel_tol: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    T = inverse_sqrt(cov.C00, rel_tol)
    S = T.T @ (0.5 * (cov.C01 + cov.C10)) @ T
    evals, evecs = linalg.eigh(0.5 * (S + S.T))
    order = np.argsort(evals)[::-1]
    return evals[order], evecs[:, order], T


def _forward_backward_svd(cov: CovarianceSet, rel_tol: float):
    T0 = inverse_sqrt(cov.C00, rel_tol)
    T1 = inverse_sqrt(cov.C11, rel_tol)
    K = T0.T @ cov.C01 @ T1
    U, s, Vt = linalg.svd(K, full_matrices=False)
    return s, U, Vt.T, T0, T1


def solve_self_adjoint(cov: CovarianceSet, n: int, rel_tol: float = 1e-8) -> SpectralResult:
    """Resuelve Ĉ00⁺Ĉ01 W_o = W_o Λ con la restricción W_oᵀĈ00W_o = I."""
    evals, evecs, T = _self_adjoint_eigh(cov, rel_tol)
    rank = T.shape[1]
    if n > rank:
        raise RankError(n, rank)
    W_o, = _fix_signs(T @ evecs[:, :n])
    logging.debug(f"Autovalores dominantes: {np.array2string(evals[:n], precision=6)}")
    return SpectralResult(values=evals[:n].copy(), W_o=W_o, mode="self_adjoint")


def solve_non_self_adjoint(cov: CovarianceSet, n: int, rel_tol: float = 1e-8) -> SpectralResult:
    """SVD de K = T0ᵀĈ01T1: W_o = T0·U_n (derechas), W_o' = T1·V_n (izquierdas).

    W_o resuelve Ĉ00⁺Ĉ01Ĉ11⁺Ĉ10 W_o = W_o Λ² con Λ = diag(s_1..s_n) y cumple
    W_oᵀĈ00W_o = I y W_o'ᵀĈ11W_o' = I.
    """
    s, U, V, T0, T1 = _forward_backward_svd(cov, rel_tol)
    rank = min(T0.shape[1], T1.shape[1])
    if n > rank:
        raise RankError(n, rank, what="C00/C11")
    W_o, W_left = _fix_signs(T0 @ U[:, :n], T1 @ V[:, :n])
    logging.debug(f"Valores singulares dominantes: {np.array2string(s[:n], precision=6)}")
    return SpectralResult(values=s[:n].copy(), W_o=W_o, W_o_left=W_left, mode="non_self_adjoint")


def solve(cov: CovarianceSet, n: int, mode: str, rel_tol: float = 1e-8) -> SpectralResult:
    if mode == "self_adjoint":
        return solve_self_adjoint(cov, n, rel_tol)
    if mode == "non_self_adjoint":
        return solve_non_self_adjoint(cov, n, rel_tol)
    raise ModeError(f"Modo desconocido: '{mode}'")


def spectrum(cov: CovarianceSet, mode: str, rel_tol: float = 1e-8) -> np.ndarray:
    """Todo el espectro retenido (r valores) para inspeccionar brechas."""
    if mode == "self_adjoint":
        return _self_adjoint_eigh(cov, rel_tol)[0]
    if mode == "non_self_adjoint":
        return _forward_backward_svd(cov, rel_tol)[0]
    raise ModeError(f"Modo desconocido: '{mode}'")


def evaluate_functions(spec: FeatureMapSpec, omega: OmegaVector, result: SpectralResult, X) -> np.ndarray:
    """Valores de las autofunciones (o funciones singulares derechas), n×m."""
    if result.W_o.shape[0] != spec.n_features:
        raise DimensionError(
            f"W_o tiene {result.W_o.shape[0]} filas pero el mapa produce {spec.n_features} características."
        )
    return result.W_o.T @ evaluate(spec, omega, X)


# --- Persistencia ---

def save_result(result: SpectralResult, directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = [directory / "values.bin", directory / "W_o.bin"]
    matrixio.write_matrix(result.values.reshape(1, -1), written[0])
    matrixio.write_matrix(result.W_o, written[1])
    if result.W_o_left is not None:
        written.append(directory / "W_o_left.bin")
        matrixio.write_matrix(result.W_o_left, written[-1])
    return written


def load_result(directory: str | Path) -> SpectralResult:
    directory = Path(directory)
    for name in ("values.bin", "W_o.bin"):
        if not (directory / name).exists():
            raise ArtifactMissingError(f"Falta {directory / name}; ejecute primero 'decompose'.")
    values = matrixio.read_matrix(directory / "values.bin").ravel()
    W_o = matrixio.read_matrix(directory / "W_o.bin")
    left_path = directory / "W_o_left.bin"
    if left_path.exists():
        return SpectralResult(values=values, W_o=W_o, W_o_left=matrixio.read_matrix(left_path),
                              mode="non_self_adjoint")
    return SpectralResult(values=values, W_o=W_o, mode="self_adjoint")
