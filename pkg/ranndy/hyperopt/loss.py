"""Pérdida de traza L(ω) = tr(Â(ω)) y su gradiente por diferencias centradas."""

from typing import Callable

import numpy as np

from ..covariance import effective_rank, estimate, pseudo_inverse
from ..errors import ContractError, LossError
from ..features import evaluate
from ..models import FeatureMapSpec, OmegaVector, SnapshotData
from ..spectral import spectrum


def is_trajectory(data: SnapshotData) -> bool:
    """Y es X desplazada una columna (pares consecutivos de una sola trayectoria)."""
    return data.m > 2 and np.array_equal(data.X[:, 1:], data.Y[:, :-1])


def features(spec: FeatureMapSpec, omega: OmegaVector, data: SnapshotData) -> tuple[np.ndarray, np.ndarray]:
    """(Ψ(X), Ψ(Y)); sobre una trayectoria se evalúa una sola vez y se recorta."""
    if is_trajectory(data):
        path = np.hstack([data.X, data.Y[:, -1:]])
        psi = evaluate(spec, omega, path)
        return psi[:, :-1], psi[:, 1:]
    return evaluate(spec, omega, data.X), evaluate(spec, omega, data.Y)


def loss(
    spec: FeatureMapSpec,
    omega: OmegaVector,
    data: SnapshotData,
    mode: str,
    rel_tol: float = 1e-8,
    top_n: int | None = None,
    min_rank: int | None = None,
) -> float:
    """tr(Ĉ00⁺Ĉ01) (autoadjunto) o tr(Ĉ00⁺Ĉ01Ĉ11⁺Ĉ10) (no autoadjunto).

    La traza es sobre todo el operador proyectado N×N; con `top_n` se suma solo
    la parte dominante del espectro (variante desactivada por defecto). Con
    `min_rank`, un Ĉ00 de rango efectivo menor se trata como pérdida no evaluable.
    """
    psi0, psi1 = features(spec, omega, data)
    if not (np.all(np.isfinite(psi0)) and np.all(np.isfinite(psi1))):
        raise LossError(omega, "características no finitas (desbordamiento de la activación)")
    cov = estimate(psi0, psi1)
    if min_rank is not None:
        rank = effective_rank(cov.C00, rel_tol)
        if rank < min_rank:
            raise LossError(omega, f"rango efectivo de C00 = {rank} < {min_rank}")

    if top_n is not None:
        values = spectrum(cov, mode, rel_tol)
        if mode == "non_self_adjoint":
            values = values ** 2
        value = float(np.sum(values[:top_n]))
    elif mode == "self_adjoint":
        P00 = pseudo_inverse(cov.C00, rel_tol)
        # tr(AB) = Σ A ∘ Bᵀ
        value = float(np.sum(P00 * cov.C01.T))
    elif mode == "non_self_adjoint":
        left = pseudo_inverse(cov.C00, rel_tol) @ cov.C01
        right = pseudo_inverse(cov.C11, rel_tol) @ cov.C10
        value = float(np.sum(left * right.T))
    else:
        raise ContractError(f"Modo desconocido: '{mode}'")

    if not np.isfinite(value):
        raise LossError(omega, f"traza no finita ({value})")
    return value


def central_difference(fn: Callable[[np.ndarray], float], x, fd_step: float = 1e-4) -> np.ndarray:
    """(f(x + h e_j) - f(x - h e_j)) / 2h con h = fd_step·max(|x_j|, 1e-3)."""
    x = np.asarray(x, dtype=np.float64)
    grad = np.zeros_like(x)
    for j in range(x.size):
        h = fd_step * max(abs(x[j]), 1e-3)
        forward, backward = x.copy(), x.copy()
        forward[j] += h
        backward[j] -= h
        grad[j] = (fn(forward) - fn(backward)) / (2.0 * h)
    return grad


def grad_fd(
    spec: FeatureMapSpec,
    omega: OmegaVector,
    data: SnapshotData,
    mode: str,
    fd_step: float = 1e-4,
    rel_tol: float = 1e-8,
    top_n: int | None = None,
) -> np.ndarray:
    """∇_ω L en el orden de componentes [ω_a..., ω_W, ω_b]."""
    x = omega.as_array()
    h = fd_step * np.maximum(np.abs(x), 1e-3)
    if np.any(x - h <= 0):
        raise ContractError(f"fd_step={fd_step} saca a omega={omega} del dominio positivo.")

    def _loss_at(values: np.ndarray) -> float:
        return loss(spec, OmegaVector.from_array(values), data, mode, rel_tol, top_n)

    return central_difference(_loss_at, x, fd_step)
