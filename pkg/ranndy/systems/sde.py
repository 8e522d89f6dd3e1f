"""Ecuaciones diferenciales estocásticas por Euler-Maruyama.

Las trayectorias se simulan en bloques de tamaño fijo; cada bloque usa un
generador propio derivado de (semilla, índice de bloque), así el resultado no
depende de cuántos hilos se usen.
"""

import logging
import math
from typing import Callable

import numpy as np

from ..errors import BlowUpError, ContractError
from ..models import SdeSpec, SnapshotData
from ..utils.workers import map_bounded

BLOCK_SIZE = 4096

Sampler = Callable[[np.random.Generator, int], np.ndarray]


def ornstein_uhlenbeck(beta: float = 1.0, dt: float = 1e-3, lag: float = 0.5, dim: int = 1) -> SdeSpec:
    """dX = −X dt + √(2/β) dW."""
    scale = math.sqrt(2.0 / beta)
    return SdeSpec(
        drift=lambda x: -x,
        diffusion=lambda x: scale * np.eye(dim),
        dt=dt,
        lag=lag,
        dim=dim,
        label="ou",
    )


def double_well_potential(x):
    """V(x) = (x² − 1)²."""
    return (x ** 2 - 1.0) ** 2


def double_well(beta: float = 1.0, dt: float = 1e-3, lag: float = 0.5) -> SdeSpec:
    """Langevin sobreamortiguada con V(x) = (x² − 1)²: dX = −∇V dt + √(2/β) dW."""
    scale = math.sqrt(2.0 / beta)
    return SdeSpec(
        drift=lambda x: -4.0 * x * (x ** 2 - 1.0),
        diffusion=lambda x: scale * np.eye(1),
        dt=dt,
        lag=lag,
        dim=1,
        label="double_well",
    )


def gaussian_sampler(std: float = 1.0, dim: int = 1) -> Sampler:
    return lambda rng, size: std * rng.standard_normal((dim, size))


def uniform_sampler(low: float, high: float, dim: int = 1) -> Sampler:
    return lambda rng, size: rng.uniform(low, high, (dim, size))


def _apply_diffusion(sigma: np.ndarray, noise: np.ndarray) -> np.ndarray:
    sigma = np.asarray(sigma, dtype=np.float64)
    if sigma.ndim == 2:
        return sigma @ noise
    # σ por trayectoria: (d, d, size)
    return np.einsum("ijs,js->is", sigma, noise)


def _simulate_block(spec: SdeSpec, x0: np.ndarray, rng: np.random.Generator, block: int) -> np.ndarray:
    x = x0.copy()
    sqrt_dt = math.sqrt(spec.dt)
    for step in range(spec.n_steps):
        noise = rng.standard_normal(x.shape)
        x = x + spec.drift(x) * spec.dt + _apply_diffusion(spec.diffusion(x), noise) * sqrt_dt
        if not np.all(np.isfinite(x)):
            logging.error(f"Euler-Maruyama: divergencia en el paso {step} del bloque {block}.")
            raise BlowUpError(step, block)
    return x


def euler_maruyama(spec: SdeSpec, m: int, x0_sampler: Sampler, seed: int,
                   workers: int | None = None) -> SnapshotData:
    """X guarda los m estados iniciales e Y los estados tras lag/dt pasos."""
    if m < 2:
        raise ContractError(f"Se necesitan al menos 2 trayectorias, se pidieron {m}.")
    n_steps = spec.n_steps
    sizes = [min(BLOCK_SIZE, m - start) for start in range(0, m, BLOCK_SIZE)]
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def _run(job: tuple[int, int, np.random.SeedSequence]) -> tuple[np.ndarray, np.ndarray]:
        block, size, child = job
        rng = np.random.default_rng(child)
        x0 = np.asarray(x0_sampler(rng, size), dtype=np.float64).reshape(spec.dim, size)
        return x0, _simulate_block(spec, x0, rng, block)

    logging.info(f"Euler-Maruyama '{spec.label}': m={m}, {n_steps} pasos de dt={spec.dt}, {len(sizes)} bloques.")
    results = map_bounded(_run, list(zip(range(len(sizes)), sizes, children)), workers)
    X = np.concatenate([r[0] for r in results], axis=1)
    Y = np.concatenate([r[1] for r in results], axis=1)
    return SnapshotData(X=X, Y=Y, lag=spec.lag, system_label=spec.label)
