"""Grafones y paseos aleatorios sobre ellos.

La densidad de transición es p(x, ·) = g(x, ·)/d(x); se muestrea por CDF inversa
sobre una discretización de `grid_resolution` puntos medios de [0, 1].
"""

import logging

import numpy as np

from ..errors import AbsorbingStateError, ContractError
from ..models import GraphonSpec


def _three_bumps(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return (
        0.2 * np.exp(-((x - 0.2) ** 2 + (y - 0.2) ** 2) / 0.02)
        + 0.1 * np.exp(-((x - 0.5) ** 2 + (y - 0.5) ** 2) / 0.02)
        + 0.2 * np.exp(-((x - 0.8) ** 4 + (y - 0.8) ** 4) / 0.0005)
    )


def preset_graphon(grid_resolution: int = 1000) -> GraphonSpec:
    """Grafón simétrico de tres protuberancias del experimento de referencia."""
    return GraphonSpec(g=_three_bumps, grid_resolution=grid_resolution, symmetric=True, label="graphon")


def constant_graphon(value: float = 1.0, grid_resolution: int = 1000) -> GraphonSpec:
    def g(x, y):
        return np.full(np.broadcast(np.asarray(x), np.asarray(y)).shape, value, dtype=np.float64)

    return GraphonSpec(g=g, grid_resolution=grid_resolution, symmetric=True, label="constant")


def block_graphon(levels=(1.0, 1.0), off: float = 0.0, cut: float = 0.5,
                  grid_resolution: int = 1000) -> GraphonSpec:
    """Dos bloques: g = levels[0] en [0,cut]², levels[1] en (cut,1]², `off` fuera."""
    a, b = levels

    def g(x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        left_x, left_y = x <= cut, y <= cut
        return np.where(left_x & left_y, a, np.where(~left_x & ~left_y, b, off)).astype(np.float64)

    return GraphonSpec(g=g, grid_resolution=grid_resolution, symmetric=True, label="block")


def grid_points(resolution: int) -> np.ndarray:
    """Puntos medios de las celdas de una partición uniforme de [0, 1]."""
    return (np.arange(resolution) + 0.5) / resolution


def degree_function(spec: GraphonSpec, grid=None) -> np.ndarray:
    """d(x) = ∫ g(x, y) dy por la regla del punto medio."""
    y = grid_points(spec.grid_resolution)
    x = grid_points(spec.grid_resolution) if grid is None else np.asarray(grid, dtype=np.float64)
    return spec.g(x[:, None], y[None, :]).sum(axis=1) / spec.grid_resolution


def graphon_walk(spec: GraphonSpec, steps: int, x0: float, seed: int, burn_in: int = 0) -> np.ndarray:
    """Paseo aleatorio de `steps` pasos (devuelve steps+1 estados).

    Los primeros `burn_in` pasos se simulan y se descartan. Los pares
    (walk[t], walk[t+1]) forman los datos (X, Y) con lag de un paso.
    """
    if steps <= 0:
        raise ContractError(f"steps debe ser positivo, se recibió {steps}.")
    if not 0.0 <= x0 <= 1.0:
        raise ContractError(f"x0 debe estar en [0, 1], se recibió {x0}.")
    resolution = spec.grid_resolution
    y_grid = grid_points(resolution)
    rng = np.random.default_rng(seed)

    walk = np.empty(steps + 1, dtype=np.float64)
    state = float(x0)
    for t in range(burn_in + steps):
        if t >= burn_in:
            walk[t - burn_in] = state
        cdf = np.cumsum(spec.g(state, y_grid))
        total = cdf[-1]
        if not total > 0:
            raise AbsorbingStateError(state)
        u, v = rng.random(2)
        cell = min(int(np.searchsorted(cdf, u * total, side="right")), resolution - 1)
        state = (cell + v) / resolution
    walk[steps] = state
    logging.info(f"Paseo sobre '{spec.label}': {steps} pasos (burn-in {burn_in}) desde x0={x0}.")
    return walk
