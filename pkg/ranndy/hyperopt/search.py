"""Búsqueda en malla de ω y de las distribuciones de pesos/sesgos."""

import itertools
import logging
from typing import Callable, Sequence

import numpy as np
import pandas as pd

from ..config import RunConfig
from ..errors import ContractError, LossError
from ..features import build_feature_map
from ..models import FeatureMapSpec, OmegaVector, SnapshotData
from ..utils.workers import map_bounded
from .loss import loss

SpecBuilder = Callable[[RunConfig, int], FeatureMapSpec]


def scale_grid(w_values, b_values, omega_a: Sequence[float] = ()) -> tuple[list[OmegaVector], tuple[int, int]]:
    """Malla por filas: fila i ↔ w_values[i], columna j ↔ b_values[j]."""
    grid = [
        OmegaVector(omega_W=float(w), omega_b=float(b), omega_a=tuple(omega_a))
        for w, b in itertools.product(w_values, b_values)
    ]
    return grid, (len(w_values), len(b_values))


def grid_search(
    spec_builder: SpecBuilder,
    config: RunConfig,
    data: SnapshotData,
    grid: Sequence[OmegaVector],
    shape: tuple[int, ...] | None = None,
    workers: int | None = None,
) -> tuple[OmegaVector, np.ndarray]:
    """Evalúa L en cada punto de la malla y devuelve el argmax y la tabla de pérdidas.

    Los empates se resuelven por el primer punto en el orden de la malla; los
    puntos no evaluables quedan como NaN en la tabla.
    """
    grid = list(grid)
    if not grid:
        raise ContractError("La malla de búsqueda está vacía.")
    spec = spec_builder(config, data.dim)
    top_n = config.n_outputs if config.partial_trace else None

    def _evaluate(omega: OmegaVector) -> float:
        try:
            return loss(spec, omega, data, config.mode, config.pinv_rel_tol, top_n)
        except LossError as e:
            logging.warning(f"Punto de malla descartado: {e}")
            return float("nan")

    losses = np.array(map_bounded(_evaluate, grid, workers), dtype=np.float64)
    if not np.any(np.isfinite(losses)):
        raise LossError("toda la malla", "ningún punto produjo una pérdida finita")
    best = int(np.nanargmax(losses))
    logging.info(f"Mejor punto de la malla: omega={grid[best]}, pérdida={losses[best]:.10g}")
    table = losses.reshape(shape) if shape is not None else losses.reshape(-1, 1)
    return grid[best], table


def distribution_search(
    config: RunConfig,
    data: SnapshotData,
    distributions: Sequence[tuple[str, str]] | None = None,
    workers: int | None = None,
) -> pd.DataFrame:
    """Pérdida en ω^(0) para cada par (distribución de pesos, distribución de sesgos)."""
    if distributions is None:
        distributions = list(itertools.product(("normal", "uniform"), repeat=2))
    omega = OmegaVector.from_array(config.omega_init)
    top_n = config.n_outputs if config.partial_trace else None

    def _evaluate(pair: tuple[str, str]) -> float:
        variant = config.with_overrides(weight_distribution=pair[0], bias_distribution=pair[1])
        spec = build_feature_map(variant, data.dim)
        try:
            return loss(spec, omega, data, config.mode, config.pinv_rel_tol, top_n)
        except LossError as e:
            logging.warning(f"Distribución {pair} descartada: {e}")
            return float("nan")

    losses = map_bounded(_evaluate, list(distributions), workers)
    return pd.DataFrame(
        {
            "weight_distribution": [w for w, _ in distributions],
            "bias_distribution": [b for _, b in distributions],
            "loss": losses,
        }
    )
