"""Conjuntos coherentes a partir de las funciones singulares derechas."""

import numpy as np

from ..errors import ModeError
from ..models import ClusterAssignment, FeatureMapSpec, OmegaVector, SpectralResult
from ..spectral import evaluate_functions
from .kmeans import kmeans


def singular_embedding(spec: FeatureMapSpec, omega: OmegaVector, result: SpectralResult, X,
                       weight_by_values: bool = False) -> np.ndarray:
    """Cada columna de X como un punto de R^n (m×n)."""
    embedding = evaluate_functions(spec, omega, result, X).T
    if weight_by_values:
        embedding = embedding * result.values[None, :]
    return embedding


def coherent_sets(spec: FeatureMapSpec, omega: OmegaVector, result: SpectralResult, X, k: int,
                  seed: int = 0, restarts: int = 10, weight_by_values: bool = False,
                  workers: int | None = None) -> ClusterAssignment:
    if result.mode != "non_self_adjoint":
        raise ModeError(
            f"Los conjuntos coherentes necesitan una descomposición 'non_self_adjoint', no '{result.mode}'."
        )
    embedding = singular_embedding(spec, omega, result, X, weight_by_values)
    return kmeans(embedding, k, seed, restarts, workers=workers)
