"""Diccionario aleatorio parametrizado ψ(x, ω).

Los pesos W̄_l y sesgos b̄_l se muestrean una única vez y quedan fijos; las
escalas se aplican al evaluar, W(ω_W) = ω_W·W̄ y b(ω_b) = ω_b·b̄, de modo que ψ
es una función suave y determinista de ω.
"""

import json
import logging
import math
from pathlib import Path

import numpy as np

from .. import matrixio
from ..config import RunConfig, worker_count
from ..errors import ArtifactMissingError, ContractError, DimensionError
from ..models import FeatureMapSpec, OmegaVector
from ..utils.workers import map_bounded

# Columnas por bloque en la evaluación paralela
EVAL_BLOCK = 8192

_UNIFORM_HALF_WIDTH = math.sqrt(3.0)  # U(-√3, √3) tiene varianza 1


def _draw(rng: np.random.Generator, distribution: str, shape) -> np.ndarray:
    if distribution == "normal":
        return rng.standard_normal(shape)
    if distribution == "uniform":
        return rng.uniform(-_UNIFORM_HALF_WIDTH, _UNIFORM_HALF_WIDTH, shape)
    raise ContractError(f"Distribución desconocida: '{distribution}'")


def build_feature_map(config: RunConfig, d: int) -> FeatureMapSpec:
    """Muestrea los parámetros base del mapa para datos de dimensión `d`.

    El generador es PCG64 sembrado con `config.seed`; el orden del flujo es
    pesos de la capa 0 (por filas), sesgos de la capa 0, pesos de la capa 1, ...
    Mismos (seed, layer_sizes, d) producen parámetros idénticos bit a bit.
    """
    if d <= 0:
        raise DimensionError(f"La dimensión del estado debe ser positiva, se recibió d={d}.")
    rng = np.random.Generator(np.random.PCG64(config.seed))
    weights, biases = [], []
    fan_in = d
    for size in config.layer_sizes:
        weights.append(_draw(rng, config.weight_distribution, (size, fan_in)))
        biases.append(_draw(rng, config.bias_distribution, size))
        fan_in = size
    logging.debug(f"Mapa aleatorio construido: d={d}, capas={config.layer_sizes}, semilla={config.seed}.")
    return FeatureMapSpec(
        base_weights=tuple(weights),
        base_biases=tuple(biases),
        activation=config.activation,
        seed=config.seed,
        layer_sizes=tuple(config.layer_sizes),
    )


def activate(z: np.ndarray, activation: str, omega_a: tuple[float, ...] = ()) -> np.ndarray:
    if activation == "tanh":
        return np.tanh(z)
    if activation == "relu":
        return np.maximum(z, 0.0)
    if activation == "gaussian":
        gamma = omega_a[0] if omega_a else 1.0
        return np.exp(-gamma * z * z)
    raise ContractError(f"Activación desconocida: '{activation}'")


def _forward(spec: FeatureMapSpec, omega: OmegaVector, X: np.ndarray) -> np.ndarray:
    h = X
    for layer, (W, b) in enumerate(zip(spec.base_weights, spec.base_biases)):
        if W.shape[1] != h.shape[0]:
            raise DimensionError(
                f"Capa {layer}: se esperaban {W.shape[1]} entradas, llegaron {h.shape[0]}."
            )
        z = omega.omega_W * (W @ h) + omega.omega_b * b[:, None]
        h = activate(z, spec.activation, omega.omega_a)
    return h


def evaluate(spec: FeatureMapSpec, omega: OmegaVector, X, workers: int | None = None) -> np.ndarray:
    """Ψ(ω) = ψ(X, ω) ∈ R^{N×m} para las columnas de X (d×m)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(spec.input_dim, -1)
    m = X.shape[1]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or m <= EVAL_BLOCK:
        return _forward(spec, omega, X)
    blocks = [X[:, start:start + EVAL_BLOCK] for start in range(0, m, EVAL_BLOCK)]
    parts = map_bounded(lambda block: _forward(spec, omega, block), blocks, workers)
    return np.concatenate(parts, axis=1)


# --- Persistencia ---

def save_feature_map(spec: FeatureMapSpec, directory: str | Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for layer, (W, b) in enumerate(zip(spec.base_weights, spec.base_biases)):
        matrixio.write_matrix(W, directory / f"W_{layer}.bin")
        matrixio.write_matrix(b.reshape(1, -1), directory / f"b_{layer}.bin")
    meta = {
        "activation": spec.activation,
        "seed": spec.seed,
        "layer_sizes": list(spec.layer_sizes),
    }
    (directory / "feature_map.json").write_text(json.dumps(meta, indent=2), encoding="utf-8")


def load_feature_map(directory: str | Path) -> FeatureMapSpec:
    directory = Path(directory)
    meta_path = directory / "feature_map.json"
    if not meta_path.exists():
        raise ArtifactMissingError(f"No existe {meta_path}")
    meta = json.loads(meta_path.read_text(encoding="utf-8"))
    layers = tuple(meta["layer_sizes"])
    weights = tuple(matrixio.read_matrix(directory / f"W_{l}.bin") for l in range(len(layers)))
    biases = tuple(matrixio.read_matrix(directory / f"b_{l}.bin").ravel() for l in range(len(layers)))
    return FeatureMapSpec(
        base_weights=weights,
        base_biases=biases,
        activation=meta["activation"],
        seed=int(meta["seed"]),
        layer_sizes=layers,
    )
