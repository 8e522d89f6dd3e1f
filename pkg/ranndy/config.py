"""Configuración de una corrida de ranndy.

Un archivo de configuración es un objeto JSON plano con exactamente los nombres
de campo de `RunConfig`; cualquier clave desconocida se rechaza para atrapar
errores de tipeo en los hiperparámetros.
"""

import json
import logging
import os
from pathlib import Path
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import ConfigError

load_dotenv()

Activation = Literal["tanh", "relu", "gaussian"]
Mode = Literal["self_adjoint", "non_self_adjoint"]
Distribution = Literal["normal", "uniform"]
SystemName = Literal["graphon", "bickley", "ou", "double_well"]

# Constantes por defecto de cada generador; `system_params` solo puede
# sobrescribir claves que existan aquí.
SYSTEM_DEFAULTS: dict[str, dict[str, float]] = {
    "graphon": {
        "steps": 100_000,
        "x0": 0.5,
        "burn_in": 100,
        "grid_resolution": 1000,
    },
    "bickley": {
        "m": 5000,
        "t0": 0.0,
        "t1": 40.0,
        "n_saves": 2,
        "step": 0.1,
        "half_height": 4.0,
        "U0": 5.4138,
        "L": 1.77,
        "r0": 6.371,
        "c2_factor": 0.205,
        "c3_factor": 0.461,
        "A1": 0.0075,
        "A2": 0.15,
        "A3": 0.3,
    },
    "ou": {
        "m": 100_000,
        "lag": 0.5,
        "dt": 1e-3,
        "beta": 1.0,
    },
    "double_well": {
        "m": 20_000,
        "lag": 0.5,
        "dt": 1e-3,
        "beta": 1.0,
        "x_min": -2.0,
        "x_max": 2.0,
    },
}

THREADS_ENV = "RANNDY_THREADS"


def worker_count() -> int:
    """Número máximo de hilos de trabajo (variable RANNDY_THREADS, por defecto 1)."""
    raw = os.getenv(THREADS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        logging.warning(f"{THREADS_ENV}={raw!r} no es un entero; se usa 1 hilo.")
        return 1


def omega_length(activation: str) -> int:
    # [omega_a..., omega_W, omega_b]; solo la gaussiana tiene un parámetro propio
    return 3 if activation == "gaussian" else 2


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    seed: int = Field(default=42, ge=0, lt=2**64)
    layer_sizes: list[int] = Field(default_factory=lambda: [256, 512, 256])
    activation: Activation = "tanh"
    omega_init: list[float] = Field(default_factory=lambda: [0.1, 0.1])
    learning_rate: float = Field(default=0.1, gt=0)
    max_epochs: int = 100
    rel_loss_tol: float = Field(default=1e-6, gt=0)
    pinv_rel_tol: float = Field(default=1e-8, gt=0)
    n_outputs: int = Field(default=5, gt=0)
    mode: Mode = "self_adjoint"

    fd_step: float = Field(default=1e-4, gt=0, lt=1)
    grad_tol: float = Field(default=1e-10, gt=0)
    max_halvings: int = Field(default=20, ge=0)
    max_log_step: float = Field(default=1.0, gt=0)
    partial_trace: bool = False
    weight_distribution: Distribution = "normal"
    bias_distribution: Distribution = "normal"

    system: SystemName | None = None
    system_params: dict[str, float] = Field(default_factory=dict)

    clusters: int = Field(default=9, gt=0)
    kmeans_restarts: int = Field(default=10, gt=0)
    weight_by_values: bool = False
    reconstruction_rank: int = Field(default=3, ge=0)
    reconstruction_grid: int = Field(default=200, gt=1)

    @field_validator("layer_sizes")
    @classmethod
    def _positive_layers(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("layer_sizes no puede estar vacío")
        if any(size <= 0 for size in value):
            raise ValueError(f"todas las capas deben ser positivas: {value}")
        return value

    @field_validator("omega_init")
    @classmethod
    def _positive_scales(cls, value: list[float]) -> list[float]:
        if any(not (w > 0) for w in value):
            raise ValueError(f"todas las escalas de omega_init deben ser > 0: {value}")
        return value

    @field_validator("max_epochs")
    @classmethod
    def _at_least_one_epoch(cls, value: int) -> int:
        if value < 1:
            raise ValueError("at least one epoch required (max_epochs >= 1)")
        return value

    @model_validator(mode="after")
    def _cross_checks(self) -> "RunConfig":
        if self.n_outputs > self.layer_sizes[-1]:
            raise ValueError(
                f"n_outputs={self.n_outputs} supera el tamaño de la última capa N={self.layer_sizes[-1]}"
            )
        expected = omega_length(self.activation)
        if len(self.omega_init) != expected:
            raise ValueError(
                f"omega_init para '{self.activation}' necesita {expected} componentes, "
                f"recibió {len(self.omega_init)}"
            )
        if self.system_params:
            if self.system is None:
                raise ValueError("system_params requiere indicar 'system'")
            unknown = set(self.system_params) - set(SYSTEM_DEFAULTS[self.system])
            if unknown:
                raise ValueError(f"parámetros desconocidos para '{self.system}': {sorted(unknown)}")
        return self

    # --- Accesos de conveniencia ---

    def system_value(self, key: str) -> float:
        if self.system is None:
            raise ConfigError("La configuración no indica ningún sistema ('system').")
        return self.system_params.get(key, SYSTEM_DEFAULTS[self.system][key])

    def with_overrides(self, **changes) -> "RunConfig":
        """Copia validada con los campos dados reemplazados (banderas de la CLI)."""
        changes = {k: v for k, v in changes.items() if v is not None}
        if not changes:
            return self
        return build_config({**self.model_dump(), **changes})

    @classmethod
    def preset(cls, name: str) -> "RunConfig":
        if name not in PRESETS:
            raise ConfigError(f"Sistema desconocido: '{name}'. Opciones: {sorted(PRESETS)}")
        return build_config(PRESETS[name])


# Ajustes por sistema para `generate` y para las corridas de referencia.
PRESETS: dict[str, dict] = {
    "graphon": {
        "system": "graphon",
        "layer_sizes": [256, 512, 256],
        "activation": "tanh",
        # con ω = 0.1 las tres capas son casi cúbicas en [0, 1] y Ĉ00 queda de rango 4
        "omega_init": [1.0, 1.0],
        "learning_rate": 0.1,
        "max_epochs": 12,
        "n_outputs": 5,
        "mode": "self_adjoint",
        "reconstruction_rank": 3,
    },
    "bickley": {
        "system": "bickley",
        "layer_sizes": [512],
        "activation": "tanh",
        # x llega a ≈ 20: ω_b/ω_W ≈ 10 reparte las transiciones de tanh sobre el dominio
        "omega_init": [1.0, 10.0],
        "learning_rate": 0.1,
        "max_epochs": 10,
        "n_outputs": 9,
        "mode": "non_self_adjoint",
        "clusters": 9,
    },
    "ou": {
        "system": "ou",
        "layer_sizes": [100],
        "activation": "tanh",
        "omega_init": [1.0, 1.0],
        "learning_rate": 0.1,
        "max_epochs": 10,
        "n_outputs": 4,
        "mode": "self_adjoint",
    },
    "double_well": {
        "system": "double_well",
        "layer_sizes": [100],
        "activation": "tanh",
        "omega_init": [1.0, 1.0],
        "learning_rate": 0.1,
        "n_outputs": 2,
        "mode": "self_adjoint",
    },
}


def build_config(data: dict) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Configuración inválida: {e}") from e


def load_config(path: str | Path) -> RunConfig:
    """Lee un RunConfig desde un archivo JSON plano."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(f"No existe el archivo de configuración: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path} no es JSON válido: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path} debe contener un objeto JSON plano.")
    config = build_config(data)
    logging.info(f"Configuración cargada desde '{path}'.")
    return config


def save_config(config: RunConfig, path: str | Path) -> None:
    Path(path).write_text(config.model_dump_json(indent=2), encoding="utf-8")
