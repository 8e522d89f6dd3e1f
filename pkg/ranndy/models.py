"""Tipos de dominio compartidos por todos los módulos de ranndy."""

import math
from dataclasses import dataclass
from datetime import datetime
from typing import Callable, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field

from . import utils
from .errors import ContractError, DimensionError

Mode = Literal["self_adjoint", "non_self_adjoint"]
StopReason = Literal["tolerance", "max_epochs", "backtracking"]


# --- Datos ---

@dataclass(frozen=True)
class SnapshotData:
    """Pares de instantáneas (x_i, y_i): columnas de X en t y de Y en t + lag."""
    X: np.ndarray
    Y: np.ndarray
    lag: float = 1.0
    system_label: str = ""

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.X, dtype=np.float64))
        Y = np.atleast_2d(np.asarray(self.Y, dtype=np.float64))
        if X.shape != Y.shape:
            raise DimensionError(f"X e Y deben tener la misma forma: {X.shape} != {Y.shape}")
        if X.shape[1] < 2:
            raise DimensionError(f"Se necesitan al menos 2 instantáneas, hay {X.shape[1]}.")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
            raise ContractError("Los datos contienen NaN o Inf.")
        if not self.lag > 0:
            raise ContractError(f"El lag debe ser positivo, se recibió {self.lag}.")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def dim(self) -> int:
        return self.X.shape[0]

    @property
    def m(self) -> int:
        return self.X.shape[1]


# --- Mapa de características ---

@dataclass(frozen=True)
class OmegaVector:
    """Parámetros ω = [ω_a, ω_W, ω_b] del diccionario aleatorio."""
    omega_W: float
    omega_b: float
    omega_a: tuple[float, ...] = ()

    def __post_init__(self):
        values = (self.omega_W, self.omega_b, *self.omega_a)
        if any(not math.isfinite(v) or v < 0 for v in values):
            raise ContractError(f"Las escalas de omega deben ser finitas y no negativas: {values}")
        object.__setattr__(self, "omega_W", float(self.omega_W))
        object.__setattr__(self, "omega_b", float(self.omega_b))
        object.__setattr__(self, "omega_a", tuple(float(a) for a in self.omega_a))

    @property
    def is_positive(self) -> bool:
        return self.omega_W > 0 and self.omega_b > 0 and all(a > 0 for a in self.omega_a)

    def as_array(self) -> np.ndarray:
        return np.array([*self.omega_a, self.omega_W, self.omega_b], dtype=np.float64)

    @classmethod
    def from_array(cls, values) -> "OmegaVector":
        values = [float(v) for v in values]
        if len(values) < 2:
            raise DimensionError(f"omega necesita al menos (omega_W, omega_b), se recibió {values}")
        return cls(omega_W=values[-2], omega_b=values[-1], omega_a=tuple(values[:-2]))

    def __str__(self) -> str:
        parts = [f"a={a:.6g}" for a in self.omega_a] + [f"W={self.omega_W:.6g}", f"b={self.omega_b:.6g}"]
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class FeatureMapSpec:
    """Pesos y sesgos base fijos, muestreados una sola vez a partir de la semilla."""
    base_weights: tuple[np.ndarray, ...]
    base_biases: tuple[np.ndarray, ...]
    activation: str
    seed: int
    layer_sizes: tuple[int, ...]

    @property
    def input_dim(self) -> int:
        return self.base_weights[0].shape[1]

    @property
    def n_features(self) -> int:
        return self.layer_sizes[-1]


# --- Covarianzas y espectro ---

@dataclass(frozen=True)
class CovarianceSet:
    C00: np.ndarray
    C01: np.ndarray
    C10: np.ndarray
    C11: np.ndarray
    m_samples: int

    @property
    def N(self) -> int:
        return self.C00.shape[0]


@dataclass(frozen=True)
class SpectralResult:
    values: np.ndarray
    W_o: np.ndarray
    mode: Mode
    W_o_left: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return self.values.shape[0]


# --- Optimización ---

@dataclass(frozen=True)
class EpochRecord:
    k: int
    omega: OmegaVector
    loss: float
    grad_norm: float


@dataclass(frozen=True)
class TrainingTrace:
    epochs: tuple[EpochRecord, ...]
    converged: bool
    final_omega: OmegaVector
    stop_reason: StopReason = "max_epochs"

    @property
    def losses(self) -> np.ndarray:
        return np.array([e.loss for e in self.epochs])

    @property
    def final_loss(self) -> float:
        return self.epochs[-1].loss


# --- Análisis ---

@dataclass(frozen=True)
class ClusterAssignment:
    labels: np.ndarray
    centers: np.ndarray
    inertia: float
    inertia_history: tuple[float, ...] = ()
    n_iter: int = 0

    @property
    def k(self) -> int:
        return self.centers.shape[0]


@dataclass(frozen=True)
class GraphonReconstruction:
    rank: int
    grid: np.ndarray
    p_hat: np.ndarray
    g_hat: np.ndarray
    pi_hat: np.ndarray
    Z_hat: float

    @property
    def g_hat_clipped(self) -> np.ndarray:
        # solo para exportar; las normas de error usan g_hat sin recortar
        return np.clip(self.g_hat, 0.0, 1.0)


@dataclass(frozen=True)
class GraphonSpec:
    g: Callable[[np.ndarray, np.ndarray], np.ndarray]
    grid_resolution: int = 1000
    symmetric: bool = True
    label: str = "graphon"


@dataclass(frozen=True)
class SdeSpec:
    drift: Callable[[np.ndarray], np.ndarray]
    diffusion: Callable[[np.ndarray], np.ndarray]
    dt: float
    lag: float
    dim: int = 1
    label: str = "sde"

    @property
    def n_steps(self) -> int:
        ratio = self.lag / self.dt
        steps = int(round(ratio))
        if steps < 1 or abs(ratio - steps) > 1e-9 * max(1.0, ratio):
            raise ContractError(f"lag/dt debe ser un entero positivo: lag={self.lag}, dt={self.dt}")
        return steps


# --- Procedencia ---

class PipelineManifest(BaseModel):
    """Registro JSON de procedencia que acompaña a cada conjunto de salidas."""
    subcommand: str
    argv: list[str] = Field(default_factory=list)
    config_path: str | None = None
    inputs: dict[str, str] = Field(default_factory=dict)
    outputs: list[str] = Field(default_factory=list)
    seed: int
    version: str
    started_at: datetime = Field(default_factory=utils.timing.get_utc_now)
    finished_at: datetime | None = None
    timings: dict[str, float] = Field(default_factory=dict)
