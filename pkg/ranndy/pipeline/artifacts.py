"""Lectura y escritura de los archivos que se pasan los subcomandos."""

import logging
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from .. import matrixio
from ..config import RunConfig
from ..errors import ArtifactMissingError, ConfigError
from ..models import Mode, OmegaVector, SnapshotData

SNAPSHOT_META = "snapshot.json"
DECOMPOSITION_META = "decomposition.json"
FEATURE_MAP_DIR = "feature_map"
TRAINED_CONFIG = "config.json"


class SnapshotMeta(BaseModel):
    system: str
    lag: float
    dim: int
    m: int
    seed: int


class FeatureBasis(BaseModel):
    """Lo que fija las matrices base W̄, b̄: con otro valor, ω ya no significa lo mismo."""
    seed: int
    layer_sizes: list[int]
    activation: str
    weight_distribution: str = "normal"
    bias_distribution: str = "normal"

    @classmethod
    def from_config(cls, config: RunConfig) -> "FeatureBasis":
        return cls(
            seed=config.seed,
            layer_sizes=list(config.layer_sizes),
            activation=config.activation,
            weight_distribution=config.weight_distribution,
            bias_distribution=config.bias_distribution,
        )

    def differences(self, config: RunConfig) -> list[str]:
        other = self.from_config(config)
        return [
            f"{name}: {getattr(self, name)!r} != {getattr(other, name)!r}"
            for name in type(self).model_fields
            if getattr(self, name) != getattr(other, name)
        ]


class OmegaRecord(BaseModel):
    omega_a: list[float] = Field(default_factory=list)
    omega_W: float
    omega_b: float
    loss: float | None = None
    basis: FeatureBasis | None = None

    @classmethod
    def from_omega(cls, omega: OmegaVector, loss: float | None = None,
                   basis: FeatureBasis | None = None) -> "OmegaRecord":
        return cls(omega_a=list(omega.omega_a), omega_W=omega.omega_W, omega_b=omega.omega_b, loss=loss,
                   basis=basis)

    def to_omega(self) -> OmegaVector:
        return OmegaVector(omega_W=self.omega_W, omega_b=self.omega_b, omega_a=tuple(self.omega_a))


class DecompositionRecord(BaseModel):
    mode: Mode
    n_outputs: int
    omega: OmegaRecord
    pinv_rel_tol: float
    initial: bool = False
    data_dir: str
    values: list[float]


def write_json(model: BaseModel, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(model.model_dump_json(indent=2), encoding="utf-8")
    return path


def _require(path: Path, hint: str) -> Path:
    if not path.exists():
        raise ArtifactMissingError(f"Falta {path}; {hint}")
    return path


def _read_model(model: type[BaseModel], path: Path, hint: str):
    raw = _require(path, hint).read_text(encoding="utf-8")
    try:
        return model.model_validate_json(raw)
    except ValidationError as e:
        raise ConfigError(f"{path} no tiene el formato esperado: {e}") from e


# --- Datos ---

def save_snapshot(data: SnapshotData, out_dir: str | Path, seed: int) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, M in (("X", data.X), ("Y", data.Y)):
        matrixio.write_matrix(M, out_dir / f"{name}.bin")
        matrixio.export_csv(M, out_dir / f"{name}.csv")
        written += [out_dir / f"{name}.bin", out_dir / f"{name}.csv"]
    meta = SnapshotMeta(system=data.system_label, lag=data.lag, dim=data.dim, m=data.m, seed=seed)
    written.append(write_json(meta, out_dir / SNAPSHOT_META))
    logging.info(f"Datos {data.dim}×{data.m} guardados en '{out_dir}'.")
    return written


def load_snapshot(data_dir: str | Path) -> SnapshotData:
    data_dir = Path(data_dir)
    hint = "ejecute primero 'generate'."
    X = matrixio.read_matrix(_require(data_dir / "X.bin", hint))
    Y = matrixio.read_matrix(_require(data_dir / "Y.bin", hint))
    meta_path = data_dir / SNAPSHOT_META
    if meta_path.exists():
        meta = _read_model(SnapshotMeta, meta_path, hint)
        return SnapshotData(X=X, Y=Y, lag=meta.lag, system_label=meta.system)
    return SnapshotData(X=X, Y=Y)


# --- Parámetros ω ---

def save_omega(path: str | Path, omega: OmegaVector, loss: float | None = None,
               basis: FeatureBasis | None = None) -> Path:
    return write_json(OmegaRecord.from_omega(omega, loss, basis), path)


def load_omega_record(path: str | Path) -> OmegaRecord:
    return _read_model(OmegaRecord, Path(path), "ejecute primero 'train' o use --initial.")


def check_basis(record: OmegaRecord, config: RunConfig, source: str | Path) -> None:
    """ConfigError si ω se optimizó sobre otra base aleatoria que la de `config`."""
    if record.basis is None:
        logging.warning(f"{source} no registra la base del mapa; no se puede verificar la semilla.")
        return
    differences = record.basis.differences(config)
    if differences:
        raise ConfigError(
            f"omega de {source} se optimizó con otra base aleatoria ({'; '.join(differences)}); "
            f"use la misma configuración que en 'train'."
        )


# --- Descomposición ---

def load_decomposition(directory: str | Path) -> DecompositionRecord:
    return _read_model(DecompositionRecord, Path(directory) / DECOMPOSITION_META, "ejecute primero 'decompose'.")


def positions_columns(X, labels: np.ndarray) -> dict[str, np.ndarray]:
    """Columnas x, y (o x0..x{d-1}) y label, listas para un DataFrame."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    names = ["x", "y"] if X.shape[0] == 2 else [f"x{i}" for i in range(X.shape[0])]
    columns = {name: X[i] for i, name in enumerate(names)}
    columns["label"] = np.asarray(labels, dtype=np.int64)
    return columns
