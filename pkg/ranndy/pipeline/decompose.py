"""Subcomando `decompose`: capa de salida en ω fijo y evaluación de las funciones."""

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from .. import matrixio
from ..config import RunConfig, omega_length
from ..covariance import estimate
from ..errors import ConfigError, ModeError
from ..features import build_feature_map, save_feature_map
from ..hyperopt import features
from ..models import OmegaVector, SpectralResult
from ..spectral import save_result, solve, spectrum
from .artifacts import (
    DECOMPOSITION_META,
    FEATURE_MAP_DIR,
    DecompositionRecord,
    OmegaRecord,
    check_basis,
    load_omega_record,
    load_snapshot,
    write_json,
)
from .manifest import RunRecorder


def _values_frame(values: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame({"index": np.arange(1, values.size + 1), "value": values})


def cmd_decompose(config: RunConfig, data_dir: str | Path, omega_path: str | Path | None, out_dir: str | Path,
                  recorder: RunRecorder, initial: bool = False) -> SpectralResult:
    if initial:
        omega = OmegaVector.from_array(config.omega_init)
    elif omega_path is not None:
        record = load_omega_record(omega_path)
        check_basis(record, config, omega_path)
        omega = record.to_omega()
        recorder.input("omega", omega_path)
    else:
        raise ConfigError("Indique --omega con el resultado de 'train' o use --initial.")
    if len(omega.as_array()) != omega_length(config.activation):
        raise ModeError(
            f"omega={omega} no corresponde a la activación '{config.activation}' de la configuración."
        )
    if not omega.is_positive:
        raise ConfigError(f"Las escalas de omega deben ser positivas para descomponer: {omega}")

    data = load_snapshot(data_dir)
    recorder.input("data", data_dir)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    spec = build_feature_map(config, data.dim)
    with recorder.stage("decompose"):
        psi0, psi1 = features(spec, omega, data)
        cov = estimate(psi0, psi1)
        full = spectrum(cov, config.mode, config.pinv_rel_tol)
        result = solve(cov, config.n_outputs, config.mode, config.pinv_rel_tol)
        functions = result.W_o.T @ psi0

    logging.info(f"Valores dominantes en omega={omega}: {np.array2string(result.values, precision=6)}")

    written = [out_dir / "spectrum.csv", out_dir / "values.csv"]
    matrixio.write_table(_values_frame(full), written[0])
    matrixio.write_table(_values_frame(result.values), written[1])
    written += save_result(result, out_dir)
    matrixio.write_matrix(functions, out_dir / "functions.bin")
    matrixio.export_csv(functions, out_dir / "functions.csv")
    written += [out_dir / "functions.bin", out_dir / "functions.csv"]
    save_feature_map(spec, out_dir / FEATURE_MAP_DIR)
    written.append(out_dir / FEATURE_MAP_DIR)

    record = DecompositionRecord(
        mode=config.mode,
        n_outputs=config.n_outputs,
        omega=OmegaRecord.from_omega(omega),
        pinv_rel_tol=config.pinv_rel_tol,
        initial=initial,
        data_dir=str(data_dir),
        values=result.values.tolist(),
    )
    written.append(write_json(record, out_dir / DECOMPOSITION_META))
    recorder.output(*written)
    return result
