"""Exportación CSV de matrices para inspección y herramientas de gráficos."""

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from ..errors import MatrixIOError

# 17 cifras significativas: cualquier double se reconstruye exactamente
FLOAT_FORMAT = "%.17g"


def export_csv(M, path: str | Path) -> None:
    path = Path(path)
    M = np.asarray(M, dtype=np.float64)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    frame = pd.DataFrame(M)
    try:
        frame.to_csv(path, header=False, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        logging.error(f"No se pudo escribir el CSV '{path}': {e}")
        raise MatrixIOError(path, f"error de escritura: {e}") from e


def read_csv_matrix(path: str | Path) -> np.ndarray:
    path = Path(path)
    try:
        frame = pd.read_csv(path, header=None, float_precision="round_trip")
    except OSError as e:
        raise MatrixIOError(path, f"error de lectura: {e}") from e
    return frame.to_numpy(dtype=np.float64)


def write_table(frame: pd.DataFrame, path: str | Path) -> None:
    """CSV con cabecera (trazas, espectros, etiquetas)."""
    path = Path(path)
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        logging.error(f"No se pudo escribir la tabla '{path}': {e}")
        raise MatrixIOError(path, f"error de escritura: {e}") from e
