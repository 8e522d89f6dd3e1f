"""Imágenes PGM (P5, 8 bits) de matrices, con el rango en un archivo aparte."""

import logging
from pathlib import Path

import numpy as np
from PIL import Image

from ..errors import ContractError, MatrixIOError

MID_GRAY = 128


def to_gray(M) -> np.ndarray:
    """Normaliza min-max a 0..255; una matriz constante queda gris medio."""
    M = np.atleast_2d(np.asarray(M, dtype=np.float64))
    if not np.all(np.isfinite(M)):
        raise ContractError("La matriz del mapa de calor contiene NaN o Inf.")
    lo, hi = float(M.min()), float(M.max())
    if hi == lo:
        return np.full(M.shape, MID_GRAY, dtype=np.uint8)
    return np.rint((M - lo) / (hi - lo) * 255.0).astype(np.uint8)


def range_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}.range.txt")


def heatmap(M, path: str | Path) -> list[Path]:
    """Escribe `path` (fila 0 arriba) y `<nombre>.range.txt` con min y max."""
    M = np.atleast_2d(np.asarray(M, dtype=np.float64))
    pixels = to_gray(M)
    path = Path(path)
    sidecar = range_path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(pixels).save(path, format="PPM")
        sidecar.write_text(f"min {M.min():.17g}\nmax {M.max():.17g}\n", encoding="utf-8")
    except OSError as e:
        raise MatrixIOError(path, f"no se pudo escribir la imagen: {e}") from e
    logging.debug(f"Mapa de calor {M.shape} escrito en '{path}'.")
    return [path, sidecar]


def read_range(path: str | Path) -> tuple[float, float]:
    values = dict(line.split() for line in range_path(path).read_text(encoding="utf-8").splitlines() if line)
    return float(values["min"]), float(values["max"])
