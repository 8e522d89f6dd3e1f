"""Formato binario exacto de matrices.

Disposición del archivo: magic b"RNDY", luego (filas, columnas) como dos
enteros sin signo de 64 bits little-endian, luego filas*columnas doubles
IEEE-754 little-endian en orden por filas.
"""

import logging
import struct
from pathlib import Path

import numpy as np

from ..errors import MatrixFormatError, MatrixIOError, MatrixLengthError

MAGIC = b"RNDY"
_HEADER = struct.Struct("<QQ")
HEADER_SIZE = len(MAGIC) + _HEADER.size


def encode_matrix(M) -> bytes:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if M.ndim != 2:
        raise MatrixFormatError("<memoria>", f"se esperaba una matriz 2-D, ndim={M.ndim}")
    rows, cols = M.shape
    payload = np.ascontiguousarray(M, dtype="<f8").tobytes(order="C")
    return MAGIC + _HEADER.pack(rows, cols) + payload


def decode_matrix(raw: bytes, source: str = "<memoria>") -> np.ndarray:
    if len(raw) < len(MAGIC) or raw[:len(MAGIC)] != MAGIC:
        raise MatrixFormatError(source, f"magic inválido {raw[:len(MAGIC)]!r}, se esperaba {MAGIC!r}")
    if len(raw) < HEADER_SIZE:
        raise MatrixLengthError(source, "cabecera truncada")
    rows, cols = _HEADER.unpack_from(raw, len(MAGIC))
    expected = rows * cols * 8
    payload = raw[HEADER_SIZE:]
    if len(payload) != expected:
        raise MatrixLengthError(
            source, f"se esperaban {expected} bytes de datos para {rows}x{cols}, hay {len(payload)}"
        )
    return np.frombuffer(payload, dtype="<f8").astype(np.float64).reshape(rows, cols)


def write_matrix(M, path: str | Path) -> None:
    """Escribe `M` en `path` con el formato binario de ranndy."""
    path = Path(path)
    data = encode_matrix(M)
    try:
        path.write_bytes(data)
    except OSError as e:
        logging.error(f"No se pudo escribir la matriz en '{path}': {e}")
        raise MatrixIOError(path, f"error de escritura: {e}") from e


def read_matrix(path: str | Path) -> np.ndarray:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise MatrixIOError(path, f"error de lectura: {e}") from e
    return decode_matrix(raw, str(path))
