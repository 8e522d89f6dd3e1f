"""k-means con siembra k-means++ e iteraciones de Lloyd.

Cada reinicio usa su propio generador, derivado de la semilla con
`SeedSequence.spawn`; el ganador es el de menor inercia y, a igualdad, el de
menor índice.
"""

import logging

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import ContractError, DegenerateInputError
from ..models import ClusterAssignment
from ..utils.workers import map_bounded

MAX_ITER = 300
SHIFT_TOL = 1e-8


def kmeans_plus_plus(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Primer centro uniforme; los siguientes con probabilidad ∝ D(x)²."""
    m = points.shape[0]
    centers = np.empty((k, points.shape[1]), dtype=np.float64)
    centers[0] = points[rng.integers(m)]
    closest = cdist(points, centers[:1], "sqeuclidean").ravel()
    for j in range(1, k):
        index = rng.choice(m, p=closest / closest.sum())
        centers[j] = points[index]
        closest = np.minimum(closest, cdist(points, centers[j:j + 1], "sqeuclidean").ravel())
    return centers


def _assign(points: np.ndarray, centers: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    d2 = cdist(points, centers, "sqeuclidean")
    labels = np.argmin(d2, axis=1)
    own = d2[np.arange(points.shape[0]), labels]
    return labels, own, float(own.sum())


def _lloyd(points: np.ndarray, k: int, rng: np.random.Generator,
           max_iter: int, tol: float) -> ClusterAssignment:
    centers = kmeans_plus_plus(points, k, rng)
    history: list[float] = []
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        labels, own, inertia = _assign(points, centers)
        history.append(inertia)

        counts = np.bincount(labels, minlength=k)
        sums = np.zeros_like(centers)
        np.add.at(sums, labels, points)
        updated = centers.copy()
        filled = counts > 0
        updated[filled] = sums[filled] / counts[filled, None]
        empty = np.flatnonzero(~filled)
        if empty.size:
            # cada centro vacío pasa al punto más lejano de su centro actual
            farthest = np.argsort(-own, kind="stable")[:empty.size]
            updated[empty] = points[farthest]
            shift = np.inf
        else:
            shift = float(np.linalg.norm(updated - centers))
        centers = updated
        if shift <= tol:
            break

    labels, _, inertia = _assign(points, centers)
    history.append(inertia)
    return ClusterAssignment(labels=labels, centers=centers, inertia=inertia,
                             inertia_history=tuple(history), n_iter=n_iter)


def kmeans(points, k: int, seed: int, restarts: int = 10, max_iter: int = MAX_ITER,
           tol: float = SHIFT_TOL, workers: int | None = None) -> ClusterAssignment:
    """Agrupa las filas de `points` (m×n) en k conjuntos."""
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    if k < 1:
        raise ContractError(f"k debe ser positivo, se recibió {k}.")
    if restarts < 1:
        raise ContractError(f"restarts debe ser positivo, se recibió {restarts}.")
    if not np.all(np.isfinite(points)):
        raise ContractError("Los puntos contienen NaN o Inf.")
    distinct = np.unique(points, axis=0).shape[0]
    if k > distinct:
        raise DegenerateInputError(f"k={k} supera el número de puntos distintos ({distinct}).")

    children = np.random.SeedSequence(seed).spawn(restarts)
    runs = map_bounded(
        lambda child: _lloyd(points, k, np.random.default_rng(child), max_iter, tol),
        children,
        workers,
    )
    for i, run in enumerate(runs):
        logging.debug(f"k-means reinicio {i}: inercia={run.inertia:.10g} tras {run.n_iter} iteraciones.")
    best = min(range(len(runs)), key=lambda i: (runs[i].inertia, i))
    logging.info(f"k-means k={k}: mejor inercia {runs[best].inertia:.6g} (reinicio {best} de {restarts}).")
    return runs[best]
