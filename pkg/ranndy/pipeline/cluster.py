"""Subcomando `cluster`: conjuntos coherentes por k-means."""

from pathlib import Path

import pandas as pd

from .. import matrixio
from ..config import RunConfig
from ..coherent import coherent_sets
from ..errors import ConfigError
from ..features import load_feature_map
from ..models import ClusterAssignment
from ..spectral import load_result
from .artifacts import FEATURE_MAP_DIR, load_decomposition, load_snapshot, positions_columns
from .manifest import RunRecorder


def cmd_cluster(config: RunConfig, decomposition_dir: str | Path, out_dir: str | Path, recorder: RunRecorder,
                data_dir: str | Path | None = None, k: int | None = None) -> ClusterAssignment:
    k = config.clusters if k is None else k
    if k < 1:
        raise ConfigError(f"El número de conjuntos k debe ser positivo, se recibió {k}.")
    decomposition_dir = Path(decomposition_dir)
    record = load_decomposition(decomposition_dir)
    result = load_result(decomposition_dir)
    spec = load_feature_map(decomposition_dir / FEATURE_MAP_DIR)
    data_dir = Path(data_dir or record.data_dir)
    data = load_snapshot(data_dir)
    recorder.input("decomposition", decomposition_dir)
    recorder.input("data", data_dir)

    with recorder.stage("cluster"):
        assignment = coherent_sets(spec, record.omega.to_omega(), result, data.X, k, seed=config.seed,
                                   restarts=config.kmeans_restarts, weight_by_values=config.weight_by_values)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    clusters_path = out_dir / "clusters.csv"
    matrixio.write_table(pd.DataFrame(positions_columns(data.X, assignment.labels)), clusters_path)
    centers_path = out_dir / "centers.csv"
    matrixio.export_csv(assignment.centers, centers_path)
    history_path = out_dir / "inertia.csv"
    matrixio.write_table(pd.DataFrame({"iteration": range(len(assignment.inertia_history)),
                                       "inertia": assignment.inertia_history}), history_path)
    recorder.output(clusters_path, centers_path, history_path)
    return assignment
