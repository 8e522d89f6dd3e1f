"""Subcomando `search`: superficie de pérdida sobre (ω_W, ω_b) y comparación de distribuciones."""

from pathlib import Path

import numpy as np
import pandas as pd

from .. import matrixio
from ..config import RunConfig
from ..features import build_feature_map
from ..hyperopt import distribution_search, grid_search, scale_grid
from ..models import OmegaVector
from .artifacts import FeatureBasis, load_snapshot, save_omega
from .manifest import RunRecorder

DEFAULT_SCALES = np.logspace(-3, 1, 9)


def cmd_search(config: RunConfig, data_dir: str | Path, out_dir: str | Path, recorder: RunRecorder,
               w_values=None, b_values=None, distributions: bool = True) -> OmegaVector:
    data = load_snapshot(data_dir)
    recorder.input("data", data_dir)
    w_values = DEFAULT_SCALES if w_values is None else np.asarray(w_values, dtype=np.float64)
    b_values = DEFAULT_SCALES if b_values is None else np.asarray(b_values, dtype=np.float64)
    omega_a = tuple(config.omega_init[:-2])
    grid, shape = scale_grid(w_values, b_values, omega_a)

    with recorder.stage("grid_search"):
        best, table = grid_search(build_feature_map, config, data, grid, shape)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    surface = pd.DataFrame({
        "omega_W": [w.omega_W for w in grid],
        "omega_b": [w.omega_b for w in grid],
        "loss": table.ravel(),
    })
    written = [out_dir / "loss_surface.csv"]
    matrixio.write_table(surface, written[0])
    best_loss = float(np.nanmax(table))
    written.append(save_omega(out_dir / "omega_best.json", best, best_loss, FeatureBasis.from_config(config)))

    if distributions:
        with recorder.stage("distribution_search"):
            frame = distribution_search(config, data)
        written.append(out_dir / "distributions.csv")
        matrixio.write_table(frame, written[-1])
    recorder.output(*written)
    return best
