"""Subcomando `generate`: datos (X, Y) de los sistemas de referencia."""

import logging
import math
from pathlib import Path

from .. import matrixio
from ..config import SYSTEM_DEFAULTS, RunConfig
from ..errors import ConfigError
from ..models import SnapshotData
from ..systems import (
    bickley_trajectories,
    double_well,
    euler_maruyama,
    gaussian_sampler,
    graphon_walk,
    ornstein_uhlenbeck,
    params_from_config,
    preset_graphon,
    uniform_sampler,
)
from .artifacts import save_snapshot
from .manifest import RunRecorder


def system_values(system: str, config: RunConfig) -> dict[str, float]:
    if system not in SYSTEM_DEFAULTS:
        raise ConfigError(f"Sistema desconocido: '{system}'. Opciones: {sorted(SYSTEM_DEFAULTS)}")
    overrides = config.system_params if config.system == system else {}
    return {**SYSTEM_DEFAULTS[system], **overrides}


def simulate(system: str, config: RunConfig) -> tuple[SnapshotData, dict]:
    """Devuelve los datos y, para Bickley, la trayectoria completa en `extras`."""
    values = system_values(system, config)
    seed = config.seed
    extras = {}
    if system == "graphon":
        spec = preset_graphon(int(values["grid_resolution"]))
        walk = graphon_walk(spec, int(values["steps"]), float(values["x0"]), seed, int(values["burn_in"]))
        data = SnapshotData(X=walk[:-1], Y=walk[1:], lag=1.0, system_label=system)
    elif system == "bickley":
        saves = bickley_trajectories(
            int(values["m"]), values["t0"], values["t1"], int(values["n_saves"]), seed,
            params=params_from_config(values), step=values["step"], half_height=values["half_height"],
        )
        data = SnapshotData(X=saves[0], Y=saves[-1], lag=values["t1"] - values["t0"], system_label=system)
        extras["trajectory"] = saves.reshape(-1, saves.shape[-1])
    elif system == "ou":
        spec = ornstein_uhlenbeck(values["beta"], values["dt"], values["lag"])
        sampler = gaussian_sampler(std=1.0 / math.sqrt(values["beta"]))
        data = euler_maruyama(spec, int(values["m"]), sampler, seed)
    else:
        spec = double_well(values["beta"], values["dt"], values["lag"])
        data = euler_maruyama(spec, int(values["m"]), uniform_sampler(values["x_min"], values["x_max"]), seed)
    return data, extras


def cmd_generate(system: str, config: RunConfig, out_dir: str | Path, recorder: RunRecorder) -> SnapshotData:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with recorder.stage("simulate"):
        data, extras = simulate(system, config)
    recorder.output(*save_snapshot(data, out_dir, config.seed))
    if "trajectory" in extras and extras["trajectory"].shape[0] > 4:
        path = out_dir / "trajectory.bin"
        matrixio.write_matrix(extras["trajectory"], path)
        recorder.output(path)
    logging.info(f"'{system}': X, Y de forma {data.X.shape} escritos en '{out_dir}'.")
    return data
