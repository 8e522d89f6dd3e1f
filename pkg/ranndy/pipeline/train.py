"""Subcomando `train`: optimización de ω."""

from pathlib import Path

from .. import matrixio
from ..config import RunConfig, save_config
from ..features import build_feature_map
from ..hyperopt import optimize, trace_to_frame
from ..models import TrainingTrace
from .artifacts import TRAINED_CONFIG, FeatureBasis, load_snapshot, save_omega
from .manifest import RunRecorder


def cmd_train(config: RunConfig, data_dir: str | Path, out_dir: str | Path, recorder: RunRecorder) -> TrainingTrace:
    out_dir = Path(out_dir)
    data = load_snapshot(data_dir)
    recorder.input("data", data_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    spec = build_feature_map(config, data.dim)
    with recorder.stage("optimize"):
        trace = optimize(spec, config, data)

    trace_path = out_dir / "trace.csv"
    matrixio.write_table(trace_to_frame(trace), trace_path)
    omega_path = save_omega(out_dir / "omega_final.json", trace.final_omega, trace.final_loss,
                            FeatureBasis.from_config(config))
    config_path = out_dir / TRAINED_CONFIG
    save_config(config, config_path)
    recorder.output(trace_path, omega_path, config_path)
    return trace
