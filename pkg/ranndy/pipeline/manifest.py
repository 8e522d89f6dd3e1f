"""Registro de procedencia de cada subcomando (manifest.json)."""

import logging
from contextlib import contextmanager
from pathlib import Path

from .. import __version__, utils
from ..models import PipelineManifest

MANIFEST_NAME = "manifest.json"


class RunRecorder:
    """Acumula entradas, salidas y tiempos; `write` se llama al final."""

    def __init__(self, subcommand: str, seed: int, argv: list[str] | None = None,
                 config_path: str | Path | None = None):
        self.manifest = PipelineManifest(
            subcommand=subcommand,
            argv=list(argv or []),
            config_path=str(config_path) if config_path is not None else None,
            seed=seed,
            version=__version__,
        )

    def input(self, name: str, path: str | Path) -> None:
        self.manifest.inputs[name] = str(path)

    def output(self, *paths: str | Path) -> None:
        self.manifest.outputs.extend(str(p) for p in paths)

    @contextmanager
    def stage(self, label: str):
        with utils.timing.Stopwatch() as sw:
            yield sw
        self.manifest.timings[label] = sw.seconds
        logging.info(f"Etapa '{label}' completada en {sw.seconds:.2f} s.")

    def write(self, out_dir: str | Path) -> Path:
        path = Path(out_dir) / MANIFEST_NAME
        self.manifest.finished_at = utils.timing.get_utc_now()
        path.write_text(self.manifest.model_dump_json(indent=2), encoding="utf-8")
        return path
