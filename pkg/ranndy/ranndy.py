"""Punto de entrada de la línea de comandos de ranndy.

Cada subcomando lee archivos de un directorio, escribe sus resultados en `--out`
y termina con `manifest.json`. El código de salida es 0 solo si se escribieron
todas las salidas; cada tipo de error tiene su propio código (ver errors.py).
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .config import SYSTEM_DEFAULTS, RunConfig, load_config
from .errors import RanndyError
from .pipeline import (
    RunRecorder,
    cmd_cluster,
    cmd_decompose,
    cmd_generate,
    cmd_reconstruct,
    cmd_search,
    cmd_train,
)
from .pipeline.artifacts import DECOMPOSITION_META, SNAPSHOT_META, TRAINED_CONFIG

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="archivo JSON con un RunConfig")
    common.add_argument("--out", type=Path, help="directorio de salida (por defecto out/<subcomando>)")
    common.add_argument("--seed", type=int, help="sobrescribe la semilla de la configuración")
    common.add_argument("--mode", choices=["self_adjoint", "non_self_adjoint"], help="sobrescribe el modo")
    common.add_argument("-v", "--verbose", action="store_true", help="registro a nivel DEBUG")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="ranndy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ranndy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="simula datos (X, Y) de un sistema de referencia")
    p.add_argument("system", choices=sorted(SYSTEM_DEFAULTS))

    p = sub.add_parser("train", parents=[common], help="optimiza ω por ascenso de la traza")
    p.add_argument("--data", type=Path, required=True)

    p = sub.add_parser("decompose", parents=[common], help="resuelve la capa de salida en ω fijo")
    p.add_argument("--data", type=Path, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--omega", type=Path, help="omega_final.json de 'train'")
    group.add_argument("--initial", action="store_true", help="usa ω^(0) de la configuración")

    p = sub.add_parser("reconstruct", parents=[common], help="reconstruye el grafón de rango bajo")
    p.add_argument("--decomposition", type=Path, required=True)
    p.add_argument("--data", type=Path)
    p.add_argument("--rank", type=int)
    p.add_argument("--density", choices=["samples", "features"], default="features",
                   help="origen de π̂: proyección sobre el diccionario o núcleo gaussiano")

    p = sub.add_parser("cluster", parents=[common], help="agrupa las funciones singulares en conjuntos coherentes")
    p.add_argument("--decomposition", type=Path, required=True)
    p.add_argument("--data", type=Path)
    p.add_argument("-k", "--clusters", type=int)

    p = sub.add_parser("search", parents=[common], help="superficie de pérdida en una malla de escalas")
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--w-values", type=float, nargs="+")
    p.add_argument("--b-values", type=float, nargs="+")
    p.add_argument("--no-distributions", action="store_true")
    return parser


def _system_of(data_dir: Path | None) -> str | None:
    if data_dir is None or not (data_dir / SNAPSHOT_META).exists():
        return None
    return json.loads((data_dir / SNAPSHOT_META).read_text(encoding="utf-8")).get("system")


def _data_dir_of(args: argparse.Namespace) -> Path | None:
    if getattr(args, "data", None) is not None:
        return args.data
    decomposition = getattr(args, "decomposition", None)
    if decomposition is not None and (decomposition / DECOMPOSITION_META).exists():
        return Path(json.loads((decomposition / DECOMPOSITION_META).read_text(encoding="utf-8"))["data_dir"])
    return None


def _trained_config_of(args: argparse.Namespace) -> Path | None:
    omega = getattr(args, "omega", None)
    if omega is None or not (omega.parent / TRAINED_CONFIG).exists():
        return None
    return omega.parent / TRAINED_CONFIG


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """--config si se da; si no, la configuración de 'train' junto a --omega; si no, el
    preset del sistema de los datos; si no, los valores por defecto."""
    trained = _trained_config_of(args)
    if args.config is not None:
        config = load_config(args.config)
    elif trained is not None:
        config = load_config(trained)
    else:
        system = args.system if args.command == "generate" else _system_of(_data_dir_of(args))
        config = RunConfig.preset(system) if system in SYSTEM_DEFAULTS else RunConfig()
    return config.with_overrides(seed=args.seed, mode=args.mode)


def run(args: argparse.Namespace, argv: list[str]) -> Path:
    config = resolve_config(args)
    out_dir = args.out or Path("out") / args.command
    out_dir.mkdir(parents=True, exist_ok=True)
    recorder = RunRecorder(args.command, config.seed, argv, args.config)
    logging.info(f"'{args.command}' con semilla {config.seed}, salida en '{out_dir}'.")

    if args.command == "generate":
        cmd_generate(args.system, config, out_dir, recorder)
    elif args.command == "train":
        cmd_train(config, args.data, out_dir, recorder)
    elif args.command == "decompose":
        cmd_decompose(config, args.data, args.omega, out_dir, recorder, initial=args.initial)
    elif args.command == "reconstruct":
        cmd_reconstruct(config, args.decomposition, out_dir, recorder, args.data, args.rank, args.density)
    elif args.command == "cluster":
        cmd_cluster(config, args.decomposition, out_dir, recorder, args.data, args.clusters)
    elif args.command == "search":
        cmd_search(config, args.data, out_dir, recorder, args.w_values, args.b_values,
                   distributions=not args.no_distributions)
    return recorder.write(out_dir)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT, force=True)
    try:
        manifest = run(args, argv)
    except RanndyError as e:
        logging.error(f"{type(e).__name__}: {e}", exc_info=args.verbose)
        return e.exit_code
    except Exception as e:
        logging.error(f"Error inesperado en '{args.command}': {e}", exc_info=True)
        return 1
    logging.info(f"Listo; manifiesto en '{manifest}'.")
    return 0
