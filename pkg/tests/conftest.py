import json

import numpy as np
import pytest

from ranndy.config import build_config
from ranndy.models import FeatureMapSpec
from ranndy.ranndy import main
from ranndy.systems import euler_maruyama, gaussian_sampler, ornstein_uhlenbeck


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="ejecuta las pruebas lentas de aceptación")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: prueba larga, solo con --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="necesita --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def ou_data():
    """OU con β=1, τ=0.5 desde la distribución invariante."""
    return euler_maruyama(ornstein_uhlenbeck(lag=0.5), 20_000, gaussian_sampler(), seed=3)


@pytest.fixture
def small_config():
    return build_config({
        "seed": 11,
        "layer_sizes": [20],
        "activation": "tanh",
        "omega_init": [1.0, 1.0],
        "learning_rate": 0.1,
        "max_epochs": 5,
        "n_outputs": 4,
        "mode": "self_adjoint",
    })


def single_unit_spec(w: float, b: float, activation: str = "tanh") -> FeatureMapSpec:
    return FeatureMapSpec(
        base_weights=(np.array([[w]]),),
        base_biases=(np.array([b]),),
        activation=activation,
        seed=0,
        layer_sizes=(1,),
    )


@pytest.fixture
def write_config(tmp_path):
    def _write(name: str = "config.json", **fields):
        path = tmp_path / name
        path.write_text(json.dumps(fields), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def cli():
    def _run(*args) -> int:
        return main([str(a) for a in args])

    return _run
