"""Chorro de Bickley: flujo zonal periódico con perturbaciones de onda de Rossby.

Función de corriente

    Φ = c3·y − U0·L·tanh(y/L)
        + U0·L·sech²(y/L)·[A3 cos(k3 x) + A2 cos(k2 x − σ2 t) + A1 cos(k1 x − σ1 t)]

con ẋ = −∂Φ/∂y, ẏ = ∂Φ/∂x. Constantes por defecto de la literatura del
chorro de Bickley; todas se pueden sobrescribir desde `system_params`.
"""

import logging
import math
from dataclasses import dataclass, fields

import numpy as np

from ..errors import ConfigError, ContractError, IntegrationError


@dataclass(frozen=True)
class BickleyParams:
    U0: float = 5.4138
    L: float = 1.77
    r0: float = 6.371
    c2_factor: float = 0.205
    c3_factor: float = 0.461
    A1: float = 0.0075
    A2: float = 0.15
    A3: float = 0.3

    @property
    def c2(self) -> float:
        return self.c2_factor * self.U0

    @property
    def c3(self) -> float:
        return self.c3_factor * self.U0

    def k(self, n: int) -> float:
        return 2.0 * n / self.r0

    @property
    def sigma1(self) -> float:
        return 0.5 * self.k(2) * (self.c2 - self.c3)

    @property
    def sigma2(self) -> float:
        return 2.0 * self.sigma1

    @property
    def period(self) -> float:
        # 2π/k1: el campo es periódico en x con este período (≈ 20)
        return math.pi * self.r0

    @classmethod
    def from_mapping(cls, values: dict) -> "BickleyParams":
        names = {f.name for f in fields(cls)}
        return cls(**{k: float(v) for k, v in values.items() if k in names})


def bickley_velocity(x, y, t: float, params: BickleyParams) -> tuple[np.ndarray, np.ndarray]:
    p = params
    k1, k2, k3 = p.k(1), p.k(2), p.k(3)
    phase1 = k1 * x - p.sigma1 * t
    phase2 = k2 * x - p.sigma2 * t
    G = p.A3 * np.cos(k3 * x) + p.A2 * np.cos(phase2) + p.A1 * np.cos(phase1)
    G_x = -(p.A3 * k3 * np.sin(k3 * x) + p.A2 * k2 * np.sin(phase2) + p.A1 * k1 * np.sin(phase1))
    tanh = np.tanh(y / p.L)
    sech2 = 1.0 - tanh ** 2
    # ∂Φ/∂y = c3 − U0 sech² − 2 U0 sech² tanh G
    u = -p.c3 + p.U0 * sech2 + 2.0 * p.U0 * sech2 * tanh * G
    v = p.U0 * p.L * sech2 * G_x
    return u, v


def _rk4_step(state: np.ndarray, t: float, h: float, params: BickleyParams) -> np.ndarray:
    def f(s, time):
        u, v = bickley_velocity(s[0], s[1], time, params)
        return np.stack([u, v])

    k1 = f(state, t)
    k2 = f(state + 0.5 * h * k1, t + 0.5 * h)
    k3 = f(state + 0.5 * h * k2, t + 0.5 * h)
    k4 = f(state + h * k3, t + h)
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def initial_positions(m: int, seed: int, period: float, half_height: float = 4.0) -> np.ndarray:
    """Uniformes en [0, period) × [−half_height, half_height]."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, period, m)
    y = rng.uniform(-half_height, half_height, m)
    return np.stack([x, y])


def bickley_trajectories(
    m: int,
    t0: float,
    t1: float,
    n_saves: int,
    seed: int,
    params: BickleyParams | None = None,
    step: float = 0.1,
    half_height: float = 4.0,
) -> np.ndarray:
    """Posiciones (n_saves, 2, m) en n_saves tiempos equiespaciados de [t0, t1].

    Integración RK4 de paso fijo; cada intervalo entre guardados se parte en
    ceil(intervalo/step) pasos iguales. Las posiciones iniciales cubren un período
    completo en x; la integración no envuelve x y solo los instantes guardados se
    reportan módulo el período.
    """
    if not t1 > t0:
        raise ContractError(f"Se necesita t1 > t0 (t0={t0}, t1={t1}).")
    if n_saves < 1 or m < 1:
        raise ContractError(f"m y n_saves deben ser positivos (m={m}, n_saves={n_saves}).")
    if params is None:
        params = BickleyParams()

    state = initial_positions(m, seed, params.period, half_height)
    times = np.linspace(t0, t1, n_saves) if n_saves > 1 else np.array([t0])
    saves = np.empty((n_saves, 2, m), dtype=np.float64)
    saves[0] = state
    t = float(t0)
    for i in range(1, n_saves):
        interval = times[i] - times[i - 1]
        n_sub = max(1, math.ceil(interval / step - 1e-12))
        h = interval / n_sub
        for _ in range(n_sub):
            state = _rk4_step(state, t, h, params)
            t += h
            if not np.all(np.isfinite(state)):
                logging.error(f"Bickley: estado no finito en t={t:.6g}.")
                raise IntegrationError(t)
        t = float(times[i])
        saves[i] = state
        logging.debug(f"Bickley: guardado {i}/{n_saves - 1} en t={t:.4g}.")
    saves[:, 0, :] = np.mod(saves[:, 0, :], params.period)
    return saves


def params_from_config(values: dict) -> BickleyParams:
    """BickleyParams desde los valores de `system_params`; escalas no positivas son error de configuración."""
    try:
        params = BickleyParams.from_mapping(values)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Parámetros de Bickley inválidos: {e}") from e
    for name in ("U0", "L", "r0"):
        if not getattr(params, name) > 0:
            raise ConfigError(f"Parámetro de Bickley '{name}' debe ser > 0, se recibió {getattr(params, name)}.")
    return params
