"""Ascenso por gradiente sobre ω con retroceso (backtracking).

Se optimiza log ω, así las escalas siguen positivas sin proyecciones. Si un paso
hace bajar la pérdida, el paso se divide a la mitad (hasta `max_halvings`
veces), por lo que la pérdida registrada nunca decrece. Un candidato cuyo Ĉ00
tiene rango efectivo menor que `n_outputs` se rechaza igual que uno no finito.
Agotar las reducciones detiene el ascenso sin declararlo convergido.
"""

import logging

import numpy as np
import pandas as pd

from ..config import RunConfig
from ..errors import InitializationError, LossError
from ..models import EpochRecord, FeatureMapSpec, OmegaVector, SnapshotData, TrainingTrace
from .loss import grad_fd, loss


def _top_n(config: RunConfig) -> int | None:
    return config.n_outputs if config.partial_trace else None


def optimize(spec: FeatureMapSpec, config: RunConfig, data: SnapshotData) -> TrainingTrace:
    omega = OmegaVector.from_array(config.omega_init)
    top_n = _top_n(config)

    def _loss(w: OmegaVector, min_rank: int | None = None) -> float:
        return loss(spec, w, data, config.mode, config.pinv_rel_tol, top_n, min_rank)

    try:
        current = _loss(omega)
    except LossError as e:
        logging.error(f"La pérdida inicial no es finita en omega={omega}.")
        raise InitializationError(
            f"Pérdida no finita en omega^(0)={omega}; pruebe con escalas iniciales más pequeñas."
        ) from e

    epochs: list[EpochRecord] = []
    converged = False
    stop_reason = "max_epochs"
    stalled = False
    for k in range(config.max_epochs):
        grad = grad_fd(spec, omega, data, config.mode, config.fd_step, config.pinv_rel_tol, top_n)
        grad_norm = float(np.linalg.norm(grad))
        epochs.append(EpochRecord(k=k, omega=omega, loss=current, grad_norm=grad_norm))
        logging.info(f"Época {k}: omega={omega}, pérdida={current:.10g}, |grad|={grad_norm:.3e}")

        if stalled or grad_norm < config.grad_tol:
            converged = True
            stop_reason = "tolerance"
            break
        if k == config.max_epochs - 1:
            break

        # gradiente respecto de log ω: ω ∘ ∇_ω L
        log_omega = np.log(omega.as_array())
        step = config.learning_rate * omega.as_array() * grad
        step_norm = np.linalg.norm(step)
        if step_norm > config.max_log_step:
            step *= config.max_log_step / step_norm

        accepted = None
        for halving in range(config.max_halvings + 1):
            candidate = OmegaVector.from_array(np.exp(log_omega + step))
            try:
                value = _loss(candidate, config.n_outputs)
            except LossError as e:
                logging.debug(f"{e}; se reduce el paso.")
                value = -np.inf
            if value >= current:
                accepted = (candidate, value)
                break
            step = step / 2.0
        if accepted is None:
            logging.info(f"Ningún paso mejora la pérdida tras {config.max_halvings} reducciones; se detiene.")
            stop_reason = "backtracking"
            break

        candidate, value = accepted
        relative_change = abs(value - current) / max(abs(current), np.finfo(float).tiny)
        stalled = relative_change < config.rel_loss_tol
        omega, current = candidate, value

    if not converged:
        logging.warning(f"Sin convergencia tras {len(epochs)} épocas ({stop_reason}, omega={omega}).")
    return TrainingTrace(epochs=tuple(epochs), converged=converged, final_omega=omega,
                         stop_reason=stop_reason)


def trace_to_frame(trace: TrainingTrace) -> pd.DataFrame:
    """Una fila por época: epoch, componentes de ω, loss, grad_norm."""
    rows = []
    for record in trace.epochs:
        row = {"epoch": record.k}
        for i, a in enumerate(record.omega.omega_a):
            row[f"omega_a{i}"] = a
        row["omega_W"] = record.omega.omega_W
        row["omega_b"] = record.omega.omega_b
        row["loss"] = record.loss
        row["grad_norm"] = record.grad_norm
        rows.append(row)
    return pd.DataFrame(rows)
