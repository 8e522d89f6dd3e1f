"""Jerarquía de errores de ranndy.

Cada clase lleva su propio código de salida para que la CLI pueda terminar con
un código distinto por tipo de fallo.
"""


class RanndyError(Exception):
    exit_code = 1


# --- Configuración y artefactos ---

class ConfigError(RanndyError, ValueError):
    exit_code = 2


class ArtifactMissingError(RanndyError, FileNotFoundError):
    exit_code = 9


# --- Formato de matrices ---

class MatrixIOError(RanndyError, OSError):
    exit_code = 3

    def __init__(self, path, reason: str):
        self.path = str(path)
        super().__init__(f"{self.path}: {reason}")


class MatrixFormatError(MatrixIOError):
    pass


class MatrixLengthError(MatrixIOError):
    pass


# --- Álgebra lineal ---

class DimensionError(RanndyError, ValueError):
    exit_code = 4


class ContractError(RanndyError, ValueError):
    exit_code = 4


class RankError(RanndyError, ValueError):
    exit_code = 5

    def __init__(self, requested: int, effective_rank: int, what: str = "C00"):
        self.requested = requested
        self.effective_rank = effective_rank
        super().__init__(
            f"Se pidieron {requested} funciones pero el rango efectivo de {what} es {effective_rank}."
        )


# --- Optimización ---

class LossError(RanndyError, ArithmeticError):
    exit_code = 6

    def __init__(self, omega, reason: str):
        self.omega = omega
        super().__init__(f"Pérdida no evaluable en omega={omega}: {reason}")


class InitializationError(RanndyError, ArithmeticError):
    exit_code = 6


# --- Simulación ---

class AbsorbingStateError(RanndyError, ArithmeticError):
    exit_code = 7

    def __init__(self, state: float):
        self.state = state
        super().__init__(f"Grado nulo en x={state!r}: estado absorbente del paseo.")


class IntegrationError(RanndyError, ArithmeticError):
    exit_code = 7

    def __init__(self, time: float):
        self.time = time
        super().__init__(f"Estado no finito durante la integración en t={time:.6g}.")


class BlowUpError(RanndyError, ArithmeticError):
    exit_code = 7

    def __init__(self, step: int, block: int):
        self.step = step
        self.block = block
        super().__init__(f"Euler-Maruyama divergió en el paso {step} (bloque {block}).")


# --- Análisis ---

class NotADensityError(RanndyError, ValueError):
    exit_code = 8


class DegenerateInputError(RanndyError, ValueError):
    exit_code = 8


class ModeError(RanndyError, ValueError):
    exit_code = 8
