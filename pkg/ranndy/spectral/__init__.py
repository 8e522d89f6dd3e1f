from .solvers import (
    evaluate_functions,
    load_result,
    save_result,
    solve,
    solve_non_self_adjoint,
    solve_self_adjoint,
    spectrum,
)

__all__ = [
    'evaluate_functions',
    'load_result',
    'save_result',
    'solve',
    'solve_non_self_adjoint',
    'solve_self_adjoint',
    'spectrum',
]
