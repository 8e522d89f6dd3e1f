from .heatmap import heatmap, range_path, read_range, to_gray
from .reconstruction import (
    density_from_features,
    density_from_samples,
    estimate_invariant_density,
    expand,
    perron_frobenius_functions,
    quadrature_weights,
    reconstruct,
    relative_l2_error,
)

__all__ = [
    'density_from_features',
    'density_from_samples',
    'estimate_invariant_density',
    'expand',
    'heatmap',
    'perron_frobenius_functions',
    'quadrature_weights',
    'range_path',
    'read_range',
    'reconstruct',
    'relative_l2_error',
    'to_gray',
]
