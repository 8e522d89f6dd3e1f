from .loss import central_difference, features, grad_fd, is_trajectory, loss
from .optimizer import optimize, trace_to_frame
from .search import distribution_search, grid_search, scale_grid

__all__ = [
    'central_difference',
    'distribution_search',
    'features',
    'grad_fd',
    'grid_search',
    'is_trajectory',
    'loss',
    'optimize',
    'scale_grid',
    'trace_to_frame',
]
