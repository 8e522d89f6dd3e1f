from .bickley import (
    BickleyParams,
    bickley_trajectories,
    bickley_velocity,
    initial_positions,
    params_from_config,
)
from .graphon import (
    block_graphon,
    constant_graphon,
    degree_function,
    graphon_walk,
    grid_points,
    preset_graphon,
)
from .sde import (
    double_well,
    double_well_potential,
    euler_maruyama,
    gaussian_sampler,
    ornstein_uhlenbeck,
    uniform_sampler,
)

__all__ = [
    'BickleyParams',
    'bickley_trajectories',
    'bickley_velocity',
    'block_graphon',
    'constant_graphon',
    'degree_function',
    'double_well',
    'double_well_potential',
    'euler_maruyama',
    'gaussian_sampler',
    'graphon_walk',
    'grid_points',
    'initial_positions',
    'ornstein_uhlenbeck',
    'params_from_config',
    'preset_graphon',
    'uniform_sampler',
]
