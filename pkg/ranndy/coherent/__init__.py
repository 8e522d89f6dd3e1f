from .baseline import edmd_reference_partition, gaussian_dictionary, grid_centers
from .kmeans import kmeans, kmeans_plus_plus
from .sets import coherent_sets, singular_embedding

__all__ = [
    'coherent_sets',
    'edmd_reference_partition',
    'gaussian_dictionary',
    'grid_centers',
    'kmeans',
    'kmeans_plus_plus',
    'singular_embedding',
]
