from .feature_map import (
    activate,
    build_feature_map,
    evaluate,
    load_feature_map,
    save_feature_map,
)

__all__ = [
    'activate',
    'build_feature_map',
    'evaluate',
    'load_feature_map',
    'save_feature_map',
]
