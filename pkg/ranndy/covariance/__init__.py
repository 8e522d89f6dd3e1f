from .estimators import effective_rank, estimate, inverse_sqrt, pseudo_inverse

__all__ = [
    'effective_rank',
    'estimate',
    'inverse_sqrt',
    'pseudo_inverse',
]
