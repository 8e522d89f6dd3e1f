from . import timing, workers

__all__ = ['timing', 'workers']
