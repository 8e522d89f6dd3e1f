from .artifacts import load_decomposition, load_omega_record, load_snapshot, save_omega, save_snapshot
from .cluster import cmd_cluster
from .decompose import cmd_decompose
from .generate import cmd_generate, simulate, system_values
from .manifest import RunRecorder
from .reconstruct import cmd_reconstruct
from .search import cmd_search
from .train import cmd_train

__all__ = [
    'RunRecorder',
    'cmd_cluster',
    'cmd_decompose',
    'cmd_generate',
    'cmd_reconstruct',
    'cmd_search',
    'cmd_train',
    'load_decomposition',
    'load_omega_record',
    'load_snapshot',
    'save_omega',
    'save_snapshot',
    'simulate',
    'system_values',
]
