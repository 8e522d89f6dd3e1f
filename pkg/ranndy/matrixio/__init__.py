from .binary import MAGIC, decode_matrix, encode_matrix, read_matrix, write_matrix
from .text import export_csv, read_csv_matrix, write_table

__all__ = [
    'MAGIC',
    'decode_matrix',
    'encode_matrix',
    'export_csv',
    'read_csv_matrix',
    'read_matrix',
    'write_matrix',
    'write_table',
]
