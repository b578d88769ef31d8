from pathlib import Path
from typing import Union

import numpy as np

from utils.errors import DataError

MAGIC = b'MVMX'
FORMAT_VERSION = 1
# magic, u32 version, u64 rows, u64 cols, then little-endian f64 row-major payload
HEADER_DTYPE = np.dtype([('magic', 'S4'), ('version', '<u4'), ('rows', '<u8'), ('cols', '<u8')])


def save_matrix(path: Union[str, Path], matrix: np.ndarray):
    """Writes a 2-D matrix in the MVMX binary format"""

    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise DataError(f'Only 2-D matrices can be saved, got shape {matrix.shape}')

    header = np.array([(MAGIC, FORMAT_VERSION, matrix.shape[0], matrix.shape[1])], dtype=HEADER_DTYPE)
    with open(path, 'wb') as file:
        file.write(header.tobytes())
        file.write(np.ascontiguousarray(matrix, dtype='<f8').tobytes())


def load_matrix(path: Union[str, Path]) -> np.ndarray:
    """Reads a MVMX file, rejecting bad magic bytes, unknown versions and truncated payloads"""

    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise DataError(f'Cannot read matrix file {path}: {e}')

    if len(data) < HEADER_DTYPE.itemsize:
        raise DataError(f'{path} | truncated header')

    header = np.frombuffer(data[:HEADER_DTYPE.itemsize], dtype=HEADER_DTYPE)[0]
    if header['magic'] != MAGIC:
        raise DataError(f'{path} | bad magic bytes {header["magic"]!r}')

    if header['version'] != FORMAT_VERSION:
        raise DataError(f'{path} | unsupported format version {header["version"]}')

    rows, cols = int(header['rows']), int(header['cols'])
    payload = data[HEADER_DTYPE.itemsize:]
    if len(payload) != rows * cols * 8:
        raise DataError(f'{path} | header declares {rows} x {cols} but payload has {len(payload)} bytes')

    return np.frombuffer(payload, dtype='<f8').reshape(rows, cols).astype(np.float64)
