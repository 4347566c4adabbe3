"""Converting trajectories and reports to files on disk"""
from pathlib import Path
import logging

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

_HEADER_DTYPE = np.dtype('<i8')
_DATA_DTYPE = np.dtype('<f8')


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    """Write a table as comma-separated text with a header row and LF line endings

    Args:
        frame: Table to write
        path: Destination
    Returns:
        Path to the file
    """
    path = Path(path)
    frame.to_csv(path, index=False, lineterminator='\n')
    logger.debug(f'Wrote {len(frame)} rows to {path}')
    return path


def read_csv(path: Path) -> pd.DataFrame:
    """Read a table written by :meth:`write_csv`"""
    return pd.read_csv(path)


def write_coefficients(coeffs: np.ndarray, path: Path) -> Path:
    """Write the coefficients of every sample of a trajectory to a binary file

    The file starts with three little-endian 64-bit integers: the spatial dimension,
    the number of modes per axis and the number of samples.
    The coefficients follow as little-endian doubles in C order, shape ``(count, 3, *modes)``.

    Args:
        coeffs: Coefficients. Shape: (count, 3, *modes)
        path: Destination
    Returns:
        Path to the file
    """
    coeffs = np.asarray(coeffs)
    n = coeffs.ndim - 2
    if n not in (1, 2) or coeffs.shape[1] != 3:
        raise ValueError(f'Expected coefficients of shape (count, 3, *modes). Got {coeffs.shape}')
    header = np.array([n, coeffs.shape[-1], coeffs.shape[0]], dtype=_HEADER_DTYPE)

    path = Path(path)
    with path.open('wb') as fp:
        fp.write(header.tobytes())
        fp.write(np.ascontiguousarray(coeffs, dtype=_DATA_DTYPE).tobytes())
    return path


def read_coefficients(path: Path) -> np.ndarray:
    """Read coefficients written by :meth:`write_coefficients`

    Args:
        path: Path to the file
    Returns:
        Coefficients. Shape: (count, 3, *modes)
    """
    content = Path(path).read_bytes()
    n, modes, count = np.frombuffer(content[:3 * _HEADER_DTYPE.itemsize], dtype=_HEADER_DTYPE)
    data = np.frombuffer(content[3 * _HEADER_DTYPE.itemsize:], dtype=_DATA_DTYPE)
    expected = count * 3 * modes ** n
    if len(data) != expected:
        raise ValueError(f'File holds {len(data)} values, header promises {expected}')
    return data.reshape((int(count), 3) + (int(modes),) * int(n)).astype(float)
