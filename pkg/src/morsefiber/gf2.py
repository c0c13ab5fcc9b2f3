"""GF(2) matrix utilities with a compiled core and a pure-Python fallback.

The compiled extension is used when importable; ``MF_PURE_PYTHON=1``
forces the fallback (useful for benchmarking the two side by side).
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

if os.environ.get("MF_PURE_PYTHON"):
    from . import _gf2_fallback as _impl

    BACKEND = "python"
else:
    try:
        from . import _gf2core as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _gf2_fallback as _impl

        BACKEND = "python"


def backend_name() -> str:
    return BACKEND


def words_for(n_bits: int) -> int:
    return max(1, (n_bits + 63) // 64)


def pack_columns(columns: Sequence[Iterable[int]], n_rows: int) -> np.ndarray:
    """Pack sparse columns (iterables of row indices) into uint64 bitsets."""
    words = words_for(n_rows)
    out = np.zeros((len(columns), words), dtype=np.uint64)
    one = np.uint64(1)
    for j, rows in enumerate(columns):
        for r in rows:
            out[j, r >> 6] |= one << np.uint64(r & 63)
    return out


def bits_of(packed_row: np.ndarray) -> list[int]:
    """Set-bit indices of one packed bitset row."""
    value = int.from_bytes(np.ascontiguousarray(packed_row).tobytes(), "little")
    bits = []
    while value:
        low = value & -value
        bits.append(low.bit_length() - 1)
        value ^= low
    return bits


def reduce_lows(cols: np.ndarray, n_rows: int) -> np.ndarray:
    return _impl.reduce_lows(cols, n_rows)


def reduce_full(cols: np.ndarray, n_rows: int) -> tuple[np.ndarray, np.ndarray]:
    return _impl.reduce_full(cols, n_rows)


def rank(cols: np.ndarray, n_rows: int) -> int:
    if cols.shape[0] == 0:
        return 0
    return int((reduce_lows(cols, n_rows) >= 0).sum())
