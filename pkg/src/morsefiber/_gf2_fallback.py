"""Pure-Python GF(2) column elimination, using int bitsets.

Same contract as the compiled ``_gf2core`` extension; selected at import
time by :mod:`morsefiber.gf2` when the extension is unavailable or
``MF_PURE_PYTHON`` is set.
"""

from __future__ import annotations

import numpy as np


def _to_ints(cols: np.ndarray) -> list[int]:
    buf = np.ascontiguousarray(cols)
    return [int.from_bytes(buf[j].tobytes(), "little") for j in range(buf.shape[0])]


def _pack_ints(ints: list[int], words: int) -> np.ndarray:
    out = np.zeros((len(ints), words), dtype=np.uint64)
    for j, value in enumerate(ints):
        row = value.to_bytes(words * 8, "little")
        out[j] = np.frombuffer(row, dtype=np.uint64)
    return out


def reduce_lows(cols: np.ndarray, n_rows: int) -> np.ndarray:
    """Left-to-right reduction; returns the final lowest set row per column."""
    ints = _to_ints(cols)
    n_cols = len(ints)
    lows = np.full(n_cols, -1, dtype=np.int64)
    owner: dict[int, int] = {}
    for j in range(n_cols):
        col = ints[j]
        while col:
            low = col.bit_length() - 1
            other = owner.get(low)
            if other is None:
                owner[low] = j
                break
            col ^= ints[other]
        ints[j] = col
        lows[j] = col.bit_length() - 1 if col else -1
    return lows


def reduce_full(cols: np.ndarray, n_rows: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduction that also tracks column combinations.

    Returns ``(lows, combos)`` where row j of ``combos`` is the bitset of
    original columns summed into column j.  Rows with ``lows[j] == -1``
    form a kernel basis of the column map.
    """
    ints = _to_ints(cols)
    n_cols = len(ints)
    lows = np.full(n_cols, -1, dtype=np.int64)
    combos = [1 << j for j in range(n_cols)]
    owner: dict[int, int] = {}
    for j in range(n_cols):
        col = ints[j]
        combo = combos[j]
        while col:
            low = col.bit_length() - 1
            other = owner.get(low)
            if other is None:
                owner[low] = j
                break
            col ^= ints[other]
            combo ^= combos[other]
        ints[j] = col
        combos[j] = combo
        lows[j] = col.bit_length() - 1 if col else -1
    combo_words = max(1, (n_cols + 63) // 64)
    return lows, _pack_ints(combos, combo_words)
