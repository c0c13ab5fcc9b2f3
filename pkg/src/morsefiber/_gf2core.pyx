# cython: language_level=3
"""Compiled GF(2) column-elimination kernels over bit-packed columns.

Columns are rows of a (n_cols, words) uint64 array; row r of the matrix
lives in word r >> 6, bit r & 63.  Each column tracks its highest
nonzero word so additions and low-bit scans touch only live words.
"""

import numpy as np

from libc.stdint cimport int64_t, uint64_t


cdef inline int _msb(uint64_t x) noexcept:
    cdef int b = 63
    while (x >> b) == 0:
        b -= 1
    return b


cdef inline int64_t _top_word(uint64_t[:, ::1] r, Py_ssize_t j, int64_t start) noexcept:
    cdef int64_t w
    for w in range(start, -1, -1):
        if r[j, w] != 0:
            return w
    return -1


def reduce_lows(cols, Py_ssize_t n_rows):
    """Left-to-right reduction; returns the final lowest set row per column."""
    work = np.ascontiguousarray(cols, dtype=np.uint64).copy()
    cdef uint64_t[:, ::1] r = work
    cdef Py_ssize_t n_cols = work.shape[0]
    cdef int64_t words = work.shape[1]
    lows_arr = np.full(n_cols, -1, dtype=np.int64)
    cdef int64_t[::1] lows = lows_arr
    owner_arr = np.full(max(n_rows, 1), -1, dtype=np.int64)
    cdef int64_t[::1] owner = owner_arr
    top_arr = np.full(n_cols, -1, dtype=np.int64)
    cdef int64_t[::1] top = top_arr
    cdef Py_ssize_t j
    cdef int64_t w, low, other, hi
    for j in range(n_cols):
        top[j] = _top_word(r, j, words - 1)
        while top[j] >= 0:
            low = (top[j] << 6) | _msb(r[j, top[j]])
            other = owner[low]
            if other < 0:
                owner[low] = j
                lows[j] = low
                break
            hi = top[j] if top[j] > top[other] else top[other]
            for w in range(hi + 1):
                r[j, w] ^= r[other, w]
            top[j] = _top_word(r, j, hi)
    return lows_arr


def reduce_full(cols, Py_ssize_t n_rows):
    """Reduction that also tracks column combinations.

    Returns ``(lows, combos)`` where row j of ``combos`` is the bitset of
    original columns summed into column j.  Rows with ``lows[j] == -1``
    form a kernel basis of the column map.
    """
    work = np.ascontiguousarray(cols, dtype=np.uint64).copy()
    cdef uint64_t[:, ::1] r = work
    cdef Py_ssize_t n_cols = work.shape[0]
    cdef int64_t words = work.shape[1]
    cdef Py_ssize_t combo_words = max(1, (n_cols + 63) // 64)
    combos_arr = np.zeros((n_cols, combo_words), dtype=np.uint64)
    cdef uint64_t[:, ::1] combos = combos_arr
    lows_arr = np.full(n_cols, -1, dtype=np.int64)
    cdef int64_t[::1] lows = lows_arr
    owner_arr = np.full(max(n_rows, 1), -1, dtype=np.int64)
    cdef int64_t[::1] owner = owner_arr
    top_arr = np.full(n_cols, -1, dtype=np.int64)
    cdef int64_t[::1] top = top_arr
    ctop_arr = np.zeros(n_cols, dtype=np.int64)
    cdef int64_t[::1] ctop = ctop_arr
    cdef Py_ssize_t j
    cdef int64_t w, low, other, hi
    for j in range(n_cols):
        combos[j, j >> 6] |= (<uint64_t> 1) << (j & 63)
        ctop[j] = j >> 6
        top[j] = _top_word(r, j, words - 1)
        while top[j] >= 0:
            low = (top[j] << 6) | _msb(r[j, top[j]])
            other = owner[low]
            if other < 0:
                owner[low] = j
                lows[j] = low
                break
            hi = top[j] if top[j] > top[other] else top[other]
            for w in range(hi + 1):
                r[j, w] ^= r[other, w]
            top[j] = _top_word(r, j, hi)
            hi = ctop[j] if ctop[j] > ctop[other] else ctop[other]
            for w in range(hi + 1):
                combos[j, w] ^= combos[other, w]
            ctop[j] = hi
    return lows_arr, combos_arr
