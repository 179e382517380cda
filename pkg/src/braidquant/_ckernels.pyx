# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over LEX-ranked mosaic spaces."""

import numpy as np
from libc.stdint cimport int64_t


def move_image(Py_ssize_t size, int64_t scale, int64_t block, int64_t lhs, int64_t rhs):
    out = np.arange(size, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t period = block * scale
    cdef int64_t outer = size // period
    cdef int64_t h, lo, a, b
    with nogil:
        for h in range(outer):
            a = h * period + lhs * scale
            b = h * period + rhs * scale
            for lo in range(scale):
                o[a + lo] = b + lo
                o[b + lo] = a + lo
    return out


cdef inline int64_t _find(int64_t[::1] parent, int64_t x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def orbit_labels(Py_ssize_t size, images):
    parent_arr = np.arange(size, dtype=np.int64)
    cdef int64_t[::1] parent = parent_arr
    cdef int64_t[:, ::1] img = np.ascontiguousarray(images, dtype=np.int64).reshape(-1, size)
    cdef Py_ssize_t m = img.shape[0]
    cdef Py_ssize_t g, r
    cdef int64_t a, b
    with nogil:
        for g in range(m):
            for r in range(size):
                if img[g, r] == r:
                    continue
                a = _find(parent, r)
                b = _find(parent, img[g, r])
                if a < b:
                    parent[b] = a
                elif b < a:
                    parent[a] = b
        for r in range(size):
            parent[r] = _find(parent, r)
    return parent_arr
