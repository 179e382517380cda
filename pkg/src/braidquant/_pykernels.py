"""Pure-Python fallbacks for the compiled kernels in ``_ckernels``."""

import numpy as np


def move_image(size, scale, block, lhs, rhs):
    ranks = np.arange(size, dtype=np.int64)
    window = (ranks // scale) % block
    delta = (rhs - lhs) * scale
    out = ranks.copy()
    out[window == lhs] += delta
    out[window == rhs] -= delta
    return out


def orbit_labels(size, images):
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    images = np.asarray(images, dtype=np.int64).reshape(-1, size)
    for row in images:
        moved = np.flatnonzero(row != np.arange(size))
        for r, s in zip(moved.tolist(), row[moved].tolist()):
            a, b = find(r), find(s)
            if a < b:
                parent[b] = a
            elif b < a:
                parent[a] = b
    return np.array([find(r) for r in range(size)], dtype=np.int64)
