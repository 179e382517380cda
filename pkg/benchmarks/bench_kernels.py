"""Compare the compiled and pure-Python kernels on full orbit decompositions.

    python benchmarks/bench_kernels.py [--systems 3:6 3:7 4:6] [--repeat 3]
"""

import argparse
import time

import numpy as np

from braidquant import _pykernels
from braidquant.mosaic import generate_moves, mosaic_count

try:
    from braidquant import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench(impl, n, length, repeat):
    moves = generate_moves(n, length)
    size = mosaic_count(n, length)

    def images():
        return np.stack([impl.move_image(size, *mv.codes()) for mv in moves])

    t_img, imgs = best_of(images, repeat)
    t_uf, labels = best_of(lambda: impl.orbit_labels(size, imgs), repeat)
    return t_img, t_uf, labels, len(moves)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--systems", nargs="+", default=["3:6", "3:7", "4:6", "3:8"])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'system':>8} {'mosaics':>9} {'moves':>6} {'backend':>8} {'images s':>10} {'union s':>10} {'total s':>10}")
    for spec in args.systems:
        n, length = map(int, spec.split(":"))
        results = {}
        for name, impl in backends:
            t_img, t_uf, labels, nmoves = bench(impl, n, length, args.repeat)
            results[name] = labels
            print(
                f"{spec:>8} {mosaic_count(n, length):>9} {nmoves:>6} {name:>8} "
                f"{t_img:>10.4f} {t_uf:>10.4f} {t_img + t_uf:>10.4f}"
            )
        if len(results) == 2:
            assert np.array_equal(results["python"], results["cython"]), f"backends disagree on {spec}"


if __name__ == "__main__":
    main()
