"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from dmdsal.evaluation import THRESHOLDS
from dmdsal.kernels import available_backends


def cases(rng):
    img = rng.integers(0, 256, size=(400, 300, 3), dtype=np.uint8)
    X = rng.standard_normal((120_000, 24))
    coef = rng.standard_normal((120_000, 1)) + 0j
    powers = np.ones((1, 24), dtype=np.complex128)
    values, truth = rng.random(120_000), rng.random(120_000) > 0.5
    plane = rng.random((300, 400))
    return {
        "rgb_planes 400x300": lambda k: k.rgb_planes(img),
        "mean_abs_sparse 120000x24": lambda k: k.mean_abs_sparse(X, coef, powers),
        "threshold_counts 120000 px": lambda k: k.threshold_counts(values, truth, THRESHOLDS),
        "resize_bilinear 300x400->600x800": lambda k: k.resize_bilinear(plane, 600, 800),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'kernel':36s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in cases(np.random.default_rng(0)).items():
        best = {}
        for n in names:
            fn(backends[n])  # warm up
            best[n] = min(timeit.repeat(lambda: fn(backends[n]), number=1, repeat=args.repeat))
        row = f"{label:36s}" + "".join(f"{best[n] * 1e3:10.2f}ms" for n in names)
        if len(names) == 2:
            row += f"{best['python'] / best['compiled']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
