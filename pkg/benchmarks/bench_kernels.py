"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--degree 200]
"""

import argparse
import timeit

import numpy as np

from apostol import _pykernels

try:
    from apostol import _ckernels
except ImportError:
    _ckernels = None


def cases(degree):
    rng = np.random.default_rng(0)
    coeffs = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    xs = np.linspace(0.0, 1.0, 2000)
    poles = [2j * np.pi * k - np.log(2) for k in range(-50, 51)]
    return {
        "numbers_scaled": lambda m: m.numbers_scaled(0.5 + 0.8j, degree),
        "direct_scaled": lambda m: m.direct_scaled(2.0, 0.3 + 0.2j, degree),
        "appell_shift": lambda m: m.appell_shift(coeffs, 0.7 - 0.1j),
        "horner_many": lambda m: m.horner_many(coeffs[:40], xs),
        "pole_power_sums": lambda m: m.pole_power_sums(poles, 0.3, 2, degree),
    }


def best_time(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--degree", type=int, default=200)
    args = parser.parse_args(argv)

    if _ckernels is None:
        print("compiled kernels are not built; only the Python timings are shown")
    print(f"{'kernel':<18}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, call in cases(args.degree).items():
        py = best_time(lambda: call(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:<18}{py * 1e3:>14.3f}{'-':>14}{'-':>10}")
            continue
        cy = best_time(lambda: call(_ckernels), args.repeat)
        print(f"{name:<18}{py * 1e3:>14.3f}{cy * 1e3:>14.3f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
