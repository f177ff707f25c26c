"""Time the compiled quadrature kernels against the pure-Python fallback.

Runs the three kernels over representative workloads with both backends,
reports best-of-N wall times and the speedup, and verifies that every
single result is bitwise identical across backends (the contract the test
suite also enforces).

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from hyperzeta._kernels import fallback
from hyperzeta.plancherel import miatello_coefficients

try:
    from hyperzeta._kernels import _native as native
except ImportError:
    native = None


def plancherel_workload(impl):
    out = []
    for k in (1, 2, 3, 5):
        coeffs = [float(c) for c in miatello_coefficients(k, 0)]
        for t in (0.05, 0.3, 1.0, 4.0):
            out.append(impl.plancherel_integral(coeffs, t)[0])
    return out


def mellin_workload(impl):
    lengths = [1.0 + 0.37 * i for i in range(12)]
    amps = [0.8**i for i in range(12)]
    out = []
    for s in (0.0, 0.3, 0.7):
        for alpha in (2.25, 6.25):
            out.append(impl.mellin_time_integral(lengths, amps, alpha, s)[0])
    return out


def bessel_workload(impl):
    out = []
    for nu in (0.0, 0.2, 1.5, 3.0):
        for z in (0.5, 2.0, 10.0):
            out.append(impl.bessel_k_integral(nu, z)[0])
    return out


WORKLOADS = [
    ("plancherel_integral", plancherel_workload),
    ("mellin_time_integral", mellin_workload),
    ("bessel_k_integral", bessel_workload),
]


def best_time(fn, impl, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(impl)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="best-of-N timing")
    args = parser.parse_args()

    if native is None:
        print("compiled backend not built; nothing to compare")
        return 1

    print(f"{'kernel':<22} {'python':>10} {'native':>10} {'speedup':>8}  bitwise")
    all_equal = True
    for name, fn in WORKLOADS:
        py_vals = fn(fallback)
        nat_vals = fn(native)
        equal = py_vals == nat_vals
        all_equal &= equal
        t_py = best_time(fn, fallback, args.repeat)
        t_nat = best_time(fn, native, args.repeat)
        print(
            f"{name:<22} {t_py * 1e3:>8.2f}ms {t_nat * 1e3:>8.2f}ms "
            f"{t_py / t_nat:>7.1f}x  {'yes' if equal else 'NO'}"
        )
    print(f"\nall results bitwise identical: {'yes' if all_equal else 'NO'}")
    return 0 if all_equal else 1


if __name__ == "__main__":
    raise SystemExit(main())
