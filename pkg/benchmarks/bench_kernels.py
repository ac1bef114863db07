"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--qubits 6 8 10] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from multient._kernels import _fallback

try:
    from multient._kernels import _core
except ImportError:
    _core = None


def cases(n, rng):
    dims = (2,) * n
    d = 2**n
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    order = tuple(range(1, n, 2)) + tuple(range(0, n, 2))
    n1 = 2 ** (n // 2)
    n2 = d // n1
    sigma = _fallback.relabel_map(dims, order)
    return {
        "relabel_map": lambda k: k.relabel_map(dims, order),
        "permute_square": lambda k: k.permute_square(m, sigma),
        "partial_transpose": lambda k: k.partial_transpose(m, n1, n2, 1),
        "partial_trace": lambda k: k.partial_trace(m, n1, n2, 2),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qubits", type=int, nargs="+", default=[6, 8, 10])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _core is None:
        print("compiled kernels not built; only the fallback is timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18} {'qubits':>6} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for n in args.qubits:
        for name, fn in cases(n, rng).items():
            t_py = min(timeit.repeat(lambda: fn(_fallback), number=1, repeat=args.repeat))
            if _core is None:
                print(f"{name:<18} {n:>6} {t_py * 1e3:>10.3f} {'-':>12} {'-':>8}")
                continue
            t_c = min(timeit.repeat(lambda: fn(_core), number=1, repeat=args.repeat))
            print(f"{name:<18} {n:>6} {t_py * 1e3:>10.3f} {t_c * 1e3:>12.3f} {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
