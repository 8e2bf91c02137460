"""Compare the compiled kernels with the pure-Python fallback.

Kernel timings call both modules directly.  The end-to-end timing runs
one search in a subprocess per backend, selecting the fallback with
``PFANO_PURE_PYTHON=1``.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--skip-search]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from pfano import _pykernels

try:
    from pfano import _kernels
except ImportError:
    _kernels = None

SEARCH_SNIPPET = (
    "import time;from pfano import kernels, field_new, p_nonfano_constraints, search_scalar_representation as s;"
    "t=time.perf_counter();o=s(p_nonfano_constraints({p}), field_new({q}));"
    "print(kernels.BACKEND, o.verdict, o.candidates, f'{{time.perf_counter()-t:.3f}}')"
)


def kernel_cases(rng):
    mats = [rng.integers(0, 7, size=(6, 12)) for _ in range(200)]
    h = rng.integers(0, 3, size=(4, 12))
    a, b = rng.integers(0, 5, size=6), rng.integers(0, 5, size=6)
    cands = rng.integers(0, 5, size=(2000, 6))
    return {
        "rank_mod (200 x 6x12, q=7)": lambda k: [k.rank_mod(m, 7) for m in mats],
        "subset_block_ranks (n=12, q=3)": lambda k: k.subset_block_ranks(h, 1, 3),
        "circuit_triples (2000 cands, q=5)": lambda k: k.circuit_triples(a, b, cands, 5),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-search", action="store_true")
    ap.add_argument("-p", type=int, default=5)
    ap.add_argument("-q", type=int, default=3)
    args = ap.parse_args(argv)

    if _kernels is None:
        print("compiled extension not built; only the fallback is available")
        return 1
    rng = np.random.default_rng(0)
    print(f"{'kernel':<36} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    for name, fn in kernel_cases(rng).items():
        fast = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        slow = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        print(f"{name:<36} {fast:>11.4f} {slow:>10.4f} {slow / fast:>7.1f}x")

    if not args.skip_search:
        code = SEARCH_SNIPPET.format(p=args.p, q=args.q)
        print(f"\nend-to-end search: p-nonfano p={args.p} over GF({args.q})")
        for pure in ("0", "1"):
            env = dict(os.environ, PFANO_PURE_PYTHON=pure)
            out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
            backend, verdict, cands, secs = out.stdout.split()
            print(f"  {backend:<9} {verdict:<10} {cands:>9} candidates {float(secs):>8.3f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
