"""Time the jitted Smith-diagonal kernel against the plain numpy path.

    python3 benchmarks/bench_snf.py [--sizes 20 40 80] [--repeat 5]

Both paths run on the same random integer matrices; their invariant factors
are compared before any timing is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from gammabar import _accel


def random_boundary_like(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    # Sparse entries in {-1, 0, 1}, the shape of simplicial boundary matrices.
    a = rng.choice([-1, 0, 0, 0, 0, 1], size=(rows, cols))
    return a.astype(np.int64)


def best_of(fn, mats, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for a in mats:
            fn(a.copy())
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 40, 80])
    ap.add_argument("--batch", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if not _accel.HAVE_NUMBA:
        print("numba is not importable; only the numpy path can be timed")
    rng = np.random.default_rng(args.seed)
    print(f"{'size':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in args.sizes:
        mats = [random_boundary_like(rng, n, n + n // 2) for _ in range(args.batch)]
        for a in mats:
            ref = _accel.smith_diagonal_numpy(a.copy())
            if _accel.HAVE_NUMBA:
                got = _accel.smith_diagonal_numba(a.copy())
                assert ref[1] == got[1] and list(ref[0]) == list(got[0]), "paths disagree"
        t_np = best_of(_accel.smith_diagonal_numpy, mats, args.repeat)
        if _accel.HAVE_NUMBA:
            _accel.smith_diagonal_numba(mats[0].copy())  # compile outside the timing
            t_nb = best_of(_accel.smith_diagonal_numba, mats, args.repeat)
            print(f"{n:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{n:>6} {t_np:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
