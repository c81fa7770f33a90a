"""Compare the jit-compiled kernels against the pure-numpy fallbacks.

Run as a script:  python3 benchmarks/bench_kernels.py [--sizes 8,16,24,32]

Two workloads are timed. The first is the dense symmetric eigensolver on
batches of random matrices, which dominates everything the package does.
The second is the full projected-ascent loop the disprover runs, where the
jit path fuses the Laplacian rebuild, the eigensolve, and the simplex
projection into one compiled function.
"""
import argparse
import time

import numpy as np

from conformal_rigidity import circulant, load_fixture
from conformal_rigidity._kernels import ascent, jacobi_eigh
from conformal_rigidity.errors import BackendUnavailable


def time_jacobi(backend, sizes, reps):
    rng = np.random.default_rng(42)
    rows = []
    for n in sizes:
        mats = [rng.normal(size=(n, n)) for _ in range(reps)]
        mats = [(a + a.T) / 2 for a in mats]
        jacobi_eigh(mats[0], force_backend=backend)  # compile / warm
        t0 = time.perf_counter()
        for a in mats:
            jacobi_eigh(a, force_backend=backend)
        rows.append((n, (time.perf_counter() - t0) / reps))
    return rows


def time_ascent(backend, iters):
    results = []
    for label, g in (("prism", load_fixture("prism")),
                     ("C30(1,2)", circulant(30, (1, 2)))):
        ei = np.array([e[0] for e in g.edges], dtype=np.int64)
        ej = np.array([e[1] for e in g.edges], dtype=np.int64)
        dmax = float(max(g.degrees()))
        w0 = np.ones(g.m)
        args = (ei, ej, dmax, g.n, w0, float(g.m), iters, 1, True)
        ascent(*args, force_backend=backend)  # warm
        t0 = time.perf_counter()
        ascent(*args, force_backend=backend)
        results.append((label, time.perf_counter() - t0))
    return results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="8,16,24,32")
    ap.add_argument("--reps", type=int, default=30)
    ap.add_argument("--iters", type=int, default=1000)
    opts = ap.parse_args()
    sizes = [int(s) for s in opts.sizes.split(",")]

    backends = ["numpy"]
    try:
        jacobi_eigh(np.eye(2), force_backend="numba")
        backends.append("numba")
    except BackendUnavailable:
        print("numba not installed; timing the fallback only")

    print("\neigensolver, mean seconds per matrix")
    print(f"{'n':>6} " + " ".join(f"{b:>12}" for b in backends))
    cols = {b: dict(time_jacobi(b, sizes, opts.reps)) for b in backends}
    for n in sizes:
        line = f"{n:>6} " + " ".join(f"{cols[b][n]:>12.6f}" for b in backends)
        if len(backends) == 2:
            line += f"   x{cols['numpy'][n] / cols['numba'][n]:.1f}"
        print(line)

    print(f"\nprojected ascent, {opts.iters} iterations, seconds per run")
    runs = {b: dict(time_ascent(b, opts.iters)) for b in backends}
    for label in ("prism", "C30(1,2)"):
        line = f"{label:>10} " + " ".join(f"{runs[b][label]:>12.4f}" for b in backends)
        if len(backends) == 2:
            line += f"   x{runs['numpy'][label] / runs['numba'][label]:.1f}"
        print(line)


if __name__ == "__main__":
    main()
