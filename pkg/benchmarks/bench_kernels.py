"""Compare the numba and numpy paths of the lattice-sum kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  The kernel section calls
both implementations directly in one process.  The end-to-end section runs
``sharp_bounds`` and a small landscape scan in two subprocesses, one with
``GABORLAB_DISABLE_NUMBA=1``, since the backend is fixed at import time.
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from gaborlab import _accel
from gaborlab.gabor_core import TruncationSpec, _janssen_terms
from gaborlab.lattice2d import make_hexagonal, points_in_radius


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_section(n_eval, repeat):
    lat = make_hexagonal(2.0)
    freqs, coeffs = _janssen_terms(lat, TruncationSpec())
    pts = points_in_radius(lat, 6.0)
    z = np.random.default_rng(0).uniform(-1, 1, size=(n_eval, 2))
    cases = [
        ("cos_sum", (freqs, coeffs, z)),
        ("sin_sum", (freqs, coeffs, z)),
        ("gauss_shift_sum", (pts, z, np.pi)),
    ]
    print(f"kernels: {len(coeffs)} series terms, {len(pts)} shift points, {n_eval} evaluation points")
    if not _accel.HAS_NUMBA:
        print("  numba is not installed, numpy timings only")
    for name, args in cases:
        np_fn = getattr(_accel, f"{name}_numpy")
        t_np = best_of(lambda: np_fn(*args), repeat)
        line = f"  {name:16s} numpy {t_np * 1e3:8.2f} ms"
        if _accel.HAS_NUMBA:
            nb_fn = getattr(_accel, f"{name}_numba")
            nb_fn(*args)  # compile
            t_nb = best_of(lambda: nb_fn(*args), repeat)
            diff = float(np.max(np.abs(nb_fn(*args) - np_fn(*args))))
            line += f"  numba {t_nb * 1e3:8.2f} ms  speedup {t_np / t_nb:5.2f}x  max diff {diff:.1e}"
        print(line)


_END_TO_END = """
import json, math, time
from gaborlab import _accel
from gaborlab.gabor_core import sharp_bounds
from gaborlab.lattice2d import make_hexagonal, make_rectangular
from gaborlab.moduli_scan import ScanRegion, scan_landscape
sharp_bounds(make_rectangular(0.5, 1.0))
t0 = time.perf_counter()
for _ in range({repeat}):
    fb = sharp_bounds(make_hexagonal(2.0))
t_bounds = (time.perf_counter() - t0) / {repeat}
t0 = time.perf_counter()
scan_landscape(2, ScanRegion(-0.5, 0.5, math.sqrt(3) / 2, 2.0, 10, 10))
t_scan = time.perf_counter() - t0
print(json.dumps({{"backend": _accel.backend(), "bounds": t_bounds, "scan": t_scan, "A": fb.lower}}))
"""


def end_to_end(disable, repeat):
    env = dict(os.environ, GABORLAB_DISABLE_NUMBA="1" if disable else "0", GABORLAB_THREADS="1")
    out = subprocess.run(
        [sys.executable, "-c", _END_TO_END.format(repeat=repeat)], env=env, check=True, capture_output=True, text=True
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=20000, help="evaluation points per kernel call")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    kernel_section(args.points, args.repeat)

    print("end to end (single thread): sharp_bounds(hex, density 2), 10x10 landscape scan")
    runs = [end_to_end(True, args.repeat)]
    if _accel.HAS_NUMBA:
        runs.append(end_to_end(False, args.repeat))
    for r in runs:
        print(f"  {r['backend']:6s} bounds {r['bounds'] * 1e3:8.2f} ms  scan {r['scan']:6.2f} s  A={r['A']:.12f}")


if __name__ == "__main__":
    main()
