"""Time the numba and pure-numpy kernels side by side.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--steps 4096]

The first numba call compiles (or loads from cache) and is excluded.
"""
import argparse
import statistics
import time

from pauligeo import _accel, evolution as ev, xstate as xs
from pauligeo._kernels import cond_entropy_grid


def _cases(steps):
    drive = ev.random_drive(6, 0, sinusoidal=True)
    rho = xs.random_xstate(0, "ZZ", 0).matrix
    a, b, T = xs.correlations(rho)
    thetas, phis = xs._grid_axes(xs.THETA_GRID, xs.PHI_GRID)
    return {
        "riccati rk4": lambda: ev.riccati_su4(drive, 1.0, steps=steps),
        "block-factor rk4": lambda: ev.factorized_propagator(drive, 1.0, steps=steps),
        "bloch rk4": lambda: ev.bloch_evolve(drive, 1.0, steps=steps),
        "discord grid 64x128": lambda: cond_entropy_grid(a, b, T, thetas, phis),
        "discord (grid + refine)": lambda: xs.discord(rho),
    }


def _time(fn, repeat):
    fn()
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--steps", type=int, default=4096)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _accel.NUMBA_AVAILABLE else [])
    timings = {}
    for name in backends:
        previous = _accel.set_backend(name)
        try:
            timings[name] = {label: _time(fn, args.repeat) for label, fn in _cases(args.steps).items()}
        finally:
            _accel.set_backend(previous)

    print(f"{'kernel':<26}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label in timings["numpy"]:
        row = f"{label:<26}" + "".join(f"{timings[b][label] * 1e3:>10.2f}ms" for b in backends)
        if "numba" in timings:
            row += f"{timings['numpy'][label] / timings['numba'][label]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
