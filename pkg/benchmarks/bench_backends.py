"""Timing comparison: compiled kernels vs the numpy fallback.

Run with:  python benchmarks/bench_backends.py

Covers the four hot paths: a single Aluthge step, a 100-step iterate
trace (SVD-heavy), the angle sweep behind the numerical radius, and one
orbit objective evaluation built from the kernel calls.
"""

import time

import numpy as np

from spectrad._kernels import pure
from spectrad.ensembles import EnsembleSpec, generate

try:
    from spectrad._kernels import _core
except ImportError:
    _core = None


def _time(fn, min_seconds=0.25):
    fn()  # warm up
    reps = 0
    start = time.perf_counter()
    while True:
        fn()
        reps += 1
        elapsed = time.perf_counter() - start
        if elapsed >= min_seconds and reps >= 3:
            return elapsed / reps


def _aluthge_iterates(kern, t, steps=100):
    cur = t
    for _ in range(steps):
        cur = kern.aluthge_step(cur, 0.5, -1.0)
    return cur


def _objective_eval(kern, t, a):
    w, v = kern.eigh(a)
    vh = v.conj().T
    e = np.exp(w)
    s = ((v * e) @ vh) @ t @ ((v / e) @ vh)
    s = kern.aluthge_step(s, 0.5, -1.0)
    return kern.svdvals(s)[0]


def cases(n):
    t = generate(EnsembleSpec(kind="ginibre", dim=n, seed=1))
    a = (t + t.conj().T) / 2
    thetas = np.linspace(0.0, 2 * np.pi, 720, endpoint=False)
    return {
        f"aluthge_step (n={n})": lambda k: k.aluthge_step(t, 0.5, -1.0),
        f"100 iterates (n={n})": lambda k: _aluthge_iterates(k, t),
        f"angle sweep 720 (n={n})": lambda k: k.realpart_top_eig_grid(t, thetas),
        f"orbit objective (n={n})": lambda k: _objective_eval(k, t, a),
    }


def main():
    if _core is None:
        print("compiled extension not available; showing the numpy fallback only")
    header = f"{'kernel':<28}{'python':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for n in (4, 8, 32):
        for name, fn in cases(n).items():
            t_pure = _time(lambda: fn(pure))
            if _core is not None:
                t_core = _time(lambda: fn(_core))
                print(f"{name:<28}{t_pure * 1e6:>10.1f}us{t_core * 1e6:>10.1f}us"
                      f"{t_pure / t_core:>9.1f}x")
            else:
                print(f"{name:<28}{t_pure * 1e6:>10.1f}us{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
