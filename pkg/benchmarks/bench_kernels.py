"""Micro-benchmark: compiled kernels vs the pure-python fallback.

Times each kernel on fixed inputs in-process, then times a full CLI sweep
in a subprocess per backend (PTSIG_PURE_PYTHON selects the fallback).
Subprocess numbers include interpreter startup; the per-record rate is the
honest end-to-end figure.

Usage: python benchmarks/bench_kernels.py [--calls N] [--skip-sweep]
"""

import argparse
import os
import subprocess
import sys
import tempfile
import time

import numpy as np

from ptsig._kernels import fallback

try:
    from ptsig._kernels import _core
except ImportError:
    _core = None


def _inputs():
    rng = np.random.default_rng(7)
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = rho @ rho.conj().T
    rho = rho / rho.trace()
    herm = m + m.conj().T
    sigma = np.eye(2, dtype=complex) / 2
    return {
        "eig2": (m,),
        "expm2": (-1j * 1.3 * m,),
        "herm_eigvals2": (herm,),
        "trace_distance2": (fallback.ptrace_a(rho), sigma),
        "kron_left": (m,),
        "apply_local_a": (m, rho),
        "ptrace_a": (rho,),
        "ptrace_b": (rho,),
    }


def _time_call(fn, args, calls):
    fn(*args)  # warm up
    t0 = time.perf_counter()
    for _ in range(calls):
        fn(*args)
    return (time.perf_counter() - t0) / calls


def bench_kernels(calls):
    print(f"kernel micro-benchmark ({calls} calls each)")
    header = f"{'kernel':<16} {'python us':>10} {'compiled us':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, args in _inputs().items():
        t_py = _time_call(getattr(fallback, name), args, calls) * 1e6
        if _core is None:
            print(f"{name:<16} {t_py:>10.2f} {'n/a':>12} {'n/a':>8}")
            continue
        t_c = _time_call(getattr(_core, name), args, calls) * 1e6
        print(f"{name:<16} {t_py:>10.2f} {t_c:>12.2f} {t_py / t_c:>7.1f}x")
    print()


def bench_sweep():
    args = [
        sys.executable, "-m", "ptsig", "sweep",
        "--s", "0:0.9:12", "--xi", "0,0.7", "--tau", "0.5:2:8",
        "--p", "0.1:1:10", "--family", "werner,classical", "--mode", "naive,cpt",
    ]
    n_records = 12 * 2 * 8 * 10 * 2 * 2
    print(f"end-to-end sweep ({n_records} records, subprocess, includes startup)")
    for label, extra_env in (("compiled", {}), ("python", {"PTSIG_PURE_PYTHON": "1"})):
        if label == "compiled" and _core is None:
            print(f"  {label:<9} n/a (extension not built)")
            continue
        env = dict(os.environ, **extra_env)
        with tempfile.NamedTemporaryFile(suffix=".csv") as tmp:
            t0 = time.perf_counter()
            subprocess.run(args + ["--out", tmp.name], env=env, check=True,
                           stdout=subprocess.DEVNULL)
            dt = time.perf_counter() - t0
        print(f"  {label:<9} {dt:6.2f} s  ({n_records / dt:,.0f} records/s)")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--calls", type=int, default=20000)
    parser.add_argument("--skip-sweep", action="store_true")
    opts = parser.parse_args()
    if _core is None:
        print("note: compiled extension unavailable, timing fallback only\n")
    bench_kernels(opts.calls)
    if not opts.skip_sweep:
        bench_sweep()


if __name__ == "__main__":
    main()
