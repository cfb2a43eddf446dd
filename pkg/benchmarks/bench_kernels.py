"""Compare the compiled and pure-Python modular kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Kernel timings call both modules directly.  ``--end-to-end`` additionally
runs a few example surfaces in subprocesses, once per backend.
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from surfsym import _nmod_py

try:
    from surfsym import _nmod
except ImportError:  # extension not built
    _nmod = None

P = (1 << 61) - 1


def _poly(rng, n):
    return [rng.randrange(P) for _ in range(n)] + [1]


def cases(rng):
    a, b = _poly(rng, 200), _poly(rng, 150)
    xs = [rng.randrange(P) for _ in range(200)]
    ys = [rng.randrange(P) for _ in range(200)]
    rows = [[rng.randrange(P) for _ in range(60)] for _ in range(40)]
    grid = [[rng.randrange(P) for _ in range(12)] for _ in range(12)]
    u, v = _poly(rng, 20), _poly(rng, 20)
    return {
        "mul (200 x 150)": lambda k: k.mul(a, b, P),
        "mul_trunc (n=100)": lambda k: k.mul_trunc(a, b, 100, P),
        "divmod (200 / 150)": lambda k: k.divmod_(a, b, P),
        "gcd (200, 150)": lambda k: k.gcd(a, b, P),
        "powmod (x^P mod deg 150)": lambda k: k.powmod([0, 1], P, b, P),
        "eval_many (200 pts)": lambda k: k.eval_many(a, xs, P),
        "interpolate (200 pts)": lambda k: k.interpolate(xs, ys, P),
        "resultant (200, 150)": lambda k: k.resultant(a, b, P),
        "nullspace (40 x 60)": lambda k: k.nullspace([r[:] for r in rows], 60, P),
        "series_inv (n=200)": lambda k: k.series_inv(a, 200, P),
        "eval2_series (12x12, n=20)": lambda k: k.eval2_series(grid, u, v, 20, P),
    }


def bench_kernels(repeat: int):
    rng = random.Random(0)
    print(f"{'kernel':32s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in cases(rng).items():
        tp = min(timeit.repeat(lambda: fn(_nmod_py), number=1, repeat=repeat)) * 1e3
        if _nmod is not None:
            if fn(_nmod) != fn(_nmod_py):
                raise SystemExit(f"backends disagree on {name}")
            tc = min(timeit.repeat(lambda: fn(_nmod), number=1, repeat=repeat)) * 1e3
            print(f"{name:32s} {tp:10.2f} {tc:10.3f} {tp / tc:8.1f}x")
        else:
            print(f"{name:32s} {tp:10.2f} {'n/a':>10s}")


END_TO_END = ["ellipsoid", "toric_4", "plucker_6", "pn_quartic", "ruled_x1", "ruled_x7"]


def bench_end_to_end():
    here = os.path.dirname(os.path.abspath(__file__))
    surf_dir = os.path.join(os.path.dirname(here), "surfaces")
    code = ("import sys, time\nfrom surfsym.cli import run\nfrom surfsym.parser import load_surface\n"
            "f = load_surface(sys.argv[1]); t = time.perf_counter(); r = run(f)\n"
            "print(r.symmetry_count, time.perf_counter() - t)")
    print(f"\n{'surface':16s} {'count':>5s} {'python s':>9s} {'cython s':>9s}")
    for name in END_TO_END:
        path = os.path.join(surf_dir, name + ".surf")
        out = {}
        for backend in ("python", "cython"):
            env = dict(os.environ)
            env.pop("SURFSYM_PURE", None)
            if backend == "python":
                env["SURFSYM_PURE"] = "1"
            res = subprocess.run([sys.executable, "-c", code, path], env=env, capture_output=True, text=True, check=True)
            count, secs = res.stdout.split()
            out[backend] = (int(count), float(secs))
        print(f"{name:16s} {out['cython'][0]:5d} {out['python'][1]:9.2f} {out['cython'][1]:9.2f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    bench_kernels(args.repeat)
    if args.end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()
