#!/usr/bin/env python3
"""Benchmark the compiled term-arithmetic backend against the fallback.

Micro-benchmarks call `_poly_speedups` and `_poly_fallback` side by side on
identical inputs.  The end-to-end row reruns a module fold in a subprocess
with KOSZULMF_PURE=1, since the backend is fixed at import time.

Usage: python bench/bench_poly.py [--repeat N] [--skip-e2e]
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from koszulmf import _poly_fallback as fallback

try:
    from koszulmf import _poly_speedups as compiled
except ImportError:
    compiled = None

E2E_SNIPPET = """
import time
from koszulmf import _kernel
from koszulmf.koszul import cone_koszul, counit_map, free_koszul
from koszulmf.complexes import FreeComplex
from koszulmf.reduce import fold_with_witness
from koszulmf.ring import parse_poly, polynomial_ring, rationals

ring = polynomial_ring(rationals(), ("x", "y"))
f = parse_poly("x*y", ring)
base = FreeComplex(ring, 0, 0, {0: 1}, {})
m = free_koszul(base, (f,))
m = cone_koszul(counit_map(m))
t0 = time.perf_counter()
for _ in range(10):
    fold_with_witness(m)
print(f"{_kernel.BACKEND} {time.perf_counter() - t0:.4f}")
"""


def random_terms(rng, nvars, nterms, p):
    out = {}
    while len(out) < nterms:
        key = tuple(rng.randrange(0, 7) for _ in range(nvars))
        if p:
            out[key] = rng.randrange(1, p)
        else:
            out[key] = Fraction(rng.randrange(-9, 10) or 1, rng.randrange(1, 5))
    return out


def bench_op(label, fn_c, fn_f, argsets, repeat):
    best_c = best_f = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in argsets:
            fn_f(*args)
        best_f = min(best_f, time.perf_counter() - t0)
        if fn_c is not None:
            t0 = time.perf_counter()
            for args in argsets:
                fn_c(*args)
            best_c = min(best_c, time.perf_counter() - t0)
    if fn_c is None:
        print(f"{label:<22} fallback {best_f * 1e3:8.2f} ms   compiled      n/a")
    else:
        ratio = best_f / best_c if best_c else float("inf")
        print(f"{label:<22} fallback {best_f * 1e3:8.2f} ms   "
              f"compiled {best_c * 1e3:8.2f} ms   x{ratio:.1f}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5,
                    help="timing repetitions; best run is reported")
    ap.add_argument("--skip-e2e", action="store_true",
                    help="skip the subprocess fold comparison")
    args = ap.parse_args(argv)

    if compiled is None:
        print("compiled backend not available; showing fallback only")

    rng = random.Random(20260814)
    for p, tag in ((0, "Q"), (5, "F5")):
        pairs = [(random_terms(rng, 3, 30, p), random_terms(rng, 3, 30, p), p)
                 for _ in range(200)]
        singles = [(a, p) for a, _, p in pairs]
        scales = [(a, b and next(iter(b.values())), p) for a, b, p in pairs]
        get = (lambda name: getattr(compiled, name)) if compiled else (lambda name: None)
        bench_op(f"terms_add   ({tag})", get("terms_add"),
                 fallback.terms_add, pairs, args.repeat)
        bench_op(f"terms_neg   ({tag})", get("terms_neg"),
                 fallback.terms_neg, singles, args.repeat)
        bench_op(f"terms_scale ({tag})", get("terms_scale"),
                 fallback.terms_scale, scales, args.repeat)
        bench_op(f"terms_mul   ({tag})", get("terms_mul"),
                 fallback.terms_mul, pairs, args.repeat)

    if not args.skip_e2e:
        print()
        for pure in ("0", "1"):
            env = dict(os.environ, KOSZULMF_PURE=pure)
            out = subprocess.run([sys.executable, "-c", E2E_SNIPPET], env=env,
                                 capture_output=True, text=True, check=True)
            backend, secs = out.stdout.split()
            print(f"fold x10 end-to-end    {backend:<8} {float(secs) * 1e3:8.2f} ms")


if __name__ == "__main__":
    main()
