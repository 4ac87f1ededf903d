"""Compare the compiled and pure-Python kernel backends.

Two parts: the raw kernels on identical packed inputs, then end-to-end
constructions in fresh interpreters with SINGPOLY_KERNELS switched.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--quick]
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from singpoly import _pykernels, kernels
from singpoly.polyring import Polynomial, layout

END_TO_END = {
    "omega(6,6) N=5 generic": "from singpoly.jackbasis import omega; from singpoly.dunkl import DunklContext; omega(6, 6, DunklContext(5))",
    "family_half(1,1)": "from singpoly.singular import family_half; family_half(1, 1)",
    "verify dwmn N=4": "from singpoly.suites import RunConfig, run_suite; run_suite('dwmn', RunConfig(N=4, m_max=4))",
}
QUICK = {"omega(4,4) N=4 generic": "from singpoly.jackbasis import omega; from singpoly.dunkl import DunklContext; omega(4, 4, DunklContext(4))"}


def packed(rng, lay, nterms, max_deg, max_k, bits):
    out = {}
    for _ in range(nterms):
        exps = [rng.randint(0, max_deg) for _ in range(lay.nvars)]
        c = rng.randint(-(2 ** bits), 2 ** bits)
        if c:
            out[lay.pack(exps, rng.randint(0, max_k))] = c
    return out


def kernel_cases(quick):
    rng = random.Random(0)
    lay = layout(4)
    size = 40 if quick else 150
    a = packed(rng, lay, size, 6, 3, 20)
    b = packed(rng, lay, size, 6, 3, 20)
    top = lay.bounds(a)[1]
    s1 = lay.shift(1)
    others = tuple(lay.shift(j) for j in (2, 3, 4))
    src = tuple(lay.shift(j) for j in (1, 2, 3, 4))
    dst = tuple(lay.shift(j) for j in (2, 3, 4, 1))
    m = lay.mask
    # a power of x_1 + ... + x_4: products collide on most keys
    power = sum((Polynomial.variable(4, i) for i in (2, 3, 4)), Polynomial.variable(4, 1)) ** (3 if quick else 6)
    d = power._num
    return {
        "mul sparse": lambda k: k.mul(a, b),
        "mul dense": lambda k: k.mul(d, d),
        "add_scaled": lambda k: k.add_scaled(a, b, 3, -5),
        "dunkl_parts": lambda k: k.dunkl_parts(a, s1, others, m),
        "permute": lambda k: k.permute(a, src, dst, m),
        "specialize": lambda k: k.specialize(a, -3, 7, top, m),
    }


def best(fn, repeat):
    t = timeit.Timer(fn)
    n, _ = t.autorange()
    return min(t.repeat(repeat, n)) / n


def bench_kernels(repeat, quick):
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'kernel':14} " + " ".join(f"{name:>12}" for name in sorted(backends)) + "   speedup")
    for name, fn in kernel_cases(quick).items():
        ref = fn(_pykernels)
        times = {}
        for bname, mod in sorted(backends.items()):
            assert fn(mod) == ref, f"{bname} disagrees on {name}"
            times[bname] = best(lambda: fn(mod), repeat)
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
        cols = " ".join(f"{times[b] * 1e6:10.1f}us" for b in sorted(times))
        print(f"{name:14} {cols} {speed}")


def run_fresh(stmt, backend, repeat):
    env = dict(os.environ)
    if backend == "python":
        env["SINGPOLY_KERNELS"] = "python"
    else:
        env.pop("SINGPOLY_KERNELS", None)
    code = (
        "import time, sys\n"
        "t = time.perf_counter()\n"
        f"{stmt}\n"
        "print(time.perf_counter() - t)\n"
    )
    times = []
    for _ in range(repeat):
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        times.append(float(out.stdout.strip()))
    return min(times)


def bench_end_to_end(repeat, quick):
    backends = sorted(kernels.available_backends())
    print()
    print(f"{'construction':26} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for name, stmt in (QUICK if quick else END_TO_END).items():
        t = {b: run_fresh(stmt, b, repeat) for b in backends}
        speed = f"{t['python'] / t['cython']:8.1f}x" if "cython" in t else ""
        print(f"{name:26} " + " ".join(f"{t[b]:9.2f}s" for b in backends) + f" {speed}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small inputs, one end-to-end case")
    args = ap.parse_args(argv)
    print(f"default backend: {kernels.BACKEND}")
    bench_kernels(args.repeat, args.quick)
    bench_end_to_end(max(1, args.repeat if not args.quick else 1), args.quick)
    return 0


if __name__ == "__main__":
    sys.exit(main())
