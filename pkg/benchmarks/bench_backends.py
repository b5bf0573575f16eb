"""Compiled kernels against the pure-Python fallback.

Times polynomial multiplication, modular composition helpers and one full
per-prime step on the same inputs with each backend, and checks that both
backends return identical results.

    python3 benchmarks/bench_backends.py [--ells 11,19] [--sizes 64,512,4096]
"""

import argparse
import random
import time

from rmschoof import families as fam
from rmschoof.cli import BENCH_Q
from rmschoof.ff import _backend
from rmschoof.schoof import mn_mod_ell


def timed(fn, repeat=1):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def kernel_rows(q, sizes, rng):
    C, P = _backend.COMPILED, _backend.PYTHON
    for n in sizes:
        a = [rng.randrange(q) for _ in range(n)]
        b = [rng.randrange(q) for _ in range(n)]
        m = [rng.randrange(q) for _ in range(n)] + [1]
        rep = 5 if n <= 512 else 2
        tc, rc = timed(lambda: C.mul(a, b, q), rep)
        tp, rp = timed(lambda: P.mul(a, b, q), rep)
        assert rc == rp
        yield f"mul n={n}", tc, tp
        tc, rc = timed(lambda: C.divmod_(rc, m, q), rep)
        tp, rp = timed(lambda: P.divmod_(rp, m, q), rep)
        assert rc == rp
        yield f"divmod n={n}", tc, tp
        if n <= 1024:
            tc, rc = timed(lambda: C.gcd(a, m, q), rep)
            tp, rp = timed(lambda: P.gcd(a, m, q), rep)
            assert rc == rp
            yield f"gcd n={n}", tc, tp


def prime_rows(q, ells):
    inst = fam.make_ttv(q, 7)
    for ell in ells:
        out = {}
        for name in ("compiled", "python"):
            _backend.force_backend(name)
            try:
                out[name] = timed(lambda: mn_mod_ell(inst, ell))
            finally:
                _backend.force_backend(None)
        (tc, rc), (tp, rp) = out["compiled"], out["python"]
        assert (rc.m, rc.n) == (rp.m, rp.n)
        yield f"mn_mod_ell l={ell}", tc, tp


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=BENCH_Q)
    ap.add_argument("--sizes", default="64,512,4096")
    ap.add_argument("--ells", default="11,19")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if not _backend.HAVE_COMPILED:
        raise SystemExit("compiled kernels are not built; run pip install --no-build-isolation -e .")
    rng = random.Random(args.seed)
    sizes = [int(x) for x in args.sizes.split(",")]
    ells = [int(x) for x in args.ells.split(",") if x]
    print(f"q={args.q}")
    print(f"{'operation':<22}{'compiled_s':>12}{'python_s':>12}{'speedup':>9}")
    rows = list(kernel_rows(args.q, sizes, rng)) + list(prime_rows(args.q, ells))
    for name, tc, tp in rows:
        print(f"{name:<22}{tc:>12.4f}{tp:>12.4f}{tp / tc:>9.2f}", flush=True)


if __name__ == "__main__":
    main()
