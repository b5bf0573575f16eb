"""Command-line interface: count, verify, search, divpoly, bench.

Output is one ``key=value`` pair per line.  Progress goes to stderr.
Exit codes: 0 ok, 1 input error, 2 computation skipped or failed,
3 verification failed.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import os
import random
import secrets
import sys
import time
from dataclasses import dataclass

from . import jacobian as jac
from .families import FamilyError, RMFamilyInstance, make_instance
from .ff import is_probable_prime
from .ff import _backend
from .jacobian import CurveError, SpecError, parse_curve_spec
from .kernel import KernelError
from .rmorder import RMOrderError, order_constants, reduced_generator, split_primes
from .schoof import (CountConfig, PrimeSkipped, SchoofError, VerificationFailed,
                     count_points, mn_mod_ell)

EXIT_OK, EXIT_INPUT, EXIT_FAILED, EXIT_VERIFY = 0, 1, 2, 3

INPUT_ERRORS = (SpecError, CurveError, FamilyError, RMOrderError, OSError, ValueError)
BENCH_BAND = (1.5, 4.0)


class NoRealMultiplication(ValueError):
    """count and search need a family curve with known RM."""


# seeded generator ----------------------------------------------------------

class HashRandom(random.Random):
    """SHA-256 in counter mode behind the random.Random interface."""

    def __init__(self, seed: int = 0):
        self._key = hashlib.sha256(str(seed).encode()).digest()
        self._ctr = 0
        super().__init__(seed)

    def seed(self, a=None, version=2):
        # random.Random.__init__ calls this; the key is fixed in __init__
        pass

    def getrandbits(self, k: int) -> int:
        if k <= 0:
            return 0
        out = b""
        while 8 * len(out) < k:
            out += hashlib.sha256(self._key + self._ctr.to_bytes(16, "little")).digest()
            self._ctr += 1
        return int.from_bytes(out, "little") >> (8 * len(out) - k)

    def random(self) -> float:
        return self.getrandbits(53) / (1 << 53)

    def getstate(self):
        return (self._key, self._ctr)

    def setstate(self, state):
        self._key, self._ctr = state


# output helpers --------------------------------------------------------------

def emit(key: str, value) -> None:
    print(f"{key}={value}", flush=True)


def note(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def read_spec(arg: str) -> dict:
    """A spec file path, ``-`` for stdin, or inline ``key=value`` text."""
    if arg == "-":
        return parse_curve_spec(sys.stdin.read())
    if "=" in arg and not os.path.isfile(arg):
        return parse_curve_spec(arg)
    with open(arg) as fh:
        return parse_curve_spec(fh.read())


def rm_instance(spec: dict) -> RMFamilyInstance:
    obj = make_instance(spec)
    if not isinstance(obj, RMFamilyInstance):
        raise NoRealMultiplication("explicit curves carry no RM data; use a family spec")
    return obj


def curve_of(obj):
    return obj.curve if isinstance(obj, RMFamilyInstance) else obj


def describe(spec: dict) -> None:
    emit("q", spec["q"])
    emit("family", spec["family"])
    for key in ("s", "t"):
        if key in spec:
            emit(key, spec[key])
    if "f" in spec:
        emit("f", ",".join(map(str, spec["f"])))


# count ---------------------------------------------------------------------

def cmd_count(args) -> int:
    spec = read_spec(args.spec)
    inst = rm_instance(spec)
    config = CountConfig(lmax=args.lmax, bsgs=args.bsgs == "on", threads=args.threads,
                         seed=args.seed, checkpoint=args.checkpoint)
    emit("seed", args.seed)
    describe(spec)
    res = count_points(inst, config, log=note)
    print(res.report(), flush=True)
    return EXIT_OK


# verify --------------------------------------------------------------------

def in_weil_interval(n: int, q: int) -> bool:
    """(sqrt q - 1)^4 <= n <= (sqrt q + 1)^4, decided in integers.

    (sqrt q -+ 1)^4 = c -+ 4 (q + 1) sqrt q with c = q^2 + 6q + 1.
    """
    c = q * q + 6 * q + 1
    w2 = 16 * q * (q + 1) ** 2  # (4 (q + 1) sqrt q)^2
    lo_gap = c - n  # need lo_gap <= 4 (q + 1) sqrt q
    hi_gap = n - c  # need hi_gap <= 4 (q + 1) sqrt q
    return (lo_gap <= 0 or lo_gap * lo_gap <= w2) and (hi_gap <= 0 or hi_gap * hi_gap <= w2)


def verify_order(curve, order: int, k: int, rng) -> tuple:
    """(in Weil interval, number of k random divisors killed by ``order``)."""
    weil = in_weil_interval(order, curve.q)
    killed = 0
    for _ in range(k):
        D = jac.random_divisor(curve, rng=rng)
        if jac.is_identity(curve, jac.scalar_mul(curve, order, D)):
            killed += 1
    return weil, killed


def cmd_verify(args) -> int:
    spec = read_spec(args.spec)
    curve = curve_of(make_instance(spec))
    if args.twist:
        curve = jac.quadratic_twist(curve)
    emit("seed", args.seed)
    describe(spec)
    emit("twist", int(args.twist))
    emit("claimed_order", args.order)
    weil, killed = verify_order(curve, args.order, args.k, HashRandom(args.seed))
    ok = weil and killed == args.k
    emit("weil_interval", "ok" if weil else "fail")
    emit("annihilated", f"{killed}/{args.k}")
    emit("result", "pass" if ok else "fail")
    return EXIT_OK if ok else EXIT_VERIFY


# search --------------------------------------------------------------------

@dataclass
class SearchPolicy:
    lmax: int = 131
    twist_secure: bool = False
    rounds: int = 40
    seed: int = 0
    max_candidates: int = 10

    def __post_init__(self):
        if self.lmax < 11:
            raise ValueError("lmax must be at least 11")
        if self.rounds < 40:
            raise ValueError("primality rounds must be at least 40")
        if self.max_candidates < 1:
            raise ValueError("max candidates must be positive")


def chi_residues(m: int, n: int, ell: int, q: int, disc: int) -> tuple:
    """(chi(1), chi(-1)) mod ell from psi = m + n phi mod ell."""
    order = order_constants(disc)
    s1 = (2 * m + n * order.trace) % ell
    s2 = (s1 * s1 - n * n * disc) * pow(4, -1, ell) % ell
    chi1 = ((1 + q) ** 2 - s1 * (1 + q) + s2) % ell
    chim1 = ((1 + q) ** 2 + s1 * (1 + q) + s2) % ell
    return chi1, chim1


def abort_reason(chi1: int, chim1: int, twist_secure: bool) -> str | None:
    """Why a candidate can not give a prime order (or twist order), if so."""
    if chi1 == 0:
        return "order"
    if twist_secure and chim1 == 0:
        return "twist"
    return None


FAMILY_DISC = {"tautz": 5, "humbert5": 5, "mestre8": 8}


def field_ok(q: int, family: str) -> bool:
    if q < 11 or not is_probable_prime(q):
        return False
    return family == "mestre8" or q % 5 in (1, 4)


def random_field(bits: int, family: str, rng) -> int:
    if bits < 8:
        raise ValueError("field size must be at least 8 bits")
    while True:
        q = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if field_ok(q, family):
            return q


def random_spec(q: int, family: str, rng) -> dict:
    spec = {"q": q, "family": family, "t": rng.randrange(1, q)}
    if family != "tautz":
        spec["s"] = rng.randrange(1, q)
    return spec


def screen(inst, policy: SearchPolicy, progress=note):
    """Split primes up to lmax with early abort: (constraints, reason or None)."""
    order = order_constants(inst.disc)
    done = {}
    for ell in split_primes(order, 3, policy.lmax):
        if ell == inst.q:
            continue
        try:
            c = mn_mod_ell(inst, ell)
        except PrimeSkipped as exc:
            progress(f"ell={ell} skipped reason={exc.reason!r}")
            continue
        done[ell] = c
        chi1, chim1 = chi_residues(c.m, c.n, ell, inst.q, inst.disc)
        why = abort_reason(chi1, chim1, policy.twist_secure)
        if why:
            return done, f"{why}_divisible_by_{ell}"
    return done, None


def search(family: str, q: int | None, bits: int | None, policy: SearchPolicy, *,
           threads: int = 1, bsgs: bool = True, out=emit, progress=note):
    """Yield dicts describing curves whose orders pass primality tests."""
    rng = HashRandom(policy.seed)
    if q is None:
        q = random_field(bits, family, rng)
    elif not field_ok(q, family):
        raise ValueError(f"q={q} is not a usable prime for family {family}")
    out("q", q)
    for cand in range(policy.max_candidates):
        spec = random_spec(q, family, rng)
        tag = f"candidate={cand} " + " ".join(f"{k}={spec[k]}" for k in ("s", "t") if k in spec)
        try:
            inst = make_instance(spec)
        except FamilyError as exc:
            progress(f"{tag} rejected reason={type(exc).__name__}")
            continue
        done, why = screen(inst, policy, progress)
        if why:
            progress(f"{tag} aborted reason={why}")
            continue
        try:
            res = count_points(inst, CountConfig(lmax=policy.lmax, bsgs=bsgs, threads=threads,
                                                 seed=policy.seed), known=done)
        except SchoofError as exc:
            progress(f"{tag} failed reason={type(exc).__name__}")
            continue
        prime = is_probable_prime(res.order, policy.rounds)
        tprime = is_probable_prime(res.twist_order, policy.rounds)
        if not prime or (policy.twist_secure and not tprime):
            progress(f"{tag} rejected reason=composite order={res.order}")
            continue
        # re-test at doubled rounds before emitting
        prime = is_probable_prime(res.order, 2 * policy.rounds)
        tprime = is_probable_prime(res.twist_order, 2 * policy.rounds)
        if not prime or (policy.twist_secure and not tprime):
            progress(f"{tag} rejected reason=retest")
            continue
        yield {**spec, "s1": res.s1, "s2": res.s2, "order": res.order,
               "twist_order": res.twist_order, "order_prime": int(prime),
               "twist_prime": int(tprime)}


def cmd_search(args) -> int:
    policy = SearchPolicy(args.lmax, args.twist_secure, args.rounds, args.seed,
                          args.max_candidates)
    emit("seed", args.seed)
    emit("family", args.family)
    found = 0
    for hit in search(args.family, args.q, args.bits, policy, threads=args.threads,
                      bsgs=args.bsgs == "on"):
        found += 1
        print("curve " + " ".join(f"{k}={v}" for k, v in hit.items()), flush=True)
    emit("found", found)
    return EXIT_OK


# divpoly -------------------------------------------------------------------

def cmd_divpoly(args) -> int:
    from .divpoly import alpha_division_polys, k_division_polys

    spec = read_spec(args.spec)
    obj = make_instance(spec)
    describe(spec)
    if args.ell is not None:
        inst = rm_instance(spec)
        data = reduced_generator(order_constants(inst.disc), args.ell)
        alpha = data.alpha1 if args.which == 1 else data.alpha2
        emit("ell", args.ell)
        emit("alpha", f"{alpha.a},{alpha.b}")
        dp = alpha_division_polys(inst, alpha)
    else:
        emit("k", args.k)
        dp = k_division_polys(obj, args.k)
    for name in ("d0", "d1", "d2", "e0", "e1", "e2"):
        coeffs = getattr(dp, name)
        emit(f"deg_{name}", len(coeffs) - 1)
        if args.coeffs:
            emit(name, ",".join(map(str, coeffs)))
    return EXIT_OK


# bench ---------------------------------------------------------------------

BENCH_Q = 2305843009213693951  # 2^61 - 1, below the compiled-kernel word limit
BENCH_ELLS = (11, 19, 29, 41)


def loglog_slope(xs, ys) -> float:
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den


def bench(inst, ells, progress=note) -> list:
    """[(ell, seconds, ideal degree)] for mn_mod_ell on ``inst``."""
    rows = []
    for ell in ells:
        t0 = time.perf_counter()
        c = mn_mod_ell(inst, ell)
        rows.append((ell, time.perf_counter() - t0, c.ideal_deg))
        progress(c.log_line())
    return rows


def cmd_bench(args) -> int:
    _backend.force_backend(args.backend)
    spec = {"q": args.q, "family": "tautz", "t": args.t}
    inst = rm_instance(spec)
    ells = [int(x) for x in args.ells.split(",")]
    emit("backend", _backend.kernels_for(inst.q).BACKEND)
    describe(spec)
    try:
        rows = bench(inst, ells)
    except PrimeSkipped as exc:
        emit("error", "PrimeSkipped")
        emit("message", str(exc))
        return EXIT_FAILED
    for ell, sec, deg in rows:
        print(f"ell={ell} time_s={sec:.3f} ideal_deg={deg} expected_deg={ell * ell - 1}", flush=True)
    monotone = all(b[1] > a[1] for a, b in zip(rows, rows[1:]))
    emit("monotone", int(monotone))
    if len(rows) >= 2:
        slope = loglog_slope([r[0] for r in rows], [r[1] for r in rows])
        ok = BENCH_BAND[0] <= slope <= BENCH_BAND[1]
        emit("slope", f"{slope:.3f}")
        emit("slope_band", f"{BENCH_BAND[0]},{BENCH_BAND[1]}")
        emit("trend", "ok" if ok else "outside_band")
        if args.strict and not (ok and monotone):
            return EXIT_FAILED
    return EXIT_OK


# entry point ---------------------------------------------------------------

def _add_count_flags(p, *, checkpoint=True):
    p.add_argument("--lmax", type=int, default=131, help="largest split prime to use")
    p.add_argument("--threads", type=int, default=1, help="worker processes")
    p.add_argument("--bsgs", choices=("on", "off"), default="on")
    if checkpoint:
        p.add_argument("--checkpoint", help="append per-prime results here and resume from it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rmschoof", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="PRNG seed (printed)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="characteristic polynomial of Frobenius")
    p.add_argument("spec", help="curve-spec file, - for stdin, or inline key=value text")
    _add_count_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common], help="check a claimed Jacobian order on random divisors")
    p.add_argument("spec")
    p.add_argument("order", type=int)
    p.add_argument("-k", type=int, default=20, help="number of random divisors")
    p.add_argument("--twist", action="store_true", help="the order is for the quadratic twist")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="random curves with prime Jacobian order")
    p.add_argument("--family", choices=sorted(FAMILY_DISC), default="tautz")
    field = p.add_mutually_exclusive_group(required=True)
    field.add_argument("--q", type=int)
    field.add_argument("--bits", type=int)
    p.add_argument("--twist-secure", action="store_true")
    p.add_argument("--rounds", type=int, default=40, help="primality test rounds")
    p.add_argument("--max-candidates", type=int, default=10)
    _add_count_flags(p, checkpoint=False)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("divpoly", parents=[common], help="division polynomials of [k] or of a prime generator")
    p.add_argument("spec")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--ell", type=int, help="split prime; uses its reduced generator")
    which.add_argument("--k", type=int, help="integer multiplier")
    p.add_argument("--which", type=int, choices=(1, 2), default=1, help="prime above ell")
    p.add_argument("--coeffs", action="store_true", help="print coefficients too")
    p.set_defaults(func=cmd_divpoly)

    p = sub.add_parser("bench", parents=[common], help="per-prime timing and growth trend")
    p.add_argument("--q", type=int, default=BENCH_Q)
    p.add_argument("--t", type=int, default=7)
    p.add_argument("--ells", default=",".join(map(str, BENCH_ELLS)))
    p.add_argument("--backend", choices=("compiled", "python"), default="compiled")
    p.add_argument("--strict", action="store_true", help="exit 2 when the trend check fails")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = secrets.randbits(63)
    try:
        return args.func(args)
    except VerificationFailed as exc:
        code, err = EXIT_VERIFY, exc
    except (SchoofError, KernelError) as exc:
        code, err = EXIT_FAILED, exc
    except INPUT_ERRORS as exc:
        code, err = EXIT_INPUT, exc
    emit("error", type(err).__name__)
    emit("message", str(err).replace("\n", " "))
    return code


if __name__ == "__main__":
    sys.exit(main())
