"""The per-prime RM Schoof step, CRT assembly, BSGS completion and chi(T).

For a split prime l = p1 p2 with p_i = (alpha_i), Frobenius acts on
Jac[alpha_i] with pi^2 - y_i pi + q = 0, where y_i = m + n x_i mod l is
the image of psi = pi + q/pi = m + n phi.  A generic kernel element D of
the ideal of alpha_i gives y_i as the discrete log of (pi^2 + q)(D) to the
base pi(D); two primes give (m, n) mod l.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import families as fam
from . import jacobian as jac
from .divpoly import NonGenericShape, alpha_division_polys
from .ff import integer_crt
from .ff._backend import kernels_for
from .ff.resultant import DegenerateLeading, InsufficientPoints
from .kernel import (EmptyKernelComponent, GenericDivisor, InterpolationFailure,
                     build_kernel_ideal, generic_frobenius, restrict_divisor)
from .rings import NonGeneric, SplitRequired
from .rmorder import RMOrder, order_constants, reduced_generator, split_primes


class SchoofError(ArithmeticError):
    pass


class PrimeSkipped(SchoofError):
    def __init__(self, ell: int, reason: str):
        super().__init__(f"l = {ell} skipped: {reason}")
        self.ell = ell
        self.reason = reason


class NoSolution(SchoofError):
    pass


class InconsistentParity(SchoofError):
    pass


class RueckViolation(SchoofError):
    pass


class NotFound(SchoofError):
    pass


class Ambiguous(SchoofError):
    pass


class IncompleteCount(SchoofError):
    """CRT data is partial and BSGS is disabled or infeasible."""

    def __init__(self, msg, partial=None, log=()):
        super().__init__(msg)
        self.partial = partial
        self.log = list(log)


class VerificationFailed(SchoofError):
    pass


@dataclass(frozen=True)
class ModularConstraint:
    ell: int
    m: int
    n: int
    ideal_deg: int = 0
    time_s: float = 0.0

    def log_line(self) -> str:
        return f"ell={self.ell} m={self.m} n={self.n} ideal_deg={self.ideal_deg} time_s={self.time_s:.2f}"

    @classmethod
    def parse(cls, line: str) -> "ModularConstraint":
        kv = dict(tok.split("=", 1) for tok in line.split())
        return cls(int(kv["ell"]), int(kv["m"]), int(kv["n"]), int(kv.get("ideal_deg", 0)),
                   float(kv.get("time_s", 0.0)))


@dataclass(frozen=True)
class Partial:
    modulus: int
    m: int
    n: int


@dataclass
class CharpolyResult:
    m: int
    n: int
    s1: int
    s2: int
    order: int
    twist_order: int
    log: list = field(default_factory=list)
    primes_used: tuple = ()
    skipped: tuple = ()

    def report(self) -> str:
        lines = [c.log_line() for c in self.log]
        lines += [f"m={self.m}", f"n={self.n}", f"s1={self.s1}", f"s2={self.s2}",
                  f"order={self.order}", f"twist_order={self.twist_order}",
                  "primes_used=" + ",".join(map(str, self.primes_used)),
                  "skipped=" + ",".join(map(str, self.skipped))]
        return "\n".join(lines)


@dataclass
class CountConfig:
    lmax: int = 131
    bsgs: bool = True
    threads: int = 1
    seed: int = 0
    checkpoint: str | None = None
    verify_divisors: int = 3
    bsgs_limit: int = 4_000_000
    bsgs_switch: int = 4096


# bounds ----------------------------------------------------------------

def mn_bounds(q: int, order: RMOrder) -> tuple:
    """Bounds on |m| and |n| from |psi_i| <= 2 sqrt(q)."""
    r = math.sqrt(q / order.disc)
    bm = 2 * (abs(order.trace) + math.sqrt(order.disc)) * r
    bn = 4 * r
    return math.floor(bm), math.floor(bn)


# discrete logs ---------------------------------------------------------

class CurveGroup:
    """Group interface over rational divisors, as used by dlog_small."""

    def __init__(self, curve):
        self.curve = curve

    def identity(self):
        return jac.identity(self.curve)

    def add(self, a, b):
        return jac.cantor_add(self.curve, a, b)

    def equal(self, a, b):
        return a == b


def dlog_small(Dpp, Dp, ell: int, group) -> int:
    """y in [0, l) with Dpp = [y] Dp, by linear scan."""
    acc = group.identity()
    for y in range(ell):
        if group.equal(acc, Dpp):
            return y
        acc = group.add(acc, Dp)
    raise NoSolution(f"no discrete log below {ell}")


# per-prime step ----------------------------------------------------------

def _component_ybar(I, curve, ell, q):
    """Votes {y: weight} from the components of the kernel ideal I."""
    votes: dict = {}
    failures = 0
    qbar = q % ell
    stack = [(I, "frob1", {"D": I.generic_divisor()})]
    while stack:
        J, stage, st = stack.pop()
        G = J.jacobian(curve)
        try:
            while True:
                if stage == "frob1":
                    st["Dp"] = generic_frobenius(J, st["D"])
                    stage = "frob2"
                elif stage == "frob2":
                    st["P2"] = generic_frobenius(J, st["Dp"])
                    stage = "qmul"
                elif stage == "qmul":
                    st["Dpp"] = GenericDivisor(J, G.add(st["P2"].uw, G.mul(qbar, st["D"].uw)))
                    if G.is_identity(st["Dp"].uw):
                        raise NoSolution("pi(D) is the identity")
                    stage = "scan"
                else:
                    y = dlog_small(st["Dpp"].uw, st["Dp"].uw, ell, G)
                    votes[y] = votes.get(y, 0) + J.degree
                    break
        except SplitRequired as exc:
            k = kernels_for(q)
            g = k.monic(list(exc.factor), q)
            if len(g) < 2 or len(g) >= len(J.t1):
                failures += J.degree
                continue
            for part in (g, k.quo(list(J.t1), g, q)):
                sub = J.restrict(part)
                stack.append((sub, stage, {key: restrict_divisor(v, sub) for key, v in st.items()}))
        except (NoSolution, NonGeneric):
            failures += J.degree
    return votes, failures


def _vote(votes: dict, ell: int) -> int:
    if not votes:
        raise PrimeSkipped(ell, "no component produced a discrete log")
    ranked = sorted(votes.items(), key=lambda kv: -kv[1])
    if len(ranked) > 1 and ranked[0][1] == ranked[1][1]:
        raise PrimeSkipped(ell, f"tied component votes {ranked[:2]}")
    return ranked[0][0]


def mn_mod_ell(inst, ell: int) -> ModularConstraint:
    """(m mod l, n mod l) from the kernels of alpha_1 and alpha_2."""
    t0 = time.time()
    q = inst.q
    order = order_constants(inst.disc)
    if ell == q:
        raise PrimeSkipped(ell, "l equals the characteristic")
    sp = reduced_generator(order, ell)
    ys = []
    deg = 0
    for alpha in (sp.alpha1, sp.alpha2):
        try:
            dp = alpha_division_polys(inst, alpha)
            I = build_kernel_ideal(inst, dp)
        except (InterpolationFailure, InsufficientPoints, DegenerateLeading,
                EmptyKernelComponent, NonGenericShape) as exc:
            raise PrimeSkipped(ell, f"kernel ideal: {exc}") from None
        deg = max(deg, I.degree)
        votes, _ = _component_ybar(I, inst.curve, ell, q)
        ys.append(_vote(votes, ell))
    x1, x2 = sp.xbar1, sp.xbar2
    n = (ys[0] - ys[1]) * pow(x1 - x2, -1, ell) % ell
    m = (ys[0] - n * x1) % ell
    return ModularConstraint(ell, m, n, deg, time.time() - t0)


# assembly --------------------------------------------------------------

def crt_assemble(constraints, q: int, order: RMOrder):
    """Exact (m, n) if prod(l) exceeds both interval widths, else Partial."""
    bm, bn = mn_bounds(q, order)
    if not constraints:
        return Partial(1, 0, 0)
    ms = [(c.m, c.ell) for c in constraints]
    ns = [(c.n, c.ell) for c in constraints]
    M = math.prod(c.ell for c in constraints)
    m = integer_crt(ms, centered=True)
    n = integer_crt(ns, centered=True)
    if M > 2 * bm + 1 and M > 2 * bn + 1:
        return (m, n)
    return Partial(M, m % M, n % M)


def psi_holds(inst, m: int, n: int, D) -> bool:
    """(1 + q) D = m D + n phi(D) on a rational divisor."""
    c = inst.curve
    lhs = jac.scalar_mul(c, 1 + c.q, D)
    rhs = jac.cantor_add(c, jac.scalar_mul(c, m, D), jac.scalar_mul(c, n, fam.phi_eval(inst, D)))
    return lhs == rhs


def _range(residue, modulus, bound):
    """Integers r = residue mod modulus with |r| <= bound, as (start, count)."""
    start = -bound + ((residue + bound) % modulus)
    if start > bound:
        return start, 0
    return start, (bound - start) // modulus + 1


def bsgs_steps(partial, q: int, order: RMOrder) -> int:
    """Baby plus giant steps BSGS would take from ``partial``."""
    if isinstance(partial, tuple):
        return 0
    bm, bn = mn_bounds(q, order)
    return _range(partial.m, partial.modulus, bm)[1] + _range(partial.n, partial.modulus, bn)[1]


def bsgs_complete(inst, partial, *, rng=None, limit: int = 4_000_000, extra: int = 3) -> tuple:
    """(m, n) in the Weil rectangle congruent to ``partial``, by BSGS on rational divisors."""
    c = inst.curve
    q = c.q
    order = order_constants(inst.disc)
    bm, bn = mn_bounds(q, order)
    if isinstance(partial, tuple):
        return partial
    M = partial.modulus
    if M > 2 * bm + 1 and M > 2 * bn + 1:
        m = partial.m if partial.m <= M // 2 else partial.m - M
        n = partial.n if partial.n <= M // 2 else partial.n - M
        return (m, n)
    m0, cm = _range(partial.m, M, bm)
    n0, cn = _range(partial.n, M, bn)
    if cm + cn > limit:
        raise IncompleteCount(f"BSGS needs {cm + cn} steps, above the limit {limit}", partial)
    rng = rng or random.Random(q)
    D = jac.random_divisor(c, rng=rng)
    phD = fam.phi_eval(inst, D)
    # baby steps: m D for m = m0, m0 + M, ...
    table: dict = {}
    step = jac.scalar_mul(c, M, D)
    cur = jac.scalar_mul(c, m0, D)
    for i in range(cm):
        table.setdefault(cur, []).append(m0 + i * M)
        cur = jac.cantor_add(c, cur, step)
    # giant steps: (1 + q) D - n phi(D) for n = n0, n0 + M, ...
    gstep = jac.neg(c, jac.scalar_mul(c, M, phD))
    cur = jac.sub(c, jac.scalar_mul(c, 1 + q, D), jac.scalar_mul(c, n0, phD))
    cands = []
    for j in range(cn):
        for m in table.get(cur, ()):
            cands.append((m, n0 + j * M))
        cur = jac.cantor_add(c, cur, gstep)
    if not cands:
        raise NotFound("no (m, n) in the Weil rectangle satisfies the relation")
    checks = 0
    while len(cands) > 1 or checks < extra:
        E = jac.random_divisor(c, rng=rng)
        cands = [mn for mn in cands if psi_holds(inst, mn[0], mn[1], E)]
        checks += 1
        if not cands:
            raise NotFound("all candidates failed the cross-check")
        if checks > 50:
            raise Ambiguous(f"{len(cands)} candidates survive 50 checks")
    return cands[0]


def _isqrt_floor(x: int) -> int:
    return math.isqrt(x) if x > 0 else 0


def charpoly_from_mn(m: int, n: int, q: int, order: RMOrder) -> CharpolyResult:
    """chi(T) data from psi = m + n phi, with Rueck-domain validation."""
    s1 = 2 * m + n * order.trace
    d0 = n * n * order.disc
    if (s1 * s1 - d0) % 4:
        raise InconsistentParity(f"s1^2 - n^2 disc = {s1 * s1 - d0} is not divisible by 4")
    s2 = (s1 * s1 - d0) // 4
    if s1 * s1 > 16 * q:
        raise RueckViolation(f"|s1| > 4 sqrt(q) for s1 = {s1}")
    # (4 sqrt(q) - |s1|)^2 >= n^2 disc  <=>  16q + s1^2 - d0 >= 8 |s1| sqrt(q)
    lhs = 16 * q + s1 * s1 - d0
    if lhs < 0 or lhs * lhs < 64 * s1 * s1 * q:
        raise RueckViolation(f"(s1, n) = ({s1}, {n}) outside the Rueck domain")
    return CharpolyResult(m, n, s1, s2, jac.jacobian_order(s1, s2, q), jac.twisted_order(s1, s2, q))


def mn_from_charpoly(s1: int, s2: int, order: RMOrder) -> tuple:
    """(m, |n|) from (s1, s2); the sign of n is not determined by chi."""
    d0 = s1 * s1 - 4 * s2
    n2, r = divmod(d0, order.disc)
    n = math.isqrt(n2) if n2 >= 0 else -1
    if r or n * n != n2:
        raise ValueError("(s1, s2) is not the charpoly of a curve with this RM")
    m2 = s1 - n * order.trace
    if m2 % 2:
        raise ValueError("s1 - n Tr(phi) is odd")
    return m2 // 2, n


def mn_with_sign(inst, s1: int, s2: int, *, rng=None, tries: int = 4) -> tuple:
    """(m, n) from (s1, s2), fixing the sign of n by psi on random divisors."""
    order = order_constants(inst.disc)
    _, n = mn_from_charpoly(s1, s2, order)
    rng = rng or random.Random(inst.q)
    cands = {((s1 - k * order.trace) // 2, k) for k in (n, -n)}
    for _ in range(tries):
        if len(cands) == 1:
            break
        D = jac.random_divisor(inst.curve, rng=rng)
        cands = {mn for mn in cands if psi_holds(inst, mn[0], mn[1], D)}
    if len(cands) != 1:
        raise Ambiguous(f"sign of n not determined: {sorted(cands)}")
    return cands.pop()


# driver ----------------------------------------------------------------

def _run_prime(args):
    inst, ell = args
    try:
        return mn_mod_ell(inst, ell)
    except PrimeSkipped as exc:
        return exc


def _load_checkpoint(path):
    done = {}
    if path and os.path.exists(path):
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line.startswith("ell="):
                    c = ModularConstraint.parse(line)
                    done[c.ell] = c
    return done


def count_points(inst, config: CountConfig | None = None, *, log=None, known=None) -> CharpolyResult:
    """chi(T) of the Jacobian of an RM family instance.

    Primes are processed until CRT is exact, or, with BSGS enabled, until
    the remaining BSGS rectangle needs at most ``bsgs_switch`` steps.

    ``known`` maps primes to constraints computed elsewhere (a search loop,
    say); they are reused instead of recomputed and are not re-checkpointed.
    """
    config = config or CountConfig()
    q = inst.q
    order = order_constants(inst.disc)
    done = dict(known or {})
    done.update(_load_checkpoint(config.checkpoint))
    constraints, skipped = [], []
    primes = [ell for ell in split_primes(order, 3, config.lmax) if ell != q]
    result = crt_assemble(constraints, q, order)
    i = 0
    batch = max(1, config.threads)
    pool = ProcessPoolExecutor(max_workers=batch) if batch > 1 else None
    try:
        while i < len(primes) and not isinstance(result, tuple):
            chunk = primes[i:i + batch]
            i += len(chunk)
            todo = [ell for ell in chunk if ell not in done]
            if pool is not None and len(todo) > 1:
                outs = list(pool.map(_run_prime, [(inst, ell) for ell in todo]))
            else:
                outs = [_run_prime((inst, ell)) for ell in todo]
            fresh = dict(zip(todo, outs))
            for ell in chunk:
                out = done.get(ell) or fresh[ell]
                if isinstance(out, PrimeSkipped):
                    skipped.append(ell)
                    if log:
                        log(f"ell={ell} skipped reason={out.reason!r}")
                    continue
                constraints.append(out)
                if log:
                    log(out.log_line())
                if config.checkpoint and ell not in done:
                    with open(config.checkpoint, "a") as fh:
                        fh.write(out.log_line() + "\n")
                result = crt_assemble(constraints, q, order)
                if isinstance(result, tuple):
                    break
            if config.bsgs and bsgs_steps(result, q, order) <= config.bsgs_switch:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    rng = random.Random(config.seed)
    if isinstance(result, tuple):
        D = [jac.random_divisor(inst.curve, rng=rng) for _ in range(config.verify_divisors)]
        if not all(psi_holds(inst, result[0], result[1], E) for E in D):
            result = Partial(math.prod(c.ell for c in constraints), result[0], result[1])
    if not isinstance(result, tuple):
        if not config.bsgs:
            raise IncompleteCount("CRT data is partial and BSGS is disabled", result, constraints)
        result = bsgs_complete(inst, result, rng=rng, limit=config.bsgs_limit)
    m, n = result
    res = charpoly_from_mn(m, n, q, order)
    for _ in range(config.verify_divisors):
        E = jac.random_divisor(inst.curve, rng=rng)
        if not jac.is_identity(inst.curve, jac.scalar_mul(inst.curve, res.order, E)):
            raise VerificationFailed(f"order {res.order} does not annihilate a random divisor")
    res.log = constraints
    res.primes_used = tuple(c.ell for c in constraints)
    res.skipped = tuple(skipped)
    return res
