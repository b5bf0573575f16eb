"""Triangular kernel ideals of alpha and generic-divisor arithmetic modulo them.

A nonzero D = P1 + P2 - D_inf with alpha(D) = 0 satisfies
alpha(D_P1) = -alpha(D_P2).  In terms of the division polynomials this says

    d1/d2 and d0/d2 agree at x1 and x2,  y1 E(x1) = -y2 E(x2)  (E = e1/e2 or e0/e2).

Dividing the antisymmetric conditions by x1 - x2 gives symmetric
polynomials in (s1, s2) = (x1 + x2, x1 x2).  Eliminating s2 with resultants
yields T1(s1); s2, then b0/b1 and b1^2 follow over R = F_q[a1]/(T1) with
a1 = -s1.  The ideal is

    T1(a1),  a0 - A0(a1),  b1^2 - beta(a1),  b0 - gamma(a1) b1.

Its generic divisor is u = x^2 + a1 x + a0, v = b1 (x + gamma), which is a
GenericJacobian element over R with s = b1, s^2 = beta.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cantor import GenericJacobian, pgcd, pnorm
from .families import DivisionPolys, RMFamilyInstance
from .ff import PrimeField
from .ff._backend import kernels_for
from .ff.resultant import interpolate_elimination, interpolate_resultant
from .rings import NonGeneric, QuadraticExtension, QuotientRing, SplitRequired


class KernelError(ArithmeticError):
    pass


class InterpolationFailure(KernelError):
    pass


class EmptyKernelComponent(KernelError):
    """No generic kernel element survived the construction."""


# polynomial helpers over F_q ---------------------------------------------

def _neg_var(p, q):
    """p(-x)."""
    return [(-c) % q if i & 1 else c for i, c in enumerate(p)]


def _crt_poly(r1, m1, r2, m2, q):
    k = kernels_for(q)
    inv = k.invmod(m1, m2, q)
    t = k.rem(k.mul(k.sub(list(r2), list(r1), q), inv, q), m2, q)
    return k.add(list(r1), k.mul(list(m1), t, q), q)


# the ideal ---------------------------------------------------------------

@dataclass(frozen=True)
class TriangularIdeal:
    """Generators T1(a1), a0 - A0(a1), b1^2 - beta(a1), b0 - gamma(a1) b1."""

    q: int
    t1: tuple
    a0: tuple
    beta: tuple
    gamma: tuple
    _ring: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def degree(self) -> int:
        return 2 * (len(self.t1) - 1)

    @property
    def main_degrees(self) -> tuple:
        return (len(self.t1) - 1, 1, 2, 1)

    def ring(self) -> QuotientRing:
        if "R" not in self._ring:
            self._ring["R"] = QuotientRing(PrimeField(self.q), self.t1)
        return self._ring["R"]

    def restrict(self, g) -> "TriangularIdeal":
        """The component cut out by a monic factor g of T1."""
        k = kernels_for(self.q)
        g = list(g)
        return TriangularIdeal(self.q, tuple(g), *(tuple(k.rem(list(p), g, self.q))
                                                   for p in (self.a0, self.beta, self.gamma)))

    def generators(self) -> list:
        """The four generators as dicts {(e_a1, e_a0, e_b1, e_b0): coeff}."""
        q = self.q
        T1 = {(i, 0, 0, 0): c for i, c in enumerate(self.t1) if c}
        T2 = {(0, 1, 0, 0): 1}
        T3 = {(0, 0, 2, 0): 1}
        T4 = {(0, 0, 0, 1): 1}
        for i, c in enumerate(self.a0):
            if c:
                T2[(i, 0, 0, 0)] = (-c) % q
        for i, c in enumerate(self.beta):
            if c:
                T3[(i, 0, 0, 0)] = (-c) % q
        for i, c in enumerate(self.gamma):
            if c:
                T4[(i, 0, 1, 0)] = (-c) % q
        return [T1, T2, T3, T4]

    def generic_divisor(self) -> "GenericDivisor":
        R = self.ring()
        return GenericDivisor(self, ([R.reduce(self.a0), R.gen(), R.one], [R.reduce(self.gamma), R.one]))

    def jacobian(self, curve) -> GenericJacobian:
        key = ("J", curve.f)
        if key not in self._ring:
            R = self.ring()
            self._ring[key] = GenericJacobian(R, [R.from_int(c) for c in curve.f], beta=R.reduce(self.beta))
        return self._ring[key]


@dataclass(frozen=True)
class GenericDivisor:
    """(u, w) over the ring of ``ideal``; Mumford v = b1 * w with b1^2 = beta."""

    ideal: TriangularIdeal
    uw: tuple

    def coordinates(self) -> tuple:
        """(a1, a0, b1, b0) as algebra elements (c0, c1) meaning c0 + c1 b1."""
        R = self.ideal.ring()
        u, w = self.uw
        u = list(u) + [R.zero] * (3 - len(u))
        w = list(w) + [R.zero] * (2 - len(w))
        return ((u[1], R.zero), (u[0], R.zero), (R.zero, w[1]), (R.zero, w[0]))


# normal forms in the quotient algebra R[b1]/(b1^2 - beta) -----------------

def reduce_mod_ideal(I: TriangularIdeal, element) -> tuple:
    """Normal form (c0, c1), meaning c0(a1) + c1(a1) b1.

    ``element`` is a dict {(e_a1, e_a0, e_b1, e_b0): coeff} or a pair.
    """
    R = I.ring()
    if isinstance(element, tuple) and len(element) == 2 and not isinstance(element, dict):
        return (R.reduce(element[0]), R.reduce(element[1]))
    a0 = R.reduce(I.a0)
    beta = R.reduce(I.beta)
    gamma = R.reduce(I.gamma)
    a1 = R.gen()
    out = [R.zero, R.zero]
    for (ea1, ea0, eb1, eb0), c in element.items():
        if not c % I.q:
            continue
        base = R.mul(R.pow(a1, ea1), R.pow(a0, ea0))
        base = R.mul(base, R.pow(gamma, eb0))
        e = eb1 + eb0
        base = R.mul(base, R.pow(beta, e // 2))
        base = R.scale(base, c)
        out[e & 1] = R.add(out[e & 1], base)
    return (out[0], out[1])


def alg_mul(I: TriangularIdeal, x, y) -> tuple:
    R = I.ring()
    beta = R.reduce(I.beta)
    c0 = R.add(R.mul(x[0], y[0]), R.mul(R.mul(x[1], y[1]), beta))
    c1 = R.add(R.mul(x[0], y[1]), R.mul(x[1], y[0]))
    return (c0, c1)


@dataclass(frozen=True)
class Split:
    """invert_or_split outcome for a zero divisor: the two components."""

    components: tuple


def invert_or_split(I: TriangularIdeal, element):
    """Inverse of a reduced algebra element, or Split(I_g, I_{T1/g})."""
    R = I.ring()
    k = kernels_for(I.q)
    c0, c1 = element
    beta = R.reduce(I.beta)
    nrm = R.sub(R.mul(c0, c0), R.mul(R.mul(c1, c1), beta))
    if not nrm:
        return Split((I,))
    try:
        ni = R.inv(nrm)
    except SplitRequired as exc:
        g = list(exc.factor)
        h = k.quo(list(I.t1), g, I.q)
        return Split((I.restrict(g), I.restrict(h)))
    return (R.mul(c0, ni), R.neg(R.mul(c1, ni)))


# construction ------------------------------------------------------------

def _hat_table(p, r, q):
    """G_k(s2) with hat(p, r) = sum_k h_k(s1, s2) G_k(s2)."""
    n = max(len(p), len(r))
    p = list(p) + [0] * (n - len(p))
    r = list(r) + [0] * (n - len(r))
    G = [[0] * n for _ in range(max(n - 1, 1))]
    for i in range(n):
        for j in range(i):
            c = (p[i] * r[j] - p[j] * r[i]) % q
            if c:
                G[i - j - 1][j] = c
    k = kernels_for(q)
    return [k.trim(g) for g in G]


def hat_at(G, c, q, k=None):
    """Clenshaw: hat at s1 = c as a polynomial in s2 (h_k = c h_{k-1} - s2 h_{k-2})."""
    k = k or kernels_for(q)
    b1, b2 = [], []
    for g in reversed(G):
        b = k.sub(k.add(g, k.scale(b1, c, q), q), [0] + b2 if b2 else [], q)
        b1, b2 = b, b1
    return b1


def _hat_weight(G):
    """Weighted degree (s1 weight 1, s2 weight 2)."""
    w = -1
    for kk, g in enumerate(G):
        for j, c in enumerate(g):
            if c:
                w = max(w, kk + 2 * j)
    return w


def _generic_s2_degree(G, q):
    rng = random.Random(len(G) * 7919 + q)
    return max(len(hat_at(G, rng.randrange(q), q)) - 1 for _ in range(3))


def _elimination(GA, GB, q):
    """Res_{s2}(A, B) in s1, and s2 as a rational function of s1 where it is unique."""
    k = kernels_for(q)
    da, db = _generic_s2_degree(GA, q), _generic_s2_degree(GB, q)
    if da < 0 or db < 0:
        raise EmptyKernelComponent("a symmetric condition vanishes identically")
    bound = (_hat_weight(GA) * _hat_weight(GB)) // 2
    try:
        return interpolate_elimination(lambda c: (hat_at(GA, c, q, k), hat_at(GB, c, q, k)),
                                       (da, db), bound, q, kernels=k)
    except ArithmeticError as exc:
        raise InterpolationFailure(str(exc)) from exc


def _squarefree(p, q):
    k = kernels_for(q)
    p = k.monic(k.trim(list(p)), q)
    d = k.derivative(p, q)
    if not d:
        return p
    g = k.gcd(p, d, q)
    return k.quo(p, g, q) if len(g) > 1 else p


def _pole_sums(d2, q):
    """Squarefree polynomial whose roots are r + r' for roots r, r' of d2."""
    k = kernels_for(q)
    d2 = k.trim(list(d2))
    n = len(d2) - 1
    if n < 1:
        return [1]

    def shifted(c):
        # d2(c - x) as a polynomial in x
        out, p = [], [1]
        for cf in d2:
            out = k.add(out, k.scale(p, cf, q), q)
            p = k.mul(p, [c % q, q - 1], q)
        return out

    P = interpolate_resultant(lambda c: (d2, shifted(c)), (n, n), n * n, q, kernels=k)
    return _squarefree(P, q)


def _strip(S, P, q):
    k = kernels_for(q)
    g = k.gcd(S, P, q)
    while len(g) > 1:
        S = k.quo(S, g, q)
        g = k.gcd(S, g, q)
    return S


def _bivariate(R, G, s1):
    """hat(s1, s2) over R as a list of s2-coefficients (Clenshaw in s1)."""
    b1, b2 = [], []
    for kk in range(len(G) - 1, -1, -1):
        g = [R.from_int(c) for c in G[kk]]
        b = [R.add(x, R.mul(s1, y)) for x, y in _zip_pad(R, g, b1)]
        b = [R.sub(x, y) for x, y in _zip_pad(R, b, [R.zero] + b2 if b2 else [])]
        b1, b2 = b, b1
    return pnorm(R, b1)


def _components(T, q, solve):
    """Run ``solve(m)`` on F_q[z]/(m), splitting m on zero divisors."""
    k = kernels_for(q)
    out = []
    stack = [k.monic(list(T), q)]
    while stack:
        m = stack.pop()
        try:
            out.append((m, solve(m)))
        except SplitRequired as exc:
            g = k.monic(list(exc.factor), q)
            if len(g) < 2 or len(g) >= len(m):
                continue
            stack.append(g)
            stack.append(k.quo(m, g, q))
        except _Dropped:
            continue
    return out


def kernel_polynomial(dp: DivisionPolys) -> list:
    """T1 in the variable s1 = x1 + x2 (monic, squarefree)."""
    return _kernel_data(dp)[0]


def _s2_of(R, frac, s1_poly):
    """s2 over R from the rational function (num, den), or None if den vanishes."""
    num, den = (R.reduce(s1_poly(p)) for p in frac)
    if not den:
        return None
    return R.mul(num, R.inv(den))


def _at(R, coeffs, x):
    c = R.zero
    for coeff in reversed(coeffs):
        c = R.add(R.mul(c, x), coeff)
    return c


def _kernel_data(dp: DivisionPolys) -> tuple:
    """(T1, frac) with frac = (num, den) giving s2 = num/den (s1) on T1.

    Res_{s2}(hat(d1, d2), hat(d0, d2)) also vanishes at sums of pole pairs
    and at pairs whose images agree in u but not up to sign in v; the first
    are divided out, the second fail hat(e1, e0) at the common s2 root.
    """
    q = dp.q
    k = kernels_for(q)
    GA = _hat_table(dp.d1, dp.d2, q)
    GB = _hat_table(dp.d0, dp.d2, q)
    GC = _hat_table(dp.e1, dp.e0, q) if dp.e1 and dp.e0 else None
    res, frac = _elimination(GA, GB, q)
    S = _squarefree(res, q)
    S = _strip(S, _pole_sums(dp.d2, q), q)
    if len(S) < 2:
        raise EmptyKernelComponent("elimination left no kernel polynomial")
    if GC is None:
        return S, frac

    def solve(m):
        R = QuotientRing(PrimeField(q), m)
        z = R.gen()
        s2 = _s2_of(R, frac, lambda p: p)
        if s2 is None:
            g = pgcd(R, _bivariate(R, GA, z), _bivariate(R, GB, z))
            if len(g) != 2:
                raise _Dropped("s2 not determined")
            s2 = R.neg(g[0])
        # keep the roots where all three conditions hold at (z, s2)
        g = list(m)
        for G in (GA, GB, GC):
            c = _at(R, _bivariate(R, G, z), s2)
            if c:
                g = k.gcd(g, list(c), q)
        return g

    T = [1]
    for _, part in _components(S, q, solve):
        T = k.mul(T, part, q)
    if len(T) < 2:
        raise EmptyKernelComponent("no pair satisfies all kernel conditions")
    return k.monic(T, q), frac


class _Dropped(Exception):
    pass


def _solve_component(dp, curve, T, q, GA, GB, GC, frac=None):
    """(A0, beta, gamma) in the variable a1 over F_q[a1]/(T), T in a1."""
    R = QuotientRing(PrimeField(q), T)
    a1 = R.gen()
    s1 = R.neg(a1)

    a0 = _s2_of(R, frac, lambda p: _neg_var(p, q)) if frac else None
    if a0 is None:
        g = pgcd(R, _bivariate(R, GA, s1), _bivariate(R, GB, s1))
        if GC is not None and len(g) > 2:
            g = pgcd(R, g, _bivariate(R, GC, s1))
        if len(g) != 2:
            raise _Dropped(f"s2 not determined (gcd degree {len(g) - 1})")
        a0 = R.neg(g[0])
    L = QuadraticExtension(R, a1, a0)
    X = L.gen()
    Xb = L.conj(X)

    def ev(p, z):
        return L.evaluate_poly([R.from_int(c) for c in p], z)

    rho = None
    for num in (dp.e1, dp.e0):
        if not num:
            continue
        try:
            top = L.mul(ev(num, Xb), ev(dp.e2, X))
            bot = L.mul(ev(num, X), ev(dp.e2, Xb))
            rho = L.neg(L.mul(top, L.inv(bot)))
            break
        except NonGeneric:
            continue
    if rho is None:
        raise _Dropped("y-ratio not defined")
    try:
        den = L.inv(L.sub(rho, L.one))
        gamma = L.mul(L.sub(X, L.mul(rho, Xb)), den)
        xg = L.add(X, gamma)
        beta = L.mul(ev(curve.f, X), L.inv(L.mul(xg, xg)))
    except NonGeneric:
        raise _Dropped("degenerate y-ratio") from None
    if not R.is_zero(gamma[1]) or not R.is_zero(beta[1]) or R.is_zero(beta[0]):
        raise _Dropped("parasite component")
    return a0, beta[0], gamma[0]


def _zip_pad(R, a, b):
    n = max(len(a), len(b))
    a = list(a) + [R.zero] * (n - len(a))
    b = list(b) + [R.zero] * (n - len(b))
    return zip(a, b)


def build_kernel_ideal(inst: RMFamilyInstance, dp: DivisionPolys, *, t1_sigma=None) -> TriangularIdeal:
    """The kernel ideal of the endomorphism whose division polynomials are ``dp``."""
    q = dp.q
    k = kernels_for(q)
    frac = None
    if t1_sigma is not None:
        T_sigma = t1_sigma
    else:
        T_sigma, frac = _kernel_data(dp)
    T = k.monic(_neg_var(T_sigma, q), q)
    GA = _hat_table(dp.d1, dp.d2, q)
    GB = _hat_table(dp.d0, dp.d2, q)
    GC = _hat_table(dp.e1, dp.e0, q) if dp.e1 and dp.e0 else None
    curve = inst.curve if isinstance(inst, RMFamilyInstance) else inst
    parts = _components(T, q, lambda m: _solve_component(dp, curve, m, q, GA, GB, GC, frac))
    if not parts:
        raise EmptyKernelComponent("no generic kernel elements")
    mod, (a0, beta, gamma) = parts[0][0], [list(x) for x in parts[0][1]]
    for m, vals in parts[1:]:
        a0 = _crt_poly(a0, mod, list(vals[0]), m, q)
        beta = _crt_poly(beta, mod, list(vals[1]), m, q)
        gamma = _crt_poly(gamma, mod, list(vals[2]), m, q)
        mod = k.mul(mod, m, q)
    return TriangularIdeal(q, tuple(mod), tuple(k.trim(a0)), tuple(k.trim(beta)), tuple(k.trim(gamma)))


# generic Frobenius and Cantor ------------------------------------------

def generic_frobenius(I: TriangularIdeal, D: GenericDivisor, q: int | None = None, power: int = 1) -> GenericDivisor:
    """pi^power(D): coordinates raised to q^power; v picks up beta^((q^power - 1)/2)."""
    R = I.ring()
    e = (q or I.q) ** power
    u, w = D.uw
    un = [R.pow(c, e) for c in u]
    wn = [R.pow(c, e) for c in w]
    scale = R.pow(R.reduce(I.beta), (e - 1) // 2)
    wn = [R.mul(c, scale) for c in wn]
    return GenericDivisor(I, (pnorm(R, un), pnorm(R, wn)))


def restrict_divisor(D: GenericDivisor, sub: TriangularIdeal) -> GenericDivisor:
    R = sub.ring()
    u, w = D.uw
    return GenericDivisor(sub, (pnorm(R, [R.reduce(c) for c in u]), pnorm(R, [R.reduce(c) for c in w])))


def generic_phi(I: TriangularIdeal, curve, dp: DivisionPolys, D: GenericDivisor) -> tuple:
    """phi(D) as (u, w): image of one root of u over R[X]/(u), plus its conjugate."""
    R = I.ring()
    u, w = D.uw
    if len(u) != 3:
        raise NonGeneric("phi needs deg u = 2")
    L = QuadraticExtension(R, u[1], u[0])
    X = L.gen()

    def ev(p):
        return L.evaluate_poly([R.from_int(c) for c in p], X)

    wX = L.evaluate_poly(list(w), X)
    di, ei = L.inv(ev(dp.d2)), L.inv(ev(dp.e2))
    img_u = [L.mul(ev(dp.d0), di), L.mul(ev(dp.d1), di), L.one]
    img_w = pnorm(L, [L.mul(wX, L.mul(ev(dp.e0), ei)), L.mul(wX, L.mul(ev(dp.e1), ei))])
    conj_u = [L.conj(c) for c in img_u]
    conj_w = [L.conj(c) for c in img_w]
    J = GenericJacobian(L, [L.lift(R.from_int(c)) for c in curve.f], beta=L.lift(R.reduce(I.beta)))
    su, sw = J.add((img_u, img_w), (conj_u, conj_w))
    if any(not R.is_zero(c[1]) for c in su) or any(not R.is_zero(c[1]) for c in sw):
        raise NonGeneric("conjugate sum is not defined over the base")
    return (pnorm(R, [c[0] for c in su]), pnorm(R, [c[0] for c in sw]))


def _apply(I, curve, op, args):
    J = I.jacobian(curve)
    if op == "add":
        return J.add(args[0].uw, args[1].uw)
    if op == "neg":
        return J.neg(args[0].uw)
    if op == "mul":
        return J.mul(args[0], args[1].uw)
    if op == "frobenius":
        return generic_frobenius(I, args[0], power=args[1] if len(args) > 1 else 1).uw
    if op == "equal":
        return J.equal(args[0].uw, args[1].uw)
    if op == "phi":
        return generic_phi(I, curve, args[1], args[0])
    if op == "rm":
        D, dp, a, b = args
        phiD = generic_phi(I, curve, dp, D)
        return J.add(J.mul(a, D.uw), J.mul(b, phiD))
    raise ValueError(f"unknown generic operation {op!r}")


def generic_cantor(I: TriangularIdeal, curve, op: str, *args) -> list:
    """Run a group operation over I, splitting on zero divisors.

    Ops: add, neg, mul (k, D), frobenius (D[, power]), equal, phi (D, dp)
    and rm (D, dp, a, b) for [a]D + [b]phi(D).  Returns [(component, result)],
    result a GenericDivisor (or bool for "equal"); components where the
    generic branch breaks down are dropped.
    """
    k = kernels_for(I.q)
    out = []
    stack = [(I, args)]
    while stack:
        J, a = stack.pop()
        try:
            r = _apply(J, curve, op, a)
        except SplitRequired as exc:
            g = k.monic(list(exc.factor), J.q)
            if len(g) < 2 or len(g) >= len(J.t1):
                continue
            for part in (g, k.quo(list(J.t1), g, J.q)):
                sub = J.restrict(part)
                stack.append((sub, tuple(restrict_divisor(x, sub) if isinstance(x, GenericDivisor) else x
                                         for x in a)))
            continue
        except NonGeneric:
            continue
        out.append((J, r if isinstance(r, bool) else GenericDivisor(J, r)))
    return out


def rational_kernel_points(I: TriangularIdeal) -> list:
    """Divisors (u, v) over F_q from the F_q-rational roots of I."""
    from .ff import sqrt_mod
    from .ff.poly import DensePoly
    q = I.q
    k = kernels_for(q)
    F = PrimeField(q)
    roots = DensePoly(F, list(I.t1)).roots()
    out = []
    for r in roots:
        r = int(r)
        a0 = k.evaluate(list(I.a0), r, q)
        beta = k.evaluate(list(I.beta), r, q)
        gamma = k.evaluate(list(I.gamma), r, q)
        s = sqrt_mod(beta, q)
        if s is None:
            continue
        for b1 in {s, (-s) % q}:
            out.append(((a0, r, 1), k.trim([gamma * b1 % q, b1])))
    return out
