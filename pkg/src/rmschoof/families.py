"""The three explicit real-multiplication families and their endomorphism phi.

Each family comes with an embedding P -> D_P of the curve in its Jacobian
and phi-division polynomials (d0, d1, d2, e0, e1, e2) in x_P such that

    phi(D_P) = ( x^2 + d1/d2 x + d0/d2 ,  y - y_P (e1/e2 x + e0/e2) ).

``phi_eval`` extends this Z-linearly to arbitrary divisor classes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import jacobian as jac
from .cantor import GenericJacobian
from .ff import sqrt_mod
from .jacobian import CurveModel, MumfordDivisor
from .rings import FqRing, NonGeneric, QuadraticExtension


class FamilyError(ValueError):
    pass


class TauNotRational(FamilyError):
    """tau_5 = zeta_5 + 1/zeta_5 is not in F_q (q = +-2 mod 5)."""


class SingularParameter(FamilyError):
    pass


class DenominatorVanishes(FamilyError):
    pass


class NonGenericInput(ArithmeticError):
    """A division-polynomial denominator vanished at the given divisor."""


def _trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


@dataclass(frozen=True)
class DivisionPolys:
    """phi-division polynomials as coefficient tuples over F_q, lowest first."""

    q: int
    d0: tuple
    d1: tuple
    d2: tuple
    e0: tuple
    e1: tuple
    e2: tuple

    def __post_init__(self):
        for name in ("d0", "d1", "d2", "e0", "e1", "e2"):
            object.__setattr__(self, name, tuple(_trim(c % self.q for c in getattr(self, name))))
        if not self.d2:
            raise ValueError("d2 must be nonzero")

    def degrees(self) -> dict:
        return {name: len(getattr(self, name)) - 1 for name in ("d0", "d1", "d2", "e0", "e1", "e2")}

    def image_at(self, x: int, y: int) -> tuple:
        """(u, v) of phi(D_P) at the point P = (x, y); raises NonGenericInput."""
        q = self.q

        def ev(p):
            acc = 0
            for c in reversed(p):
                acc = (acc * x + c) % q
            return acc

        d2, e2 = ev(self.d2), ev(self.e2)
        if not d2 or not e2:
            raise NonGenericInput("division polynomial denominator vanishes")
        di, ei = pow(d2, -1, q), pow(e2, -1, q)
        u = (ev(self.d0) * di % q, ev(self.d1) * di % q, 1)
        v = _trim([y * ev(self.e0) % q * ei % q, y * ev(self.e1) % q * ei % q])
        return u, tuple(v)


@dataclass(frozen=True)
class RMFamilyInstance:
    curve: CurveModel
    disc: int
    trace: int
    norm: int
    divpolys: DivisionPolys
    embedding: str  # "infinity" or "weierstrass"
    base_x: int | None = None  # x-coordinate of the Weierstrass base point
    tau: int | None = None

    @property
    def q(self) -> int:
        return self.curve.q

    @property
    def family(self) -> str:
        return self.curve.family


def _finish(q, f, family, params):
    c = CurveModel(q, tuple(f), family, tuple(params))
    try:
        jac.validate_curve(c)
    except jac.SingularCurve:
        raise SingularParameter(f"{family} parameters {params} give a singular curve") from None
    return c


def tau5(q: int) -> int:
    """The smaller root of T^2 + T - 1 in F_q."""
    if q % 5 == 0:
        raise TauNotRational("q is a power of 5")
    r = sqrt_mod(5, q)
    if r is None:
        raise TauNotRational(f"5 is not a square modulo {q}")
    inv2 = pow(2, -1, q)
    return min((-1 + r) * inv2 % q, (-1 - r) * inv2 % q)


def make_ttv(q: int, t: int) -> RMFamilyInstance:
    """y^2 = x^5 - 5x^3 + 5x + t, phi from x1^2 + x2^2 - tau x1 x2 + tau^2 - 4."""
    q = int(q)
    jac.check_field(q)
    tau = tau5(q)
    f = [t % q, 5, 0, -5, 0, 1]
    c = _finish(q, f, "tautz", (t % q,))
    dp = DivisionPolys(q, d0=(tau * tau - 4, 0, 1), d1=(0, -tau), d2=(1,), e0=(1,), e1=(), e2=(1,))
    return RMFamilyInstance(c, 5, -1, -1, dp, "infinity", None, tau)


def make_humbert5(q: int, s: int, t: int) -> RMFamilyInstance:
    """Two-parameter family with RM by Z[(1 + sqrt 5)/2].

    phi comes from the correspondence s x1^2 x2^2 + (1 - s) x1 x2 - x1 - x2 + 1
    with y2 = y1 x2 (x2 - 1) / (x1 (x1 - 1)).  Writing f = f0 - t x^2 (x - 1)^2,
    this is one of the two (2,2) factors of f0/(x^2 (x-1)^2) evaluated at x1
    minus the same at x2, so it is independent of t.
    """
    q = int(q)
    jac.check_field(q)
    s %= q
    t %= q
    if not s:
        raise SingularParameter("s = 0 drops the degree of f")
    f = [1, s - 3, -(3 * s + t - 3), s * s + 3 * s + 2 * t - 1, -(2 * s + t), s]
    c = _finish(q, f, "humbert5", (s, t))
    dp = DivisionPolys(q, d0=(1, -1), d1=(-1, 1 - s), d2=(0, 0, s),
                       e0=(1,), e1=(-1, -s), e2=(0, 0, 0, s))
    return RMFamilyInstance(c, 5, -1, -1, dp, "infinity")


def mestre_v_n(q: int, s: int) -> tuple:
    s %= q
    den = (s * s - 2) % q
    if not den:
        raise DenominatorVanishes("s^2 = 2 makes v(s) and n(s) undefined")
    di = pow(den, -1, q)
    v = (s * s + 2) * di % q
    n = 4 * s * (pow(s, 4, q) + 4) * pow(di, 3, q) % q
    return v, n


def _pmul(a, b, q):
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            r[i + j] = (r[i + j] + x * y) % q
    return r


def make_mestre8(q: int, s: int, t: int) -> RMFamilyInstance:
    """y^2 = (vx - 1)(x - v)(x^4 - t x^2 + t v^2 - 1), phi^2 = 2.

    The quartic factor uses the constant t v^2 - 1, which is the curve the
    correspondence x1^2 x2^2 - v^2 (x1^2 + x2^2) + 1 lives on.  Reducing the
    y-relation modulo u gives e0 = n (1 - v x) Q(x) for the quartic Q.
    """
    q = int(q)
    jac.check_field(q)
    s %= q
    t %= q
    v, n = mestre_v_n(q, s)
    quartic = [(t * v * v - 1) % q, 0, (-t) % q, 0, 1]
    f = _pmul(_pmul([q - 1, v], [(-v) % q, 1], q), quartic, q)
    c = _finish(q, f, "mestre8", (s, t))
    d2 = ((-v * v) % q, 0, 1)
    d0 = (1, 0, (-v * v) % q)
    e2 = tuple(_pmul(list(d2), f, q))
    e1 = tuple(x * n % q for x in _pmul([(-v) % q, 1], quartic, q))
    e0 = tuple(x * n % q for x in _pmul([1, (-v) % q], quartic, q))
    dp = DivisionPolys(q, d0=d0, d1=(), d2=d2, e0=e0, e1=e1, e2=e2)
    return RMFamilyInstance(c, 8, 0, -2, dp, "weierstrass", v)


def make_instance(spec: dict) -> RMFamilyInstance | CurveModel:
    """Build from a parsed curve spec; explicit curves come back as CurveModel."""
    fam = spec["family"]
    q = spec["q"]
    if fam == "tautz":
        return make_ttv(q, spec["t"])
    if fam == "humbert5":
        return make_humbert5(q, spec["s"], spec["t"])
    if fam == "mestre8":
        return make_mestre8(q, spec["s"], spec["t"])
    return jac.make_curve(q, spec["f"])


# embedding and phi ---------------------------------------------------------

def embed(inst: RMFamilyInstance, P) -> MumfordDivisor:
    """D_P for an affine point P."""
    c = inst.curve
    if inst.embedding == "weierstrass":
        return jac.two_point_divisor(c, P, (inst.base_x, 0))
    return jac.point_divisor(c, P[0], P[1])


def phi_of_point(inst: RMFamilyInstance, P) -> MumfordDivisor:
    u, v = inst.divpolys.image_at(P[0] % inst.q, P[1] % inst.q)
    return MumfordDivisor(u, v, 0)


def _roots_quadratic(a1, a0, q):
    """Roots of x^2 + a1 x + a0 in F_q, or None if irreducible."""
    disc = (a1 * a1 - 4 * a0) % q
    r = sqrt_mod(disc, q)
    if r is None:
        return None
    inv2 = pow(2, -1, q)
    return ((-a1 + r) * inv2 % q, (-a1 - r) * inv2 % q)


def _phi_direct(inst: RMFamilyInstance, D: MumfordDivisor) -> MumfordDivisor:
    c = inst.curve
    q = c.q
    if jac.is_identity(c, D):
        return D
    if c.even and (D.degree != 2 or D.n != 0):
        raise NonGenericInput("even model: only P + Q - D_inf is handled directly")
    if D.degree == 1:
        x = (-D.u[0]) % q
        y = D.v[0] if D.v else 0
        return phi_of_point(inst, (x, y))
    a0, a1 = D.u[0], D.u[1]
    v0 = D.v[0] if D.v else 0
    v1 = D.v[1] if len(D.v) > 1 else 0
    roots = _roots_quadratic(a1, a0, q)
    if roots is not None:
        x1, x2 = roots
        P1 = (x1, (v0 + v1 * x1) % q)
        if x1 == x2:
            return jac.double(c, phi_of_point(inst, P1))
        P2 = (x2, (v0 + v1 * x2) % q)
        return jac.cantor_add(c, phi_of_point(inst, P1), phi_of_point(inst, P2))
    return _phi_conjugate_pair(inst, a1, a0, v0, v1)


def _phi_conjugate_pair(inst, a1, a0, v0, v1):
    """phi(D) for u irreducible: image of one root over F_q[X]/(u), plus its conjugate."""
    c = inst.curve
    q = c.q
    base = FqRing(c.field)
    E = QuadraticExtension(base, a1, a0)
    X = E.gen()
    y = (v0, v1)
    dp = inst.divpolys
    d2 = E.evaluate_poly(dp.d2, X)
    e2 = E.evaluate_poly(dp.e2, X)
    try:
        di, ei = E.inv(d2), E.inv(e2)
    except (NonGeneric, ZeroDivisionError):
        raise NonGenericInput("division polynomial denominator vanishes") from None
    u = [E.mul(E.evaluate_poly(dp.d0, X), di), E.mul(E.evaluate_poly(dp.d1, X), di), E.one]
    w = [E.mul(y, E.mul(E.evaluate_poly(dp.e0, X), ei)), E.mul(y, E.mul(E.evaluate_poly(dp.e1, X), ei))]
    uc = [E.conj(a) for a in u]
    wc = [E.conj(a) for a in w]
    J = GenericJacobian(E, [E.lift(x) for x in c.f])

    def norm(p):
        return [a for a in p]

    try:
        su, sw = J.add((norm(u), _etrim(E, w)), (norm(uc), _etrim(E, wc)))
    except NonGeneric:
        raise NonGenericInput("sum of conjugate images left the generic branch") from None
    if any(a[1] for a in su) or any(a[1] for a in sw):
        raise ArithmeticError("conjugate sum is not rational")
    u_out = tuple(_trim([a[0] for a in su]))
    v_out = tuple(_trim([a[0] for a in sw]))
    n = 1 if (c.even and len(u_out) == 1) else 0
    return MumfordDivisor(u_out, v_out, n)


def _etrim(E, p):
    p = list(p)
    while p and E.is_zero(p[-1]):
        p.pop()
    return p


def phi_eval(inst: RMFamilyInstance, D: MumfordDivisor, *, shift_tries: int = 16) -> MumfordDivisor:
    """phi(D) by Z-linear extension of the division-polynomial formula.

    Divisors outside the generic shape are handled as phi(D + R) - phi(R)
    for pseudo-random R; ``shift_tries = 0`` disables this and raises
    NonGenericInput instead.
    """
    try:
        return _phi_direct(inst, D)
    except NonGenericInput:
        if not shift_tries:
            raise
    c = inst.curve
    rng = random.Random(hash((D.u, D.v, D.n, c.q)))
    for _ in range(shift_tries):
        R = jac.random_divisor(c, rng=rng)
        try:
            return jac.sub(c, _phi_direct(inst, jac.cantor_add(c, D, R)), _phi_direct(inst, R))
        except NonGenericInput:
            continue
    raise NonGenericInput("no generic shift found")


def rm_apply(inst: RMFamilyInstance, a: int, b: int, D: MumfordDivisor) -> MumfordDivisor:
    """(a + b phi)(D)."""
    c = inst.curve
    return jac.cantor_add(c, jac.scalar_mul(c, a, D), jac.scalar_mul(c, b, phi_eval(inst, D)))


def minimal_polynomial_holds(inst: RMFamilyInstance, D: MumfordDivisor) -> bool:
    """phi^2 - Tr phi + N = 0 on D."""
    c = inst.curve
    p1 = phi_eval(inst, D)
    p2 = phi_eval(inst, p1)
    total = jac.cantor_add(c, p2, jac.scalar_mul(c, -inst.trace, p1))
    total = jac.cantor_add(c, total, jac.scalar_mul(c, inst.norm, D))
    return jac.is_identity(c, total)
