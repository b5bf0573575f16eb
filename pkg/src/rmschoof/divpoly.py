"""Division polynomials of [k] and of a + b*phi by generic-point arithmetic.

The generic point P = (X, y_P) lives over F_q(X) with y_P^2 = f(X).  Its
embedding D_P is pushed through the group law over F_q(X); the resulting
Mumford coefficients, cleared of denominators, are the division
polynomials.  The y-coordinate is carried as v = y_P * w (see cantor.py).
"""

from __future__ import annotations

from .cantor import GenericJacobian
from .families import DivisionPolys, RMFamilyInstance
from .ff import PrimeField
from .ff._backend import kernels_for
from .jacobian import CurveModel
from .rings import NonGeneric, RationalFunctionField
from .rmorder import RMOrderElement


class NonGenericShape(ArithmeticError):
    """The generic image does not have deg u = 2."""


class GenericPointContext:
    """F_q(X), the curve over it, and the embedded generic point D_P."""

    def __init__(self, curve: CurveModel, base_x: int | None = None):
        self.curve = curve
        q = self.q = curve.q
        K = self.K = RationalFunctionField(PrimeField(q))
        self.J = GenericJacobian(K, [K.from_int(c) for c in curve.f], beta=K.make(curve.f))
        X = K.var()
        if curve.even:
            if base_x is None:
                base_x = _rational_root(curve)
            v = base_x % q
            Xv = K.sub(X, K.from_int(v))
            iv = K.inv(Xv)
            u = [K.mul(X, K.from_int(v)), K.neg(K.add(X, K.from_int(v))), K.one]
            w = [K.neg(K.mul(K.from_int(v), iv)), iv]
            self.DP = (u, w)
        else:
            self.DP = ([K.neg(X), K.one], [K.one])
        self.base_x = base_x

    def from_divpolys(self, dp: DivisionPolys):
        """phi(D_P) as a generic divisor."""
        K = self.K
        d2, e2 = list(dp.d2), list(dp.e2)
        u = [K.make(dp.d0, d2), K.make(dp.d1, d2), K.one]
        w = [K.make(dp.e0, e2), K.make(dp.e1, e2)]
        while w and K.is_zero(w[-1]):
            w.pop()
        return (u, w)

    def to_divpolys(self, D) -> DivisionPolys:
        u, w = D
        if len(u) != 3:
            raise NonGenericShape(f"generic image has deg u = {len(u) - 1}, expected 2")
        w = list(w) + [self.K.zero] * (2 - len(w))
        d0, d1, d2 = _clear(self.q, u[:2])
        e0, e1, e2 = _clear(self.q, w[:2])
        return DivisionPolys(self.q, d0, d1, d2, e0, e1, e2)


def _rational_root(curve: CurveModel) -> int:
    for x in range(curve.q):
        if curve.evaluate(x) == 0:
            return x
    raise NonGenericShape("even model without a rational Weierstrass point")


def _clear(q, coeffs):
    """Two rational functions c0, c1 -> (n0, n1, den) with ci = ni / den."""
    k = kernels_for(q)
    dens = [list(c[1]) for c in coeffs]
    den = dens[0]
    for d in dens[1:]:
        den = k.quo(k.mul(den, d, q), k.gcd(den, d, q), q)
    nums = [k.mul(list(c[0]), k.quo(den, list(c[1]), q), q) if c[0] else [] for c in coeffs]
    return nums[0], nums[1], den


def _context(obj) -> tuple:
    if isinstance(obj, RMFamilyInstance):
        return GenericPointContext(obj.curve, obj.base_x), obj
    return GenericPointContext(obj), None


def k_division_polys(c, k: int) -> DivisionPolys:
    """Division polynomials of [k]; ``c`` is a CurveModel or a family instance."""
    ctx, _ = _context(c)
    try:
        D = ctx.J.mul(k, ctx.DP)
    except NonGeneric as exc:
        raise NonGenericShape(str(exc)) from None
    return ctx.to_divpolys(D)


def alpha_division_polys(inst: RMFamilyInstance, alpha) -> DivisionPolys:
    """Division polynomials of a + b*phi: one sum of [a]D_P and [b]phi(D_P)."""
    a, b = (alpha.a, alpha.b) if isinstance(alpha, RMOrderElement) else alpha
    ctx = GenericPointContext(inst.curve, inst.base_x)
    try:
        D = ctx.J.add(ctx.J.mul(a, ctx.DP), ctx.J.mul(b, ctx.from_divpolys(inst.divpolys)))
    except NonGeneric as exc:
        raise NonGenericShape(str(exc)) from None
    return ctx.to_divpolys(D)
