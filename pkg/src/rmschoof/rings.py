"""Coefficient rings for generic divisor arithmetic.

Every ring exposes the same small duck-typed interface::

    zero, one, add, sub, neg, mul, inv, is_zero, from_int

Elements are opaque to callers.  ``inv`` and ``is_zero`` may raise
:class:`SplitRequired` when the ring is a product of fields and the element
is a zero divisor; the caller is expected to split the modulus and replay
the computation on each factor.
"""

from __future__ import annotations

from .ff._backend import kernels_for
from .ff.field import PrimeField


class SplitRequired(ArithmeticError):
    """A zero divisor showed up; ``factor`` is a proper monic factor of the modulus."""

    def __init__(self, factor, ring=None):
        super().__init__(f"zero divisor: modulus splits off a factor of degree {len(factor) - 1}")
        self.factor = factor
        self.ring = ring


class NonGeneric(ArithmeticError):
    """Computation left the generic branch it was written for."""


class FqRing:
    """F_q with plain int elements."""

    def __init__(self, field: PrimeField):
        self.field = field
        self.q = field.q
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return (-a) % self.q

    def mul(self, a, b):
        return a * b % self.q

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.q)

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return n % self.q

    def frob(self, a):
        return a


class RationalFunctionField:
    """F_q(t) with elements (num, den): den monic, gcd(num, den) = 1."""

    def __init__(self, field: PrimeField):
        self.field = field
        self.q = field.q
        self.k = kernels_for(self.q)
        self.zero = ((), (1,))
        self.one = ((1,), (1,))

    def make(self, num, den=(1,)):
        k, q = self.k, self.q
        num = k.trim([c % q for c in num])
        den = k.trim([c % q for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = k.gcd(num, den, q)
        if len(g) > 1:
            num = k.quo(num, g, q)
            den = k.quo(den, g, q)
        c = den[-1]
        if c != 1:
            ci = pow(c, -1, q)
            num = [x * ci % q for x in num]
            den = [x * ci % q for x in den]
        return (tuple(num), tuple(den))

    def var(self):
        return ((0, 1), (1,))

    def from_int(self, n):
        n %= self.q
        return ((n,), (1,)) if n else self.zero

    def const(self, c):
        return self.from_int(c)

    def add(self, a, b):
        k, q = self.k, self.q
        if not a[0]:
            return b
        if not b[0]:
            return a
        if a[1] == b[1]:
            return self.make(k.add(list(a[0]), list(b[0]), q), a[1])
        num = k.add(k.mul(list(a[0]), list(b[1]), q), k.mul(list(b[0]), list(a[1]), q), q)
        return self.make(num, k.mul(list(a[1]), list(b[1]), q))

    def neg(self, a):
        if not a[0]:
            return a
        return (tuple(self.k.neg(list(a[0]), self.q)), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        k, q = self.k, self.q
        if not a[0] or not b[0]:
            return self.zero
        an, ad, bn, bd = list(a[0]), list(a[1]), list(b[0]), list(b[1])
        g1 = k.gcd(an, bd, q)
        if len(g1) > 1:
            an, bd = k.quo(an, g1, q), k.quo(bd, g1, q)
        g2 = k.gcd(bn, ad, q)
        if len(g2) > 1:
            bn, ad = k.quo(bn, g2, q), k.quo(ad, g2, q)
        num = k.mul(an, bn, q)
        den = k.mul(ad, bd, q)
        c = den[-1]
        if c != 1:
            ci = pow(c, -1, q)
            num = [x * ci % q for x in num]
            den = [x * ci % q for x in den]
        return (tuple(num), tuple(den))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero")
        return self.make(a[1], a[0])

    def is_zero(self, a):
        return not a[0]

    def evaluate(self, a, t):
        k, q = self.k, self.q
        den = k.evaluate(a[1], t, q)
        if not den:
            raise ZeroDivisionError("pole")
        return k.evaluate(a[0], t, q) * pow(den, -1, q) % q


class QuotientRing:
    """F_q[z] / (T) for squarefree monic T, elements as reduced coefficient lists.

    Inverting a zero divisor raises :class:`SplitRequired` with gcd(a, T).
    """

    def __init__(self, field: PrimeField, modulus):
        self.field = field
        self.q = q = field.q
        self.k = k = kernels_for(q)
        m = k.monic(k.trim([c % q for c in modulus]), q)
        if len(m) < 2:
            raise ValueError("modulus must have positive degree")
        self.modulus = tuple(m)
        self._m = m
        self.degree = len(m) - 1
        self._minv = k.inv_series(m[::-1], self.degree, q)
        self.zero = ()
        self.one = (1,)
        self._inv_cache: dict = {}

    def __repr__(self):
        return f"QuotientRing(q={self.q}, degree={self.degree})"

    def reduce(self, a):
        a = self.k.trim([c % self.q for c in a])
        if len(a) > self.degree:
            a = self.k.rem(a, self._m, self.q)
        return tuple(a)

    def from_int(self, n):
        n %= self.q
        return (n,) if n else ()

    def gen(self):
        return self.reduce([0, 1])

    def add(self, a, b):
        return tuple(self.k.add(a, b, self.q))

    def sub(self, a, b):
        return tuple(self.k.sub(a, b, self.q))

    def neg(self, a):
        return tuple(self.k.neg(a, self.q))

    def mul(self, a, b):
        if not a or not b:
            return ()
        if len(a) == 1:
            c = a[0]
            return tuple(x * c % self.q for x in b)
        if len(b) == 1:
            c = b[0]
            return tuple(x * c % self.q for x in a)
        return tuple(self.k.mulmod_pre(list(a), list(b), self._m, self._minv, self.q))

    def scale(self, a, c):
        c %= self.q
        if not c:
            return ()
        return tuple(x * c % self.q for x in a)

    def pow(self, a, e: int):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if len(a) == 1:
            return (pow(a[0], -1, self.q),)
        hit = self._inv_cache.get(a)
        if hit is not None:
            return hit
        try:
            r = tuple(self.k.invmod(list(a), self._m, self.q))
        except self.k.NotInvertible as exc:
            raise SplitRequired(exc.gcd, self) from None
        if len(self._inv_cache) > 4096:
            self._inv_cache.clear()
        self._inv_cache[a] = r
        return r

    def is_zero(self, a):
        if not a:
            return True
        self.inv(a)
        return False

    def frob(self, a, e: int | None = None):
        return self.pow(a, self.q if e is None else e)

    def compose(self, a, h):
        """a(h) for a polynomial a over F_q and ring element h."""
        acc = self.zero
        for c in reversed(a):
            acc = self.add(self.mul(acc, h), (c,) if c else ())
        return acc


class QuadraticExtension:
    """base[X] / (X^2 + a1 X + a0); elements are pairs (c0, c1)."""

    def __init__(self, base, a1, a0):
        self.base = base
        self.a1 = a1
        self.a0 = a0
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)

    def gen(self):
        return (self.base.zero, self.base.one)

    def lift(self, c):
        return (c, self.base.zero)

    def from_int(self, n):
        return (self.base.from_int(n), self.base.zero)

    def add(self, a, b):
        B = self.base
        return (B.add(a[0], b[0]), B.add(a[1], b[1]))

    def sub(self, a, b):
        B = self.base
        return (B.sub(a[0], b[0]), B.sub(a[1], b[1]))

    def neg(self, a):
        B = self.base
        return (B.neg(a[0]), B.neg(a[1]))

    def mul(self, a, b):
        B = self.base
        c0 = B.mul(a[0], b[0])
        c2 = B.mul(a[1], b[1])
        mid = B.sub(B.sub(B.mul(B.add(a[0], a[1]), B.add(b[0], b[1])), c0), c2)
        # X^2 = -a1 X - a0
        return (B.sub(c0, B.mul(c2, self.a0)), B.sub(mid, B.mul(c2, self.a1)))

    def conj(self, a):
        B = self.base
        return (B.sub(a[0], B.mul(self.a1, a[1])), B.neg(a[1]))

    def norm(self, a):
        return self.mul(a, self.conj(a))[0]

    def trace(self, a):
        B = self.base
        return B.sub(B.add(a[0], a[0]), B.mul(self.a1, a[1]))

    def inv(self, a):
        n = self.norm(a)
        if self.base.is_zero(n):
            if self.is_zero(a):
                raise ZeroDivisionError("inverse of zero")
            raise NonGeneric("zero divisor in quadratic extension")
        ni = self.base.inv(n)
        c = self.conj(a)
        return (self.base.mul(c[0], ni), self.base.mul(c[1], ni))

    def is_zero(self, a):
        return self.base.is_zero(a[0]) and self.base.is_zero(a[1])

    def evaluate_poly(self, coeffs, z):
        """Horner evaluation of a base-ring polynomial at z."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, z), (c, self.base.zero))
        return acc
