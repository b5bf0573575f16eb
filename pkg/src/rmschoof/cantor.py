"""Cantor's group law over an abstract coefficient ring, with parity.

Divisors are pairs ``(u, w)`` of coefficient lists (lowest degree first)
over a ring from :mod:`rmschoof.rings`; ``u`` is monic and the Mumford
``v`` equals ``s * w`` for a fixed square root ``s`` of a ring element
``beta``.  With ``beta = f(x_P)`` and ``s = y_P`` this carries the generic
point's y-coordinate symbolically; with ``beta = 1`` it is plain Cantor.

Odd models (deg f = 5) are handled in full.  Even models (deg f = 6) only
in the generic regime where every class is ``E - (deg E / 2) D_inf`` with
``deg E = 2`` after reduction; anything else raises :class:`NonGeneric`.

Every zero test goes through ``ring.is_zero`` and every division through
``ring.inv``, so a product-of-fields ring may raise ``SplitRequired``.
"""

from __future__ import annotations

from .rings import NonGeneric

GENUS = 2


# polynomial helpers over a ring -------------------------------------------

def pnorm(R, a):
    a = list(a)
    while a and R.is_zero(a[-1]):
        a.pop()
    return a


def padd(R, a, b):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] = R.add(r[i], c)
    return r


def psub(R, a, b):
    r = list(a) + [R.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        r[i] = R.sub(r[i], c)
    return r


def pneg(R, a):
    return [R.neg(c) for c in a]


def pscale(R, a, c):
    return [R.mul(x, c) for x in a]


def pmul(R, a, b):
    if not a or not b:
        return []
    r = [R.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            r[i + j] = R.add(r[i + j], R.mul(x, y))
    return r


def pdivmod(R, a, b):
    """Division by a normalized ``b``; inverts lc(b) unless it is one."""
    b = list(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    lc = b[-1]
    lc_inv = None if lc == R.one else R.inv(lc)
    r = list(a)
    m = len(b) - 1
    if len(r) <= m:
        return [], r
    quo = [R.zero] * (len(r) - m)
    for k in range(len(r) - 1, m - 1, -1):
        c = r[k] if lc_inv is None else R.mul(r[k], lc_inv)
        quo[k - m] = c
        for i in range(m):
            r[k - m + i] = R.sub(r[k - m + i], R.mul(c, b[i]))
    return quo, r[:m]


def pmod(R, a, b):
    return pdivmod(R, a, b)[1]


def pmonic(R, a):
    a = pnorm(R, a)
    if not a or a[-1] == R.one:
        return a
    c = R.inv(a[-1])
    return [R.mul(x, c) for x in a[:-1]] + [R.one]


def pxgcd(R, a, b):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = pnorm(R, a), pnorm(R, b)
    s0, s1 = [R.one], []
    t0, t1 = [], [R.one]
    while r1:
        qt, r = pdivmod(R, r0, r1)
        r0, r1 = r1, pnorm(R, r)
        s0, s1 = s1, psub(R, s0, pmul(R, qt, s1))
        t0, t1 = t1, psub(R, t0, pmul(R, qt, t1))
    if not r0:
        return [], [], []
    c = R.inv(r0[-1])
    return pscale(R, r0, c), pscale(R, s0, c), pscale(R, t0, c)


def pgcd(R, a, b):
    """Monic gcd without cofactors."""
    r0, r1 = pnorm(R, a), pnorm(R, b)
    while r1:
        r0, r1 = r1, pnorm(R, pmod(R, r0, r1))
    return pmonic(R, r0)


def peval(R, a, x):
    acc = R.zero
    for c in reversed(a):
        acc = R.add(R.mul(acc, x), c)
    return acc


# the group law --------------------------------------------------------------

class GenericJacobian:
    """Cantor arithmetic for y^2 = f(x) over ``ring`` with v = s*w, s^2 = beta.

    ``f`` is a coefficient list over the ring (degree 5 or 6).
    """

    def __init__(self, ring, f, beta=None):
        R = self.ring = ring
        self.f = pnorm(R, f)
        deg = len(self.f) - 1
        if deg not in (5, 6):
            raise ValueError("f must have degree 5 or 6")
        self.even = deg == 6
        self.beta = R.one if beta is None else beta
        binv = R.inv(self.beta)
        self.fb = pscale(R, self.f, binv)

    # constructors
    def identity(self):
        R = self.ring
        return ([R.one], [])

    def is_identity(self, D):
        return len(D[0]) == 1

    def neg(self, D):
        return (D[0], pneg(self.ring, D[1]))

    def equal(self, D1, D2):
        R = self.ring
        a = pnorm(R, psub(R, D1[0], D2[0]))
        b = pnorm(R, psub(R, D1[1], D2[1]))
        return not a and not b

    # core
    def compose(self, D1, D2):
        R = self.ring
        u1, w1 = D1
        u2, w2 = D2
        d0, e1, e2 = pxgcd(R, u1, u2)
        if len(d0) == 1:
            u = pmul(R, u1, u2)
            w = padd(R, pmul(R, pmul(R, e1, u1), w2), pmul(R, pmul(R, e2, u2), w1))
            return u, pnorm(R, pmod(R, w, u))
        d, c1, c2 = pxgcd(R, d0, padd(R, w1, w2))
        s1 = pmul(R, c1, e1)
        s2 = pmul(R, c1, e2)
        num = padd(R, pmul(R, pmul(R, s1, u1), w2), pmul(R, pmul(R, s2, u2), w1))
        num = padd(R, num, pmul(R, c2, padd(R, pmul(R, w1, w2), self.fb)))
        u = pmul(R, u1, u2)
        if len(d) > 1:
            dd = pmul(R, d, d)
            u, r = pdivmod(R, u, dd)
            num, r2 = pdivmod(R, num, d)
        return u, pnorm(R, pmod(R, num, u))

    def reduce(self, u, w):
        R = self.ring
        while len(u) - 1 > GENUS:
            deg_in = len(u) - 1
            t = psub(R, self.fb, pmul(R, w, w))
            un, _ = pdivmod(R, pnorm(R, t), u)
            un = pmonic(R, un)
            if self.even and (deg_in != 4 or len(un) - 1 != 2):
                raise NonGeneric("even model reduction left the generic regime")
            u = un
            w = pnorm(R, pmod(R, pneg(R, w), u))
        if self.even and len(u) - 1 not in (0, 2):
            raise NonGeneric("odd-degree support on an even model")
        return u, w

    def add(self, D1, D2):
        if self.is_identity(D1):
            return D2
        if self.is_identity(D2):
            return D1
        return self.reduce(*self.compose(D1, D2))

    def double(self, D):
        return self.add(D, D)

    def mul(self, k: int, D):
        if k < 0:
            return self.mul(-k, self.neg(D))
        result = self.identity()
        if k == 0:
            return result
        for bit in bin(k)[2:]:
            result = self.double(result)
            if bit == "1":
                result = self.add(result, D)
        return result
