"""Pure-Python dense polynomial kernels over F_q.

Polynomials are lists of ints in [0, q), lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  Every function returns a
fresh, normalized list.

Multiplication above ``MUL_THRESHOLD`` uses Kronecker substitution, so the
asymptotic cost is that of GMP's big-integer multiplication.
"""

from __future__ import annotations

import gmpy2

MUL_THRESHOLD = 32
NEWTON_DIV_THRESHOLD = 96

BACKEND = "python"


class NotInvertible(ArithmeticError):
    """``a`` is not a unit modulo ``m``; ``gcd`` carries the monic common factor."""

    def __init__(self, gcd):
        super().__init__("not invertible")
        self.gcd = gcd


def trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def add(a, b, q):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] = (r[i] + c) % q
    return trim(r)


def sub(a, b, q):
    n = max(len(a), len(b))
    r = [0] * n
    for i, c in enumerate(a):
        r[i] = c
    for i, c in enumerate(b):
        r[i] = (r[i] - c) % q
    return trim(r)


def neg(a, q):
    return [(q - c) % q for c in a]


def scale(a, c, q):
    c %= q
    if not c:
        return []
    return [x * c % q for x in a]


def _slot_bits(q, n):
    # each product coefficient < n * q**2
    return 2 * q.bit_length() + n.bit_length() + 1


def _kron(a, b, q, count=None):
    n = min(len(a), len(b))
    bits = _slot_bits(q, n)
    x = gmpy2.pack(a, bits) * gmpy2.pack(b, bits)
    total = len(a) + len(b) - 1
    if count is None or count > total:
        count = total
    out = [int(c % q) for c in gmpy2.unpack(x, bits)[:count]]
    out += [0] * (count - len(out))
    return out


def mul(a, b, q):
    if not a or not b:
        return []
    if min(len(a), len(b)) <= MUL_THRESHOLD:
        return trim(_school(a, b, q))
    return trim(_kron(a, b, q))


def mul_school(a, b, q):
    if not a or not b:
        return []
    return trim(_school(a, b, q))


def _school(a, b, q):
    if len(a) < len(b):
        a, b = b, a
    r = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                r[i + j] += ai * bj
    return [c % q for c in r]


def mul_low(a, b, n, q):
    """a*b mod x**n."""
    if not a or not b:
        return []
    a = a[:n]
    b = b[:n]
    if min(len(a), len(b)) <= MUL_THRESHOLD:
        return trim(_school(a, b, q)[:n])
    return trim(_kron(a, b, q, n))


def sqr(a, q):
    return mul(a, a, q)


def inv_series(a, n, q):
    """Power-series inverse of ``a`` modulo x**n (requires a[0] != 0)."""
    g = [pow(a[0], -1, q)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        # g <- g * (2 - a*g)
        e = mul_low(a, g, k, q)
        e = [(-c) % q for c in e]
        if e:
            e[0] = (e[0] + 2) % q
        else:
            e = [2]
        g = mul_low(g, e, k, q)
    return g


def divmod_(a, b, q):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    n, m = len(a), len(b)
    if n < m:
        return [], list(a)
    if m == 1:
        c = pow(b[0], -1, q)
        return [x * c % q for x in a], []
    if n - m >= NEWTON_DIV_THRESHOLD and m >= NEWTON_DIV_THRESHOLD:
        return _divmod_newton(a, b, q)
    return _divmod_school(a, b, q)


def _divmod_school(a, b, q):
    r = list(a)
    m = len(b) - 1
    lc_inv = pow(b[-1], -1, q)
    quo = [0] * (len(a) - m)
    bb = b[:-1]
    for k in range(len(a) - 1, m - 1, -1):
        c = r[k] % q
        if c:
            c = c * lc_inv % q
            quo[k - m] = c
            base = k - m
            for i, bi in enumerate(bb):
                r[base + i] -= c * bi
        r[k] = 0
    rem = [x % q for x in r[:m]]
    return trim(quo), trim(rem)


def _divmod_newton(a, b, q):
    n, m = len(a), len(b)
    k = n - m + 1
    rb = b[::-1]
    ib = inv_series(rb, k, q)
    ra = a[::-1][:k]
    rq = mul_low(ra, ib, k, q)
    rq = rq + [0] * (k - len(rq))
    quo = trim(rq[::-1])
    rem = sub(a, mul(quo, b, q), q)
    return quo, rem


def rem(a, b, q):
    return divmod_(a, b, q)[1]


def quo(a, b, q):
    return divmod_(a, b, q)[0]


def monic(a, q):
    if not a or a[-1] == 1:
        return list(a)
    c = pow(a[-1], -1, q)
    return [x * c % q for x in a]


def gcd(a, b, q):
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, q)
    return monic(a, q)


def xgcd(a, b, q):
    """Return (g, s, t) with s*a + t*b = g, g monic (or g = [] when a = b = 0)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        qt, r = divmod_(r0, r1, q)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(qt, s1, q), q)
        t0, t1 = t1, sub(t0, mul(qt, t1, q), q)
    if not r0:
        return [], [], []
    c = pow(r0[-1], -1, q)
    return ([x * c % q for x in r0], [x * c % q for x in s0],
            [x * c % q for x in t0])


def invmod(a, m, q):
    """Inverse of ``a`` modulo the polynomial ``m`` (deg m >= 1).

    Raises :class:`NotInvertible` carrying gcd(a, m) when a is a zero divisor.
    Only the cofactor of ``a`` is tracked.
    """
    r0, r1 = list(m), rem(a, m, q)
    s0, s1 = [], [1]
    while r1 and len(r1) > 1:
        lc_inv = pow(r1[-1], -1, q)
        # one division step, written out for speed
        r = list(r0)
        d1 = len(r1) - 1
        qt = [0] * (len(r0) - d1)
        for k in range(len(r0) - 1, d1 - 1, -1):
            c = r[k] % q
            if c:
                c = c * lc_inv % q
                qt[k - d1] = c
                base = k - d1
                for i in range(d1):
                    r[base + i] -= c * r1[i]
            r[k] = 0
        r = trim([x % q for x in r[:d1]])
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(trim(qt), s1, q), q)
    if not r1:
        raise NotInvertible(monic(r0, q))
    c = pow(r1[0], -1, q)
    return [x * c % q for x in s1]


def resultant(a, b, q):
    """Res(a, b) for univariate a, b via the Euclidean recurrence."""
    if not a or not b:
        return 0
    da, db = len(a) - 1, len(b) - 1
    if da == 0:
        return pow(a[0], db, q)
    if db == 0:
        return pow(b[0], da, q)
    res = 1
    a, b = list(a), list(b)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, q) % q
        r = rem(a, b, q)
        if not r:
            return 0
        dr = len(r) - 1
        # Res(a, b) = (-1)^(da*db) lc(b)^(da - dr) Res(b, r)
        if (da & 1) and (db & 1):
            res = -res
        res = res * pow(b[-1], da - dr, q) % q
        a, b = b, r


def evaluate(a, x, q):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % q
    return acc


def eval_many(a, xs, q):
    return [evaluate(a, x, q) for x in xs]


def derivative(a, q):
    return trim([i * c % q for i, c in enumerate(a)][1:])


def _tree(xs, q):
    level = [[(-x) % q, 1] for x in xs]
    tree = [level]
    while len(level) > 1:
        nxt = [mul(level[i], level[i + 1], q) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
        tree.append(level)
    return tree


def interpolate(xs, ys, q, weights=None):
    """Polynomial of degree < len(xs) through the points (xs[i], ys[i]).

    ``weights`` may supply 1/prod_{j != i}(xs[i] - xs[j]); otherwise they are
    computed by a quadratic loop.
    """
    n = len(xs)
    if n == 0:
        return []
    if weights is None:
        weights = []
        for i, xi in enumerate(xs):
            d = 1
            for j, xj in enumerate(xs):
                if j != i:
                    d = d * (xi - xj) % q
            weights.append(pow(d, -1, q))
    tree = _tree(xs, q)
    level = [[y * w % q] if y * w % q else [] for y, w in zip(ys, weights)]
    for depth in range(len(tree) - 1):
        nodes = tree[depth]
        nxt = []
        for i in range(0, len(level) - 1, 2):
            left = mul(level[i], nodes[i + 1], q)
            right = mul(level[i + 1], nodes[i], q)
            nxt.append(add(left, right, q))
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return trim(level[0])


def mulmod_pre(a, b, m, minv, q):
    """a*b mod m, given minv = inverse of reversed(m) modulo x**(deg m).

    Inputs are reduced modulo m.
    """
    c = mul(a, b, q)
    return rem_pre(c, m, minv, q)


def rem_pre(c, m, minv, q):
    d = len(m) - 1
    if len(c) <= d:
        return c
    k = len(c) - d
    if k > len(minv):
        return rem(c, m, q)
    rc = c[::-1][:k]
    rq = mul_low(rc, minv, k, q)
    rq = rq + [0] * (k - len(rq))
    quo_ = rq[::-1]
    t = mul_low(quo_, m, d, q)
    return sub(c[:d], t, q)
