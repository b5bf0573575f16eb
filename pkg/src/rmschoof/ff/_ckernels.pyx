# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels over F_q for word-size moduli (q < 2**62).

Same list-in/list-out contract as :mod:`._pykernels`; callers never see C
types.  Products are formed in unsigned 128-bit arithmetic and reduced
immediately, so accumulation cannot overflow.
"""

from libc.stdlib cimport malloc, free

import gmpy2

from . import _pykernels
from ._pykernels import NotInvertible, trim

ctypedef unsigned long long u64
cdef extern from *:
    """
    typedef unsigned __int128 rms_u128;
    """
    ctypedef unsigned long long u128 "rms_u128"

BACKEND = "compiled"

# Above this size the Kronecker product wins even against C schoolbook.
KRON_THRESHOLD = 160


cdef inline u64 mulmod(u64 a, u64 b, u64 q) nogil:
    return <u64>((<u128>a * b) % q)


cdef inline u64 addmod(u64 a, u64 b, u64 q) nogil:
    cdef u64 s = a + b
    return s - q if s >= q else s


cdef inline u64 submod(u64 a, u64 b, u64 q) nogil:
    return a - b if a >= b else a + q - b


cdef u64 powmod(u64 a, u64 e, u64 q) nogil:
    cdef u64 r = 1
    while e:
        if e & 1:
            r = mulmod(r, a, q)
        a = mulmod(a, a, q)
        e >>= 1
    return r


cdef inline u64 invmod_u(u64 a, u64 q) nogil:
    return powmod(a, q - 2, q)


cdef u64* to_c(list a, Py_ssize_t extra=0) except NULL:
    cdef Py_ssize_t n = len(a)
    cdef u64* p = <u64*>malloc((n + extra + 1) * sizeof(u64))
    if p == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        p[i] = a[i]
    for i in range(n, n + extra + 1):
        p[i] = 0
    return p


cdef list from_c(u64* p, Py_ssize_t n):
    while n > 0 and p[n - 1] == 0:
        n -= 1
    return [p[i] for i in range(n)]


NEWTON_DIV_THRESHOLD = 256  # schoolbook in C wins below this

def mul_school(a, b, q_):
    if not a or not b:
        return []
    cdef u64 q = q_
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef u64* pa = to_c(list(a))
    cdef u64* pb = to_c(list(b))
    cdef u64* pr = to_c([], na + nb)
    cdef u64 ai
    with nogil:
        for i in range(na):
            ai = pa[i]
            if ai:
                for j in range(nb):
                    pr[i + j] = addmod(pr[i + j], mulmod(ai, pb[j], q), q)
    r = from_c(pr, na + nb - 1)
    free(pa); free(pb); free(pr)
    return r


def mul(a, b, q):
    if not a or not b:
        return []
    if min(len(a), len(b)) <= KRON_THRESHOLD:
        return mul_school(a, b, q)
    return trim(_kron(list(a), list(b), q))


def sqr(a, q):
    return mul(a, a, q)


def mul_low(a, b, n, q):
    a = list(a[:n])
    b = list(b[:n])
    if not a or not b:
        return []
    if min(len(a), len(b)) <= KRON_THRESHOLD:
        return trim(mul_school(a, b, q)[:n])
    return trim(_kron(a, b, q, n))


def divmod_(a, b, q_):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    cdef u64 q = q_
    cdef Py_ssize_t n = len(a), m = len(b) - 1, k, i
    if n <= m:
        return [], list(a)
    if n - m > NEWTON_DIV_THRESHOLD and m >= NEWTON_DIV_THRESHOLD:
        return _divmod_newton(a, b, q_)
    cdef u64* pr = to_c(list(a))
    cdef u64* pb = to_c(list(b))
    cdef u64* pq = to_c([], n - m)
    cdef u64 inv = invmod_u(pb[m], q)
    cdef u64 c
    with nogil:
        for k in range(n - 1, m - 1, -1):
            c = pr[k]
            if c:
                c = mulmod(c, inv, q)
                pq[k - m] = c
                for i in range(m):
                    pr[k - m + i] = submod(pr[k - m + i], mulmod(c, pb[i], q), q)
            pr[k] = 0
    quo = from_c(pq, n - m)
    rem_ = from_c(pr, m)
    free(pr); free(pb); free(pq)
    return quo, rem_


def _divmod_newton(a, b, q):
    k = len(a) - len(b) + 1
    ib = inv_series(b[::-1], k, q)
    rq = mul_low(a[::-1][:k], ib, k, q)
    rq = rq + [0] * (k - len(rq))
    quo = trim(rq[::-1])
    return quo, sub(a, mul(quo, b, q), q)


def rem(a, b, q):
    return divmod_(a, b, q)[1]


def quo(a, b, q):
    return divmod_(a, b, q)[0]


def monic(a, q):
    if not a or a[len(a) - 1] == 1:
        return list(a)
    c = pow(a[len(a) - 1], -1, q)
    return [x * c % q for x in a]


cdef Py_ssize_t c_deg(u64* p, Py_ssize_t n) nogil:
    while n > 0 and p[n - 1] == 0:
        n -= 1
    return n - 1


def gcd(a, b, q_):
    cdef u64 q = q_
    a = trim(list(a)); b = trim(list(b))
    if not b:
        return monic(a, q_)
    if not a:
        return monic(b, q_)
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t cap = na if na > nb else nb
    cdef u64* r0 = to_c(a, cap)
    cdef u64* r1 = to_c(b, cap)
    cdef u64* tmp
    cdef Py_ssize_t d0 = na - 1, d1 = nb - 1, k, i
    cdef u64 inv, c
    with nogil:
        while d1 >= 0:
            # r0 <- r0 mod r1
            inv = invmod_u(r1[d1], q)
            for k in range(d0, d1 - 1, -1):
                c = r0[k]
                if c:
                    c = mulmod(c, inv, q)
                    for i in range(d1):
                        r0[k - d1 + i] = submod(r0[k - d1 + i], mulmod(c, r1[i], q), q)
                    r0[k] = 0
            d0 = c_deg(r0, d1 if d1 > 0 else 0)
            tmp = r0; r0 = r1; r1 = tmp
            k = d0; d0 = d1; d1 = k
    g = from_c(r0, d0 + 1)
    free(r0); free(r1)
    return monic(g, q_)


def xgcd(a, b, q):
    from . import _pykernels
    return _pykernels.xgcd(a, b, q)


def invmod(a, m, q_):
    """Inverse of ``a`` modulo ``m``; raises NotInvertible(gcd) otherwise."""
    cdef u64 q = q_
    a = rem(trim(list(a)), list(m), q_)
    cdef Py_ssize_t dm = len(m) - 1
    if not a:
        raise NotInvertible(monic(list(m), q_))
    cdef u64* r0 = to_c(list(m), 1)
    cdef u64* r1 = to_c(a, dm + 1 - len(a) + 1)
    cdef u64* s0 = to_c([], dm + 1)
    cdef u64* s1 = to_c([1], dm + 1)
    cdef u64* tmp
    cdef Py_ssize_t d0 = dm, d1 = len(a) - 1, e0 = -1, e1 = 0, k, i, dq, ne
    cdef u64 inv, c
    with nogil:
        while d1 > 0:
            inv = invmod_u(r1[d1], q)
            # r0 <- r0 - qt*r1, s0 <- s0 - qt*s1
            for k in range(d0, d1 - 1, -1):
                c = r0[k]
                if c:
                    c = mulmod(c, inv, q)
                    dq = k - d1
                    for i in range(d1):
                        r0[dq + i] = submod(r0[dq + i], mulmod(c, r1[i], q), q)
                    r0[k] = 0
                    for i in range(e1 + 1):
                        s0[dq + i] = submod(s0[dq + i], mulmod(c, s1[i], q), q)
            ne = e1 + d0 - d1
            if e0 > ne:
                ne = e0
            e0 = c_deg(s0, ne + 1)
            d0 = c_deg(r0, d1)
            tmp = r0; r0 = r1; r1 = tmp
            tmp = s0; s0 = s1; s1 = tmp
            k = d0; d0 = d1; d1 = k
            k = e0; e0 = e1; e1 = k
    if d1 < 0:
        g = monic(from_c(r0, d0 + 1), q_)
        free(r0); free(r1); free(s0); free(s1)
        raise NotInvertible(g)
    cdef u64 ci = invmod_u(r1[0], q)
    out = [mulmod(s1[i], ci, q) for i in range(e1 + 1)]
    free(r0); free(r1); free(s0); free(s1)
    return trim(out)


def resultant(a, b, q_):
    cdef u64 q = q_
    a = trim(list(a)); b = trim(list(b))
    if not a or not b:
        return 0
    cdef Py_ssize_t da = len(a) - 1, db = len(b) - 1
    if da == 0:
        return pow(a[0], db, q_)
    if db == 0:
        return pow(b[0], da, q_)
    cdef Py_ssize_t cap = da + 1 if da > db else db + 1
    cdef u64* r0 = to_c(a, cap)
    cdef u64* r1 = to_c(b, cap)
    cdef u64* tmp
    cdef u64 res = 1, inv, c
    cdef Py_ssize_t dr, k, i
    cdef bint zero = 0
    with nogil:
        while True:
            if db == 0:
                res = mulmod(res, powmod(r1[0], da, q), q)
                break
            inv = invmod_u(r1[db], q)
            for k in range(da, db - 1, -1):
                c = r0[k]
                if c:
                    c = mulmod(c, inv, q)
                    for i in range(db):
                        r0[k - db + i] = submod(r0[k - db + i], mulmod(c, r1[i], q), q)
                    r0[k] = 0
            dr = c_deg(r0, db)
            if dr < 0:
                zero = 1
                break
            if (da & 1) and (db & 1):
                res = submod(0, res, q)
            res = mulmod(res, powmod(r1[db], da - dr, q), q)
            tmp = r0; r0 = r1; r1 = tmp
            da = db; db = dr
    free(r0); free(r1)
    return 0 if zero else res


def evaluate(a, x_, q_):
    cdef u64 q = q_, x = x_ % q_, acc = 0
    cdef Py_ssize_t i
    for i in range(len(a) - 1, -1, -1):
        acc = addmod(mulmod(acc, x, q), <u64>a[i], q)
    return acc


def eval_many(a, xs, q_):
    cdef u64 q = q_
    cdef Py_ssize_t n = len(a), i, j, m = len(xs)
    cdef u64* pa = to_c(list(a))
    cdef u64* px = to_c([x % q_ for x in xs])
    cdef u64* out = to_c([], m)
    cdef u64 acc, x
    with nogil:
        for j in range(m):
            x = px[j]
            acc = 0
            for i in range(n - 1, -1, -1):
                acc = addmod(mulmod(acc, x, q), pa[i], q)
            out[j] = acc
    r = [out[j] for j in range(m)]
    free(pa); free(px); free(out)
    return r


# Linear operations.  Inputs outside [0, q) are left to the Python kernels.

cdef list _add(list a, list b, u64 q):
    cdef Py_ssize_t i, nb = len(b)
    cdef u64 x, y
    cdef list r = list(a)
    for i in range(nb):
        x = a[i]
        y = b[i]
        if x >= q or y >= q:
            raise OverflowError
        r[i] = addmod(x, y, q)
    return trim(r)


def add(a, b, q):
    if len(a) < len(b):
        a, b = b, a
    try:
        return _add(list(a), list(b), q)
    except OverflowError:
        return _pykernels.add(a, b, q)


cdef list _sub(list a, list b, u64 q):
    cdef Py_ssize_t i, na = len(a), nb = len(b), n = max(na, nb)
    cdef u64 x, y
    cdef list r = [0] * n
    for i in range(n):
        x = <u64>a[i] if i < na else 0
        y = <u64>b[i] if i < nb else 0
        if x >= q or y >= q:
            raise OverflowError
        r[i] = submod(x, y, q)
    return trim(r)


def sub(a, b, q):
    try:
        return _sub(list(a), list(b), q)
    except OverflowError:
        return _pykernels.sub(a, b, q)


cdef list _scale(list a, u64 c, u64 q):
    cdef Py_ssize_t i, n = len(a)
    cdef u64 x
    cdef list r = [0] * n
    for i in range(n):
        x = a[i]
        if x >= q:
            raise OverflowError
        r[i] = mulmod(x, c, q)
    return r


def scale(a, c, q):
    c %= q
    if not c:
        return []
    try:
        return _scale(list(a), c, q)
    except OverflowError:
        return _pykernels.scale(a, c, q)


# Kronecker substitution with byte-aligned slots, so packing and reduction
# of the product coefficients happen in C.

cdef object _pack(list a, Py_ssize_t nbytes):
    cdef Py_ssize_t i, k, n = len(a)
    cdef bytearray buf = bytearray(n * nbytes)
    cdef unsigned char* p = buf
    cdef Py_ssize_t w = min(8, nbytes)
    cdef u64 x
    for i in range(n):
        x = a[i]
        for k in range(w):
            p[i * nbytes + k] = (x >> (8 * k)) & 0xFF
    return gmpy2.mpz.from_bytes(buf, "little")


def _kron(a, b, q_, count=None):
    cdef u64 q = q_
    cdef Py_ssize_t n = min(len(a), len(b)), total = len(a) + len(b) - 1
    cdef Py_ssize_t nbytes = (2 * q_.bit_length() + n.bit_length() + 8) // 8
    cdef Py_ssize_t i, j, k, cnt, base
    cdef u64 limb
    cdef u128 acc
    cdef bytes raw
    cdef const unsigned char* p
    if nbytes > 24:
        raise OverflowError("slot wider than three words")
    cnt = total if count is None or count > total else count
    raw = (_pack(list(a), nbytes) * _pack(list(b), nbytes)).to_bytes(total * nbytes, "little")
    p = raw
    out = [0] * cnt
    for i in range(cnt):
        base = i * nbytes
        acc = 0
        # top limb first: acc < q after each step, so acc << 64 fits
        for k in range((nbytes + 7) // 8 - 1, -1, -1):
            limb = 0
            for j in range(min(8, nbytes - 8 * k) - 1, -1, -1):
                limb = (limb << 8) | p[base + 8 * k + j]
            acc = ((acc << 64) | limb) % q
        out[i] = <u64>acc
    return out


def inv_series(a, n, q):
    """Power-series inverse of ``a`` modulo x**n (requires a[0] != 0)."""
    g = [pow(a[0], -1, q)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = [(-c) % q for c in mul_low(a, g, k, q)]
        if e:
            e[0] = (e[0] + 2) % q
        else:
            e = [2]
        g = mul_low(g, e, k, q)
    return g


def mulmod_pre(a, b, m, minv, q):
    """a*b mod m, given minv = inverse of reversed(m) modulo x**(deg m)."""
    return rem_pre(mul(a, b, q), m, minv, q)


def rem_pre(c, m, minv, q):
    d = len(m) - 1
    if len(c) <= d:
        return c
    k = len(c) - d
    if k > len(minv):
        return rem(c, m, q)
    rq = mul_low(c[::-1][:k], minv, k, q)
    rq = rq + [0] * (k - len(rq))
    t = mul_low(rq[::-1], m, d, q)
    return sub(c[:d], t, q)
