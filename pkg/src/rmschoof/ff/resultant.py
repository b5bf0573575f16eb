"""Bivariate resultants by evaluation and interpolation.

A bivariate polynomial is a sequence of :class:`DensePoly` coefficients in
the eliminated variable ``x2``: ``a = sum_j a[j](x1) * x2**j``.  The result
is ``Res_{x2}(a, b)`` as a polynomial in ``x1``.

Evaluation points are 0, 1, 2, ... with points skipped where a leading
coefficient vanishes.  Lagrange weights for such near-consecutive point sets
come from factorials, so interpolation stays subquadratic.
"""

from __future__ import annotations

from typing import Callable, Sequence

from ._backend import kernels_for
from .field import PrimeField
from .poly import DensePoly

# Extra candidate points tried, as a multiple of the points needed.
SLACK = 2

# Early termination: first trial size and number of confirming points.
EARLY_START = 64
CHECK_POINTS = 3


class InsufficientPoints(ArithmeticError):
    """The field has fewer elements than the interpolation needs."""


class DegenerateLeading(ArithmeticError):
    """A leading coefficient vanished at too many candidate points."""


def range_weights(xs: Sequence[int], q: int) -> list:
    """Barycentric weights 1/prod_{j != i}(x_i - x_j) for xs within 0..K-1.

    Uses prod over the full range (factorials) divided by the skipped points,
    so the cost is O(K + len(xs) * skipped).
    """
    if not xs:
        return []
    K = xs[-1] + 1
    present = set(xs)
    skipped = [s for s in range(K) if s not in present]
    fact = [1] * (K + 1)
    for i in range(1, K + 1):
        fact[i] = fact[i - 1] * i % q
    dens = []
    for x in xs:
        d = fact[x] * fact[K - 1 - x] % q
        if (K - 1 - x) & 1:
            d = q - d
        for s in skipped:
            d = d * pow(x - s, -1, q) % q
        dens.append(d)
    return batch_inverse(dens, q)


def batch_inverse(vals: Sequence[int], q: int) -> list:
    """Montgomery's trick: all inverses for the price of one."""
    n = len(vals)
    if n == 0:
        return []
    pref = [1] * (n + 1)
    for i, v in enumerate(vals):
        pref[i + 1] = pref[i] * v % q
    inv = pow(pref[n], -1, q)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = inv * pref[i] % q
        inv = inv * vals[i] % q
    return out


def interpolate_resultant(evaluate_pair: Callable, degs: tuple, bound: int, q: int, kernels=None,
                          *, early: bool = False, checks: int = CHECK_POINTS) -> list:
    """Interpolate x1 -> Res(A(x1, .), B(x1, .)) from point evaluations.

    ``evaluate_pair(c)`` returns the univariate coefficient lists of A and B
    at x1 = c; ``degs`` are their generic x2-degrees.  ``bound`` is an upper
    bound on the degree of the result.

    With ``early`` the interpolant through the first N points is accepted as
    soon as it predicts the next ``checks`` values, with N growing
    geometrically; this also lets fields smaller than ``bound`` succeed when
    the true degree is small enough.
    """
    k = kernels or kernels_for(q)
    need = bound + 1
    if need > q and not early:
        raise InsufficientPoints(f"{need} evaluation points needed but q = {q}")
    limit = min(q, SLACK * need + need)
    xs, ys = [], []
    c = 0
    target = min(need, EARLY_START) if early else need

    def more():
        nonlocal c
        while True:
            if c >= limit:
                if limit == q:
                    raise InsufficientPoints(f"only {len(xs)} usable points in F_{q}, {need} needed")
                raise DegenerateLeading(f"leading coefficient vanished at {c - len(xs)} of {c} points")
            pa, pb = evaluate_pair(c)
            c += 1
            if len(pa) - 1 == degs[0] and len(pb) - 1 == degs[1]:
                xs.append(c - 1)
                ys.append(k.resultant(pa, pb, q))
                return

    while True:
        want = target + checks if target < need else need
        while len(xs) < want:
            more()
        if target >= need:
            return k.interpolate(xs[:need], ys[:need], q, range_weights(xs[:need], q))
        poly = k.interpolate(xs[:target], ys[:target], q, range_weights(xs[:target], q))
        if all(k.evaluate(poly, x, q) == y for x, y in zip(xs[target:want], ys[target:want])):
            return poly
        target = min(need, target + target // 2)


def linear_remainder_root(a, b, q: int, kernels=None):
    """Root of the degree-1 member of the remainder sequence of (a, b), or None.

    Where that member exists it is a multiple of the first subresultant, so
    its root is S_1,0 / S_1,1 up to sign; None means the sequence skips
    degree 1 (S_1,1 vanishes at this specialisation).
    """
    k = kernels or kernels_for(q)
    a, b = k.trim(list(a)), k.trim(list(b))
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 2:
        a, b = b, k.rem(a, b, q)
    if len(b) != 2:
        return None
    return (q - b[0]) * pow(b[1], -1, q) % q


def _subproduct(xs, q, k):
    level = [[(q - x) % q, 1] for x in xs]
    while len(level) > 1:
        nxt = [k.mul(level[i], level[i + 1], q) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0] if level else [1]


def rational_reconstruction(xs, ys, q: int, kernels=None) -> tuple:
    """(num, den) with num/den matching ys at the N points xs, deg num < N/2.

    Extended Euclid on (prod (x - x_i), interpolant), stopped at the first
    remainder of degree below N/2.
    """
    k = kernels or kernels_for(q)
    n = len(xs)
    V = k.interpolate(list(xs), list(ys), q, range_weights(list(xs), q))
    r0, r1 = _subproduct(xs, q, k), V
    t0, t1 = [], [1]
    while len(r1) - 1 >= n // 2:
        quo, rem = k.divmod_(r0, r1, q)
        r0, r1 = r1, rem
        t0, t1 = t1, k.sub(t0, k.mul(quo, t1, q), q)
    return r1, t1


def interpolate_elimination(evaluate_pair: Callable, degs: tuple, bound: int, q: int,
                            kernels=None, *, checks: int = CHECK_POINTS) -> tuple:
    """Res_{x2}(A, B) and the rational function x1 -> common x2 root.

    Returns (res, (num, den)).  The second part is the root of the linear
    subresultant, reconstructed from the same evaluations; it is exact
    wherever gcd_{x2}(A, B) has degree one.  Both use early termination.
    """
    k = kernels or kernels_for(q)
    need = bound + 1
    limit = min(q, SLACK * need + need)
    xs, rs = [], []  # resultant samples
    zx, zs = [], []  # linear-root samples
    c = 0

    def more():
        nonlocal c
        while True:
            if c >= limit:
                if limit == q:
                    raise InsufficientPoints(f"only {len(xs)} usable points in F_{q}, {need} needed")
                raise DegenerateLeading(f"leading coefficient vanished at {c - len(xs)} of {c} points")
            pa, pb = evaluate_pair(c)
            c += 1
            if len(pa) - 1 == degs[0] and len(pb) - 1 == degs[1]:
                xs.append(c - 1)
                rs.append(k.resultant(pa, pb, q))
                z = linear_remainder_root(pa, pb, q, k)
                if z is not None:
                    zx.append(c - 1)
                    zs.append(z)
                return

    res = None
    target = min(need, EARLY_START)
    while res is None:
        want = target + checks if target < need else need
        while len(xs) < want:
            more()
        poly = k.interpolate(xs[:target], rs[:target], q, range_weights(xs[:target], q))
        if target >= need or all(k.evaluate(poly, x, q) == y
                                 for x, y in zip(xs[target:want], rs[target:want])):
            res = poly
        else:
            target = min(need, target + target // 2)

    frac = None
    target = min(2 * need, EARLY_START)
    while frac is None:
        while len(zx) < target + checks:
            more()
        num, den = rational_reconstruction(zx[:target], zs[:target], q, k)
        ok = True
        for x, y in zip(zx[target:target + checks], zs[target:target + checks]):
            dv = k.evaluate(den, x, q)
            if not dv or k.evaluate(num, x, q) != y * dv % q:
                ok = False
                break
        if ok:
            frac = (num, den)
        elif target >= 2 * need:
            raise DegenerateLeading("linear subresultant root did not stabilise")
        else:
            target = min(2 * need, target + target // 2)
    return res, frac


def _x2_degree(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return len(a) - 1


def resultant_by_interpolation(a: Sequence[DensePoly], b: Sequence[DensePoly],
                               bound: int | None = None) -> DensePoly:
    """Res_{x2}(a, b) as a polynomial in x1.

    ``bound`` defaults to the Bezout-style bound
    deg_{x2}(a) * max deg_{x1}(b) + deg_{x2}(b) * max deg_{x1}(a).
    """
    da, db = _x2_degree(a), _x2_degree(b)
    if da < 0 or db < 0:
        raise DegenerateLeading("zero polynomial has no resultant")
    field: PrimeField = a[da].field
    q = field.q
    a, b = list(a[:da + 1]), list(b[:db + 1])
    if bound is None:
        ha = max(c.degree for c in a)
        hb = max(c.degree for c in b)
        bound = max(0, da * hb + db * ha)
    if da == 0 or db == 0:
        # constant in x2: a power of the other's leading coefficient
        base, e = (a[0], db) if da == 0 else (b[0], da)
        return base ** e

    def evaluate_pair(c):
        return ([p(c) for p in a], [p(c) for p in b])

    def trimmed(pair):
        out = []
        for coeffs in pair:
            coeffs = list(coeffs)
            while coeffs and not coeffs[-1]:
                coeffs.pop()
            out.append(coeffs)
        return out

    vals = interpolate_resultant(lambda c: trimmed(evaluate_pair(c)), (da, db), bound, q)
    return DensePoly(field, vals)


def sylvester_resultant(a: Sequence[int], b: Sequence[int], q: int) -> int:
    """Res(a, b) as the determinant of the Sylvester matrix (test oracle)."""
    a, b = list(a), list(b)
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c % q
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c % q
        rows.append(row)
    return _det(rows, q)


def _det(M, q):
    M = [list(r) for r in M]
    n = len(M)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] % q), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det = det * M[col][col] % q
        inv = pow(M[col][col], -1, q)
        for r in range(col + 1, n):
            f = M[r][col] * inv % q
            if f:
                M[r] = [(x - f * y) % q for x, y in zip(M[r], M[col])]
    return det % q
