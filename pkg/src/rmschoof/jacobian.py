"""Genus-2 curves y^2 = f(x) and divisor-class arithmetic in Mumford form.

Polynomials are tuples of ints modulo q, lowest degree first.

Odd models (deg f = 5) use plain Cantor composition and reduction.

Even models (deg f = 6) use the balanced representation: a triple
``(u, v, n)`` stands for ``E + n*inf+ + (2 - deg u - n)*inf- - D_inf``
where ``E`` is the effective affine divisor cut out by ``(u, v)`` and
``D_inf = inf+ + inf-``.  The identity is ``(1, 0, 1)``.  When lc(f) is not
a square the two points at infinity are conjugate, so only ``deg u`` in
{0, 2} occurs and the counter is forced.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field as dc_field

from .ff import DensePoly, PrimeField, is_probable_prime, sqrt_mod
from .ff._backend import kernels_for

FAMILIES = ("tautz", "humbert5", "mestre8", "explicit")
BRUTE_FORCE_LIMIT = 1 << 16


class CurveError(ValueError):
    """Base class for invalid curve input."""


class SingularCurve(CurveError):
    pass


class BadDegree(CurveError):
    pass


class BadField(CurveError):
    pass


class TooLarge(ValueError):
    pass


class SpecError(ValueError):
    """Malformed curve-spec text."""


def _trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


@dataclass(frozen=True)
class CurveModel:
    """y^2 = f(x) over F_q; ``f`` lowest degree first."""

    q: int
    f: tuple
    family: str = "explicit"
    params: tuple = ()
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(_trim(int(c) % self.q for c in self.f)))

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @property
    def even(self) -> bool:
        return self.degree == 6

    @property
    def parity(self) -> str:
        return "even" if self.even else "odd"

    @property
    def field(self) -> PrimeField:
        fld = self._cache.get("field")
        if fld is None:
            fld = self._cache["field"] = PrimeField(self.q, check=False)
        return fld

    @property
    def kernels(self):
        return kernels_for(self.q)

    def f_poly(self) -> DensePoly:
        return DensePoly(self.field, self.f)

    def evaluate(self, x: int) -> int:
        return self.kernels.evaluate(list(self.f), x % self.q, self.q)

    @property
    def vplus(self):
        """Polynomial part of the branch of sqrt(f) at inf+, or None.

        Only defined for even models whose leading coefficient is a square.
        """
        if "vplus" not in self._cache:
            self._cache["vplus"] = _vplus(self) if self.even else None
        return self._cache["vplus"]


def _vplus(c: CurveModel):
    q = c.q
    f = c.f
    r = sqrt_mod(f[6], q)
    if r is None:
        return None
    inv2r = pow(2 * r, -1, q)
    v3 = r
    v2 = f[5] * inv2r % q
    v1 = (f[4] - v2 * v2) * inv2r % q
    v0 = (f[3] - 2 * v2 * v1) * inv2r % q
    return tuple(_trim([v0, v1, v2, v3]))


def check_field(q: int) -> None:
    if q < 3 or q % 2 == 0 or not is_probable_prime(q):
        raise BadField(f"q = {q} is not an odd prime")


def validate_curve(c: CurveModel) -> None:
    """Raise unless q is an odd prime, deg f in {5, 6} and f is squarefree."""
    q = c.q
    check_field(q)
    if c.degree not in (5, 6):
        raise BadDegree(f"deg f = {c.degree}, expected 5 or 6")
    k = c.kernels
    f = list(c.f)
    if len(k.gcd(f, k.derivative(f, q), q)) > 1:
        raise SingularCurve("f has a repeated factor")
    if c.family not in FAMILIES:
        raise CurveError(f"unknown family {c.family!r}")


def make_curve(q: int, f, family: str = "explicit", params: tuple = ()) -> CurveModel:
    c = CurveModel(int(q), tuple(f), family, tuple(params))
    validate_curve(c)
    return c


@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced divisor class: ``u`` monic, deg v < deg u, u | v^2 - f.

    ``n`` is the inf+ multiplicity for even models and 0 for odd ones.
    """

    u: tuple
    v: tuple = ()
    n: int = 0

    @property
    def degree(self) -> int:
        return len(self.u) - 1

    def u_poly(self, field: PrimeField) -> DensePoly:
        return DensePoly(field, self.u)

    def v_poly(self, field: PrimeField) -> DensePoly:
        return DensePoly(field, self.v)


def identity(c: CurveModel) -> MumfordDivisor:
    return MumfordDivisor((1,), (), 1 if c.even else 0)


def is_identity(c: CurveModel, D: MumfordDivisor) -> bool:
    return len(D.u) == 1 and (not c.even or D.n == 1)


def neg(c: CurveModel, D: MumfordDivisor) -> MumfordDivisor:
    v = tuple((-x) % c.q for x in D.v)
    if c.even:
        return MumfordDivisor(D.u, v, 2 - D.degree - D.n)
    return MumfordDivisor(D.u, v, 0)


def is_valid(c: CurveModel, D: MumfordDivisor) -> bool:
    k, q = c.kernels, c.q
    u, v = list(D.u), list(D.v)
    if not u or u[-1] != 1 or len(u) > 3 or len(v) >= len(u):
        return False
    if k.rem(k.sub(k.mul(v, v, q), list(c.f), q), u, q):
        return False
    if c.even:
        if not 0 <= D.n <= 2 - D.degree:
            return False
        if c.vplus is None and D.degree == 1:
            return False
        if c.vplus is None and D.n != 1 - D.degree // 2:
            return False
    elif D.n:
        return False
    return True


def _compose(c: CurveModel, u1, v1, u2, v2):
    """Cantor composition; returns (u, v, t) with t = deg of the removed gcd."""
    k, q = c.kernels, c.q
    d0, e1, e2 = k.xgcd(u1, u2, q)
    if len(d0) == 1:
        u = k.mul(u1, u2, q)
        v = k.add(k.mul(k.mul(e1, u1, q), v2, q), k.mul(k.mul(e2, u2, q), v1, q), q)
        return u, k.rem(v, u, q), 0
    d, c1, c2 = k.xgcd(d0, k.add(v1, v2, q), q)
    s1 = k.mul(c1, e1, q)
    s2 = k.mul(c1, e2, q)
    num = k.add(k.mul(k.mul(s1, u1, q), v2, q), k.mul(k.mul(s2, u2, q), v1, q), q)
    num = k.add(num, k.mul(c2, k.add(k.mul(v1, v2, q), list(c.f), q), q), q)
    u = k.quo(k.mul(u1, u2, q), k.mul(d, d, q), q)
    v = k.quo(num, d, q)
    return u, k.rem(v, u, q), len(d) - 1


def _reduce_odd(c: CurveModel, u, v):
    k, q = c.kernels, c.q
    f = list(c.f)
    while len(u) > 3:
        u = k.monic(k.quo(k.sub(f, k.mul(v, v, q), q), u, q), q)
        v = k.rem(k.neg(v, q), u, q)
    return MumfordDivisor(tuple(u), tuple(v), 0)


def _inf_order(c: CurveModel, h, sign: int) -> int:
    """Order of vanishing of y - h at inf+ (sign=1) or inf- (sign=-1)."""
    k, q = c.kernels, c.q
    V = c.vplus
    if V is None:
        # lc(h)^2 = lc(f) is impossible, so y - h has a pole of order 3
        return -3
    Vs = list(V) if sign > 0 else k.neg(list(V), q)
    diff = k.sub(Vs, h, q)
    if diff:
        return -(len(diff) - 1)
    return 3 - (len(k.sub(list(c.f), k.mul(h, h, q), q)) - 1)


def _reduce_even(c: CurveModel, u, v, Np: int, Nm: int):
    """Reduce E + Np*inf+ + Nm*inf- - 2*D_inf to balanced form."""
    k, q = c.kernels, c.q
    f = list(c.f)
    for _ in range(8):
        du = len(u) - 1
        if du <= 2 and Np >= 1 and Nm >= 1:
            return MumfordDivisor(tuple(u), tuple(v), Np - 1)
        if Nm <= 0 and du <= 3:
            V = list(c.vplus)
            h = k.sub(V, k.rem(k.sub(V, v, q), u, q), q)
        elif Np <= 0 and du <= 3:
            V = k.neg(list(c.vplus), q)
            h = k.sub(V, k.rem(k.sub(V, v, q), u, q), q)
        else:
            h = list(v)
        op = _inf_order(c, h, 1)
        om = _inf_order(c, h, -1)
        u2 = k.monic(k.quo(k.sub(f, k.mul(h, h, q), q), u, q), q)
        kk = len(u2) - 1
        Np, Nm = Np - op - kk, Nm - om - kk
        u, v = u2, k.rem(k.neg(h, q), u2, q)
    raise ArithmeticError("even-model reduction did not terminate")


def cantor_add(c: CurveModel, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    if not c.even:
        if len(D1.u) == 1:
            return D2
        if len(D2.u) == 1:
            return D1
        u, v, _ = _compose(c, list(D1.u), list(D1.v), list(D2.u), list(D2.v))
        return _reduce_odd(c, u, v)
    u, v, t = _compose(c, list(D1.u), list(D1.v), list(D2.u), list(D2.v))
    m1 = 2 - D1.degree - D1.n
    m2 = 2 - D2.degree - D2.n
    return _reduce_even(c, u, v, D1.n + D2.n + t, m1 + m2 + t)


def double(c: CurveModel, D: MumfordDivisor) -> MumfordDivisor:
    return cantor_add(c, D, D)


def sub(c: CurveModel, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    return cantor_add(c, D1, neg(c, D2))


def scalar_mul(c: CurveModel, k: int, D: MumfordDivisor) -> MumfordDivisor:
    if k < 0:
        return neg(c, scalar_mul(c, -k, D))
    result = identity(c)
    if k == 0:
        return result
    for bit in bin(k)[2:]:
        result = cantor_add(c, result, result)
        if bit == "1":
            result = cantor_add(c, result, D)
    return result


# points and sampling ---------------------------------------------------------

def point_divisor(c: CurveModel, x: int, y: int, at_plus: bool = False) -> MumfordDivisor:
    """P - inf (odd), or P - inf+ / P - inf- (even, needs a square lc(f))."""
    q = c.q
    if (y * y - c.evaluate(x)) % q:
        raise ValueError("point not on curve")
    u = ((-x) % q, 1)
    v = (y % q,) if y % q else ()
    if not c.even:
        return MumfordDivisor(u, v, 0)
    if c.vplus is None:
        raise ValueError("degree-1 divisors need rational points at infinity")
    # P + n inf+ + (1 - n) inf- - D_inf
    return MumfordDivisor(u, v, 0 if at_plus else 1)


def two_point_divisor(c: CurveModel, P, Q) -> MumfordDivisor:
    """P + Q - D_inf (even) or P + Q - 2 inf (odd), for affine points."""
    q = c.q
    (x1, y1), (x2, y2) = P, Q
    x1, y1, x2, y2 = x1 % q, y1 % q, x2 % q, y2 % q
    if x1 != x2:
        u = _trim([x1 * x2 % q, (-(x1 + x2)) % q, 1])
        slope = (y2 - y1) * pow(x2 - x1, -1, q) % q
        v = _trim([(y1 - slope * x1) % q, slope])
        return MumfordDivisor(tuple(u), tuple(v), 0)
    if (y1 + y2) % q == 0:
        return identity(c)
    # P = Q with y != 0: tangent line, v = y1 + s(x - x1) with s = f'(x1)/(2 y1)
    k = c.kernels
    fp = k.evaluate(k.derivative(list(c.f), q), x1, q)
    s = fp * pow(2 * y1, -1, q) % q
    u = _trim([x1 * x1 % q, (-2 * x1) % q, 1])
    v = _trim([(y1 - s * x1) % q, s])
    return MumfordDivisor(tuple(u), tuple(v), 0)


def random_point(c: CurveModel, rng: random.Random):
    q = c.q
    while True:
        x = rng.randrange(q)
        y = sqrt_mod(c.evaluate(x), q)
        if y is not None:
            if rng.getrandbits(1):
                y = (-y) % q
            return x, y


def random_divisor(c: CurveModel, seed=None, rng: random.Random | None = None) -> MumfordDivisor:
    """Sum of two random affine points (as P + Q minus the base divisor)."""
    if rng is None:
        rng = random.Random(seed)
    P = random_point(c, rng)
    Q = random_point(c, rng)
    return two_point_divisor(c, P, Q)


# orders ------------------------------------------------------------------------

def _points_at_infinity(c: CurveModel, ext: bool) -> int:
    if not c.even:
        return 1
    if ext:
        return 2
    return 2 if sqrt_mod(c.f[6], c.q) is not None else 0


def count_points_fq(c: CurveModel) -> int:
    import numpy as np

    q = c.q
    xs = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for coef in reversed(c.f):
        acc = (acc * xs + coef) % q
    squares = _square_table(q)
    n = int(np.where(acc == 0, 1, np.where(squares[acc], 2, 0)).sum())
    return n + _points_at_infinity(c, False)


def _square_table(q):
    import numpy as np

    t = np.zeros(q, dtype=bool)
    r = np.arange(q, dtype=np.int64)
    t[(r * r) % q] = True
    t[0] = False
    return t


def count_points_fq2(c: CurveModel) -> int:
    """#C(F_{q^2}) with F_{q^2} = F_q[i]/(i^2 - g), g a non-residue."""
    import numpy as np

    q = c.q
    g = 2
    while pow(g, (q - 1) // 2, q) == 1:
        g += 1
    squares = _square_table(q)
    x1 = np.arange(q, dtype=np.int64)
    total = 0
    for x0 in range(q):
        # Horner over F_q[i]: (a + b i)(x0 + x1 i) = (a x0 + g b x1) + (a x1 + b x0) i
        a = np.zeros(q, dtype=np.int64)
        b = np.zeros(q, dtype=np.int64)
        for coef in reversed(c.f):
            a, b = (a * x0 + (g * b % q) * x1 + coef) % q, (a * x1 + b * x0) % q
        norm = (a * a - g * (b * b % q)) % q
        zero = (a == 0) & (b == 0)
        total += int(np.where(zero, 1, np.where(squares[norm], 2, 0)).sum())
    return total + _points_at_infinity(c, True)


def brute_force_charpoly(c: CurveModel) -> tuple:
    """(s1, s2) of the real Weil polynomial from point counts over F_q, F_{q^2}."""
    q = c.q
    if q > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"q = {q} exceeds the brute-force limit {BRUTE_FORCE_LIMIT}")
    n1 = count_points_fq(c)
    n2 = count_points_fq2(c)
    s1 = q + 1 - n1
    a2 = (n2 - q * q - 1 + s1 * s1) // 2
    return s1, a2 - 2 * q


def charpoly_coefficients(s1: int, s2: int, q: int) -> tuple:
    """Coefficients of chi(T) = T^4 - s1 T^3 + (s2 + 2q) T^2 - q s1 T + q^2, high first."""
    return (1, -s1, s2 + 2 * q, -q * s1, q * q)


def jacobian_order(s1: int, s2: int, q: int) -> int:
    return 1 - s1 + (s2 + 2 * q) - q * s1 + q * q


def twisted_order(s1: int, s2: int, q: int) -> int:
    """chi(-1), the Jacobian order of the quadratic twist."""
    return 1 + s1 + (s2 + 2 * q) + q * s1 + q * q


def quadratic_twist(c: CurveModel) -> CurveModel:
    q = c.q
    g = 2
    while pow(g, (q - 1) // 2, q) == 1:
        g += 1
    return CurveModel(q, tuple(g * x % q for x in c.f), "explicit")


# curve-spec text -------------------------------------------------------------

def parse_curve_spec(text: str) -> dict:
    """Parse ``key = value`` pairs separated by newlines, semicolons or spaces.

    Keys: q, family (tautz|humbert5|mestre8|explicit), t, s, f (comma-separated
    coefficients, lowest degree first).  ``#`` starts a comment.
    """
    spec = {}
    for line in text.splitlines():
        line = re.sub(r"\s*[=:]\s*", "=", line.split("#", 1)[0])
        for token in line.replace(";", " ").split():
            if "=" not in token:
                raise SpecError(f"expected key=value, got {token!r}")
            key, value = token.split("=", 1)
            key = key.strip().lower()
            if not value:
                raise SpecError(f"empty value for {key}")
            if key in spec:
                raise SpecError(f"duplicate key {key}")
            spec[key] = value.strip()
    if "q" not in spec:
        raise SpecError("missing key q")
    out = {"family": spec.pop("family", "explicit").lower()}
    try:
        out["q"] = int(spec.pop("q"))
        for key in ("s", "t"):
            if key in spec:
                out[key] = int(spec.pop(key))
        if "f" in spec:
            out["f"] = [int(x) for x in spec.pop("f").split(",") if x]
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    if spec:
        raise SpecError(f"unknown keys: {', '.join(sorted(spec))}")
    if out["family"] not in FAMILIES:
        raise SpecError(f"unknown family {out['family']!r}")
    if out["family"] == "explicit" and "f" not in out:
        raise SpecError("explicit family needs f")
    if out["family"] == "tautz" and "t" not in out:
        raise SpecError("tautz family needs t")
    if out["family"] in ("humbert5", "mestre8") and ("s" not in out or "t" not in out):
        raise SpecError(f"{out['family']} family needs s and t")
    return out
