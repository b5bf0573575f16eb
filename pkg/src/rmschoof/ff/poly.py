"""Dense univariate polynomials over a prime field."""

from __future__ import annotations

from typing import Iterable, Sequence

from ._backend import kernels_for
from .field import FieldElement, FieldMismatch, PrimeField

# Degree of the zero polynomial.
DEG_ZERO = -1


class DensePoly:
    """Immutable polynomial over ``field``; ``coeffs`` lowest degree first."""

    __slots__ = ("field", "coeffs", "_k")

    def __init__(self, field: PrimeField, coeffs: Iterable = (), *, _normalized=False):
        self.field = field
        q = field.q
        if _normalized:
            self.coeffs = tuple(coeffs)
        else:
            cs = [int(c) % q for c in coeffs]
            while cs and not cs[-1]:
                cs.pop()
            self.coeffs = tuple(cs)
        self._k = kernels_for(q)

    # constructors
    @classmethod
    def _raw(cls, field, lst):
        return cls(field, lst, _normalized=True)

    @classmethod
    def x(cls, field: PrimeField) -> DensePoly:
        return cls._raw(field, [0, 1])

    @classmethod
    def constant(cls, field: PrimeField, c) -> DensePoly:
        return cls(field, [int(c)])

    @classmethod
    def from_roots(cls, field: PrimeField, roots: Sequence[int]) -> DensePoly:
        k = kernels_for(field.q)
        p = [1]
        for r in roots:
            p = k.mul(p, [(-r) % field.q, 1], field.q)
        return cls._raw(field, p)

    @classmethod
    def interpolate(cls, field: PrimeField, xs: Sequence[int], ys: Sequence[int]) -> DensePoly:
        q = field.q
        return cls._raw(field, kernels_for(q).interpolate([x % q for x in xs], [y % q for y in ys], q))

    # basic properties
    @property
    def q(self) -> int:
        return self.field.q

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, DensePoly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == DensePoly(self.field, [other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(terms)

    # arithmetic
    def _coerce(self, other) -> tuple:
        if isinstance(other, DensePoly):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.coeffs
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return (other.value,) if other.value else ()
        if isinstance(other, int):
            c = other % self.field.q
            return (c,) if c else ()
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DensePoly._raw(self.field, self._k.add(self.coeffs, o, self.q))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DensePoly._raw(self.field, self._k.sub(self.coeffs, o, self.q))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DensePoly._raw(self.field, self._k.sub(o, self.coeffs, self.q))

    def __neg__(self):
        return DensePoly._raw(self.field, self._k.neg(self.coeffs, self.q))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DensePoly._raw(self.field, self._k.mul(list(self.coeffs), list(o), self.q))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = [1]
        base = list(self.coeffs)
        while e:
            if e & 1:
                result = self._k.mul(result, base, self.q)
            e >>= 1
            if e:
                base = self._k.mul(base, base, self.q)
        return DensePoly._raw(self.field, result)

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        qt, r = self._k.divmod_(list(self.coeffs), list(o), self.q)
        return DensePoly._raw(self.field, qt), DensePoly._raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> DensePoly:
        qt, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return qt

    def __call__(self, x):
        if isinstance(x, FieldElement):
            return FieldElement(self.field, self._k.evaluate(self.coeffs, x.value, self.q))
        if isinstance(x, DensePoly):
            return self.compose(x)
        return self._k.evaluate(self.coeffs, int(x) % self.q, self.q)

    def eval_many(self, xs: Sequence[int]) -> list:
        return self._k.eval_many(list(self.coeffs), [x % self.q for x in xs], self.q)

    def compose(self, inner: DensePoly) -> DensePoly:
        acc = DensePoly._raw(self.field, [])
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> DensePoly:
        return DensePoly._raw(self.field, self._k.monic(self.coeffs, self.q))

    def derivative(self) -> DensePoly:
        return DensePoly._raw(self.field, self._k.derivative(list(self.coeffs), self.q))

    def gcd(self, other: DensePoly) -> DensePoly:
        return DensePoly._raw(self.field, self._k.gcd(list(self.coeffs), list(self._coerce(other)), self.q))

    def xgcd(self, other: DensePoly):
        g, s, t = self._k.xgcd(list(self.coeffs), list(self._coerce(other)), self.q)
        f = self.field
        return DensePoly._raw(f, g), DensePoly._raw(f, s), DensePoly._raw(f, t)

    def inverse_mod(self, m: DensePoly) -> DensePoly:
        return DensePoly._raw(self.field, self._k.invmod(list(self.coeffs), list(m.coeffs), self.q))

    def powmod(self, e: int, m: DensePoly) -> DensePoly:
        k, q, mc = self._k, self.q, list(m.coeffs)
        result = [1] if len(mc) > 1 else []
        base = k.rem(list(self.coeffs), mc, q)
        while e:
            if e & 1:
                result = k.rem(k.mul(result, base, q), mc, q)
            e >>= 1
            if e:
                base = k.rem(k.mul(base, base, q), mc, q)
        return DensePoly._raw(self.field, result)

    def is_squarefree(self) -> bool:
        if self.degree <= 0:
            return True
        return self.gcd(self.derivative()).degree == 0

    def roots(self) -> list:
        """Distinct roots in F_q (Cantor-Zassenhaus equal-degree splitting)."""
        if self.degree <= 0:
            return []
        q = self.q
        x = DensePoly.x(self.field)
        g = self.monic().gcd(x.powmod(q, self) - x)
        return sorted(_split_linear(g))

    def to_list(self) -> list:
        return list(self.coeffs)


def _split_linear(g: DensePoly, seed: int = 1) -> list:
    import random as _random

    if g.degree <= 0:
        return []
    if g.degree == 1:
        g = g.monic()
        return [(-g[0]) % g.q]
    q = g.q
    rng = _random.Random(seed)
    while True:
        a = rng.randrange(q)
        h = DensePoly(g.field, [a, 1]).powmod((q - 1) // 2, g) - 1
        d = g.gcd(h)
        if 0 < d.degree < g.degree:
            return _split_linear(d, seed + 1) + _split_linear(g // d, seed + 2)


def poly_mul(a: DensePoly, b: DensePoly) -> DensePoly:
    return a * b
