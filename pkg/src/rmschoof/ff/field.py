"""Prime fields: a context object per modulus and a small element wrapper.

Hot code paths never touch :class:`FieldElement`; they work on plain ints
reduced modulo ``field.q``.  The wrapper exists for the public API and for
the context-mixing checks.
"""

from __future__ import annotations

import random

import gmpy2

# 64 Miller-Rabin rounds: error probability at most 4**-64 = 2**-128.
PRIMALITY_ROUNDS = 64


class FieldError(ValueError):
    pass


class ZeroInverse(ZeroDivisionError):
    pass


class FieldMismatch(TypeError):
    """Raised when elements of two different field contexts are combined."""


def is_probable_prime(n: int, rounds: int = PRIMALITY_ROUNDS) -> bool:
    if n < 2:
        return False
    return bool(gmpy2.is_prime(n, rounds))


def sqrt_mod(a: int, q: int) -> int | None:
    """Square root of ``a`` modulo the odd prime ``q``, or None.

    Returns the smaller of the two roots (as integers in [0, q)).
    """
    a %= q
    if a == 0:
        return 0
    if pow(a, (q - 1) // 2, q) != 1:
        return None
    if q % 4 == 3:
        r = pow(a, (q + 1) // 4, q)
    else:
        # Tonelli-Shanks
        s, e = q - 1, 0
        while s % 2 == 0:
            s //= 2
            e += 1
        z = 2
        while pow(z, (q - 1) // 2, q) != q - 1:
            z += 1
        x = pow(a, (s + 1) // 2, q)
        b = pow(a, s, q)
        g = pow(z, s, q)
        r_exp = e
        while b != 1:
            t, m = b, 0
            while t != 1:
                t = t * t % q
                m += 1
            gs = pow(g, 1 << (r_exp - m - 1), q)
            g = gs * gs % q
            x = x * gs % q
            b = b * g % q
            r_exp = m
        r = x
    return min(r, q - r)


class PrimeField:
    """The field F_q.  The modulus is checked for primality once, here."""

    __slots__ = ("q", "nbits")

    def __init__(self, q: int, *, check: bool = True):
        q = int(q)
        if check and (q < 3 or not is_probable_prime(q)):
            raise FieldError(f"modulus {q} is not an odd prime")
        self.q = q
        self.nbits = q.bit_length()

    def __repr__(self):
        return f"PrimeField({self.q})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("PrimeField", self.q))

    def __call__(self, value) -> FieldElement:
        return FieldElement(self, value)

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroInverse("inverse of zero")
        return pow(a, -1, self.q)

    def sqrt(self, a: int) -> int | None:
        return sqrt_mod(a, self.q)

    def is_square(self, a: int) -> bool:
        a %= self.q
        return a == 0 or pow(a, (self.q - 1) // 2, self.q) == 1

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.q)


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: PrimeField, value):
        if isinstance(value, FieldElement):
            value._check(field)
            value = value.value
        self.field = field
        self.value = int(value) % field.q

    def _check(self, field):
        if field is not self.field and field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {field!r}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            self._check(other.field)
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, -self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * field_inv(FieldElement(self.field, o))

    def __pow__(self, e: int):
        if e < 0:
            return field_inv(self) ** (-e)
        return FieldElement(self.field, pow(self.value, e, self.field.q))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.q})"


def field_inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise ZeroInverse("inverse of zero")
    return FieldElement(a.field, pow(a.value, -1, a.field.q))


def sqrt_mod_q(a: FieldElement) -> FieldElement | None:
    r = sqrt_mod(a.value, a.field.q)
    return None if r is None else FieldElement(a.field, r)
