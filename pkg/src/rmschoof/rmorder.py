"""The real quadratic order Z[phi] for discriminants 5 and 8.

Split primes, short generators of their prime ideals, and the residues of
phi modulo each prime above l.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ff import is_probable_prime, sqrt_mod


class RMOrderError(ValueError):
    pass


class UnsupportedDiscriminant(RMOrderError):
    pass


class RamifiedPrime(RMOrderError):
    pass


class NotSplit(RMOrderError):
    pass


@dataclass(frozen=True)
class RMOrder:
    """Z[phi] with phi^2 - trace*phi + norm = 0; ``unit`` = (u, v) means u + v*phi."""

    disc: int
    trace: int
    norm: int
    unit: tuple
    regulator: float

    def element(self, a: int, b: int) -> "RMOrderElement":
        return RMOrderElement(a, b, self)

    @property
    def phi_embedding(self) -> float:
        """The real root phi_1 of the minimal polynomial with |eps_1| > 1."""
        r = math.sqrt(self.disc)
        u, v = self.unit
        for phi in ((self.trace + r) / 2, (self.trace - r) / 2):
            if abs(u + v * phi) > 1:
                return phi
        raise AssertionError("unit has no expanding embedding")

    @property
    def phi_conjugate(self) -> float:
        return self.trace - self.phi_embedding

    def mul(self, x: tuple, y: tuple) -> tuple:
        a, b = x
        c, d = y
        bd = b * d
        return (a * c - bd * self.norm, a * d + b * c + bd * self.trace)

    def conj(self, x: tuple) -> tuple:
        a, b = x
        return (a + b * self.trace, -b)

    def unit_power(self, k: int) -> tuple:
        """eps^k for any integer k (eps^-1 = N(eps) * conj(eps))."""
        base = self.unit
        if k < 0:
            n_eps = self.element(*self.unit).norm
            base = tuple(n_eps * c for c in self.conj(self.unit))
            k = -k
        out = (1, 0)
        for _ in range(k):
            out = self.mul(out, base)
        return out

    def size(self, x: tuple) -> int:
        """alpha_1^2 + alpha_2^2 as an exact integer."""
        a, b = x
        return 2 * a * a + 2 * a * b * self.trace + b * b * (self.trace ** 2 - 2 * self.norm)


@dataclass(frozen=True)
class RMOrderElement:
    a: int
    b: int
    order: RMOrder

    @property
    def norm(self) -> int:
        o = self.order
        return self.a * self.a + self.a * self.b * o.trace + self.b * self.b * o.norm

    @property
    def trace(self) -> int:
        return 2 * self.a + self.b * self.order.trace

    def conjugate(self) -> "RMOrderElement":
        return RMOrderElement(*self.order.conj((self.a, self.b)), self.order)

    def embeddings(self) -> tuple:
        o = self.order
        return (self.a + self.b * o.phi_embedding, self.a + self.b * o.phi_conjugate)

    def __iter__(self):
        return iter((self.a, self.b))


@dataclass(frozen=True)
class SplitPrimeData:
    ell: int
    alpha1: RMOrderElement
    alpha2: RMOrderElement
    xbar1: int
    xbar2: int


_CONSTANTS = {
    5: (-1, -1, (0, 1)),
    8: (0, -2, (1, 1)),
}


def order_constants(disc: int) -> RMOrder:
    if disc not in _CONSTANTS:
        raise UnsupportedDiscriminant(f"discriminant {disc} is not supported (only 5 and 8)")
    tr, nm, unit = _CONSTANTS[disc]
    r = math.sqrt(disc)
    eps = max(abs(unit[0] + unit[1] * (tr + r) / 2), abs(unit[0] + unit[1] * (tr - r) / 2))
    return RMOrder(disc, tr, nm, unit, math.log(eps))


def _check_prime(order: RMOrder, ell: int):
    if ell < 3 or not is_probable_prime(ell):
        raise RMOrderError(f"{ell} is not an odd prime")
    if order.disc % ell == 0:
        raise RamifiedPrime(f"{ell} ramifies in the order of discriminant {order.disc}")


def is_split(order: RMOrder, ell: int) -> bool:
    _check_prime(order, ell)
    r = ell % order.disc
    return r in (1, order.disc - 1)


def _roots(order: RMOrder, ell: int) -> tuple:
    """Sorted roots of T^2 - Tr T + N modulo ell."""
    d = (order.trace ** 2 - 4 * order.norm) % ell
    r = sqrt_mod(d, ell)
    inv2 = pow(2, -1, ell)
    x1 = (order.trace + r) * inv2 % ell
    x2 = (order.trace - r) * inv2 % ell
    return tuple(sorted((x1, x2)))


def _unit_scale(order: RMOrder, x: tuple, ell: int) -> tuple:
    """beta = eps^-k alpha with k = round(log(|alpha_1| / sqrt(l)) / R)."""
    a1 = abs(x[0] + x[1] * order.phi_embedding)
    k = round(math.log(a1 / math.sqrt(ell)) / order.regulator)
    return order.mul(order.unit_power(-k), x)


def _normalize_sign(x: tuple) -> tuple:
    a, b = x
    if b < 0 or (b == 0 and a < 0):
        return (-a, -b)
    return x


def _generator(order: RMOrder, ell: int, xbar: int) -> tuple:
    """A short generator of the prime (l, phi - xbar)."""
    # Gauss reduction of the lattice {a + b phi : a + b xbar = 0 mod l}
    v1, v2 = (ell, 0), ((-xbar) % ell, 1)
    if order.size(v1) > order.size(v2):
        v1, v2 = v2, v1
    while True:
        # project v2 onto v1 under the bilinear form of size()
        dot = (order.size((v1[0] + v2[0], v1[1] + v2[1])) - order.size(v1) - order.size(v2))
        mu = round(dot / (2 * order.size(v1)))
        v2 = (v2[0] - mu * v1[0], v2[1] - mu * v1[1])
        if order.size(v2) >= order.size(v1):
            break
        v1, v2 = v2, v1
    best = None
    span = 4
    for c1 in range(-span, span + 1):
        for c2 in range(-span, span + 1):
            x = (c1 * v1[0] + c2 * v2[0], c1 * v1[1] + c2 * v2[1])
            if x == (0, 0) or abs(order.element(*x).norm) != ell:
                continue
            if best is None or order.size(x) < order.size(best):
                best = x
    if best is None:
        raise AssertionError(f"no generator found for ({ell}, phi - {xbar})")
    # unit scaling toward the size bound, then settle on the smallest nearby unit multiple
    x = _unit_scale(order, best, ell)
    cands = [order.mul(order.unit_power(k), x) for k in (-1, 0, 1)]
    x = min(cands, key=lambda c: (order.size(c), abs(c[0]), c))
    return _normalize_sign(x)


def reduced_generator(order: RMOrder, ell: int) -> SplitPrimeData:
    """Generators alpha_1, alpha_2 = conj(alpha_1) of the two primes above l.

    alpha_1 minimises alpha_1^2 + alpha_2^2 over its unit multiples, which
    is what makes the alpha-division polynomials smallest; x_i is the root
    of the minimal polynomial with a_i + b_i x_i = 0 mod l.
    """
    if not is_split(order, ell):
        raise NotSplit(f"{ell} does not split in the order of discriminant {order.disc}")
    x1, x2 = _roots(order, ell)
    g1 = _generator(order, ell, x1)
    g2 = _normalize_sign(order.conj(g1))
    assert (g2[0] + g2[1] * x2) % ell == 0
    return SplitPrimeData(ell, order.element(*g1), order.element(*g2), x1, x2)


def phi_roots_mod(order: RMOrder, ell: int) -> tuple:
    """(x_1, x_2) in the same order as reduced_generator."""
    if not is_split(order, ell):
        raise NotSplit(f"{ell} does not split in the order of discriminant {order.disc}")
    return _roots(order, ell)


def generator_bound(order: RMOrder, ell: int) -> float:
    """2 e^{R/2} sqrt(l): bound on |trace| and |b sqrt(disc)| of a reduced generator."""
    return 2 * math.exp(order.regulator / 2) * math.sqrt(ell)


def split_primes(order: RMOrder, start: int = 3, stop: int | None = None):
    """Split primes l >= start in increasing order (up to stop, inclusive)."""
    ell = max(3, start)
    while stop is None or ell <= stop:
        if is_probable_prime(ell) and order.disc % ell and is_split(order, ell):
            yield ell
        ell += 1
