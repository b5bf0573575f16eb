"""Integer Chinese remaindering."""

from __future__ import annotations

from math import gcd
from typing import Iterable


class NotCoprime(ValueError):
    pass


def integer_crt(system: Iterable[tuple], centered: bool = False) -> int:
    """Solve x = r_i mod m_i for pairwise coprime moduli.

    Returns the residue in [0, M), or in (-M/2, M/2] when ``centered``.
    """
    x, M = 0, 1
    for r, m in system:
        if m < 1:
            raise ValueError("moduli must be positive")
        if gcd(M, m) != 1:
            raise NotCoprime(f"modulus {m} shares a factor with {M}")
        t = (r - x) * pow(M, -1, m) % m if m > 1 else 0
        x += M * t
        M *= m
    x %= M
    if centered and x > M // 2:
        x -= M
    return x


def crt_modulus(system: Iterable[tuple]) -> int:
    M = 1
    for _, m in system:
        M *= m
    return M
