import math
from fractions import Fraction

import pytest

from rmschoof import rmorder as rmo
from rmschoof.rmorder import NotSplit, RamifiedPrime, UnsupportedDiscriminant

O5 = rmo.order_constants(5)
O8 = rmo.order_constants(8)


def fundamental_unit(disc):
    """Smallest unit above 1 in the maximal order, by exhaustive search.

    Units are x + y sqrt(disc) with x^2 - disc y^2 = +-1; for disc = 1 mod 4 the
    half-integral ones come from x^2 - disc y^2 = +-4 with (x + y sqrt(disc)) / 2.
    """
    root = math.sqrt(disc)
    best = None
    for y in range(1, 50):
        for x in range(1, 50):
            for k, scale in ((1, 1), (4, 2)):
                if k == 4 and disc % 4 != 1:
                    continue
                if abs(x * x - disc * y * y) == k:
                    u = (x + y * root) / scale
                    if best is None or u < best:
                        best = u
    return best


def test_order_constants():
    assert O5.trace == -1 and O5.norm == -1 and O5.unit == (0, 1)
    assert O8.trace == 0 and O8.norm == -2 and O8.unit == (1, 1)
    assert O8.element(1, 1).norm == -1
    assert O5.regulator == pytest.approx(0.4812, abs=1e-4)
    with pytest.raises(UnsupportedDiscriminant):
        rmo.order_constants(12)


@pytest.mark.parametrize("order", [O5, O8])
def test_regulator_matches_unit_search(order):
    disc = 2 if order.disc == 8 else order.disc  # Z[sqrt 2] has discriminant 8
    reg = math.log(fundamental_unit(disc))
    assert order.regulator == pytest.approx(reg, rel=1e-12)
    assert abs(order.element(*order.unit).norm) == 1


def test_is_split_examples():
    assert rmo.is_split(O5, 11)
    assert not rmo.is_split(O5, 13)
    assert rmo.is_split(O8, 7)
    with pytest.raises(RamifiedPrime):
        rmo.is_split(O5, 5)


def _associate(order, x, y):
    """True if x / y is a unit of the order."""
    n = order.element(*y).norm
    a, b = order.mul(x, order.conj(y))
    if a % n or b % n:
        return False
    return abs(order.element(a // n, b // n).norm) == 1


@pytest.mark.parametrize("order,ell,ref", [(O5, 11, (4, 1)), (O5, 19, (5, 1)), (O8, 7, (3, 1))])
def test_reduced_generator_examples(order, ell, ref):
    data = rmo.reduced_generator(order, ell)
    gens = [tuple(data.alpha1), tuple(data.alpha2)]
    # the reference generates one of the two primes above ell
    assert any(_associate(order, g, ref) for g in gens)
    assert abs(order.element(*ref).norm) == ell


def test_reduced_generator_not_split():
    with pytest.raises(NotSplit):
        rmo.reduced_generator(O5, 13)
    with pytest.raises(NotSplit):
        rmo.phi_roots_mod(O8, 11)


def test_phi_roots_examples():
    assert set(rmo.phi_roots_mod(O5, 11)) == {3, 7}
    assert set(rmo.phi_roots_mod(O8, 7)) == {3, 4}
    for r in rmo.phi_roots_mod(O5, 19):
        assert (r * r + r - 1) % 19 == 0


@pytest.mark.parametrize("order", [O5, O8])
def test_generators_for_all_split_primes_below_1000(order):
    bound = rmo.generator_bound(order, 1)
    count = 0
    for ell in rmo.split_primes(order, stop=1000):
        data = rmo.reduced_generator(order, ell)
        x1, x2 = rmo.phi_roots_mod(order, ell)
        assert (data.xbar1, data.xbar2) == (x1, x2) and x1 != x2
        assert (x1 + x2 - order.trace) % ell == 0
        assert (x1 * x2 - order.norm) % ell == 0
        assert tuple(data.alpha2) == rmo._normalize_sign(order.conj(tuple(data.alpha1)))
        for alpha, xbar in ((data.alpha1, data.xbar1), (data.alpha2, data.xbar2)):
            assert abs(alpha.norm) == ell
            assert (alpha.a + alpha.b * xbar) % ell == 0
            lim = bound * math.sqrt(ell)
            assert abs(alpha.trace) <= lim
            assert abs(alpha.b) * math.sqrt(order.disc) <= lim
        count += 1
    assert count > 50


@pytest.mark.parametrize("order", [O5, O8])
def test_unit_rescaling_is_idempotent(order):
    for ell in rmo.split_primes(order, stop=200):
        data = rmo.reduced_generator(order, ell)
        a1 = tuple(data.alpha1)
        for k in (-1, 1):
            moved = order.mul(order.unit_power(k), a1)
            again = rmo._unit_scale(order, moved, ell)
            lim = rmo.generator_bound(order, ell)
            e = order.element(*again)
            assert abs(e.norm) == ell
            assert abs(e.trace) <= lim and abs(e.b) * math.sqrt(order.disc) <= lim


def test_unit_power_inverse():
    for order in (O5, O8):
        for k in range(-4, 5):
            assert order.mul(order.unit_power(k), order.unit_power(-k)) == (1, 0)


def test_embeddings_multiply_to_norm():
    e = O5.element(4, 1)
    x, y = e.embeddings()
    assert Fraction(x * y).limit_denominator(10) == e.norm
