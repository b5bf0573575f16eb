import random

import pytest

from rmschoof import divpoly as dv
from rmschoof import families as fam
from rmschoof import jacobian as jac
from rmschoof import rmorder as rmo

from conftest import make_family

FAMILIES = ["tautz", "humbert5", "mestre8"]


def generic_points(inst, rng, count):
    """Affine points P whose image under the given sextuples is defined."""
    out = []
    while len(out) < count:
        P = jac.random_point(inst.curve, rng)
        if P is None or P[1] % inst.q == 0:
            continue
        out.append(P)
    return out


def image(dp, P):
    u, v = dp.image_at(P[0], P[1])
    return jac.MumfordDivisor(u, v, 0)


def check_pointwise(inst, dp, expected, rng, count=20):
    seen = 0
    for P in generic_points(inst, rng, 4 * count):
        try:
            got = image(dp, P)
        except fam.NonGenericInput:
            continue
        assert got == expected(fam.embed(inst, P))
        seen += 1
        if seen == count:
            return
    assert seen >= count // 2


@pytest.mark.parametrize("name", FAMILIES)
def test_k_division_polys_pointwise(name):
    rng = random.Random("k" + name)
    inst = make_family(name, 1009, rng)
    c = inst.curve
    for k in range(2, 10):
        dp = dv.k_division_polys(inst, k)
        check_pointwise(inst, dp, lambda D: jac.scalar_mul(c, k, D), rng, count=10)


def test_k2_is_doubling(ttv1009):
    c = ttv1009.curve
    dp = dv.k_division_polys(ttv1009, 2)
    check_pointwise(ttv1009, dp, lambda D: jac.double(c, D), random.Random(2))


def test_k_degree_growth_is_quadratic(ttv1009):
    ratios = [dv.k_division_polys(ttv1009, k).degrees()["d2"] / k ** 2 for k in range(2, 10)]
    assert max(ratios) <= 2


def test_even_k_matches_double_of_half(ttv1009):
    c = ttv1009.curve
    rng = random.Random(4)
    for k in (4, 6, 8):
        full, half = dv.k_division_polys(ttv1009, k), dv.k_division_polys(ttv1009, k // 2)
        for P in generic_points(ttv1009, rng, 10):
            try:
                a, b = image(full, P), image(half, P)
            except fam.NonGenericInput:
                continue
            assert a == jac.double(c, b)


@pytest.mark.parametrize("name", FAMILIES)
def test_alpha_division_polys_pointwise(name):
    rng = random.Random("a" + name)
    inst = make_family(name, 1009, rng)
    c = inst.curve
    order = rmo.order_constants(inst.disc)
    ell = 11 if inst.disc == 5 else 7
    alpha = rmo.reduced_generator(order, ell).alpha1
    dp = dv.alpha_division_polys(inst, alpha)

    def expected(D):
        return jac.cantor_add(c, jac.scalar_mul(c, alpha.a, D),
                              jac.scalar_mul(c, alpha.b, fam.phi_eval(inst, D)))

    check_pointwise(inst, dp, expected, rng)


@pytest.mark.parametrize("ell,deg", [(11, 20), (19, 39)])
def test_alpha_degrees_ttv(ell, deg):
    alpha = rmo.reduced_generator(rmo.order_constants(5), ell).alpha1
    for q, t in ((1009, 7), (10009, 22)):
        d = dv.alpha_division_polys(fam.make_ttv(q, t), alpha).degrees()
        assert d["d2"] == deg
        assert d["d1"] == deg + 1 and d["d0"] == deg + 2


def test_alpha_degrees_depend_only_on_family():
    rng = random.Random(9)
    for name, ell in (("humbert5", 11), ("mestre8", 7)):
        inst = make_family(name, 1009, rng)
        alpha = rmo.reduced_generator(rmo.order_constants(inst.disc), ell).alpha1
        other = make_family(name, 10009, rng)
        assert dv.alpha_division_polys(inst, alpha).degrees() == \
            dv.alpha_division_polys(other, alpha).degrees()
