import random

import pytest

from rmschoof import families as fam
from rmschoof import jacobian as jac
from rmschoof.families import DenominatorVanishes, SingularParameter, TauNotRational

from conftest import make_family, oracle


def test_ttv_division_polys():
    inst = fam.make_ttv(1009, 7)
    tau = inst.tau
    assert (tau * tau + tau - 1) % 1009 == 0
    assert inst.divpolys.d1 == (0, (-tau) % 1009)
    assert inst.divpolys.d2 == (1,)


def test_ttv_needs_rational_tau():
    with pytest.raises(TauNotRational):
        fam.make_ttv(1013, 7)  # 1013 = 3 mod 5
    with pytest.raises(TauNotRational):
        fam.make_ttv(10007, 7)  # 10007 = 2 mod 5
    fam.make_ttv(1009, 7)


def test_humbert_division_polys():
    inst = fam.make_humbert5(1009, 3, 5)
    assert inst.divpolys.d2 == (0, 0, 3)  # s x^2
    with pytest.raises(SingularParameter):
        fam.make_humbert5(1009, 0, 5)


def test_mestre_division_polys():
    q = 1009
    inst = fam.make_mestre8(q, 3, 5)
    v, _ = fam.mestre_v_n(q, 3)
    assert inst.divpolys.d0 == (1, 0, (-v * v) % q)
    r = next(x for x in range(q) if x * x % q == 2)
    with pytest.raises(DenominatorVanishes):
        fam.make_mestre8(q, r, 5)


def test_make_instance_dispatch():
    assert fam.make_instance({"q": 1009, "family": "tautz", "t": 7}).family == "tautz"
    assert isinstance(fam.make_instance({"q": 7, "family": "explicit", "f": [1, 0, 0, 0, 0, 1]}),
                      jac.CurveModel)


@pytest.mark.parametrize("name", ["tautz", "humbert5", "mestre8"])
def test_minimal_polynomial_on_100_divisors(name):
    rng = random.Random(name)
    inst = make_family(name, 1009, rng)
    for _ in range(100):
        D = jac.random_divisor(inst.curve, rng=rng)
        assert fam.minimal_polynomial_holds(inst, D)


@pytest.mark.parametrize("name", ["tautz", "humbert5", "mestre8"])
def test_phi_is_a_homomorphism(name):
    rng = random.Random(name + "hom")
    inst = make_family(name, 1009, rng)
    c = inst.curve
    assert jac.is_identity(c, fam.phi_eval(inst, jac.identity(c)))
    for _ in range(30):
        D1, D2 = jac.random_divisor(c, rng=rng), jac.random_divisor(c, rng=rng)
        lhs = fam.phi_eval(inst, jac.cantor_add(c, D1, D2))
        rhs = jac.cantor_add(c, fam.phi_eval(inst, D1), fam.phi_eval(inst, D2))
        assert lhs == rhs


@pytest.mark.parametrize("name", ["tautz", "humbert5", "mestre8"])
def test_phi_images_are_valid(name):
    rng = random.Random(name + "valid")
    inst = make_family(name, 1009, rng)
    n = 0
    while n < 30:
        P = jac.random_point(inst.curve, rng)
        try:
            img = fam.phi_of_point(inst, P)
        except fam.NonGenericInput:
            continue
        n += 1
        assert jac.is_valid(inst.curve, img)


@pytest.mark.parametrize("name", ["tautz", "humbert5", "mestre8"])
def test_charpoly_has_rm_shape(name):
    # s1^2 - 4 s2 = n^2 disc for a curve with RM by the order of discriminant disc
    rng = random.Random(name + "rm")
    inst = make_family(name, 1009, rng)
    s1, s2 = oracle(inst)
    d = s1 * s1 - 4 * s2
    assert d % inst.disc == 0
    n2 = d // inst.disc
    assert int(n2 ** 0.5 + 0.5) ** 2 == n2


def test_phi_eval_shift_can_be_disabled(ttv1009):
    c = ttv1009.curve
    D = jac.random_divisor(c, seed=3)
    assert fam.phi_eval(ttv1009, D, shift_tries=0) == fam.phi_eval(ttv1009, D)
