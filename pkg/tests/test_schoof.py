import random

import pytest

from rmschoof import families as fam
from rmschoof import jacobian as jac
from rmschoof import schoof as S
from rmschoof.rmorder import order_constants

from conftest import (MN128, N_512, ORDER128, ORDER512, Q128, Q512, S1_128, S1_512, S2_128,
                      S2_512, T128, TWIST128, long_only, oracle)

O5 = order_constants(5)
O8 = order_constants(8)


def oracle_mn(inst):
    return S.mn_with_sign(inst, *oracle(inst))


# discrete logs -------------------------------------------------------------

def test_dlog_examples(ttv1009):
    c = ttv1009.curve
    G = S.CurveGroup(c)
    Dp = jac.random_divisor(c, seed=1)
    assert S.dlog_small(jac.identity(c), Dp, 31, G) == 0
    assert S.dlog_small(Dp, Dp, 31, G) == 1
    rng = random.Random(5)
    for _ in range(10):
        y = rng.randrange(31)
        assert S.dlog_small(jac.scalar_mul(c, y, Dp), Dp, 31, G) == y
    with pytest.raises(S.NoSolution):
        S.dlog_small(jac.scalar_mul(c, 40, Dp), Dp, 31, G)


# the per-prime step ----------------------------------------------------------

@pytest.mark.parametrize("fixture,ell,expected", [("ttv1009", 11, (5, 9)), ("hum1009", 11, (6, 4)),
                                                   ("mes1009", 7, (5, 3))])
def test_mn_mod_ell_matches_oracle(fixture, ell, expected, request):
    inst = request.getfixturevalue(fixture)
    m, n = oracle_mn(inst)
    assert (m % ell, n % ell) == expected
    c = S.mn_mod_ell(inst, ell)
    assert 0 <= c.m < ell and 0 <= c.n < ell
    assert (c.m, c.n) == expected
    assert c.log_line().startswith(f"ell={ell} m={c.m} n={c.n} ideal_deg=")


def test_mn_mod_ell_mestre_10007():
    inst = fam.make_mestre8(10007, 3, 5)
    c = S.mn_mod_ell(inst, 17)
    assert (c.m, c.n) == (3, 12)
    m, n = oracle_mn(inst)
    assert (m % 17, n % 17) == (3, 12)


def test_mn_mod_ell_128_bit_ell_11():
    c = S.mn_mod_ell(fam.make_ttv(Q128, T128), 11)
    assert (c.m, c.n) == (MN128[0] % 11, MN128[1] % 11)


def test_infeasible_prime_is_skipped(ttv1009):
    # at q = 1009 the s2 interpolation for l = 19 runs out of sample points
    with pytest.raises(S.PrimeSkipped):
        S.mn_mod_ell(ttv1009, 19)


def test_constraint_log_roundtrip():
    c = S.ModularConstraint(11, 5, 9, 120, 1.5)
    assert S.ModularConstraint.parse(c.log_line()) == c


# CRT ---------------------------------------------------------------------

def test_crt_single_constraint_tiny_q():
    assert S.mn_bounds(7, O5) == (7, 4)
    assert S.crt_assemble([S.ModularConstraint(19, 17, 3)], 7, O5) == (-2, 3)


def test_crt_from_11_and_19(ttv1009):
    m, n = oracle_mn(ttv1009)
    cons = [S.ModularConstraint(ell, m % ell, n % ell) for ell in (11, 19)]
    assert S.crt_assemble(cons, 1009, O5) == (m, n)


def test_crt_partial():
    p = S.crt_assemble([S.ModularConstraint(11, 5, 9)], 1009, O5)
    assert p == S.Partial(11, 5, 9)
    assert S.crt_assemble([], 1009, O5) == S.Partial(1, 0, 0)


def test_mn_bounds_contain_oracle(ttv1009, hum1009, mes1009):
    for inst in (ttv1009, hum1009, mes1009):
        bm, bn = S.mn_bounds(inst.q, order_constants(inst.disc))
        m, n = oracle_mn(inst)
        assert abs(m) <= bm and abs(n) <= bn


# BSGS ----------------------------------------------------------------------

def test_bsgs_exact_partial_passes_through():
    inst = fam.make_ttv(1009, 7)
    assert S.bsgs_complete(inst, (3, 4)) == (3, 4)
    assert S.bsgs_complete(inst, S.Partial(10 ** 6, 10 ** 6 - 28, 10 ** 6 - 24)) == (-28, -24)


@pytest.mark.parametrize("fixture", ["ttv1009", "hum1009", "mes1009"])
def test_bsgs_full_search(fixture, request):
    inst = request.getfixturevalue(fixture)
    assert S.bsgs_complete(inst, S.Partial(1, 0, 0)) == oracle_mn(inst)


def test_bsgs_with_one_constraint_at_10007():
    inst = fam.make_humbert5(10007, 3, 5)
    mn = oracle_mn(inst)
    c = S.mn_mod_ell(inst, 11)
    assert (c.m, c.n) == (mn[0] % 11, mn[1] % 11)
    assert S.bsgs_complete(inst, S.Partial(11, c.m, c.n)) == mn


def test_bsgs_steps():
    bm, bn = S.mn_bounds(1009, O5)
    assert S.bsgs_steps(S.Partial(1, 0, 0), 1009, O5) == 2 * bm + 1 + 2 * bn + 1
    assert S.bsgs_steps((1, 2), 1009, O5) == 0
    assert S.bsgs_steps(S.Partial(11, 5, 9), 1009, O5) < 40


def test_bsgs_limit(ttv1009):
    with pytest.raises(S.IncompleteCount):
        S.bsgs_complete(ttv1009, S.Partial(1, 0, 0), limit=10)


# charpoly assembly ---------------------------------------------------------

def test_charpoly_zero():
    r = S.charpoly_from_mn(0, 0, 1009, O5)
    assert (r.s1, r.s2) == (0, 0)
    assert r.order == 1010 ** 2 == r.twist_order


def test_charpoly_128_bit():
    r = S.charpoly_from_mn(*MN128, Q128, O5)
    assert (r.s1, r.s2) == (S1_128, S2_128)
    assert r.order == ORDER128 and r.twist_order == TWIST128


def test_charpoly_kilobit():
    m = (S1_512 - N_512 * O5.trace) // 2
    r = S.charpoly_from_mn(m, N_512, Q512, O5)
    assert r.s1 == S1_512 and r.s2 == S2_512 and r.order == ORDER512


def test_charpoly_errors():
    # integer (m, n) always give s1^2 - n^2 disc = 4 n^2 N(phi) mod 4, so parity cannot fail
    with pytest.raises(S.RueckViolation):
        S.charpoly_from_mn(200, 0, 1009, O5)
    with pytest.raises(S.RueckViolation):
        S.charpoly_from_mn(0, 50, 1009, O8)


@pytest.mark.parametrize("fixture", ["ttv1009", "hum1009", "mes1009"])
def test_charpoly_invariants(fixture, request):
    inst = request.getfixturevalue(fixture)
    q = inst.q
    r = S.charpoly_from_mn(*oracle_mn(inst), q, order_constants(inst.disc))
    assert (r.s1, r.s2) == oracle(inst)
    assert r.s1 ** 2 <= 16 * q and r.s1 ** 2 - 4 * r.s2 >= 0
    assert r.s2 + 4 * q >= 2 * abs(r.s1)


def test_mn_from_charpoly_roundtrip():
    m, n = S.mn_from_charpoly(S1_128, S2_128, O5)
    assert (m, n) in {MN128, (MN128[0] + MN128[1] * O5.trace, -MN128[1])} or abs(n) == abs(MN128[1])
    with pytest.raises(ValueError):
        S.mn_from_charpoly(1, 1, O5)


def test_psi_identity_on_128_bit_curve():
    inst = fam.make_ttv(Q128, T128)
    rng = random.Random(8)
    for _ in range(10):
        assert S.psi_holds(inst, *MN128, jac.random_divisor(inst.curve, rng=rng))
    assert S.mn_with_sign(inst, S1_128, S2_128) == MN128


# driver --------------------------------------------------------------------

@pytest.mark.parametrize("fixture", ["ttv1009", "hum1009", "mes1009"])
def test_count_points_matches_oracle(fixture, request):
    inst = request.getfixturevalue(fixture)
    lines = []
    r = S.count_points(inst, log=lines.append)
    assert (r.s1, r.s2) == oracle(inst)
    assert (r.m, r.n) == oracle_mn(inst)
    assert lines and any(line.startswith("ell=") for line in lines)
    rep = r.report()
    for key in ("m", "n", "s1", "s2", "order", "twist_order", "primes_used", "skipped"):
        assert f"\n{key}=" in "\n" + rep


def test_count_points_incomplete_without_bsgs(ttv1009):
    with pytest.raises(S.IncompleteCount):
        S.count_points(ttv1009, S.CountConfig(lmax=11, bsgs=False))


def test_count_points_checkpoint_and_known(tmp_path, ttv1009):
    ck = tmp_path / "ck.txt"
    r1 = S.count_points(ttv1009, S.CountConfig(lmax=11, checkpoint=str(ck)))
    assert ck.read_text().startswith("ell=11 m=5 n=9")
    # the second run reads l = 11 back from the checkpoint
    r2 = S.count_points(ttv1009, S.CountConfig(lmax=11, checkpoint=str(ck)))
    assert (r2.s1, r2.s2) == (r1.s1, r1.s2)
    known = {11: S.ModularConstraint(11, 5, 9)}
    r3 = S.count_points(ttv1009, S.CountConfig(lmax=11), known=known)
    assert r3.primes_used == (11,) and (r3.m, r3.n) == (r1.m, r1.n)


@long_only
def test_count_points_128_bit_full():
    r = S.count_points(fam.make_ttv(Q128, T128), S.CountConfig(lmax=131, bsgs=True))
    assert (r.s1, r.s2) == (S1_128, S2_128)
