import random

import pytest

from rmschoof import cli
from rmschoof.ff import is_probable_prime
from rmschoof.rmorder import is_split, order_constants

from conftest import (ORDER128, ORDER512, Q128, Q512, T128, T512, TWIST128, long_only, make_family,
                      oracle)
from rmschoof.jacobian import jacobian_order


def factorint(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    kv = {}
    for line in out.splitlines():
        if "=" in line and " " not in line:
            k, v = line.split("=", 1)
            kv[k] = v
    return code, kv, out, err


# count ---------------------------------------------------------------------

def test_count_ttv_1009(capsys, ttv1009):
    code, kv, out, _ = run(capsys, "count", "q=1009 family=tautz t=7", "--seed", 1)
    assert code == 0
    s1, s2 = oracle(ttv1009)
    assert int(kv["s1"]) == s1 and int(kv["s2"]) == s2
    assert int(kv["order"]) == jacobian_order(s1, s2, 1009)
    assert kv["seed"] == "1"
    assert "ell=11 m=5 n=9" in out


def test_count_then_verify(capsys, tmp_path):
    spec = tmp_path / "c.txt"
    spec.write_text("q = 1009\nfamily = mestre8\ns = 3\nt = 5\n")
    code, kv, _, _ = run(capsys, "count", spec, "--seed", 2)
    assert code == 0
    code, v, _, _ = run(capsys, "verify", spec, kv["order"], "--seed", 3)
    assert code == 0 and v["result"] == "pass"
    code, v, _, _ = run(capsys, "verify", spec, kv["twist_order"], "--twist", "--seed", 3)
    assert code == 0 and v["result"] == "pass"


def test_count_errors(capsys):
    code, kv, _, _ = run(capsys, "count", "q=1013 family=tautz t=7")
    assert code == 1 and kv["error"] == "TauNotRational"
    code, kv, _, _ = run(capsys, "count", "q=7 f=1,0,0,0,0,1")
    assert code == 1 and kv["error"] == "NoRealMultiplication"
    code, kv, _, _ = run(capsys, "count", "q=1009 family=tautz")
    assert code == 1 and kv["error"] == "SpecError"
    code, kv, _, _ = run(capsys, "count", "/nonexistent/spec.txt")
    assert code == 1


def test_count_bsgs_off_is_incomplete(capsys):
    code, kv, _, _ = run(capsys, "count", "q=1009 family=tautz t=7", "--bsgs", "off", "--lmax", 11)
    assert code == 2 and kv["error"] == "IncompleteCount"


# verify --------------------------------------------------------------------

def test_verify_128_bit(capsys):
    spec = f"q={Q128} family=tautz t={T128}"
    code, kv, _, _ = run(capsys, "verify", spec, ORDER128, "-k", 5, "--seed", 1)
    assert code == 0 and kv["result"] == "pass" and kv["weil_interval"] == "ok"
    code, kv, _, _ = run(capsys, "verify", spec, TWIST128, "--twist", "-k", 5, "--seed", 1)
    assert code == 0 and kv["result"] == "pass"
    code, kv, _, _ = run(capsys, "verify", spec, ORDER128 + 1, "-k", 5, "--seed", 1)
    assert code == 3 and kv["result"] == "fail"


def test_verify_kilobit(capsys):
    code, kv, _, _ = run(capsys, "verify", f"q={Q512} family=tautz t={T512}", ORDER512, "-k", 3,
                         "--seed", 1)
    assert code == 0 and kv["result"] == "pass"


def test_weil_interval():
    q = 1009
    lo, hi = (q ** 0.5 - 1) ** 4, (q ** 0.5 + 1) ** 4
    assert cli.in_weil_interval(int(lo) + 1, q) and not cli.in_weil_interval(int(lo) - 1, q)
    assert cli.in_weil_interval(int(hi), q) and not cli.in_weil_interval(int(hi) + 2, q)


# search ----------------------------------------------------------------------

def test_chi_residues_match_full_orders(ttv1009):
    from rmschoof.schoof import mn_with_sign
    s1, s2 = oracle(ttv1009)
    m, n = mn_with_sign(ttv1009, s1, s2)
    N = jacobian_order(s1, s2, 1009)
    Nt = (1 + 1009) ** 2 + s1 * (1 + 1009) + s2
    for ell in (11, 19, 29, 31):
        assert cli.chi_residues(m % ell, n % ell, ell, 1009, 5) == (N % ell, Nt % ell)


def test_abort_reason():
    assert cli.abort_reason(0, 3, False) == "order"
    assert cli.abort_reason(1, 0, False) is None
    assert cli.abort_reason(1, 0, True) == "twist"
    assert cli.abort_reason(2, 5, True) is None


def test_search_policy_validation():
    with pytest.raises(ValueError):
        cli.SearchPolicy(lmax=7)
    with pytest.raises(ValueError):
        cli.SearchPolicy(rounds=10)


@pytest.mark.parametrize("name", ["tautz", "humbert5", "mestre8"])
def test_prime_divisors_of_orders_split_or_square(name):
    # a prime dividing #Jac is split or ramified in the RM field, or divides it to an even power
    rng = random.Random("fac" + name)
    for _ in range(4):
        inst = make_family(name, 1009, rng)
        order = order_constants(inst.disc)
        for p, e in factorint(jacobian_order(*oracle(inst), 1009)).items():
            if p == 2 or inst.disc % p == 0:
                continue
            assert is_split(order, p) or e % 2 == 0


def test_search_small_field(capsys):
    code, kv, out, err = run(capsys, "search", "--bits", 24, "--lmax", 11, "--max-candidates", 6,
                             "--seed", 4)
    assert code == 0
    curves = [line for line in out.splitlines() if line.startswith("curve ")]
    assert int(kv["found"]) == len(curves)
    assert "aborted reason=order_divisible_by_11" in err or curves
    for line in curves:
        d = dict(tok.split("=", 1) for tok in line.split()[1:])
        assert is_probable_prime(int(d["order"]), 80)
        spec = f"q={kv['q']} family=tautz t={d['t']}"
        code, v, _, _ = run(capsys, "verify", spec, d["order"], "-k", 5, "--seed", 5)
        assert v["result"] == "pass"


def test_search_rejects_bad_field(capsys):
    code, kv, _, _ = run(capsys, "search", "--q", 10007, "--family", "tautz")
    assert code == 1


@long_only
def test_search_32_bit(capsys):
    code, kv, out, _ = run(capsys, "search", "--bits", 32, "--lmax", 31, "--max-candidates", 20,
                           "--twist-secure", "--seed", 6)
    assert code == 0
    for line in out.splitlines():
        if line.startswith("curve "):
            d = dict(tok.split("=", 1) for tok in line.split()[1:])
            spec = f"q={kv['q']} family=tautz t={d['t']}"
            assert run(capsys, "verify", spec, d["order"])[1]["result"] == "pass"
            assert run(capsys, "verify", spec, d["twist_order"], "--twist")[1]["result"] == "pass"


# divpoly and bench -----------------------------------------------------------

def test_divpoly_degrees(capsys):
    code, kv, _, _ = run(capsys, "divpoly", "q=1009 family=tautz t=7", "--ell", 11)
    assert code == 0
    assert (kv["deg_d0"], kv["deg_d1"], kv["deg_d2"]) == ("22", "21", "20")
    code, kv, _, _ = run(capsys, "divpoly", "q=1009 family=tautz t=7", "--k", 2, "--coeffs")
    assert code == 0 and len(kv["d2"].split(",")) == int(kv["deg_d2"]) + 1


def test_divpoly_not_split(capsys):
    code, kv, _, _ = run(capsys, "divpoly", "q=1009 family=tautz t=7", "--ell", 13)
    assert code == 1 and kv["error"] == "NotSplit"


def test_bench_small(capsys):
    code, kv, out, _ = run(capsys, "bench", "--q", 1000039, "--ells", "11,19")
    assert code == 0
    assert "ell=11 " in out and "expected_deg=360" in out
    assert kv["monotone"] in ("0", "1") and "slope" in kv


def test_loglog_slope():
    assert cli.loglog_slope([1, 2, 4], [3, 24, 192]) == pytest.approx(3)


def test_hash_random_is_deterministic():
    a, b = cli.HashRandom(5), cli.HashRandom(5)
    assert [a.getrandbits(64) for _ in range(5)] == [b.getrandbits(64) for _ in range(5)]
    assert cli.HashRandom(6).random() != cli.HashRandom(5).random()
