"""Shared constants and oracles for the test suite."""

import functools
import os
import random

import pytest

from rmschoof import families as fam
from rmschoof import jacobian as jac

# 128-bit twist-secure curve in the TTV family
Q128 = 2 ** 128 + 573
T128 = 75146620714142230387068843744286456025
S1_128 = -26279773936397091867
S2_128 = -90827064182152428161138708787412643439
ORDER128 = 115792089237316195432513528685912298808995809621534164533135283195301868637471
TWIST128 = 115792089237316195414628441331463517678650820031857370801365706066289379517451
# (m, n) for psi = m + n phi, sign of n fixed by evaluating psi on divisors
MN128 = (-5880635027134833225, 14518503882127425417)

# kilobit Jacobian in the TTV family
Q512 = 2 ** 512 + 1273
T512 = int("2908566633378727243799826112991980174977453300368095776223"
           "2569868073752702720144714779198828456042697008202708167215"
           "32434975921085316560590832659122351278")
S1_512 = -int("10535684568225216385772683270554282199378670073368228748"
              "7810402851346035223080")
N_512 = -int("37786020778198256317368570028183842800473749792142072230"
             "993549001035093288492")
S2_512 = int("990287025215436155679872249605061232893936642355960654938"
             "008045777052233348340624693986425546428828954551752076384"
             "428888704295617466043679591527916629020")
ORDER512 = int("179769313486231590772930519078902473361797697894230657273"
               "430081157732675805502375737059489561441845417204171807809"
               "294449627634528012273648053238189262589020748518180898888"
               "687577372373289203253158846463934629657544938945248034686"
               "681123456817063106485440844869387396665859422186636442258"
               "712684177900105119005520")

LONG = bool(os.environ.get("RMSCHOOF_LONG"))
long_only = pytest.mark.skipif(not LONG, reason="set RMSCHOOF_LONG=1 for multi-hour runs")


def make_family(name, q, rng):
    """A random nonsingular instance of a family over F_q."""
    while True:
        try:
            if name == "tautz":
                return fam.make_ttv(q, rng.randrange(q))
            if name == "humbert5":
                return fam.make_humbert5(q, rng.randrange(1, q), rng.randrange(q))
            return fam.make_mestre8(q, rng.randrange(q), rng.randrange(q))
        except fam.FamilyError:
            continue


@functools.lru_cache(maxsize=None)
def oracle_charpoly(q, f):
    return jac.brute_force_charpoly(jac.CurveModel(q, f))


def oracle(inst):
    return oracle_charpoly(inst.q, tuple(inst.curve.f))


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture(scope="session")
def ttv1009():
    return fam.make_ttv(1009, 7)


@pytest.fixture(scope="session")
def hum1009():
    return fam.make_humbert5(1009, 3, 5)


@pytest.fixture(scope="session")
def mes1009():
    return fam.make_mestre8(1009, 3, 5)
