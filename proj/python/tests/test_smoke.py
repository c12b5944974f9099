import os
from fractions import Fraction
from pathlib import Path

import pytest

import paramod

FIXTURES = Path(os.environ.get("PARAMOD_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def brute_y_set(d):
    out = []
    a = 1
    while 3 * a * a <= d:
        for b in range(-a, a + 1):
            if (d + b * b) % (4 * a) == 0:
                c = (d + b * b) // (4 * a)
                if c >= a:
                    out.append((a, b, c))
        a += 1
    return out


@pytest.mark.parametrize("d", [3, 4, 7, 23, 47, 100])
def test_y_set(d):
    assert paramod.y_set(d) == brute_y_set(d)


def test_reduce():
    form, g = paramod.reduce((2, -53, 352))
    assert form == (1, 1, 2)
    (a, b), (c, d) = g
    assert a * d - b * c == 1


def test_coset_counts():
    assert paramod.coset_count("gamma0:16") == 24
    assert paramod.coset_count("G2") == 48


def test_equivalent_sign():
    g = paramod.equivalent((1, 1, 2), (1, -1, 2), "SL2Z")
    assert g is not None
    assert paramod.equivalent((1, 0, 1), (1, 0, 2)) is None


def test_eigen_fixtures():
    F7 = paramod.FourierExpansion.read(str(FIXTURES / "F-7-16-2.csv"))
    assert F7.level == 16 and F7.weight == 7
    assert F7.lookup((2, -53, 352)) == "1"
    assert F7.lookup((1, 1, 3)) == "0"
    r = paramod.eigen_report(F7, 2)
    assert (r["mu"], r["lambda"], r["t01_eigenvector"], r["genericity"]) == ("0", "-3", False, "Generic")
    F10 = paramod.FourierExpansion.read(str(FIXTURES / "F-10-16-2.csv"))
    r = paramod.eigen_report(F10, 2)
    assert (r["mu"], r["lambda"], r["genericity"]) == ("-4", "-2", "Generic")


def test_verify_has_no_failures():
    F10 = paramod.FourierExpansion.read(str(FIXTURES / "F-10-16-2.csv"))
    statuses = {v["status"] for v in paramod.verify_identities(F10, 2)}
    assert "Fail" not in statuses
    assert "Pass" in statuses


def test_radial_recurrence():
    p, k, lam, mu = 2, 10, Fraction(-2), Fraction(-4)
    c1 = p ** (k - 3) * lam
    c2 = p ** (2 * k - 5) * (mu + p * p)
    a = [Fraction(3), Fraction(-5), Fraction(11)]
    while len(a) < 9:
        a.append(c1 * a[-1] - c2 * a[-2])
    series = [str(x) for x in a]
    assert set(paramod.radial_check(series, p, k, "-2", "-4")) == {"Pass"}
    series[5] = str(a[5] + 1)
    assert "Fail" in paramod.radial_check(series, p, k, "-2", "-4")


def test_classify():
    c = paramod.classify(2, 4, "-3", "0", t01_eigen=False)
    assert c["category"] == "Cat2" and c["generic"] == "Generic"
    c = paramod.classify(3, 2, "10", "-6")
    assert c["generic"] == "NonGeneric"


def test_apply_t10s_vanishes_for_mu_zero():
    F7 = paramod.FourierExpansion.read(str(FIXTURES / "F-7-16-2.csv"))
    G = F7.apply("t10s", 2)
    assert G.level == 16
    assert all(line.endswith(",0") for line in G.serialize().splitlines() if not line.startswith("#"))
