import math

import mpmath
import numpy as np
import pytest

from isingchi import (
    EllipticDomainError,
    complete_elliptic_K,
    jacobi_cs,
    jacobi_elliptic,
    jacobi_sc,
    make_modulus,
)
from isingchi.elliptic import agm


def test_agm_basics():
    assert float(agm(3.0, 3.0)) == pytest.approx(3.0, abs=1e-15)
    assert float(agm(1.0, 2.0)) == pytest.approx(float(agm(2.0, 1.0)), abs=1e-15)
    # scaling: agm(ca, cb) = c agm(a, b)
    assert float(agm(5.0, 10.0)) == pytest.approx(5 * float(agm(1.0, 2.0)),
                                                  rel=1e-14)
    # Gauss's constant
    assert float(agm(1.0, math.sqrt(2.0))) == pytest.approx(1.1981402347355923,
                                                            abs=1e-14)


def test_K_at_zero_and_growth():
    assert float(complete_elliptic_K(0.0)) == pytest.approx(math.pi / 2,
                                                            abs=1e-15)
    ks = [0.1, 0.3, 0.5, 0.7, 0.9, 0.99]
    vals = [float(complete_elliptic_K(k)) for k in ks]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_K_against_mpmath():
    for k in (0.05, 0.3, 0.5, 0.777, 0.95, 0.9999):
        ref = float(mpmath.ellipk(k * k))
        assert float(complete_elliptic_K(k)) == pytest.approx(ref, rel=1e-14)


def test_K_domain():
    with pytest.raises(EllipticDomainError):
        complete_elliptic_K(1.0)
    with pytest.raises(EllipticDomainError):
        complete_elliptic_K(-0.25)


def test_jacobi_special_points():
    k = 0.6
    sn, cn, dn = (float(v) for v in jacobi_elliptic(0.0, k))
    assert (sn, cn, dn) == (0.0, 1.0, 1.0)

    big_k = complete_elliptic_K(k)
    sn, cn, dn = (float(v) for v in jacobi_elliptic(big_k, k))
    assert sn == pytest.approx(1.0, abs=1e-13)
    assert cn == pytest.approx(0.0, abs=1e-13)
    assert dn == pytest.approx(math.sqrt(1 - k * k), abs=1e-13)


def test_jacobi_identities_random():
    rng = np.random.default_rng(7)
    for _ in range(300):
        k = rng.uniform(0.01, 0.99)
        u = rng.uniform(-4.0, 4.0)
        sn, cn, dn = (float(v) for v in jacobi_elliptic(u, k))
        assert sn * sn + cn * cn == pytest.approx(1.0, abs=1e-12)
        assert dn * dn + k * k * sn * sn == pytest.approx(1.0, abs=1e-12)


def test_jacobi_against_mpmath():
    rng = np.random.default_rng(8)
    for _ in range(40):
        k = rng.uniform(0.05, 0.95)
        u = rng.uniform(-3.0, 3.0)
        sn, cn, dn = (float(v) for v in jacobi_elliptic(u, k))
        m = k * k
        assert sn == pytest.approx(float(mpmath.ellipfun("sn", u, m)), abs=1e-12)
        assert cn == pytest.approx(float(mpmath.ellipfun("cn", u, m)), abs=1e-12)
        assert dn == pytest.approx(float(mpmath.ellipfun("dn", u, m)), abs=1e-12)


def test_sc_cs_and_poles():
    k = 0.4
    u = 0.37
    sn, cn, _ = jacobi_elliptic(u, k)
    assert float(jacobi_sc(u, k)) == pytest.approx(float(sn / cn), rel=1e-13)
    assert float(jacobi_cs(u, k)) == pytest.approx(float(cn / sn), rel=1e-13)
    # sc * cs == 1 wherever both are finite
    assert float(jacobi_sc(u, k) * jacobi_cs(u, k)) == pytest.approx(1.0,
                                                                     rel=1e-13)
    # the pole guard fires only on an exact zero: u = 0 gives sn = 0 exactly,
    # while cn at u = K merely underflows to ~6e-17 and sc stays finite
    with pytest.raises(EllipticDomainError):
        jacobi_cs(0.0, k)
    assert abs(float(jacobi_sc(complete_elliptic_K(k), k))) > 1e12


def test_half_argument_on_conjugate_modulus():
    # sc(K'/2, k') = 1/sqrt(k)
    for k in (0.2, 0.5, 0.83):
        kp = math.sqrt(1 - k * k)
        half = complete_elliptic_K(kp) / 2
        assert float(jacobi_sc(half, kp)) == pytest.approx(
            1 / math.sqrt(k), rel=1e-12)


def test_sn_periodicity():
    k = 0.7
    four_K = 4 * complete_elliptic_K(k)
    for u in (-1.3, 0.24, 2.9):
        a, _, _ = jacobi_elliptic(u, k)
        b, _, _ = jacobi_elliptic(u + float(four_K), k)
        assert float(a) == pytest.approx(float(b), abs=1e-10)


def test_K_near_singular_modulus():
    # logarithmic blow-up as k -> 1
    assert float(complete_elliptic_K(1 - 1e-12)) > 14


def test_make_modulus_fields():
    mod = make_modulus(0.5)
    assert float(mod.k) == 0.5
    assert float(mod.k_prime) == pytest.approx(math.sqrt(0.75), rel=1e-14)
    assert float(mod.big_K) == pytest.approx(float(complete_elliptic_K(0.5)),
                                             rel=1e-14)
    assert float(mod.big_K_prime) == pytest.approx(
        float(complete_elliptic_K(float(mod.k_prime))), rel=1e-14)


def test_make_modulus_domain():
    for bad in (0.0, 1.0, -0.3, 1.7):
        with pytest.raises(EllipticDomainError):
            make_modulus(bad)
