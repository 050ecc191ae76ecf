import cmath
import math
from fractions import Fraction

import pytest

from sepcharts import specfun as SF
from sepcharts.jets import Jet2


def ode_terms(fn, z):
    r = fn(Jet2.variable(z, 0, 1))
    v = r.value
    return complex(v.value), complex(v.grad[0]), complex(v.hess[0, 0])


def rel(*terms):
    return abs(sum(terms)) / sum(abs(t) for t in terms)


def test_bessel_values():
    assert SF.bessel_j(0, 0).scalar == 1
    assert abs(SF.bessel_j(0.5, 1).scalar - math.sqrt(2 / math.pi) * math.sin(1)) < 1e-15
    assert abs(SF.bessel_j(0.5, 1).scalar - 0.6713967071418026) < 1e-15


def test_bessel_ode_residual():
    nu, z = 0.3 + 0.1j, 1.5 - 0.5j
    y, y1, y2 = ode_terms(lambda t: SF.bessel_j(nu, t), z)
    assert rel(z * z * y2, z * y1, (z * z - nu * nu) * y) < 1e-9


def test_bessel_negative_integer_order():
    z = 1.3 + 0.2j
    assert abs(SF.bessel_j(-3, z).scalar + SF.bessel_j(3, z).scalar) < 1e-15


def test_bessel_out_of_regime_flagged():
    r = SF.bessel_j(1, 31)
    assert not r.converged


def test_kummer_values():
    assert SF.kummer_m(0.3 + 1j, 1.7, 0).scalar == 1
    assert abs(SF.kummer_m(1, 2, 1).scalar - (math.e - 1)) < 1e-15


def test_whittaker_ode_residual():
    k, mu, z = 0.4j, 0.35, 1 + 0.5j
    y, y1, y2 = ode_terms(lambda t: SF.whittaker_w(k, mu, t), z)
    assert rel(y2, -y / 4, k * y / z, (0.25 - mu * mu) * y / (z * z)) < 1e-8


def test_whittaker_integer_two_mu_rejected():
    with pytest.raises(SF.SpecfunError, match="logarithmic"):
        SF.whittaker_w(0.2, 0.5, 1.0)


def test_kummer_u_gamma_pole_drops_term():
    r = SF.kummer_u(-1, 0.5, 0.7)
    assert any("dropped" in n for n in r.notes)
    # U(-1, b, z) = z - b
    assert abs(r.scalar - (0.7 - 0.5)) < 1e-14


def test_legendre_values():
    assert SF.legendre_p(0.37, 0, 1).scalar == 1
    z = 0.5 + 0.2j
    assert abs(SF.legendre_p(1, 0, z).scalar - z) < 1e-15


def test_legendre_ode_residual():
    nu, mu, z = 0.25, 0.3, 0.4j
    y, y1, y2 = ode_terms(lambda t: SF.legendre_p(nu, mu, t), z)
    assert rel((1 - z * z) * y2, -2 * z * y1, (nu * (nu + 1) - mu * mu / (1 - z * z)) * y) < 1e-8


def test_legendre_outside_disk_flagged():
    assert not SF.legendre_p(0.5, 0.2, -2.5).converged


def test_jacobi_exact_values():
    assert SF.jacobi_p(0, Fraction(3), Fraction(1, 2), Fraction(7)).value == 1
    assert SF.jacobi_p(1, 1, 2, 0).value == Fraction(-1, 2)


def test_jacobi_ode_residual_degree_six():
    n, a, b, z = 6, 0.4 + 0.2j, 1.3, 0.3 - 0.6j
    y, y1, y2 = ode_terms(lambda t: SF.jacobi_p(n, a, b, t), z)
    assert rel((1 - z * z) * y2, (b - a - (a + b + 2) * z) * y1, n * (n + a + b + 1) * y) < 1e-13


def test_airy_values():
    assert abs(SF.airy_ai(0).scalar - 0.3550280538878173) < 1e-15
    assert SF.AIRY_C1 == SF.airy_ai(0).scalar.real
    for x in (-3.0, 0.5, 2.0):
        assert SF.airy_ai(x).scalar.imag == 0


def test_airy_ode_residual():
    z = 1 - 0.3j
    y, y1, y2 = ode_terms(SF.airy_ai, z)
    assert rel(y2, -z * y) < 1e-10


def test_gamma_values():
    assert SF.complex_gamma(1).scalar == 1
    assert SF.complex_gamma(5).scalar == 24
    assert abs(SF.complex_gamma(0.5).scalar - math.sqrt(math.pi)) < 1e-14
    z = 0.3 + 0.7j
    g = SF.complex_gamma(z).scalar * SF.complex_gamma(1 - z).scalar * cmath.sin(math.pi * z) / math.pi
    assert abs(g - 1) < 1e-11


def test_gamma_pole_raises():
    with pytest.raises(SF.SpecfunError):
        SF.complex_gamma(-2)


def test_converged_implies_error_bound():
    for r in (SF.kummer_m(0.5, 1.5, 3 + 1j), SF.bessel_j(1.2, 5), SF.airy_ai(4 - 2j)):
        assert r.converged
        assert r.est_error <= 1e-12 * (1 + abs(r.scalar))


@pytest.mark.parametrize("name, ours, theirs", [
    ("J", lambda: SF.bessel_j(0.3 + 0.1j, 2.5 - 1j), lambda m: m.besselj(0.3 + 0.1j, 2.5 - 1j)),
    ("M", lambda: SF.kummer_m(0.4j, 1.3, 2 + 0.5j), lambda m: m.hyp1f1(0.4j, 1.3, 2 + 0.5j)),
    ("W", lambda: SF.whittaker_w(0.4j, 0.35, 1 + 0.5j), lambda m: m.whitw(0.4j, 0.35, 1 + 0.5j)),
    ("P", lambda: SF.legendre_p(0.25, 0.3, 0.4j), lambda m: m.legenp(0.25, 0.3, 0.4j, type=3)),
    ("Ai", lambda: SF.airy_ai(1 - 0.3j), lambda m: m.airyai(1 - 0.3j)),
    ("Jac", lambda: SF.jacobi_p(4, 0.5, 1.5j, 0.2), lambda m: m.jacobi(4, 0.5, 1.5j, 0.2)),
    ("Gamma", lambda: SF.complex_gamma(3.3 - 2j), lambda m: m.gamma(3.3 - 2j)),
])
def test_against_mpmath(name, ours, theirs):
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    ref = complex(theirs(mp))
    assert abs(ours().scalar - ref) <= 1e-10 * abs(ref)


def test_batteries_pass():
    for r in SF.ode_battery(10, seed=3) + SF.identity_battery(10, seed=3):
        assert r.passed, r.to_json()
