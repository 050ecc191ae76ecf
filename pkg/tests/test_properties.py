"""Property-based tests (hypothesis)."""

import cmath
import math

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from sepcharts import algebra as A
from sepcharts import charts as C
from sepcharts import opsets as O
from sepcharts import specfun as SF
from sepcharts.exact import QI
from sepcharts.jets import Jet2

FAST = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=9)
gaussian = st.builds(QI, rationals, rationals)


def annulus(lo, hi, phase=(-math.pi, math.pi)):
    return st.builds(lambda r, t: complex(r * math.cos(t), r * math.sin(t)),
                     st.floats(lo, hi), st.floats(*phase))


def off_integers(lo=0.3, hi=1.8):
    return annulus(lo, hi).filter(lambda w: abs(w.imag) > 0.05)


def rel(*terms):
    s = sum(abs(t) for t in terms)
    return abs(sum(terms)) / s if s else 0.0


# -- exact arithmetic -------------------------------------------------------------------

@FAST
@given(gaussian, gaussian, gaussian)
def test_qi_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b != 0:
        assert (a / b) * b == a


@FAST
@given(st.lists(rationals, min_size=10, max_size=10), st.lists(rationals, min_size=10, max_size=10))
def test_vector_field_map_reverses_brackets(u, v):
    basis = A.isometry_basis(A.KAB)

    def elem(cs):
        out = A.zero_element()
        for c, g in zip(cs, basis):
            out = out + g.scale(QI(c))
        return out

    X, Y = elem(u), elem(v)
    lhs = O.op_commutator(O.generator_to_operator(X), O.generator_to_operator(Y))
    assert lhs == O.generator_to_operator(A.commutator(Y, X))


@FAST
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), gaussian), min_size=1, max_size=4))
def test_operator_composition_associative(spec):
    ops = [O.DiffOperator.multiply_by(O.poly_var(i, 4), 4) @ O.DiffOperator.partial(k, 4)
           + O.DiffOperator.identity(4).scale(c) for i, k, c in spec]
    p, q, r = ops[0], ops[-1], ops[len(ops) // 2]
    assert (p @ q) @ r == p @ (q @ r)


@FAST
@given(st.sampled_from([m for s in A.SpaceId for m in A.masa_catalog(s)]),
       st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3))
def test_masa_elements_commute(m, u, v):
    X = m.element([QI(c) for c in u[:m.dim]])
    Y = m.element([QI(c) for c in v[:m.dim]])
    assert A.commutator(X, Y).is_zero()
    assert A.is_isometry(X, m.metric)


# -- charts ------------------------------------------------------------------------------

CHARTS = [c for c in C.all_charts(include_auxiliary=True) if not c.stub]


@FAST
@given(st.sampled_from(CHARTS), st.integers(0, 2 ** 32))
def test_dual_path_random(chart, seed):
    import numpy as np
    rng = np.random.default_rng(seed)
    s = C.sample_params(chart, rng)
    x1 = C.eval_closed_form(chart, s.params)
    x2 = C.eval_group_action(chart, s.params)
    assert np.max(np.abs(x1 - x2)) <= 1e-11 * (1 + np.max(np.abs(x1)))


# -- special functions -------------------------------------------------------------------

@FAST
@given(off_integers(0.3, 3.0), annulus(0.3, 30.0))
def test_bessel_recurrence(nu, z):
    a, b, c = SF.bessel_j(nu - 1, z), SF.bessel_j(nu + 1, z), SF.bessel_j(nu, z)
    assert rel(a.scalar, b.scalar, -2 * nu / z * c.scalar) <= 1e-9


@FAST
@given(annulus(0.3, 1.5), off_integers(), annulus(0.3, 30.0))
def test_kummer_transformation(a, b, z):
    lhs = SF.kummer_m(a, b, z).scalar
    rhs = cmath.exp(z) * SF.kummer_m(b - a, b, -z).scalar
    assert abs(lhs - rhs) <= 1e-9 * max(abs(lhs), abs(rhs))


@FAST
@given(st.integers(0, 6), annulus(0.3, 1.5), annulus(0.3, 1.5), annulus(0.3, 2.0))
def test_jacobi_symmetry(n, al, be, z):
    lhs = SF.jacobi_p(n, al, be, -z).scalar
    rhs = (-1) ** n * SF.jacobi_p(n, be, al, z).scalar
    assert abs(lhs - rhs) <= 1e-9 * (1 + abs(lhs))


@FAST
@given(st.integers(0, 5), st.fractions(-3, 3, max_denominator=7), st.fractions(-3, 3, max_denominator=7),
       st.fractions(-2, 2, max_denominator=7))
def test_jacobi_exact_symmetry(n, al, be, z):
    assert SF.jacobi_p(n, al, be, -z).value == (-1) ** n * SF.jacobi_p(n, be, al, z).value


@FAST
@given(st.floats(-5, 5), st.floats(-3, 3))
def test_gamma_reflection(x, y):
    z = complex(x, y)
    if abs(y) < 1e-3 and abs(x - round(x)) < 1e-3:
        return
    g = SF.complex_gamma(z).scalar * SF.complex_gamma(1 - z).scalar * cmath.sin(math.pi * z) / math.pi
    assert abs(g - 1) <= 1e-9


def _jet(fn, z):
    """(y, y', y'') at z; draws the function flags as unconverged are discarded."""
    r = fn(Jet2.variable(z, 0, 1))
    assume(r.converged)
    v = r.value
    return complex(v.value), complex(v.grad[0]), complex(v.hess[0, 0])


CUT = (-math.pi + 0.2, math.pi - 0.2)


@FAST
@given(off_integers(), annulus(0.3, 30.0, CUT))
def test_bessel_ode(nu, z):
    y, y1, y2 = _jet(lambda t: SF.bessel_j(nu, t), z)
    assert rel(z * z * y2, z * y1, (z * z - nu * nu) * y) <= 1e-8


@FAST
@given(annulus(0.3, 1.5), off_integers(0.2, 0.9), annulus(0.3, 30.0, CUT))
def test_whittaker_ode(k, mu, z):
    y, y1, y2 = _jet(lambda t: SF.whittaker_w(k, mu, t), z)
    assert rel(y2, -y / 4, k * y / z, (0.25 - mu * mu) * y / (z * z)) <= 1e-8


@FAST
@given(annulus(0.3, 1.5), off_integers(), annulus(0.3, 30.0))
def test_kummer_ode(a, b, z):
    y, y1, y2 = _jet(lambda t: SF.kummer_m(a, b, t), z)
    assert rel(z * y2, (b - z) * y1, -a * y) <= 1e-8


@FAST
@given(annulus(0.3, 1.5), off_integers(0.2, 0.9), st.floats(-0.6, 0.6), st.floats(0.1, 0.6), st.booleans())
def test_legendre_ode(nu, mu, x, y, flip):
    z = complex(x, -y if flip else y)
    v, v1, v2 = _jet(lambda t: SF.legendre_p(nu, mu, t), z)
    assert rel((1 - z * z) * v2, -2 * z * v1, (nu * (nu + 1) - mu * mu / (1 - z * z)) * v) <= 1e-8


@FAST
@given(annulus(0.0, 8.0))
def test_airy_ode(z):
    y, y1, y2 = _jet(SF.airy_ai, z)
    assert rel(y2, -z * y) <= 1e-8


@FAST
@given(annulus(0.3, 1.5), annulus(0.3, 1.5), off_integers(), annulus(0.1, 0.9))
def test_gauss_ode(a, b, c, z):
    y, y1, y2 = _jet(lambda t: SF.gauss_2f1(a, b, c, t), z)
    assert rel(z * (1 - z) * y2, (c - (a + b + 1) * z) * y1, -a * b * y) <= 1e-8
