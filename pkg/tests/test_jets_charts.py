import math

import numpy as np
import pytest

from sepcharts import charts as C
from sepcharts import jets as J
from sepcharts.jets import Jet2
from sepcharts.rng import stream


def test_jet_product_rule():
    u, v = Jet2.variable(2, 0, 2), Jet2.variable(3, 1, 2)
    f = u * v
    assert f.value == 6
    assert np.allclose(f.grad, [3, 2])
    assert f.hess[0, 1] == 1 and f.hess[1, 0] == 1


def test_jet_sin_at_zero():
    f = J.sin(Jet2.variable(0.0, 0, 1))
    assert (f.value, f.grad[0], f.hess[0, 0]) == (0, 1, 0)


def test_jet_exp_chain_rule():
    f = J.exp(2 * Jet2.variable(0.5, 0, 1))
    e = math.e
    assert np.allclose([f.value, f.grad[0], f.hess[0, 0]], [e, 2 * e, 4 * e], rtol=1e-15)


def _compose(rng):
    c = [complex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4))) / 4 for _ in range(6)]

    def f(x, y):
        inner = c[0] * x + c[1] * y * x + c[2]
        return J.exp(inner * 0.3) * J.sin(c[3] * y + x) + J.power(1.5 + 0.2 * x * y, c[4]) \
            + J.cosh(c[5] * x) / (2 + y * y)
    return f


def test_jet_battery_against_central_differences():
    rng = stream(11, "jet-battery")
    h = 1e-5
    for _ in range(30):
        f = _compose(rng)
        p = np.array([rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8)])
        jet = J.jet_eval(f, p)
        for i in range(2):
            e = np.zeros(2)
            e[i] = h
            fd = (f(*(p + e)) - f(*(p - e))) / (2 * h)
            assert abs(fd - jet.grad[i]) <= 1e-6 * (1 + abs(fd))
            fd2 = (f(*(p + e)) - 2 * f(*p) + f(*(p - e))) / h ** 2
            assert abs(fd2 - jet.hess[i, i]) <= 1e-3 * (1 + abs(fd2))


def test_m4c_chart_count():
    assert len(C.chart_catalog("m4c")) == 10


def test_m4r_two_charts():
    assert [c.id for c in C.chart_catalog("m4r")] == ["R4_cyl", "R4_sph"]


def test_m22_masa_chain_count():
    cat = C.chart_catalog("m22")
    assert sum(c.masa_id is not None for c in cat) == 9
    assert sum(c.masa_id is None for c in cat) == 5


@pytest.mark.parametrize("chart_id, params, expect", [
    ("C_M41", {"r": 1, "c": 0, "a": 0, "b": 0}, (1, 0, 0, 0)),
    ("C_M43", {"z": 1, "r": 2, "a1": 1, "a2": 0}, (0, 2, 0, 2)),
    ("E22_a", {"r": 1, "c": 0, "a": math.pi, "b": 0}, (-1, 0, 0, 0)),
])
def test_closed_form_values(chart_id, params, expect):
    assert np.allclose(C.eval_closed_form(C.get_chart(chart_id), params), expect, atol=1e-15)


@pytest.mark.parametrize("chart_id, params, expect", [
    ("C_M41", {"r": 3, "c": 0, "a": 0, "b": 0}, (3, 0, 0, 0)),
    ("C_M46", {"z": 1, "a1": 0, "a2": 0, "r": 0}, (0.5, 0, 0, 1)),
    ("C_M42", {"a": 0, "b": 0, "c": 0, "r": 2}, (1, 1, 1, 1)),
])
def test_group_action_values(chart_id, params, expect):
    assert np.allclose(C.eval_group_action(C.get_chart(chart_id), params), expect, atol=1e-15)


def test_jacobian_examples():
    ch = C.get_chart("C_M41")
    Jm = C.jacobian(ch, {"r": 1, "c": 0, "a": 0, "b": 0})
    assert np.allclose(Jm[:, ch.names.index("r")], [1, 0, 0, 0])
    Jm = C.jacobian(ch, {"r": 2, "c": math.pi / 6, "a": 0, "b": 0})
    assert abs(Jm[1, ch.names.index("a")] - math.sqrt(3)) < 1e-14
    m43 = C.get_chart("C_M43")
    rng = stream(1, "jac")
    for _ in range(5):
        s = C.sample_params(m43, rng)
        assert C.jacobian(m43, s.params)[3, m43.names.index("a1")] == 0


def test_m41_metric_is_diagonal():
    ch = C.get_chart("C_M41")
    r, c = 1.3, 0.4
    g = C.induced_metric(ch, {"r": r, "c": c, "a": 0.2, "b": -0.7})
    expect = np.diag([1, r ** 2, r ** 2 * math.cos(c) ** 2, r ** 2 * math.sin(c) ** 2])
    order = [ch.names.index(n) for n in ("r", "c", "a", "b")]
    assert np.allclose(g[np.ix_(order, order)], expect, atol=1e-14)


def test_m43_null_radial_coordinate():
    ch = C.get_chart("C_M43")
    g = C.induced_metric(ch, {"z": 0.8, "r": 1.1, "a1": 0.3, "a2": -0.2})
    i = ch.names.index("r")
    assert abs(g[i, i]) < 1e-14
    assert np.count_nonzero(np.abs(g - np.diag(np.diag(g))) > 1e-14) > 0


@pytest.mark.parametrize("chart_id", ["C_M41", "C_M42"])
def test_norm_is_r_squared(chart_id):
    ch = C.get_chart(chart_id)
    rng = stream(3, chart_id)
    for _ in range(10):
        s = C.sample_params(ch, rng)
        r = s.as_dict()["r"]
        assert abs(C.norm_invariant(ch, s.params) - r * r) <= 1e-12 * (1 + abs(r) ** 2)


def test_m43_norm_is_2zr():
    ch = C.get_chart("C_M43")
    p = {"z": 0.7 + 0.1j, "r": 1.2, "a1": 0.4, "a2": -0.3j}
    assert abs(C.norm_invariant(ch, p) - 2 * p["z"] * p["r"]) < 1e-13


def test_m31_cyl_norm_negative():
    ch = C.get_chart("M31_cyl")
    rep = C.reality_check(ch, 50)
    assert rep.passed and rep.sign_ok


def test_domain_error_names_constraint():
    ch = C.get_chart("R4_cyl")
    with pytest.raises(C.DomainError, match="r"):
        C.check_domain(ch, {"r": -1.0, "c": 0.1, "a": 0.0, "b": 0.0})


def test_stub_has_no_coordinates():
    ch = C.get_chart("M31_4a")
    assert ch.stub
    with pytest.raises(C.DomainError):
        C.check_domain(ch, ())


def test_ignorability_m41():
    rep = C.ignorability_check(C.get_chart("C_M41"))
    assert rep.passed and set(rep.to_json()["ignorable"]) == {"a", "b"}


def test_dual_path_detects_wrong_action():
    import dataclasses
    ch = C.get_chart("C_M41")
    bad = dataclasses.replace(ch, action=ch.action[::-1])
    assert not C.dual_path_check(bad, 20).passed
