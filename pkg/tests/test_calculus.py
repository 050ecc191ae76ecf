import numpy as np
import pytest

from sepcharts import calculus as K
from sepcharts import charts as C
from sepcharts import jets as J
from sepcharts.rng import stream


def test_cartesian_flat_laplacian():
    ch = C.get_chart("C_M47_cart")
    rng = stream(0, "cart")
    f = K.random_test_function(ch.names, rng)
    s = C.sample_params(ch, rng)
    fj = K._f_jet(ch, f, s.params)
    box = K.laplace_beltrami_apply(ch, f, s.params)
    assert abs(box - K.ambient_box(ch.metric.to_numpy(), fj.hess)) <= 1e-12 * (1 + abs(box))


def test_m41_r_squared_gives_8():
    ch = C.get_chart("C_M41")
    p = {"r": 1.7, "c": 0.3, "a": 0.2, "b": 1.1}
    assert abs(K.laplace_beltrami_apply(ch, lambda q: q["r"] * q["r"], p) - 8) < 1e-12
    assert abs(K.closed_form_apply(K.get_table("3.318+3.19"), lambda q: q["r"] * q["r"], p, ch) - 8) < 1e-12


def test_m43_zr_gives_4():
    ch = C.get_chart("C_M43")
    table = K.get_table("3.L325")
    for p in ({"z": 0.6, "r": 1.3, "a1": 0.1, "a2": 0.2}, {"z": -1.1j, "r": 0.4, "a1": 2.0, "a2": -1.0}):
        assert abs(K.closed_form_apply(table, lambda q: q["z"] * q["r"], p, ch) - 4) < 1e-12
        assert abs(K.laplace_beltrami_apply(ch, lambda q: q["z"] * q["r"], p) - 4) < 1e-12


def test_m46_table_a1_r():
    table = K.get_table("3.L337")
    p = dict(zip(table.names, (0.3, 0.7, -0.2, 1.4)))
    assert abs(K.closed_form_apply(table, lambda q: q["a1"] * q["r"], p) - 2) < 1e-12


def test_m47_table_value_4():
    table = K.get_table("3.L341")
    p = dict(zip(table.names, (0.3, -0.8, 1.2, 0.5)))
    assert abs(K.closed_form_apply(table, lambda q: q["a1"] * q["s3"] + q["a2"] * q["s4"], p) - 4) < 1e-12


@pytest.mark.parametrize("table_id", K.PRINTED_TABLE_IDS)
def test_constants_are_annihilated(table_id):
    table = K.get_table(table_id)
    p = {n: 0.4 + 0.1 * i for i, n in enumerate(table.names)}
    assert K.closed_form_apply(table, lambda q: 3.0 + 0j, p) == 0


def test_hamiltonian_alias():
    ch = C.get_chart("C_M41")
    p = {"r": 1.2, "c": 0.5, "a": 0.3, "b": 0.9}
    f = lambda q: q["r"] ** 3 * J.cos(q["a"])
    assert K.hamiltonian_apply(ch, f, p) == -0.5 * K.laplace_beltrami_apply(ch, f, p)


@pytest.mark.parametrize("chart_id", ["C_M41", "C_M42", "C_4C1"])
def test_table_matches_derived(chart_id):
    rep = K.verify_laplacian(C.get_chart(chart_id), 10, 3, stream(0, chart_id))
    assert rep.passed, rep.to_json()


def test_box_is_a_scalar_across_charts():
    """Box of one ambient function through C_M41 and C_4C1 equals the ambient Box at the image point."""
    w = np.array([0.3, -0.2, 0.5, 0.1])

    def ambient(x):
        return J.exp(sum(wi * xi for wi, xi in zip(w, x))) * (x[0] * x[1] + x[2])

    rng = stream(5, "overlap")
    for chart_id in ("C_M41", "C_4C1"):
        ch = C.get_chart(chart_id)
        Km = ch.metric.to_numpy()
        for _ in range(5):
            p = C.sample_params(ch, rng).as_dict()
            x = C.eval_closed_form(ch, p)
            box = K.laplace_beltrami_apply(ch, lambda q: ambient(ch.closed_form(q)), p)
            hess = J.jet_eval(lambda *xs: ambient(xs), x).hess
            flat = K.ambient_box(Km, hess)
            assert abs(box - flat) <= 1e-8 * (1 + abs(flat))


def test_mixed_cartan_table_sign_against_sympy():
    """Independent symbolic pullback for E22_c: d_a^2 and d_b^2 carry -1/cosh^2 2c and +1/cosh^2 2c."""
    sp = pytest.importorskip("sympy")
    r, c, a, b = sp.symbols("r c a b", positive=True)
    k = r / sp.sqrt(2)
    ch_, sh_ = sp.cosh(c), sp.sinh(c)
    x = [k * sp.exp(a) * (ch_ * sp.cos(b) - sh_ * sp.sin(b)), k * sp.exp(a) * (ch_ * sp.sin(b) + sh_ * sp.cos(b)),
         k * sp.exp(-a) * (ch_ * sp.cos(b) + sh_ * sp.sin(b)), k * sp.exp(-a) * (ch_ * sp.sin(b) - sh_ * sp.cos(b))]
    Km = sp.Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    Jm = sp.Matrix(x).jacobian([r, c, a, b])
    gi = sp.simplify((Jm.T * Km * Jm).inv())
    cv = 0.37
    sub = {r: 1, c: cv}
    assert abs(float(gi[2, 2].subs(sub)) + 1 / np.cosh(2 * cv) ** 2) < 1e-12
    assert abs(float(gi[3, 3].subs(sub)) - 1 / np.cosh(2 * cv) ** 2) < 1e-12
    assert abs(2 * float(gi[2, 3].subs(sub)) - 2 * np.sinh(2 * cv) / np.cosh(2 * cv) ** 2) < 1e-12
    # the tabulated operator carries the opposite signs and is reported as failing
    S, _ = K.get_table("5.517").coefficients({"r": 1.0, "c": cv, "a": 0.0, "b": 0.0})
    names = K.get_table("5.517").names
    ia = names.index("a")
    assert np.sign(S[ia, ia].real) == -np.sign(float(gi[2, 2].subs(sub)))
    assert not K.verify_laplacian(C.get_chart("E22_c"), 5, 2, stream(0, "E22_c")).passed


def test_printed_failure_reports_worst_term():
    rep = K.verify_laplacian(C.get_chart("E22_e"), 5, 3, stream(0, "E22_e"))
    assert not rep.passed
    assert rep.worst_term == "d/dc"
    assert rep.worst_term_discrepancy > 0


def test_derived_replacement_tables_pass():
    for tid, cid in (("5.517-derived", "E22_c"), ("5.29-derived", "E22_e")):
        rep = K.verify_laplacian(C.get_chart(cid), 10, 3, stream(0, tid), table=K.get_table(tid))
        assert rep.passed and not rep.printed


def test_singular_metric_raises():
    ch = C.get_chart("C_M41")
    with pytest.raises(C.CoordinateSingularity):
        K.derived_coefficients(ch, {"r": 1.0, "c": 0.0, "a": 0.1, "b": 0.2})
