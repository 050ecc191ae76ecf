import cmath

import pytest

from sepcharts import separation as S
from sepcharts import specfun as SF
from sepcharts.rng import stream


def test_m43_radial_closed_form():
    sol = S.build_solution("C_M43", {"E": 2, "zeta": 1, "alpha1": 1, "alpha2": 0})
    R = sol.factors[0].fn
    for r in (0.4, 1.0, 2.3 + 0.5j):
        assert abs(R(r) - cmath.exp(0.5 * (1 / r + 2 * r)) / r) <= 1e-15 * abs(R(r))


def test_m46_radial_closed_form():
    c = {"E": 0.7 - 0.2j, "zeta": 0.5, "alpha1": 1.2, "alpha2": -0.4j}
    R = S.build_solution("C_M46", c).factors[0].fn
    a1, a2, ze, E = c["alpha1"], c["alpha2"], c["zeta"], c["E"]
    r = 0.9 + 0.1j
    assert abs(R(r) - cmath.exp((-a2 ** 2 * r ** 2 + (E - 2 * a2 * ze) * r) / (2 * a1))) < 1e-14


def test_3c_k1_airy_argument():
    c = {"E": -0.6 + 0.3j, "alpha": 0.8, "zeta": 1.1}
    sol = S.build_solution("C_3C_k1", c)
    f = sol.factors[0]
    r = 0.7
    x = (r - c["alpha"] / c["zeta"] - c["E"] / (2 * c["zeta"] ** 2)) * (2 * c["zeta"] ** 2) ** (1 / 3)
    assert abs(f.printed_fn(r) - SF.airy_ai(x).scalar) < 1e-14
    assert abs(f.fn(r) - SF.airy_ai(-x).scalar) < 1e-14


@pytest.mark.parametrize("lam, nu", [(1, 0), (0, 1), (-3, 2)])
def test_radial_index(lam, nu):
    rep = S.radial_index_oracle(lam)
    assert abs(abs(rep.nu) - nu) < 1e-15
    assert rep.residual <= 1e-9 and rep.passed
    assert rep.printed_nu == -5 - lam


def test_radial_index_records_printed_disagreement():
    assert not S.radial_index_oracle(0).agrees_with_printed
    assert not S.radial_index_oracle(1).agrees_with_printed
    assert S.radial_index_oracle(0).printed_residual > 1e-3


def test_m43_radial_ode_exact():
    sol = S.build_solution("C_M43", {"E": 0.4 + 0.9j, "zeta": 0.8, "alpha1": 0.5, "alpha2": 1.1j})
    assert S.ode_residual(sol, 0, 10, stream(0, "m43")) <= 1e-13


def test_m41_jacobi_factor_n2():
    sol = S.build_solution("C_M41", {"E": -0.5 + 0.4j, "alpha": 1, "beta": 2, "n": 2})
    idx = [f.variable for f in sol.factors].index("c")
    assert S.ode_residual(sol, idx, 10, stream(0, "m41")) < 1e-9


def test_3c_k1_ode_and_printed_argument():
    sol = S.build_solution("C_3C_k1", {"E": -0.6 + 0.3j, "alpha": 0.8, "zeta": 1.1})
    assert S.ode_residual(sol, 0, 10, stream(0, "airy")) < 1e-9
    assert S.ode_residual(sol, 0, 10, stream(0, "airy"), printed=True) > 1e-3


def test_m41_pde_residual():
    sol = S.build_solution("C_M41", {"E": -0.5 + 0.4j, "alpha": 1, "beta": 0, "n": 1})
    rep = S.pde_residual(sol, 10, stream(1, "pde"))
    assert rep.passed and rep.pde_residual <= 1e-6


def test_elementary_recipes_make_no_specfun_calls(monkeypatch):
    def boom(*a, **k):
        raise AssertionError("special function called")

    for name in ("bessel_j", "kummer_m", "kummer_u", "whittaker_w", "gauss_2f1", "legendre_p",
                 "jacobi_p", "airy_ai", "complex_gamma"):
        monkeypatch.setattr(SF, name, boom)
    for cid in S.ELEMENTARY_RECIPES:
        sol = S.build_solution(cid, S.sample_constants(cid, stream(0, cid)))
        assert S.pde_residual(sol, 3, stream(0, cid)).passed


def test_zero_zeta_rejected():
    with pytest.raises(ValueError, match="zeta"):
        S.build_solution("C_M43", {"E": 1, "zeta": 0, "alpha1": 1, "alpha2": 0})


def test_missing_constant_rejected():
    with pytest.raises(ValueError, match="missing"):
        S.build_solution("C_M43", {"E": 1, "zeta": 1})


def test_m42_integer_two_mu_rejected():
    with pytest.raises(SF.SpecfunError, match="logarithmic"):
        S.build_solution("C_M42", {"E": -1, "alpha": 0.5, "beta": 0.3, "lambda": 0})


def test_zero_ansatz_detected():
    sol = S.build_solution("C_M43", {"E": 1, "zeta": 1, "alpha1": 1, "alpha2": 0})
    dead = S.SeparatedSolution(sol.chart_id, sol.recipe_eq, sol.constants,
                               (S.Factor("r", lambda r: 0 * r),) + sol.factors[1:], sol.ansatz_form)
    assert S.is_zero_ansatz(dead)
    assert not S.is_zero_ansatz(sol)


def test_sampled_constants_in_range():
    for cid in S.RECIPES:
        c = S.sample_constants(cid, stream(2, cid))
        e = complex(c["E"])
        assert 0.3 <= abs(e) <= 1.5
        assert abs(cmath.phase(e)) >= 0.1


def test_angular_eigenvalue_m41():
    c = {"E": -0.5 + 0.4j, "alpha": 1, "beta": 2, "n": 1}
    sol = S.build_solution("C_M41", c)
    lam = sol.const["lambda"]
    params = {"r": 1.0, "c": 0.6, "a": 0.2, "b": -0.3}
    assert abs(S.angular_eigenvalue(sol, params) - lam) <= 1e-9 * (1 + abs(lam))
