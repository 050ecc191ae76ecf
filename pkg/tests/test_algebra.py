from fractions import Fraction

import numpy as np

from sepcharts import algebra as A
from sepcharts import exact
from sepcharts.algebra import E, SpaceId, combo
from sepcharts.exact import QI


def L(i, k):
    """L_ik = E_ik - E_ki (opposite sign to algebra.rot)."""
    return combo([(1, i, k), (-1, k, i)])


def test_qi_field_operations():
    x = QI(Fraction(1, 2), 3)
    y = QI(-2, Fraction(1, 3))
    assert (x * y) / y == x
    assert x - x == 0
    assert QI(0, 1) ** 2 == -1
    assert exact.from_string(exact.to_string(x)) == x


def test_exact_inverse_and_rank():
    M = exact.as_matrix([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    assert exact.mat_mul(M, exact.inverse(M)) == exact.identity(3)
    assert exact.det(M) == 7
    assert exact.rank([[1, 2], [2, 4]]) == 1
    ns = exact.nullspace([[1, 2], [2, 4]], 2)
    assert len(ns) == 1
    v = ns[0]
    assert v[0] + 2 * v[1] == 0


def test_commutator_disjoint_blocks_vanishes():
    assert A.commutator(L(1, 2), L(3, 4)).is_zero()


def test_commutator_l12_l13():
    assert A.commutator(L(1, 2), L(1, 3)).matrix == (-L(2, 3)).matrix


def test_commutator_with_itself():
    x = combo([(QI(1, 2), 1, 3), (3, 2, 5)])
    assert A.commutator(x, x).is_zero()


def test_rot_sign_convention():
    assert A.rot(1, 2).matrix == (-L(1, 2)).matrix


def test_is_isometry_examples():
    eye = A._metric("identity", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    split = A._metric("diag", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
    assert A.is_isometry(L(1, 2), eye)
    assert not A.is_isometry(combo([(1, 1, 3), (1, 3, 1)]), eye)
    assert A.is_isometry(combo([(1, 1, 3), (1, 3, 1)]), split)


def test_exp_zero_is_identity():
    assert np.allclose(A.one_param_exp(L(1, 2), 0.0), np.eye(5))


def test_exp_rotation_quarter_turn():
    g = A.one_param_exp(L(1, 2), np.pi / 2)
    expect = np.eye(5, dtype=complex)
    expect[:2, :2] = [[0, 1], [-1, 0]]
    assert np.allclose(g, expect, atol=1e-15)
    assert np.allclose(g @ g.T, np.eye(5), atol=1e-15)


def test_exp_translation_terminates():
    z = 0.7 - 0.2j
    g = A.one_param_exp(E(1, 5), z)
    expect = np.eye(5, dtype=complex)
    expect[0, 4] = z
    assert np.array_equal(g, expect)


def test_exp_matches_series_for_boost():
    x = combo([(1, 1, 3), (1, 3, 1)])
    t = 0.9 + 0.3j
    assert np.allclose(A.one_param_exp(x, t), A._series_exp(x.to_numpy() * t), rtol=1e-13, atol=1e-13)


def test_m4c_catalog():
    cat = A.masa_catalog(SpaceId.M4C)
    assert [m.id for m in cat] == ["M41_0", "M42_0", "M43_1", "M44_1", "M45_1", "M46_2", "M47_2"]
    assert [m.id for m in cat if m.degenerate] == ["M47_2"]


def test_m31_catalog_excludes_m45():
    ids = [m.id for m in A.masa_catalog(SpaceId.M31)]
    assert ids == ["M41_0r", "M43_1r", "M44_1r"]
    assert not any(i.startswith("M45") for i in ids)


def test_m22_k0_two_entries_one_degenerate():
    k2 = [m for m in A.masa_catalog(SpaceId.M22) if m.k0 == 2]
    assert len(k2) == 2
    assert sum(m.degenerate for m in k2) == 1


def test_centralizer_m41_maximal_dim2():
    rep = A.centralizer_check(A.get_masa(SpaceId.M4C, "M41_0"))
    assert rep.is_maximal and rep.centralizer_dim == 2


def test_centralizer_m43_maximal_dim3():
    rep = A.centralizer_check(A.get_masa(SpaceId.M4C, "M43_1"))
    assert rep.is_maximal and rep.dim == 3


def test_single_translation_not_maximal():
    m = A.get_masa(SpaceId.M4C, "M41_0").metric
    rep = A.span_centralizer_check([E(1, 5)], m)
    assert not rep.is_maximal
    cen = A.centralizer([E(1, 5)], m)
    assert len(cen) >= 3


def test_conjugate_identity_unchanged():
    m = A.get_masa(SpaceId.M4C, "M43_1")
    k2, gens = A.conjugate(exact.identity(4), m.metric, m.generators)
    assert k2.entries == m.metric.entries
    assert [g.matrix for g in gens] == [g.matrix for g in m.generators]


def test_compact_to_mixed_maps_identity_to_antidiagonal_blocks():
    g = A.g_compact_to_mixed()
    eye = A._metric("identity", exact.identity(4))
    k2, _ = A.conjugate(g, eye, [])
    assert k2.entries == A.KAB.entries
