"""Multi-indexed systems: structure, constants, operators, orthogonality."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mipoly.families import LittleQJacobi, LittleQLaguerre, Meixner
from mipoly.multi import (
    MultiIndexedSystem,
    count_sign_changes,
    deformed_potentials,
    denominator_poly,
    leading_coefficients,
    multi_poly,
    orthogonality_sum,
    system,
    tilde_delta,
    varphi_M,
    varphi_M_definition,
    verify_eigen_equation,
    verify_multi_structure,
    verify_shape_invariance,
    verify_special_identities,
    weight,
)
from mipoly.polynomials import Polynomial

M = Meixner(1, F(1, 2))
M2 = Meixner(F(5, 2), F(1, 3))
QJ = LittleQJacobi(F(1, 32), F(1, 3), F(1, 2))
QL = LittleQLaguerre(F(1, 32), F(1, 2))
SOME = ((M, (1, 2)), (M2, (1, 3)), (QJ, (2,)), (QL, (1, 2)))


def test_frozen_single_deletion_meixner():
    s = system(M, (1,))
    assert s.Xi() == Polynomial((1, F(1, 2)))
    assert s.multi_poly(0) == Polynomial((1, F(1, 4)))
    assert s.multi_poly(1) == Polynomial((1, F(-1, 3), F(-1, 6)))
    assert s.C_D() == 1 and s.C_Dn(0) == -1
    assert s.dt_sq(0) == 1 and s.dt_sq(1) == F(3, 2)
    assert s.weight(0) == F(2, 3) and s.weight(1) == F(1, 3)
    assert s.B_D(0) == F(5, 6) and s.D_D(1) == F(16, 15)
    assert s.leading_coefficients(2) == (F(1, 2), F(1, 2), F(1, 16))


def test_module_level_accessors_delegate():
    xi, cd = denominator_poly(M, (1,))
    assert xi == Polynomial((1, F(1, 2))) and cd == 1
    p, cdn, dt = multi_poly(M, (1,), 0)
    assert p == Polynomial((1, F(1, 4))) and cdn == -1 and dt == 1
    assert leading_coefficients(M, (1,), 2) == (F(1, 2), F(1, 2), F(1, 16))
    bd, dd = deformed_potentials(M, (1,))
    assert bd(0) == F(5, 6) and dd(1) == F(16, 15)
    assert weight(M, (1,), 0) == F(2, 3)
    assert system(M, (1,)) is system(M, [1])  # memoized by (family, labels)


def test_tilde_delta_families():
    assert tilde_delta(M) == (1, 0)
    assert tilde_delta(QJ) == (-1, 1)
    assert tilde_delta(QL) == (-1,)


def test_empty_label_set_reduces_to_base():
    for p in (M, QJ, QL):
        s = system(p, ())
        assert s.Xi() == Polynomial((1,))
        assert s.C_D() == 1
        for n in range(3):
            assert s.multi_poly(n) == p.poly(n)
            assert s.dt_sq(n) == 1
        for x in range(4):
            assert s.weight(x) == p.phi0_sq(x)
            assert s.B_D(x) == p.B(x)
            if x:
                assert s.D_D(x) == p.D(x)


def test_label_zero_reduction():
    # appending the trivial label 0 reproduces the system with all remaining
    # labels lowered by one at the tilde-shifted parameters
    with_zero = system(M, (2, 3, 0))
    reduced = system(M.tilde_shifted(1), (1, 2))
    assert with_zero.Xi() == reduced.Xi()
    for n in range(3):
        assert with_zero.multi_poly(n) == reduced.multi_poly(n)


def test_degrees_and_normalization():
    for p, labels in SOME:
        s = system(p, labels)
        assert s.Xi().degree == s.ell
        assert s.Xi().constant_term == 1
        for n in range(3):
            pn = s.multi_poly(n)
            assert pn.degree == s.ell + n
            assert pn.constant_term == 1
            c_n, c_xi, c_p = s.leading_coefficients(n)
            assert s.Xi().leading_coefficient == c_xi
            assert pn.leading_coefficient == c_p
            assert p.poly(n).leading_coefficient == c_n


def test_varphi_m_frozen_and_definition():
    assert varphi_M(LittleQLaguerre(F(1, 32), F(1, 2)), 3, 1) == F(1, 16)
    for p in (M, QJ, QL):
        for m in range(4):
            for x in range(5):
                assert varphi_M(p, m, x) == varphi_M_definition(p, m, x)


def test_label_order_does_not_matter():
    for p, labels in ((M, (1, 2, 3)), (QL, (1, 2))):
        base = system(p, labels)
        perm = system(p, tuple(reversed(labels)))
        assert base.Xi() == perm.Xi()
        for n in range(3):
            assert base.multi_poly(n) == perm.multi_poly(n)


def test_denominator_positive_on_lattice():
    for p, labels in SOME:
        s = system(p, labels)
        xi = s.Xi()
        for x in range(101):
            assert xi(p.eta(x)) > 0


def test_eigen_residual_zero():
    for p, labels in SOME:
        s = system(p, labels)
        for n in range(3):
            for x in range(8):
                assert s.eigen_residual(n, x) == 0


def test_verification_reports():
    for p, labels in SOME:
        assert verify_multi_structure(p, labels, 2, 20).passed
        assert verify_eigen_equation(p, labels, 2, 10).passed
        assert verify_shape_invariance(p, labels, 2, 8).passed
        assert verify_special_identities(p, labels, 2).passed


def test_orthogonality_exact_frozen_case():
    res = orthogonality_sum(M, (1,), 0, 0)
    assert res.passed
    assert F(2) in res.target or res.target.midpoint == 2
    assert abs(res.partial_sum - 2) <= res.tail_bound


def test_orthogonality_off_diagonal():
    res = orthogonality_sum(M, (1,), 0, 1)
    assert res.passed
    assert res.target.midpoint == 0
    res = orthogonality_sum(QL, (1, 2), 0, 1, rel_tol=F(1, 10**12))
    assert res.passed


def test_orthogonality_diagonal_q():
    res = orthogonality_sum(QJ, (1,), 1, 1, rel_tol=F(1, 10**12))
    assert res.passed


def test_weight_positive_and_summable():
    for p, labels in SOME:
        s = system(p, labels)
        for x in range(30):
            assert s.weight(x) > 0


def test_count_sign_changes():
    assert count_sign_changes([1, 2, 3]) == 0
    assert count_sign_changes([1, -1, 2]) == 2
    assert count_sign_changes([1, 0, -1]) == 1
    assert count_sign_changes([]) == 0


def test_invalid_labels_rejected():
    with pytest.raises(ValueError):
        system(M, (1, 1))  # repeated label
    with pytest.raises(ValueError):
        system(QL, (7,))  # beyond v_max
    with pytest.raises(ValueError):
        system(M, (-2,))


@given(st.integers(min_value=0, max_value=60))
@settings(max_examples=30, deadline=None)
def test_weight_positivity_hypothesis(x):
    assert system(M2, (1, 2, 3)).weight(x) > 0
