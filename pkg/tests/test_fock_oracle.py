import math

import pytest

from landau_su2 import fock_oracle as fo
from landau_su2.coherent_states import CoherencePoint, ModelParams, build_state


def all_occupations(max_total):
    return [(na, nb) for na in range(max_total + 1) for nb in range(max_total + 1 - na)]


class TestLadderAction:
    def test_annihilate_single_quantum(self):
        out = fo.apply(fo.A, fo.basis_state(1, 0))
        assert out.amplitudes == {(0, 0): 1.0 + 0j}

    def test_annihilate_vacuum_gives_zero_vector(self):
        out = fo.apply(fo.B, fo.basis_state(0, 0))
        assert out.amplitudes == {}
        assert out.norm_squared() == 0.0

    def test_k_plus_factors(self):
        # ab' on (2, 0): sqrt(2) * sqrt(1) |1, 1>
        out = fo.apply(fo.k_plus(), fo.basis_state(2, 0))
        assert out.amplitudes == {(1, 1): pytest.approx(math.sqrt(2))}

    def test_application_order_is_right_to_left(self):
        # a'a is the number operator; aa' is the number operator plus one
        state = fo.basis_state(3, 0)
        n_val = fo.apply(fo.ADAG * fo.A, state).amplitudes[(3, 0)]
        swapped = fo.apply(fo.A * fo.ADAG, state).amplitudes[(3, 0)]
        assert n_val == pytest.approx(3.0)
        assert swapped == pytest.approx(4.0)

    def test_truncation_cap(self):
        with pytest.raises(fo.TruncationOverflow):
            fo.apply(fo.ADAG, fo.basis_state(2, 1), max_total=3)
        # annihilation at the cap is fine
        fo.apply(fo.A, fo.basis_state(2, 1), max_total=3)

    def test_negative_occupation_rejected(self):
        with pytest.raises(ValueError):
            fo.TwoModeState({(-1, 0): 1.0})


class TestAlgebra:
    def test_heisenberg_pairs(self):
        ident = fo.OperatorExpr.identity()
        assert fo.commutator_residual(fo.A, fo.ADAG, ident, 6) < 1e-12
        assert fo.commutator_residual(fo.B, fo.BDAG, ident, 6) < 1e-12

    def test_cross_commutators_vanish(self):
        zero = fo.OperatorExpr.zero()
        for x, y in [(fo.A, fo.B), (fo.A, fo.BDAG), (fo.ADAG, fo.B), (fo.ADAG, fo.BDAG)]:
            assert fo.commutator_residual(x, y, zero, 6) == 0.0

    def test_su2_commutators(self):
        assert fo.commutator_residual(fo.k_plus(), fo.k_minus(), 2.0 * fo.k3(), 8) < 1e-12
        assert fo.commutator_residual(fo.k3(), fo.k_plus(), fo.k_plus(), 8) < 1e-12
        assert fo.commutator_residual(fo.k3(), fo.k_minus(), -1.0 * fo.k_minus(), 8) < 1e-12

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_matrix_elements_on_level_subspace(self, n):
        for k in range(n + 1):
            e_k = fo.basis_state(n - k, k)
            up = fo.apply(fo.k_plus(), e_k)
            if k < n:
                assert up.amplitudes[(n - k - 1, k + 1)] == pytest.approx(
                    math.sqrt((n - k) * (k + 1)))
            else:
                assert up.norm_squared() == 0.0
            k3_amp = fo.apply(fo.k3(), e_k).amplitudes.get((n - k, k), 0j)
            assert k3_amp == pytest.approx(k - n / 2)

    def test_canonical_pair_corrected(self):
        ident = fo.OperatorExpr.identity()
        x = fo.position_x(2.0, 0.5, 3.0)
        p = fo.momentum_x(2.0, 0.5, 3.0, convention="corrected")
        assert fo.commutator_residual(x, p, 2.0j * ident, 7) < 1e-12

    def test_printed_momentum_commutes_with_x(self):
        zero = fo.OperatorExpr.zero()
        x = fo.position_x()
        p = fo.momentum_x(convention="printed")
        assert fo.commutator_residual(x, p, zero, 7) < 1e-12


class TestExpectation:
    def test_number_on_extremal_state(self):
        for n in (1, 3, 5):
            assert fo.expectation(fo.number_a(), fo.basis_state(n, 0)) == pytest.approx(n)

    def test_requires_normalized_state(self):
        with pytest.raises(fo.NotNormalized):
            fo.expectation(fo.number_a(), fo.TwoModeState({(1, 0): 2.0}))

    def test_single_mode_means_vanish_on_level_states(self):
        psi = build_state(ModelParams(3, 2), CoherencePoint.from_t_phi(1.7, 0.5)).to_two_mode()
        for op in (fo.A, fo.B, fo.A * fo.A, fo.B * fo.B, fo.A * fo.B):
            assert abs(fo.expectation(op, psi)) < 1e-14

    def test_k_plus_on_generalized_state(self):
        psi = build_state(ModelParams(2, 2), CoherencePoint.from_t_phi(1.0, 0.0)).to_two_mode()
        assert fo.expectation(fo.k_plus(), psi) == pytest.approx(42.0 / 55.0)

    def test_total_quanta_conserved(self):
        psi = build_state(ModelParams(4, 3), CoherencePoint.from_t_phi(2.2, 1.0)).to_two_mode()
        total = fo.expectation(fo.number_a() + fo.number_b(), psi)
        assert total == pytest.approx(4.0, abs=1e-13)


class TestCovariance:
    def test_position_variance_on_extremal_state(self):
        for n in (1, 2, 4):
            x = fo.position_x()
            got = fo.covariance(x, x, fo.basis_state(n, 0))
            assert got == pytest.approx(n + 1)

    def test_cross_covariance_vanishes(self):
        # corrected momentum: sigma_xp = 0 on these states, any phase
        for phi in (0.0, 0.7, math.pi / 2):
            psi = build_state(ModelParams(2, 1), CoherencePoint.from_t_phi(1.0, phi)).to_two_mode()
            got = fo.covariance(fo.position_x(), fo.momentum_x(), psi)
            assert got == pytest.approx(0.0, abs=1e-13)

    def test_variance_of_conserved_quantity_vanishes(self):
        psi = build_state(ModelParams(3, 2), CoherencePoint.from_t_phi(0.8, 0.3)).to_two_mode()
        total = fo.number_a() + fo.number_b()
        assert fo.covariance(total, total, psi) == pytest.approx(0.0, abs=1e-12)

    def test_rejects_non_hermitian(self):
        psi = fo.basis_state(1, 0)
        with pytest.raises(fo.NotHermitian):
            fo.covariance(fo.k_plus(), fo.k_plus(), psi)


class TestOperatorExpr:
    def test_dagger_involution(self):
        expr = 1.5 * fo.k_plus() + (0.25j) * fo.number_b() - fo.A * fo.A
        twice = expr.dagger().dagger()
        assert twice.terms == expr.terms

    def test_hermitian_detection(self):
        assert fo.k3().is_hermitian()
        assert fo.su2_x1().is_hermitian()
        assert fo.su2_x2().is_hermitian()
        assert fo.position_x().is_hermitian()
        assert fo.momentum_x().is_hermitian()
        assert not fo.k_plus().is_hermitian()

    def test_commuting_modes_merge(self):
        # b'a and ab' are the same operator and must land on the same word
        left = fo.BDAG * fo.A
        right = fo.A * fo.BDAG
        assert left.terms == right.terms
