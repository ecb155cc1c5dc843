import math
from fractions import Fraction

import pytest

from landau_su2 import measure
from landau_su2.measure import MeasureParams, density, identity_resolution_check, moment_residual


class TestMomentTargets:
    def test_first_order_reduces_to_beta(self):
        # r = 1: m_k = (n-k)! k! / n!
        assert measure.moment_target(2, 1, 1) == Fraction(1, 2)
        assert measure.moment_target(3, 1, 0) == 1
        assert measure.moment_target(3, 1, 1) == Fraction(1, 3)

    def test_gamma_ratio_targets(self):
        assert measure.moment_target(1, 2, 0) == 1
        assert measure.moment_target(1, 2, 1) == 1  # [Gamma(2)/Gamma(1)]^2 * 0! 1! / 1!

    def test_range_checked(self):
        with pytest.raises(ValueError):
            measure.moment_target(2, 1, 3)


class TestDensity:
    def test_first_order_closed_form(self):
        p = MeasureParams(2, 1)
        for t in (0.1, 1.0, 10.0):
            assert density(p, t) == pytest.approx(6.0 / (math.pi * (1 + t) ** 2), rel=1e-12)

    def test_near_origin_value(self):
        # K_1(0+) = 2(n+1)/pi = 6/pi for n = 2
        assert density(MeasureParams(2, 1), 1e-12) == pytest.approx(6.0 / math.pi, rel=1e-9)

    def test_two_level_point(self):
        assert density(MeasureParams(1, 1), 1.0) == pytest.approx(1.0 / math.pi, rel=1e-12)

    def test_generalized_positive(self):
        p = MeasureParams(2, 2)
        val = density(p, 1.0)
        assert val > 0.0

    def test_positivity_grid(self):
        ts = [1e-3 * (50.0 / 1e-3) ** (i / 9.0) for i in range(10)]
        for n in (1, 2, 3):
            for r in (1, 2, 3, 4):
                p = MeasureParams(n, r)
                for t in ts:
                    assert density(p, t) >= -1e-12

    def test_decay(self):
        for n, r in [(1, 2), (2, 3), (3, 4)]:
            p = MeasureParams(n, r)
            assert density(p, 1e3) < density(p, 1.0)

    def test_rejects_nonpositive_t(self):
        with pytest.raises(ValueError):
            density(MeasureParams(1, 1), 0.0)

    def test_mismatched_spec_rejected(self):
        from landau_su2.specfun import MellinSpec
        with pytest.raises(ValueError):
            MeasureParams(2, 2, MellinSpec(1, 2))


class TestMoments:
    def test_first_order_beta_integral(self):
        assert moment_residual(MeasureParams(2, 1), 1) <= 1e-8

    def test_generalized_two_level(self):
        p = MeasureParams(1, 2)
        assert moment_residual(p, 0) <= 1e-6
        assert moment_residual(p, 1) <= 1e-6

    @pytest.mark.parametrize("n,r", [(1, 1), (3, 1), (2, 3)])
    def test_identity_resolution(self, n, r):
        rep = identity_resolution_check(MeasureParams(n, r))
        assert rep.passed, rep
        assert len(rep.residuals) == n + 1

    def test_full_grid(self):
        for n in (1, 2, 3):
            for r in (1, 2, 3):
                rep = identity_resolution_check(MeasureParams(n, r))
                assert rep.max_residual <= 1e-6, (n, r, rep.residuals)
