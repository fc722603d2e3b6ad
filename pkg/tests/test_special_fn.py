import math

import mpmath
import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings, strategies as st
from sympy import Rational

import special_fn
from config.solver_config import SeriesConfig
from exceptions import (
    AsymptoticRegimeError,
    HypergeometricDomainError,
    InadmissibleBlockError,
)
from invariants import BlockLabel
from special_fn import HypergeomParams


def full_labels(L_max):
    return [BlockLabel(K, L) for L in range(4, L_max + 1) for K in range(-(L - 4), L - 3, 2)]


class TestHypergeomParams:
    def test_block_parameters(self):
        p = HypergeomParams.for_block(BlockLabel(2, 6))
        assert (p.a, p.b, p.c) == (3, 5, 8)

    @pytest.mark.parametrize("c", [0, -2])
    def test_nonpositive_integer_c_rejected(self, c):
        with pytest.raises(HypergeometricDomainError):
            HypergeomParams(1, 2, c)

    def test_shifted(self):
        p = HypergeomParams(1, 3, 6).shifted()
        assert (p.a, p.b, p.c) == (2, 4, 7)


class TestGauss2F1:
    def test_log_two(self):
        value = special_fn.gauss_2f1(HypergeomParams(1, 1, 2), -1.0)
        assert abs(value - math.log(2.0)) < 1e-12

    def test_zero_argument(self):
        assert special_fn.gauss_2f1(HypergeomParams(3, 5, 10), 0.0) == 1.0

    def test_argument_at_one_rejected(self):
        with pytest.raises(HypergeometricDomainError):
            special_fn.gauss_2f1(HypergeomParams(1, 1, 2), 1.0)

    def test_series_needs_unit_disk(self):
        with pytest.raises(HypergeometricDomainError):
            special_fn.series_2f1(HypergeomParams(1, 1, 2), -1.5)

    @pytest.mark.parametrize("label", full_labels(16), ids=str)
    def test_pfaff_matches_direct_series(self, label):
        p = HypergeomParams.for_block(label)
        for z in np.linspace(-0.89, 0.89, 9):
            direct = special_fn.series_2f1(p, float(z))
            assert special_fn.gauss_2f1(p, float(z)) == pytest.approx(direct, rel=1e-12)

    @pytest.mark.parametrize("label", full_labels(12), ids=str)
    def test_matches_scipy(self, label):
        p = HypergeomParams.for_block(label)
        for z in (-0.3, -0.75, -3.0):
            reference = scipy.special.hyp2f1(float(p.a), float(p.b), float(p.c), z)
            assert special_fn.gauss_2f1(p, z) == pytest.approx(reference, rel=1e-9)

    def test_matches_mpmath_far_out(self):
        p = HypergeomParams.for_block(BlockLabel(0, 8))
        for z in (-5.0, -50.0, -1e4):
            reference = float(mpmath.hyp2f1(3, 5, 10, z))
            assert special_fn.gauss_2f1(p, z) == pytest.approx(reference, rel=1e-12)


class TestGammaRatio:
    @pytest.mark.parametrize(
        "K, L, expected",
        [(0, 4, Rational(5, 2)), (4, 8, 21), (-4, 8, Rational(9, 2)), (0, 8, 21), (2, 6, Rational(35, 4))],
    )
    def test_reference_blocks(self, K, L, expected):
        label = BlockLabel(K, L)
        assert special_fn.gamma_ratio(HypergeomParams.for_block(label)) == expected
        assert special_fn.c_infinity(label) == expected

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=4, max_value=30), st.data())
    def test_matches_binomial_form(self, L, data):
        K = data.draw(st.integers(min_value=-(L - 4), max_value=L - 4).filter(lambda k: (k - L) % 2 == 0))
        label = BlockLabel(K, L)
        assert special_fn.gamma_ratio(HypergeomParams.for_block(label)) == special_fn.c_infinity(label)

    def test_non_integer_parameters_use_scipy(self):
        p = HypergeomParams(Rational(1, 2), Rational(3, 2), Rational(5, 2))
        expected = math.gamma(2.5) * math.gamma(1.0) / (math.gamma(1.5) * math.gamma(2.0))
        assert special_fn.gamma_ratio(p) == pytest.approx(expected, rel=1e-14)


class TestAsymptotics:
    def test_wrong_regime(self):
        with pytest.raises(AsymptoticRegimeError):
            special_fn.asympt_2f1(HypergeomParams(3, 1, 5), -1e6)

    def test_leading_term(self):
        p = HypergeomParams.for_block(BlockLabel(0, 4))
        term = special_fn.asympt_2f1(p, -1e6)
        assert term.coefficient == Rational(5, 2)
        assert term.exponent == -1
        assert term.value == pytest.approx(special_fn.gauss_2f1(p, -1e6), rel=1e-4)


class TestClosedForm:
    def test_inadmissible_block(self):
        with pytest.raises(InadmissibleBlockError):
            special_fn.closed_form(BlockLabel(6, 4), 1.0)
        with pytest.raises(InadmissibleBlockError):
            special_fn.c_infinity(BlockLabel(3, 8))

    def test_a4_for_L_four(self):
        solution = special_fn.closed_form(BlockLabel(0, 4), 2.0)
        r = 0.7
        sh, ch = math.sinh(r), math.cosh(r)
        expected = 2.0 * ch**-2 * scipy.special.hyp2f1(1, 3, 6, -sh**2)
        assert solution.a4(r) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("K, L", [(0, 4), (2, 6), (-4, 8)])
    def test_derivative_in_u(self, K, L):
        solution = special_fn.closed_form(BlockLabel(K, L), 1.0)
        with mpmath.workdps(40):
            r, h = mpmath.mpf("0.9"), mpmath.mpf("1e-12")
            numeric = (solution.a4_mp(r + h) - solution.a4_mp(r - h)) / (2 * h) / mpmath.sinh(2 * r)
            assert float(solution.da4_du_mp(r)) == pytest.approx(float(numeric), rel=1e-12)

    @pytest.mark.parametrize("dps", [15, 60])
    def test_caller_precision_is_kept(self, dps):
        solution = special_fn.closed_form(BlockLabel(0, 4), 1.0)
        with mpmath.workdps(dps):
            r = mpmath.mpf(2)
            slope = mpmath.diff(solution.a4_mp, r)
            expected = solution.da4_du_mp(r) * mpmath.sinh(2 * r)
        assert slope != 0
        assert float(slope) == pytest.approx(float(expected), rel=1e-12)

    def test_working_precision_never_lowers(self):
        with mpmath.workdps(80):
            with special_fn.working_precision():
                assert mpmath.mp.dps == 80
        with mpmath.workdps(10):
            with special_fn.working_precision():
                assert mpmath.mp.dps == SeriesConfig.WORKING_DPS


class TestBoundaryValue:
    @pytest.mark.parametrize("label", full_labels(12), ids=str)
    def test_asymptotic_coefficient(self, label):
        value = special_fn.boundary_value(label, 1.0)
        assert value.agrees, value.relative_error

    def test_amplitude_scales_s_inf(self):
        value = special_fn.boundary_value(BlockLabel(0, 4), 3.0)
        assert value.s_inf_plus == pytest.approx(7.5)
        assert value.numeric_c_inf == pytest.approx(2.5, rel=1e-4)


def test_injectivity_witness():
    assert special_fn.injectivity_witness(BlockLabel(0, 4)) is True
    assert special_fn.injectivity_witness(BlockLabel(6, 4)) is None
