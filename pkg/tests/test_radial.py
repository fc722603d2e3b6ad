import math
from dataclasses import replace

import mpmath
import numpy as np
import pytest
import sympy
from sympy import Rational

import radial
import special_fn
from config.solver_config import BoundaryConfig, CurvatureConstants, IntegratorConfig
from exceptions import (
    ConfigurationError,
    EmptyBlockError,
    InadmissibleBlockError,
    IndicialDomainError,
    ResidualBlowupError,
)
from invariants import U, BlockLabel


def full_labels(L_max):
    return [BlockLabel(K, L) for L in range(4, L_max + 1) for K in range(-(L - 4), L - 3, 2)]


class TestAssembly:
    def test_entries_on_reference_block(self):
        op = radial.assemble_radial(BlockLabel(0, 8))
        s4, s2, t2 = (op.index(n) for n in ("sigma_4", "sigma_2", "tau_2"))
        assert op.M_const[s4, s4] == -2
        assert op.M_sqrt[s2, s4] == -9
        assert op.M_sqrt[t2, s4] == 9
        assert op.sigma_count == 5

    def test_empty_block(self):
        with pytest.raises(EmptyBlockError):
            radial.assemble_radial(BlockLabel(3, 8))

    def test_numeric_matrices(self):
        m_const, m_u, m_sqrt = radial.assemble_radial(BlockLabel(0, 4)).numeric()
        assert m_const.shape == m_u.shape == m_sqrt.shape == (8, 8)
        assert m_const.dtype == float


class TestConstraint:
    def test_reference_block(self):
        relation = radial.constraint_a0(BlockLabel(0, 8))
        assert relation.coeff_a4 == 9
        expected = (U + 2) / (2 * sympy.sqrt(1 + U))
        assert sympy.simplify(relation.coeff_a2 - expected) == 0

    def test_coefficient_vanishes_at_origin(self):
        relation = radial.constraint_a0(BlockLabel(2, 6))
        assert sympy.simplify(relation.coeff_a2.subs(U, 0)) == 0

    def test_partial_block_rejected(self):
        with pytest.raises(InadmissibleBlockError):
            radial.constraint_a0(BlockLabel(6, 4))


class TestReduction:
    def test_L_four(self):
        ode = radial.reduce_to_ode(BlockLabel(0, 4))
        assert sympy.expand(ode.first - (7 * U + 6)) == 0
        assert sympy.simplify(ode.potential - (8 * U + 9) / (U + 1)) == 0

    def test_off_centre_block(self):
        ode = radial.reduce_to_ode(BlockLabel(2, 6))
        expected = (32 * U**2 + 8 * U - 24) / (4 * U * (U + 1))
        assert sympy.simplify(ode.potential - expected) == 0

    @pytest.mark.parametrize("label", full_labels(10), ids=str)
    def test_every_block_reduces(self, label):
        ode = radial.reduce_to_ode(label)
        assert sympy.simplify(ode.potential - radial.expected_potential(label)) == 0

    def test_exponents(self):
        exponents = radial.ode_solution_exponents(BlockLabel(0, 8))
        assert exponents["0"] == (-7, 2)
        assert exponents["-1"] == (-1, 1)
        assert exponents["inf"] == (2, 4)

    def test_exponents_at_minus_one_collapse_for_K_two(self):
        assert radial.ode_solution_exponents(BlockLabel(2, 6))["-1"] == (0,)

    def test_printed_potential_differs(self):
        label = BlockLabel(0, 4)
        difference = radial.expected_potential(label) - radial.printed_potential(label)
        assert sympy.simplify(difference - 8 * U / (U + 1)) == 0


class TestSingularSolution:
    @pytest.mark.parametrize("label", full_labels(10), ids=str)
    def test_annihilated(self, label):
        ode = radial.reduce_to_ode(label)
        assert radial.ode_annihilates(ode, *radial.singular_solution_parts(label))

    def test_fails_with_printed_potential(self):
        label = BlockLabel(0, 8)
        ode = radial.reduce_to_ode(label)
        printed = replace(ode, potential=radial.printed_potential(label))
        assert not radial.ode_annihilates(printed, *radial.singular_solution_parts(label))

    def test_exponents_of_singular_solution(self):
        alpha, beta, polynomial = radial.singular_solution_parts(BlockLabel(0, 8))
        assert (alpha, beta) == (Rational(-7), Rational(-1))
        assert sympy.degree(polynomial, U) == 4


class TestClosedFormResidual:
    @pytest.mark.parametrize("label", [BlockLabel(0, 4), BlockLabel(2, 6), BlockLabel(0, 8)], ids=str)
    def test_coarse_grid(self, label):
        residual = radial.closed_form_residual(label, np.linspace(0.1, 5.0, 16))
        assert residual.max() <= BoundaryConfig.RESIDUAL_TOLERANCE

    def test_single_radius_inside_default_precision(self):
        with mpmath.workdps(15):
            residual = radial.closed_form_residual(BlockLabel(0, 4), [2.0])
        assert residual[0] <= BoundaryConfig.RESIDUAL_TOLERANCE

    @pytest.mark.slow
    def test_default_grid(self):
        residual = radial.closed_form_residual(BlockLabel(4, 8))
        assert residual.shape == (BoundaryConfig.RESIDUAL_SAMPLES,)
        assert residual.max() <= BoundaryConfig.RESIDUAL_TOLERANCE

    def test_state_starts_from_closed_form(self):
        label = BlockLabel(0, 8)
        state = radial.closed_form_state(label, 1.0, 1.3)
        assert len(state) == 5
        assert float(state[0]) == pytest.approx(special_fn.closed_form(label, 1.0).a4(1.3), rel=1e-14)


class TestIntegrate:
    def test_regular_solution_decay(self):
        label = BlockLabel(0, 4)
        profile = radial.integrate(label, r_max=12.0, samples=64)
        assert profile.column("a4")[0] == pytest.approx(
            special_fn.closed_form(label, 1.0).a4(IntegratorConfig.INITIAL_RADIUS), rel=1e-12
        )
        assert math.sinh(12.0) ** 4 * profile.column("a4")[-1] == pytest.approx(2.5, rel=1e-4)
        assert profile.c_inf == Rational(5, 2)
        assert len(profile.rows()) == 64
        assert len(profile.rows()[0]) == 8

    def test_perturbed_start_blows_up(self):
        with pytest.raises(ResidualBlowupError) as excinfo:
            radial.integrate(BlockLabel(0, 4), samples=16, perturbation=1e-2, blowup_threshold=1e-12)
        assert excinfo.value.r == pytest.approx(0.5)

    @pytest.mark.parametrize(
        "kwargs", [{"r_max": 0.5}, {"samples": 1}, {"A4": 0.0}], ids=["radius", "samples", "amplitude"]
    )
    def test_validation(self, kwargs):
        with pytest.raises(ConfigurationError):
            radial.integrate(BlockLabel(0, 4), **kwargs)

    def test_inadmissible_block(self):
        with pytest.raises(InadmissibleBlockError):
            radial.integrate(BlockLabel(6, 8))

    def test_residuals_on_short_run(self):
        profile = radial.integrate(BlockLabel(2, 6), r_max=4.0, samples=32)
        assert profile.constraint_residual.max() <= IntegratorConfig.CONSTRAINT_TOLERANCE
        assert profile.dirac_residual.max() <= IntegratorConfig.DIRAC_TOLERANCE

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "label",
        [BlockLabel(0, 4), BlockLabel(0, 8), BlockLabel(2, 6), BlockLabel(4, 8), BlockLabel(-2, 10)],
        ids=str,
    )
    def test_constraint_is_propagated(self, label):
        profile = radial.integrate(label)
        assert profile.constraint_residual.max() <= IntegratorConfig.CONSTRAINT_TOLERANCE
        assert profile.dirac_residual.max() <= IntegratorConfig.DIRAC_TOLERANCE
        r_end = profile.r[-1]
        assert math.sinh(r_end) ** 4 * profile.column("a4")[-1] == pytest.approx(
            float(profile.c_inf), rel=BoundaryConfig.RELATIVE_TOLERANCE
        )


def test_boundary_spinor_has_both_ends():
    value = radial.boundary_spinor(BlockLabel(0, 4))
    assert value.agrees
    assert value.s_inf_minus is not None
    assert math.isfinite(value.s_inf_minus)


class TestIndicial:
    def test_reference_table(self):
        data = radial.indicial_data(BlockLabel(0, 8))
        assert data.lambda_rows == ((-11, -9, -7, -5), (13, 11, 9, 7))
        assert data.target_rows[0] == (12, 10, 8, 6)
        assert data.rejected_exponent == -14
        assert data.regular_exponent == 4
        assert data.infinity_decay == 4
        assert data.component_decay_rates == (4, 5, 6, 5, 4)

    def test_table_depends_on_L_only(self):
        reference = radial.indicial_data(BlockLabel(0, 8))
        shifted = radial.indicial_data(BlockLabel(4, 8))
        assert shifted.origin_exponents == reference.origin_exponents

    @pytest.mark.parametrize("L", [4, 6, 9])
    def test_regular_exponent_is_L_minus_four(self, L):
        data = radial.indicial_data(BlockLabel(L % 2, L))
        assert len(data.lambda_rows[1]) == 4
        assert (data.rejected_exponent, data.regular_exponent) == (-L - 6, L - 4)

    @pytest.mark.parametrize("L", [0, 2, 3])
    def test_low_levels_rejected(self, L):
        with pytest.raises(InadmissibleBlockError):
            radial.indicial_data(BlockLabel(L % 2, L))

    @pytest.mark.parametrize(
        "lam, expected", [(0, (0, 4)), (-4, (2, 2)), (5, (-1, 5)), (Rational(9, 4), (Rational(-1, 2), Rational(9, 2)))]
    )
    def test_critical_weights(self, lam, expected):
        assert radial.critical_weights(lam) == expected

    def test_critical_weights_float(self):
        lo, hi = radial.critical_weights(0.41)
        assert float(lo) + float(hi) == pytest.approx(4.0)

    def test_lambda_below_bound(self):
        with pytest.raises(IndicialDomainError):
            radial.critical_weights(-5)


def test_order0_spectrum():
    spectrum = radial.dirac_sq_order0_spectrum()
    assert spectrum.min_eigenvalue == 6
    assert spectrum.minimizers == ((3, 1), (-3, -1))
    assert spectrum.eigenvalue_at(3, -1) == 15
    assert spectrum.lambda_min == 0


def test_scalar_curvature_from_einstein_constant():
    assert CurvatureConstants.SCALAR_CURVATURE == -24
    assert CurvatureConstants.SCAL_SHIFT == -6
