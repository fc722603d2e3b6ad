"""
Named verification checks run by ``hypspinor verify``.

Each check returns a Check record; a check that raises a HypSpinorError is
reported as failed with the error text as details, so one broken layer does
not hide the results of the others.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np
import scipy.special
from sympy import Rational

import invariants
import moduli
import radial
import rep_core
import special_fn
from config.error_messages import InfoMessages
from config.solver_config import (
    AlgebraConfig,
    BoundaryConfig,
    IntegratorConfig,
    SweepConfig,
)
from exceptions import HypSpinorError
from invariants import BlockLabel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    error: float = 0.0
    details: str = ""

    def line(self) -> str:
        if self.passed:
            return InfoMessages.CHECK_PASSED.format(name=self.name, error=f"{self.error:.3g}")
        return InfoMessages.CHECK_FAILED.format(
            name=self.name, error=f"{self.error:.3g}", details=self.details
        )


@dataclass
class SuiteReport:
    suite: str
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def summary(self) -> str:
        return InfoMessages.SUITE_SUMMARY.format(
            passed=sum(check.passed for check in self.checks),
            total=len(self.checks),
            suite=self.suite,
        )


def full_blocks(L_max: int, L_min: int = AlgebraConfig.MIN_FULL_L) -> List[BlockLabel]:
    """Blocks with |K| <= L-4 and parity, sorted by (L, K)."""
    return [
        BlockLabel(K, L)
        for L in range(max(L_min, AlgebraConfig.MIN_FULL_L), L_max + 1)
        for K in range(-(L - 4), L - 3, 2)
    ]


# ----------------------------------------------------------------------------
# algebra
# ----------------------------------------------------------------------------


def check_sl2_relations(L_max: int) -> Check:
    worst = 0
    for L in range(0, max(L_max, SweepConfig.CASIMIR_LMAX) + 1):
        m = rep_core.make_irrep(L)
        rep_core.check_sl2_relations(m)
        worst = max(worst, abs(rep_core.casimir(m) - L * (L + 2)))
    return Check("sl2-relations", worst == 0, float(worst))


def check_pairing_spectrum(L_max: int) -> Check:
    s1 = rep_core.make_irrep(1)
    for L in range(1, min(L_max, SweepConfig.PAIRING_LMAX) + 1):
        found = {(e.target_weight, e.eigenvalue) for e in rep_core.pairing_spectrum(s1, rep_core.make_irrep(L))}
        if found != {(L + 1, -L), (L - 1, L + 2)}:
            return Check("pairing-spectrum", False, details=f"S1 (x) S{L}: {sorted(found)}")
    return Check("pairing-spectrum", True)


def check_indicial_table(L_max: int) -> Check:
    for L in SweepConfig.VPSSS_LEVELS:
        data = radial.indicial_data(BlockLabel(L % 2, L))
        expected = (
            tuple(-(L + 3) + 2 * i for i in range(4)),
            tuple(L + 5 - 2 * i for i in range(4)),
        )
        if data.lambda_rows != expected:
            return Check("indicial-table", False, details=f"L={L}: {data.lambda_rows}")
        if (data.rejected_exponent, data.regular_exponent) != (-L - 6, L - 4):
            return Check("indicial-table", False, details=f"L={L}: exponents {data.origin_exponents}")
    return Check("indicial-table", True)


def check_claim_identities(L_max: int) -> Check:
    worst = Rational(0)
    failures = []
    for label in full_blocks(min(L_max, SweepConfig.CLAIM_LMAX)):
        ops = invariants.weight_operators(label)
        for claim in invariants.claim_identities(label, ops):
            worst = max(worst, claim.defect)
            if not claim.holds:
                failures.append(f"{claim.name} at {label}")
    return Check("claim-identities", not failures, float(worst), "; ".join(failures[:5]))


def check_invariant_dimensions(L_max: int) -> Check:
    for L in range(0, min(L_max, SweepConfig.KERNEL_LMAX) + 1):
        for K in range(-L - 6, L + 7):
            label = BlockLabel(K, L)
            basis = invariants.invariant_basis(label)
            counts = (sum(basis.sigma_present), sum(basis.tau_present))
            dims = (invariants.invariant_dim(label, "S4"), invariants.invariant_dim(label, "S2"))
            if counts != dims:
                return Check("invariant-dimensions", False, details=f"{label}: {counts} != {dims}")
    return Check("invariant-dimensions", True)


def check_sigma1_pairing(L_max: int) -> Check:
    spectrum = invariants.sigma1_pairing_spectrum()
    ok = (spectrum.max_eigenvalue, spectrum.min_eigenvalue, spectrum.eigenspace_dim) == (3, -3, 2)
    return Check("sigma1-pairing", ok, details=f"top eigenvalue {spectrum.max_eigenvalue}")


# ----------------------------------------------------------------------------
# ode
# ----------------------------------------------------------------------------


def check_ode_reduction(L_max: int) -> Check:
    for label in full_blocks(L_max):
        radial.reduce_to_ode(label)
    return Check("ode-reduction", True)


def check_singular_solution(L_max: int) -> Check:
    for label in full_blocks(L_max):
        alpha, beta, polynomial = radial.singular_solution_parts(label)
        if not radial.ode_annihilates(radial.reduce_to_ode(label), alpha, beta, polynomial):
            return Check("singular-solution", False, details=f"{label}")
    return Check("singular-solution", True)


def check_ode_exponents(L_max: int) -> Check:
    for label in full_blocks(min(L_max, 8)):
        K, L = label.K, label.L
        exponents = radial.ode_solution_exponents(label)
        expected = {
            "0": tuple(sorted((Rational(L - 4, 2), Rational(-L - 6, 2)))),
            "-1": tuple(sorted({Rational(K, 2) - 1, 1 - Rational(K, 2)})),
            "inf": (Rational(2), Rational(4)),
        }
        if exponents != expected:
            return Check("ode-exponents", False, details=f"{label}: {exponents}")
    return Check("ode-exponents", True)


def check_closed_form_residual(L_max: int) -> Check:
    worst = 0.0
    for K, L in SweepConfig.REFERENCE_BLOCKS:
        if L > L_max:
            continue
        worst = max(worst, float(np.max(radial.closed_form_residual(BlockLabel(K, L)))))
    return Check(
        "closed-form-residual", worst <= BoundaryConfig.RESIDUAL_TOLERANCE, worst
    )


# ----------------------------------------------------------------------------
# asymptotics
# ----------------------------------------------------------------------------


def check_hypergeometric_oracle(L_max: int) -> Check:
    worst = 0.0
    for label in full_blocks(min(L_max, SweepConfig.PFAFF_CHECK_LMAX)):
        p = special_fn.HypergeomParams.for_block(label)
        for z in (-0.3, -0.75, -3.0):
            ours = special_fn.gauss_2f1(p, z)
            reference = scipy.special.hyp2f1(float(p.a), float(p.b), float(p.c), z)
            worst = max(worst, abs(ours - reference) / max(abs(reference), 1e-300))
    return Check("hypergeometric-oracle", worst <= 1e-9, worst)


def check_pfaff_series(L_max: int) -> Check:
    worst = abs(special_fn.gauss_2f1(special_fn.HypergeomParams(1, 1, 2), -1.0) - np.log(2.0))
    grid = np.linspace(-0.89, 0.89, 15)
    for label in full_blocks(min(L_max, SweepConfig.PFAFF_CHECK_LMAX)):
        p = special_fn.HypergeomParams.for_block(label)
        for z in grid:
            direct = special_fn.series_2f1(p, float(z))
            worst = max(worst, abs(special_fn.gauss_2f1(p, float(z)) - direct) / abs(direct))
    return Check("pfaff-series", worst <= 1e-12, worst)


def check_boundary_coefficient(L_max: int) -> Check:
    worst = 0.0
    for label in full_blocks(L_max):
        worst = max(worst, special_fn.boundary_value(label, 1.0).relative_error)
    return Check("boundary-coefficient", worst <= BoundaryConfig.RELATIVE_TOLERANCE, worst)


def check_integration_constraint(L_max: int) -> Check:
    constraint = dirac = 0.0
    for K, L in SweepConfig.REFERENCE_BLOCKS:
        profile = radial.integrate(BlockLabel(K, L))
        constraint = max(constraint, float(np.max(profile.constraint_residual)))
        dirac = max(dirac, float(np.max(profile.dirac_residual)))
    ok = (
        constraint <= IntegratorConfig.CONSTRAINT_TOLERANCE
        and dirac <= IntegratorConfig.DIRAC_TOLERANCE
    )
    return Check("integration-constraint", ok, constraint, f"dirac residual {dirac:.3g}")


def check_critical_weights(L_max: int) -> Check:
    spectrum = radial.dirac_sq_order0_spectrum()
    ok = (
        radial.critical_weights(0) == (0, 4)
        and spectrum.min_eigenvalue == 6
        and spectrum.lambda_min == 0
        and set(spectrum.minimizers) == {(3, 1), (-3, -1)}
    )
    return Check("critical-weights", ok, details=f"lambda_min {spectrum.lambda_min}")


def check_injectivity(L_max: int) -> Check:
    failures = [str(label) for label in full_blocks(L_max) if not special_fn.injectivity_witness(label)]
    return Check("injectivity", not failures, details=", ".join(failures))


# ----------------------------------------------------------------------------
# moduli
# ----------------------------------------------------------------------------


def _all_phi_blocks(L_max: int) -> moduli.DeformationSpectrum:
    coefficients = {
        BlockLabel(K, L): complex(1 + L, K)
        for L in range(0, L_max + 1)
        for K in range(-L - 4, L - 3, 2)
    }
    return moduli.DeformationSpectrum(coefficients)


def check_transversality_audit(L_max: int) -> Check:
    report = moduli.transversality_audit(max(L_max, SweepConfig.MIN_LMAX))
    return Check(
        "transversality-audit",
        report.passed,
        float(len(report.mismatches)),
        "; ".join(report.mismatches[:5]),
    )


def _kernel_window(label: BlockLabel) -> Tuple[int, int]:
    """Punctured and global kernel dimensions from the |K| windows, for L >= 4."""
    K, L, n = abs(label.K), label.L, label.dim_v
    if not label.parity_ok or K > L + 4:
        return 0, 0
    if K <= L - 4:
        return 2 * n, n
    return n, 0


def check_kernel_dimensions(L_max: int) -> Check:
    for L in range(0, SweepConfig.KERNEL_LMAX + 1):
        for K in range(-SweepConfig.KERNEL_KMAX, SweepConfig.KERNEL_KMAX + 1):
            label = BlockLabel(K, L)
            found = (moduli.kernel_dim(label, "punctured"), moduli.kernel_dim(label, "global"))
            weights = invariants.invariant_dim(label, "S4") - invariants.invariant_dim(label, "S2")
            oracles = [(weights * label.dim_v, label.dim_v if label.is_full else 0)]
            if L >= AlgebraConfig.MIN_FULL_L:
                oracles.append(_kernel_window(label))
            for expected in oracles:
                if found != expected:
                    return Check("kernel-dimensions", False, details=f"{label}: {found} != {expected}")
    return Check("kernel-dimensions", True)


def check_projections(L_max: int) -> Check:
    s = _all_phi_blocks(L_max)
    bland, tangent = moduli.bland_project(s), moduli.tangent_project(s)
    ok = (
        moduli.bland_project(bland) == bland
        and moduli.tangent_project(tangent) == tangent
        and moduli.bland_project(tangent) == moduli.tangent_project(bland)
        and len(moduli.bland_project(tangent)) == 0
        and len(bland) + len(tangent) == len(s)
    )
    return Check("projections", ok)


def check_gauge_normal_form(L_max: int) -> Check:
    s = _all_phi_blocks(L_max)
    normal = moduli.gauge_normal_form(s)
    return Check("gauge-normal-form", normal.residual == moduli.tangent_project(s))


SUITES: Dict[str, Tuple[Callable[[int], Check], ...]] = {
    "algebra": (
        check_sl2_relations,
        check_pairing_spectrum,
        check_indicial_table,
        check_claim_identities,
        check_invariant_dimensions,
        check_sigma1_pairing,
    ),
    "ode": (
        check_ode_reduction,
        check_singular_solution,
        check_ode_exponents,
        check_closed_form_residual,
    ),
    "asymptotics": (
        check_hypergeometric_oracle,
        check_pfaff_series,
        check_boundary_coefficient,
        check_integration_constraint,
        check_critical_weights,
        check_injectivity,
    ),
    "moduli": (
        check_transversality_audit,
        check_kernel_dimensions,
        check_projections,
        check_gauge_normal_form,
    ),
}


def _run_check(check: Callable[[int], Check], L_max: int) -> Check:
    name = check.__name__.replace("check_", "").replace("_", "-")
    try:
        result = check(L_max)
    except HypSpinorError as e:
        logger.debug("check %s raised %s", name, e)
        return Check(name, False, details=f"{type(e).__name__}: {e}")
    logger.debug("check %s: passed=%s error=%g", result.name, result.passed, result.error)
    return result


def run_suite(suite: str, L_max: int = SweepConfig.DEFAULT_LMAX, threads: int = 1) -> SuiteReport:
    """Run one named suite, or every suite for ``all``."""
    names = list(SUITES) if suite == "all" else [suite]
    checks = [check for name in names for check in SUITES[name]]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda check: _run_check(check, L_max), checks))
    else:
        results = [_run_check(check, L_max) for check in checks]
    report = SuiteReport(suite=suite, checks=results)
    logger.info(report.summary())
    return report
