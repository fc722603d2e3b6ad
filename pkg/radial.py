"""
Radial Dirac operator on a Fourier block.

With u = sinh(r)^2 the operator on S1-invariant spinors reads

    P = -2u(1+u) d/du + M_const + u M_u + sqrt(1+u) M_sqrt,
    M_const = -6 - OpB,  M_u = -11/2 + OpA/2,  M_sqrt = -2 OpC.

The sigma rows of P w = 0 form a first-order system for (a4, ..., a-4); the
tau rows are algebraic constraints (B_blk w = 0) preserved by that system.
Eliminating a2 (sigma_4 row) and a0 (tau_2 row) from the sigma_2 row gives a
Fuchsian second-order ODE for a4 whose regular solution is the
hypergeometric closed form of special_fn.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
import sympy
from scipy.integrate import solve_ivp
from sympy import ImmutableMatrix, Rational

import invariants
import rep_core
import special_fn
from config.error_messages import ErrorMessages
from config.solver_config import (
    AlgebraConfig,
    BoundaryConfig,
    CurvatureConstants,
    IntegratorConfig,
)
from exceptions import (
    ConfigurationError,
    InadmissibleBlockError,
    IndicialDomainError,
    ODEReductionError,
    RepresentationError,
    ResidualBlowupError,
    StepSizeUnderflowError,
)
from invariants import U, BlockLabel

logger = logging.getLogger(__name__)

# s = sqrt(1+u); rational functions of s carry the elimination
_S = sympy.Symbol("s", positive=True)
_P0, _P1, _P2 = sympy.symbols("p0 p1 p2")

COMPONENT_NAMES = ("a4", "a2", "a0", "a_neg2", "a_neg4")


@dataclass(frozen=True)
class RadialOperator:
    """Constant matrices of P on the present sigma (+) tau vectors of a block."""

    label: BlockLabel
    names: Tuple[str, ...]
    M_const: ImmutableMatrix
    M_u: ImmutableMatrix
    M_sqrt: ImmutableMatrix
    sigma_count: int

    def matrix(self, u: sympy.Expr = U) -> ImmutableMatrix:
        return ImmutableMatrix(self.M_const + u * self.M_u + sympy.sqrt(1 + u) * self.M_sqrt)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def numeric(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return tuple(np.array(m.tolist(), dtype=float) for m in (self.M_const, self.M_u, self.M_sqrt))

    def mp_matrix(self, u: mpmath.mpf) -> mpmath.matrix:
        s = mpmath.sqrt(1 + u)
        n = len(self.names)
        out = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                out[i, j] = (
                    special_fn.to_mpf(self.M_const[i, j])
                    + u * special_fn.to_mpf(self.M_u[i, j])
                    + s * special_fn.to_mpf(self.M_sqrt[i, j])
                )
        return out


@dataclass(frozen=True)
class LinearRelation:
    """a0 = coeff_a2 * a2 + coeff_a4 * a4, coefficients in u and sqrt(1+u)."""

    label: BlockLabel
    coeff_a2: sympy.Expr
    coeff_a4: sympy.Expr


@dataclass(frozen=True)
class SecondOrderODE:
    """second * a4'' + first * a4' + potential * a4 = 0 in the variable u."""

    label: BlockLabel
    second: sympy.Expr
    first: sympy.Expr
    potential: sympy.Expr

    def exponents(self) -> Dict[str, Tuple[Rational, ...]]:
        """Indicial exponents at the singular points 0, -1 (powers) and infinity (decay)."""
        p = sympy.cancel(self.first / self.second)
        q = sympy.cancel(self.potential / self.second)
        rho = sympy.Symbol("rho")
        t = U + 1
        at_zero = (sympy.limit(U * p, U, 0), sympy.limit(U**2 * q, U, 0))
        w = sympy.Symbol("w")
        p_m1 = sympy.cancel((p * t).subs(U, w - 1))
        q_m1 = sympy.cancel((q * t**2).subs(U, w - 1))
        at_minus_one = (sympy.limit(p_m1, w, 0), sympy.limit(q_m1, w, 0))
        at_infinity = (sympy.limit(U * p, U, sympy.oo), sympy.limit(U**2 * q, U, sympy.oo))
        local = {
            "0": rho * (rho - 1) + at_zero[0] * rho + at_zero[1],
            "-1": rho * (rho - 1) + at_minus_one[0] * rho + at_minus_one[1],
            "inf": rho * (rho + 1) - at_infinity[0] * rho + at_infinity[1],
        }
        return {
            point: tuple(sorted(Rational(x) for x in sympy.solve(poly, rho)))
            for point, poly in local.items()
        }


@dataclass(frozen=True)
class RadialProfile:
    """Sampled solution of the first-order radial system with residuals."""

    label: BlockLabel
    A4: float
    r: np.ndarray
    components: np.ndarray
    dirac_residual: np.ndarray
    constraint_residual: np.ndarray
    c_inf: Rational
    nfev: int = 0

    def column(self, name: str) -> np.ndarray:
        return self.components[:, COMPONENT_NAMES.index(name)]

    def rows(self) -> List[Tuple[float, ...]]:
        table = np.column_stack(
            [self.r, self.components, self.dirac_residual, self.constraint_residual]
        )
        return [tuple(float(x) for x in row) for row in table]


@dataclass(frozen=True)
class IndicialData:
    """Frobenius exponents at the origin and decay rates at infinity."""

    label: BlockLabel
    lambda_rows: Tuple[Tuple[int, ...], Tuple[int, ...]]
    target_rows: Tuple[Tuple[int, ...], Tuple[int, ...]]
    origin_exponents: Tuple[int, ...]
    infinity_decay: int
    component_decay_rates: Tuple[int, ...] = field(default=IntegratorConfig.DECAY_RATES)

    @property
    def regular_exponent(self) -> int:
        return self.origin_exponents[-1]

    @property
    def rejected_exponent(self) -> int:
        return self.origin_exponents[0]


@dataclass(frozen=True)
class Order0Spectrum:
    """Order-0 part of the rough Laplacian on S+ (x) S3 and of D^2."""

    matrix: ImmutableMatrix
    weights: Tuple[Tuple[int, int], ...]
    min_eigenvalue: Rational
    minimizers: Tuple[Tuple[int, int], ...]
    lambda_min: Rational

    def eigenvalue_at(self, m3: int, m_plus: int) -> Rational:
        i = self.weights.index((m3, m_plus))
        return Rational(self.matrix[i, i])


# ----------------------------------------------------------------------------
# Assembly and exact reduction
# ----------------------------------------------------------------------------


@lru_cache(maxsize=None)
def assemble_radial(label: BlockLabel) -> RadialOperator:
    """Constant matrices of P on a nonempty block, checked against OpA, OpB, OpC."""
    ops = invariants.weight_operators(label)
    n = len(ops.names)
    identity = sympy.eye(n)
    operator = RadialOperator(
        label=label,
        names=ops.names,
        M_const=ImmutableMatrix(-6 * identity - ops.B),
        M_u=ImmutableMatrix(-Rational(11, 2) * identity + ops.A / 2),
        M_sqrt=ImmutableMatrix(-2 * ops.C),
        sigma_count=ops.sigma_count,
    )
    defect = (operator.matrix() - ops.zeroth_order).applyfunc(sympy.expand)
    if not defect.is_zero_matrix:
        raise RepresentationError(
            ErrorMessages.BASIS_NOT_INVARIANT.format(name="P", K=label.K, L=label.L)
        )
    logger.debug("assembled radial operator for block %s (%d vectors)", label, n)
    return operator


def _require_full(label: BlockLabel) -> None:
    if not label.is_full:
        raise InadmissibleBlockError(
            ErrorMessages.INADMISSIBLE_BLOCK.format(K=label.K, L=label.L)
        )


def _in_s(expr: sympy.Expr) -> sympy.Expr:
    return sympy.cancel(sympy.sympify(expr).subs(sympy.sqrt(1 + U), _S).subs(U, _S**2 - 1))


def _to_u(expr: sympy.Expr) -> sympy.Expr:
    return sympy.cancel(expr.subs(_S, sympy.sqrt(1 + U)))


def _total_derivative(expr: sympy.Expr) -> sympy.Expr:
    """d/du of an expression in s, p0 = a4, p1 = a4', p2 = a4''."""
    return sympy.cancel(
        sympy.diff(expr, _S) / (2 * _S)
        + _P1 * sympy.diff(expr, _P0)
        + _P2 * sympy.diff(expr, _P1)
    )


def expected_potential(label: BlockLabel, u: sympy.Expr = U) -> sympy.Expr:
    """[32u^2 - (u+1)L(L+2) + (K^2-4K+60)u + 24] / (4u(u+1))."""
    K, L = label.K, label.L
    numerator = 32 * u**2 - (u + 1) * L * (L + 2) + (K**2 - 4 * K + 60) * u + 24
    return sympy.cancel(numerator / (4 * u * (u + 1)))


def printed_potential(label: BlockLabel, u: sympy.Expr = U) -> sympy.Expr:
    """The same potential without its 32u^2 term; it misses the exponents at -1 and infinity."""
    K, L = label.K, label.L
    numerator = -(u + 1) * L * (L + 2) + (K**2 - 4 * K + 60) * u + 24
    return sympy.cancel(numerator / (4 * u * (u + 1)))


def _check_couplings(
    operator: RadialOperator,
    matrix: sympy.Matrix,
    row: str,
    allowed: Sequence[str],
) -> None:
    i = operator.index(row)
    for column in operator.names[: operator.sigma_count]:
        if column in allowed:
            continue
        if matrix[i, operator.index(column)] != 0:
            raise ODEReductionError(
                ErrorMessages.ODE_UNUSED_TERM.format(
                    row=row, K=operator.label.K, L=operator.label.L, column=column
                )
            )


def _eliminated(operator: RadialOperator) -> Tuple[sympy.Matrix, sympy.Expr, sympy.Expr]:
    """Matrix of P in s, a2 from the sigma_4 row and a0 from the tau_2 row."""
    m = operator.matrix().applyfunc(_in_s)
    i4, i2, i0 = (operator.index(n) for n in ("sigma_4", "sigma_2", "sigma_0"))
    t2 = operator.index("tau_2")
    _check_couplings(operator, m, "sigma_4", ("sigma_4", "sigma_2"))
    _check_couplings(operator, m, "tau_2", ("sigma_4", "sigma_2", "sigma_0"))
    _check_couplings(operator, m, "sigma_2", ("sigma_4", "sigma_2", "sigma_0"))
    d = (_S**2 - 1) * _S**2
    a2 = sympy.cancel((2 * d * _P1 - m[i4, i4] * _P0) / m[i4, i2])
    a0 = sympy.cancel(-(m[t2, i4] * _P0 + m[t2, i2] * a2) / m[t2, i0])
    return m, a2, a0


def constraint_a0(label: BlockLabel) -> LinearRelation:
    """The tau_2 row solved for a0 in terms of a2 and a4."""
    _require_full(label)
    operator = assemble_radial(label)
    m = operator.matrix()
    i4, i2, i0 = (operator.index(n) for n in ("sigma_4", "sigma_2", "sigma_0"))
    t2 = operator.index("tau_2")
    return LinearRelation(
        label=label,
        coeff_a2=sympy.simplify(-m[t2, i2] / m[t2, i0]),
        coeff_a4=sympy.simplify(-m[t2, i4] / m[t2, i0]),
    )


def reduce_to_ode(label: BlockLabel) -> SecondOrderODE:
    """
    Eliminate a2 and a0 from the sigma_2 row and compare with the expected ODE.

    The comparison is an exact identity of rational functions; any difference
    raises ODEReductionError.
    """
    _require_full(label)
    operator = assemble_radial(label)
    m, a2, a0 = _eliminated(operator)
    i4, i2, i0 = (operator.index(n) for n in ("sigma_4", "sigma_2", "sigma_0"))
    d = (_S**2 - 1) * _S**2
    row = sympy.cancel(
        -2 * d * _total_derivative(a2) + m[i2, i4] * _P0 + m[i2, i2] * a2 + m[i2, i0] * a0
    )
    c2, c1, c0 = (sympy.cancel(sympy.diff(row, p)) for p in (_P2, _P1, _P0))
    if sympy.cancel(row - c2 * _P2 - c1 * _P1 - c0 * _P0) != 0 or c2 == 0:
        raise ODEReductionError(
            ErrorMessages.ODE_MISMATCH.format(
                K=label.K, L=label.L, coefficient="structure", difference=row
            )
        )
    scale = sympy.cancel(d / c2)
    first = sympy.cancel(c1 * scale)
    potential = sympy.cancel(c0 * scale)
    checks = {
        "first-derivative": sympy.cancel(first - _in_s(7 * U + 6)),
        "potential": sympy.cancel(potential - _in_s(expected_potential(label))),
    }
    for coefficient, difference in checks.items():
        if difference != 0:
            raise ODEReductionError(
                ErrorMessages.ODE_MISMATCH.format(
                    K=label.K, L=label.L, coefficient=coefficient, difference=difference
                )
            )
    logger.debug("block %s reduces to the hypergeometric ODE", label)
    return SecondOrderODE(
        label=label,
        second=sympy.expand(U * (U + 1)),
        first=_to_u(first),
        potential=_to_u(potential),
    )


def ode_solution_exponents(label: BlockLabel) -> Dict[str, Tuple[Rational, ...]]:
    return reduce_to_ode(label).exponents()


def singular_solution_parts(label: BlockLabel) -> Tuple[Rational, Rational, sympy.Expr]:
    """
    Exponents (alpha, beta) and polynomial of the non-extending solution
    u^alpha (1+u)^beta F((K-L)/2-2, (K-L)/2; -L; -u), alpha = -L/2-3, beta = K/2-1.

    For |K| <= L-4 the hypergeometric factor terminates at degree (L-K)/2,
    before the pole of (-L)_n.
    """
    _require_full(label)
    K, L = label.K, label.L
    a, b, c = Rational(K - L, 2) - 2, Rational(K - L, 2), -L
    degree = (L - K) // 2
    polynomial = sum(
        sympy.rf(a, n) * sympy.rf(b, n) / (sympy.rf(c, n) * sympy.factorial(n)) * (-U) ** n
        for n in range(degree + 1)
    )
    return Rational(-L, 2) - 3, Rational(K, 2) - 1, sympy.expand(polynomial)


def singular_solution(label: BlockLabel) -> sympy.Expr:
    alpha, beta, polynomial = singular_solution_parts(label)
    return U**alpha * (1 + U) ** beta * polynomial


def ode_annihilates(
    ode: SecondOrderODE, alpha: Rational, beta: Rational, polynomial: sympy.Expr
) -> bool:
    """True iff y = u^alpha (1+u)^beta polynomial solves the ODE, as an exact identity."""
    ell = alpha / U + beta / (1 + U)
    ell_prime = -alpha / U**2 - beta / (1 + U) ** 2
    p = sympy.sympify(polynomial)
    dp, ddp = sympy.diff(p, U), sympy.diff(p, U, 2)
    value = (
        ode.second * (ddp + 2 * ell * dp + (ell_prime + ell**2) * p)
        + ode.first * (dp + ell * p)
        + ode.potential * p
    )
    return sympy.cancel(value) == 0


# ----------------------------------------------------------------------------
# Closed-form spinor and residuals
# ----------------------------------------------------------------------------


def closed_form_state(label: BlockLabel, A4: float, r: float) -> List[mpmath.mpf]:
    """
    All five sigma components of the regular solution at radius r.

    a4 comes from the hypergeometric closed form, a2 from the sigma_4 row and
    (a0, a-2, a-4) from the three tau-row constraints.
    """
    operator = assemble_radial(label)
    solution = special_fn.closed_form(label, A4)
    ns = operator.sigma_count
    with special_fn.working_precision():
        r = special_fn.to_mpf(r)
        u = mpmath.sinh(r) ** 2
        m = operator.mp_matrix(u)
        a4 = solution.a4_mp(r)
        da4 = solution.da4_du_mp(r)
        d = u * (1 + u)
        a2 = (2 * d * da4 - m[0, 0] * a4) / m[0, 1]
        tau_rows = list(range(ns, len(operator.names)))
        unknowns = [2, 3, 4]
        system = mpmath.matrix(len(tau_rows), len(unknowns))
        rhs = mpmath.matrix(len(tau_rows), 1)
        for row, i in enumerate(tau_rows):
            for col, j in enumerate(unknowns):
                system[row, col] = m[i, j]
            rhs[row] = -(m[i, 0] * a4 + m[i, 1] * a2)
        rest = mpmath.lu_solve(system, rhs)
        return [a4, a2, rest[0], rest[1], rest[2]]


def closed_form_residual(
    label: BlockLabel,
    r_grid: Optional[Sequence[float]] = None,
    A4: float = 1.0,
) -> np.ndarray:
    """
    Max relative Dirac residual of the reconstructed closed-form spinor per radius.

    Each sigma row is measured as |row| / sum |terms|; derivatives are central
    differences with a fixed step at working precision.
    """
    _require_full(label)
    if r_grid is None:
        r_grid = np.linspace(
            BoundaryConfig.RESIDUAL_R_MIN,
            BoundaryConfig.RESIDUAL_R_MAX,
            BoundaryConfig.RESIDUAL_SAMPLES,
        )
    operator = assemble_radial(label)
    ns = operator.sigma_count
    residuals = []
    with special_fn.working_precision():
        h = mpmath.mpf(BoundaryConfig.RESIDUAL_STEP)
        for r in r_grid:
            x = mpmath.mpf(r)
            w = closed_form_state(label, A4, x)
            ahead = closed_form_state(label, A4, x + h)
            behind = closed_form_state(label, A4, x - h)
            dw = [(ahead[k] - behind[k]) / (2 * h) for k in range(ns)]
            u = mpmath.sinh(x) ** 2
            m = operator.mp_matrix(u)
            half_sinh = mpmath.sinh(2 * x) / 2
            worst = mpmath.mpf(0)
            for i in range(ns):
                terms = [-half_sinh * dw[i]] + [m[i, j] * w[j] for j in range(ns)]
                scale = mpmath.fsum(abs(t) for t in terms)
                if scale:
                    worst = max(worst, abs(mpmath.fsum(terms)) / scale)
            residuals.append(float(worst))
    return np.array(residuals)


def _relative_rows(matrix: np.ndarray, w: np.ndarray, extra: Optional[np.ndarray] = None) -> float:
    terms = matrix * w[np.newaxis, :]
    value = terms.sum(axis=1)
    scale = np.abs(terms).sum(axis=1)
    if extra is not None:
        value = value + extra
        scale = scale + np.abs(extra)
    ratios = np.divide(np.abs(value), scale, out=np.zeros_like(value), where=scale > 0)
    return float(ratios.max()) if ratios.size else 0.0


# ----------------------------------------------------------------------------
# Numerical integration
# ----------------------------------------------------------------------------


def _validate_integration(label: BlockLabel, r_max: float, samples: int, A4: float) -> None:
    _require_full(label)
    if r_max < IntegratorConfig.MIN_RMAX:
        raise ConfigurationError(
            ErrorMessages.INVALID_RADIUS.format(minimum=IntegratorConfig.MIN_RMAX, value=r_max)
        )
    if samples < IntegratorConfig.MIN_SAMPLES:
        raise ConfigurationError(
            ErrorMessages.INVALID_SAMPLES.format(
                minimum=IntegratorConfig.MIN_SAMPLES, value=samples
            )
        )
    if A4 == 0:
        raise ConfigurationError(ErrorMessages.ZERO_AMPLITUDE)


def _derivative(evaluate: Callable[[float], np.ndarray], r: float, lo: float, hi: float) -> np.ndarray:
    h = IntegratorConfig.DERIVATIVE_STEP
    if r - h < lo:
        return (-3 * evaluate(r) + 4 * evaluate(r + h) - evaluate(r + 2 * h)) / (2 * h)
    if r + h > hi:
        return (3 * evaluate(r) - 4 * evaluate(r - h) + evaluate(r - 2 * h)) / (2 * h)
    return (evaluate(r + h) - evaluate(r - h)) / (2 * h)


def integrate(
    label: BlockLabel,
    r_max: float = IntegratorConfig.DEFAULT_RMAX,
    samples: int = IntegratorConfig.DEFAULT_SAMPLES,
    A4: float = 1.0,
    rtol: float = IntegratorConfig.RTOL,
    atol: float = IntegratorConfig.ATOL,
    perturbation: float = 0.0,
    blowup_threshold: float = IntegratorConfig.BLOWUP_THRESHOLD,
) -> RadialProfile:
    """
    Integrate the sigma rows of P w = 0 from r0 = 1/2 with DOP853.

    Components are rescaled by exp((6 - |k|/2) r) so the integrator sees O(1)
    quantities; the tau-row constraint is monitored at every grid point.
    """
    _validate_integration(label, r_max, samples, A4)
    operator = assemble_radial(label)
    ns = operator.sigma_count
    m_const, m_u, m_sqrt = operator.numeric()
    ss = (slice(0, ns), slice(0, ns))
    ts = (slice(ns, None), slice(0, ns))
    rates = np.array(IntegratorConfig.DECAY_RATES, dtype=float)
    spread = np.subtract.outer(rates, rates)

    def zeroth(r: float) -> np.ndarray:
        u = np.sinh(r) ** 2
        return m_const + u * m_u + np.sqrt(1 + u) * m_sqrt

    def rhs(r: float, b: np.ndarray) -> np.ndarray:
        m = zeroth(r)[ss]
        return rates * b + (2.0 / np.sinh(2 * r)) * (m * np.exp(spread * r)) @ b

    r0 = IntegratorConfig.INITIAL_RADIUS
    w0 = np.array([float(x) for x in closed_form_state(label, A4, r0)])
    if perturbation:
        w0[-1] *= 1 + perturbation
    grid = np.linspace(r0, r_max, samples)
    result = solve_ivp(
        rhs,
        (r0, r_max),
        w0 * np.exp(rates * r0),
        method=IntegratorConfig.METHOD,
        t_eval=grid,
        rtol=rtol,
        atol=atol,
        dense_output=True,
    )
    if result.status == -1:
        raise StepSizeUnderflowError(
            ErrorMessages.STEP_UNDERFLOW.format(K=label.K, L=label.L, details=result.message)
        )
    logger.debug("block %s integrated to r = %g with %d evaluations", label, r_max, result.nfev)

    def evaluate(r: float) -> np.ndarray:
        return result.sol(r) * np.exp(-rates * r)

    components = (result.y * np.exp(-np.outer(rates, grid))).T
    dirac = np.empty(samples)
    constraint = np.empty(samples)
    for k, r in enumerate(grid):
        w = components[k]
        m = zeroth(r)
        constraint[k] = _relative_rows(m[ts], w)
        if constraint[k] > blowup_threshold:
            raise ResidualBlowupError(
                ErrorMessages.RESIDUAL_BLOWUP.format(
                    residual=constraint[k], threshold=blowup_threshold, r=r, K=label.K, L=label.L
                ),
                r=float(r),
            )
        dw = _derivative(evaluate, r, r0, r_max)
        dirac[k] = _relative_rows(m[ss], w, extra=-np.sinh(2 * r) / 2 * dw)

    return RadialProfile(
        label=label,
        A4=A4,
        r=grid,
        components=components,
        dirac_residual=dirac,
        constraint_residual=constraint,
        c_inf=special_fn.c_infinity(label),
        nfev=int(result.nfev),
    )


def boundary_spinor(label: BlockLabel, A4: float = 1.0) -> special_fn.BoundaryValue:
    """
    Boundary value with both weight-4 and weight-(-4) coefficients.

    The sigma_4 and sigma_-4 directions are checked to lie in the top
    eigenspace of H (x) H on S1 (x) S3.
    """
    value = special_fn.boundary_value(label, A4)
    spectrum = invariants.sigma1_pairing_spectrum()
    basis = invariants.invariant_basis(label)
    lifted = rep_core.kron(spectrum.matrix, rep_core.identity_matrix(label.L + 1))
    for vector in (basis.sigma[0], basis.sigma[-1]):
        if not (lifted * vector - spectrum.max_eigenvalue * vector).is_zero_matrix:
            raise RepresentationError(
                ErrorMessages.BASIS_NOT_INVARIANT.format(name="boundary", K=label.K, L=label.L)
            )
    r = BoundaryConfig.PROBE_RADIUS
    with special_fn.working_precision():
        state = closed_form_state(label, A4, r)
        minus = mpmath.sinh(special_fn.to_mpf(r)) ** 4 * state[-1]
    return replace(value, s_inf_minus=float(minus))


# ----------------------------------------------------------------------------
# Indicial data
# ----------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _pairing_rows(L: int) -> Tuple[Tuple[Tuple[int, int], ...], Tuple[Tuple[int, int], ...]]:
    module = rep_core.tensor(rep_core.make_irrep(3), rep_core.make_irrep(L))
    spectrum = rep_core.pairing_spectrum(rep_core.make_irrep(1), module)
    up = tuple(
        (e.target_weight, int(e.eigenvalue))
        for e in spectrum
        if e.target_weight == e.source_weight + 1
    )
    down = tuple(
        (e.target_weight, int(e.eigenvalue))
        for e in spectrum
        if e.target_weight == e.source_weight - 1
    )
    return up, down


def indicial_data(label: BlockLabel) -> IndicialData:
    """
    Exponents -3 + lambda over the pairing eigenvalues of S1 (x) S3 (x) S_L.

    The first row carries S_{L+4} .. S_{L-2}, the second S_{L+2} .. S_{L-4};
    the first entry is the rejected exponent -L-6 and the last the regular
    exponent L-4. The decay rate at infinity is one more than the top
    eigenvalue of H (x) H on S1 (x) S3.

    Only L enters; K labels the block the table is reported for. Below L = 4
    the second row loses S_{L-4} and there is no regular exponent.
    """
    if label.L < AlgebraConfig.MIN_FULL_L:
        raise InadmissibleBlockError(
            ErrorMessages.INDICIAL_LEVEL.format(minimum=AlgebraConfig.MIN_FULL_L, L=label.L)
        )
    up, down = _pairing_rows(label.L)
    exponents = tuple(-3 + lam for _, lam in up) + tuple(-3 + lam for _, lam in down)
    decay = invariants.sigma1_pairing_spectrum().max_eigenvalue + 1
    return IndicialData(
        label=label,
        lambda_rows=(tuple(lam for _, lam in up), tuple(lam for _, lam in down)),
        target_rows=(tuple(nu for nu, _ in up), tuple(nu for nu, _ in down)),
        origin_exponents=exponents,
        infinity_decay=decay,
        component_decay_rates=tuple(6 - abs(k) // 2 for k in (4, 2, 0, -2, -4)),
    )


def critical_weights(lam: float) -> Tuple[sympy.Expr, sympy.Expr]:
    """delta_pm = 2 -+ sqrt(4 + lambda); exact for integer or rational lambda."""
    value = Rational(lam) if isinstance(lam, (int, Rational)) else sympy.Float(lam)
    if value < -4:
        raise IndicialDomainError(ErrorMessages.LAMBDA_TOO_SMALL.format(value=lam))
    root = sympy.sqrt(4 + value)
    return 2 - root, 2 + root


@lru_cache(maxsize=None)
def dirac_sq_order0_spectrum() -> Order0Spectrum:
    """
    -sum rho_0(Y_i)^2 on S+ (x) S3 with Y_1 = sigma_1^-/2 - 3 sigma_1^+/2,
    Y_2 = sigma_2^-, Y_3 = sigma_3^-.

    In the lowering basis this is (H3/2 - 3H+/2)^2 + 2(XY + YX) on S3, a
    diagonal matrix. Its minimum plus scal/4 is the smallest order-0
    eigenvalue of D^2.
    """
    s3, sp = rep_core.make_irrep(3), rep_core.make_irrep(1)
    i3, ip = rep_core.identity_matrix(4), rep_core.identity_matrix(2)
    y1 = rep_core.kron(s3.H, ip) / 2 - Rational(3, 2) * rep_core.kron(i3, sp.H)
    rough = y1 * y1 + rep_core.kron(2 * (s3.X * s3.Y + s3.Y * s3.X), ip)
    matrix = ImmutableMatrix(rough)
    if not matrix.is_diagonal():
        raise RepresentationError(ErrorMessages.CASIMIR_NOT_SCALAR.format(dim=matrix.rows))
    weights = tuple(
        (int(s3.H[i // 2, i // 2]), int(sp.H[i % 2, i % 2])) for i in range(matrix.rows)
    )
    diagonal = [Rational(matrix[i, i]) for i in range(matrix.rows)]
    smallest = min(diagonal)
    return Order0Spectrum(
        matrix=matrix,
        weights=weights,
        min_eigenvalue=smallest,
        minimizers=tuple(w for w, value in zip(weights, diagonal) if value == smallest),
        lambda_min=smallest + CurvatureConstants.SCAL_SHIFT,
    )
