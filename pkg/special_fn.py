"""
Gauss hypergeometric evaluation and the closed-form radial solution.

The regular harmonic spinor on a block (K, L) with |K| <= L-4 has leading
component

    a4(r) = A4 sinh(r)^(L-4) cosh(r)^(K-2) F(a, b; c; -sinh(r)^2),
    a = (K+L)/2 - 1,  b = a + 2,  c = L + 2,

and decays like c_inf A4 / sinh(r)^4 with c_inf = C(L+2, (K+L)/2) / (L+2).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import mpmath
import scipy.special
import sympy
from sympy import Rational

from config.error_messages import ErrorMessages
from config.solver_config import BoundaryConfig, SeriesConfig
from exceptions import (
    AsymptoticRegimeError,
    HypergeometricConvergenceError,
    HypergeometricDomainError,
    InadmissibleBlockError,
)
from invariants import BlockLabel

logger = logging.getLogger(__name__)

Real = Union[int, float, Rational, mpmath.mpf]


def to_mpf(x: Real) -> mpmath.mpf:
    """Convert an exact or float value to mpf without passing through a float."""
    if isinstance(x, sympy.Rational):
        return mpmath.mpf(int(x.p)) / int(x.q)
    return mpmath.mpf(x)


def working_precision():
    """Raise mpmath to the working precision, never below what the caller set."""
    return mpmath.workdps(max(mpmath.mp.dps, SeriesConfig.WORKING_DPS))


@dataclass(frozen=True)
class HypergeomParams:
    """Parameters (a, b; c) of 2F1, exact rationals."""

    a: Rational
    b: Rational
    c: Rational

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Rational(getattr(self, name)))
        if self.c.is_integer and self.c <= 0:
            raise HypergeometricDomainError(ErrorMessages.HYPERGEOMETRIC_POLE.format(c=self.c))

    @classmethod
    def for_block(cls, label: BlockLabel) -> "HypergeomParams":
        a = Rational(label.K + label.L, 2) - 1
        return cls(a=a, b=a + 2, c=Rational(label.L + 2))

    def shifted(self) -> "HypergeomParams":
        """Parameters of the derivative, F' = (ab/c) F(a+1, b+1; c+1)."""
        return HypergeomParams(a=self.a + 1, b=self.b + 1, c=self.c + 1)

    def mp(self) -> Tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
        return to_mpf(self.a), to_mpf(self.b), to_mpf(self.c)


@dataclass(frozen=True)
class AsymptoticTerm:
    """Leading behaviour F(a,b;c;-x) ~ coefficient * x^(-a) as x -> +inf."""

    coefficient: Union[Rational, float]
    exponent: Rational
    value: float


def _series(a: mpmath.mpf, b: mpmath.mpf, c: mpmath.mpf, z: mpmath.mpf) -> mpmath.mpf:
    term = mpmath.mpf(1)
    total = mpmath.mpf(1)
    for n in range(SeriesConfig.MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if term == 0 or abs(term) <= mpmath.eps * abs(total):
            return total
    raise HypergeometricConvergenceError(
        ErrorMessages.HYPERGEOMETRIC_CONVERGENCE.format(
            a=a, b=b, c=c, z=z, terms=SeriesConfig.MAX_TERMS
        )
    )


def hyp2f1_mp(p: HypergeomParams, z: Real) -> mpmath.mpf:
    """
    2F1(a, b; c; z) for real z < 1 at working precision.

    Arguments z <= -1/2 go through the Pfaff transformation
    F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1)). When the mapped argument
    still exceeds the series radius the value comes from mpmath.hyp2f1.
    """
    with working_precision():
        z = to_mpf(z)
        if z >= 1:
            raise HypergeometricDomainError(ErrorMessages.HYPERGEOMETRIC_DOMAIN.format(z=z))
        if z == 0:
            return mpmath.mpf(1)
        a, b, c = p.mp()
        if z <= SeriesConfig.PFAFF_THRESHOLD:
            w = z / (z - 1)
            if w > SeriesConfig.SERIES_RADIUS:
                return mpmath.hyp2f1(a, b, c, z)
            return (1 - z) ** (-a) * _series(a, c - b, c, w)
        if abs(z) > SeriesConfig.SERIES_RADIUS:
            return mpmath.hyp2f1(a, b, c, z)
        return _series(a, b, c, z)


def gauss_2f1(p: HypergeomParams, z: float) -> float:
    """2F1(a, b; c; z) as a float, relative error well below 1e-12 on block parameters."""
    return float(hyp2f1_mp(p, z))


def series_2f1(p: HypergeomParams, z: float) -> float:
    """Direct power series, no transformation. Needs |z| < 1."""
    if abs(z) >= 1:
        raise HypergeometricDomainError(ErrorMessages.HYPERGEOMETRIC_DOMAIN.format(z=z))
    with working_precision():
        a, b, c = p.mp()
        return float(_series(a, b, c, to_mpf(z)))


def gamma_ratio(p: HypergeomParams) -> Union[Rational, float]:
    """Gamma(c) Gamma(b-a) / (Gamma(b) Gamma(c-a)), exact on integer parameters."""
    args = (p.c, p.b - p.a, p.b, p.c - p.a)
    if all(x.is_integer for x in args):
        c, ba, b, ca = (int(x) for x in args)
        if ca <= 0 or b <= 0:
            return Rational(0)
        return Rational(sympy.factorial(c - 1) * sympy.factorial(ba - 1)) / (
            sympy.factorial(b - 1) * sympy.factorial(ca - 1)
        )
    c, ba, b, ca = (float(x) for x in args)
    return float(
        scipy.special.gamma(c) * scipy.special.gamma(ba)
        / (scipy.special.gamma(b) * scipy.special.gamma(ca))
    )


def asympt_2f1(p: HypergeomParams, z: float) -> AsymptoticTerm:
    """Leading term of F(a, b; c; z) for large negative z, valid when a < b."""
    if p.a >= p.b:
        raise AsymptoticRegimeError(ErrorMessages.ASYMPTOTIC_REGIME.format(a=p.a, b=p.b))
    coefficient = gamma_ratio(p)
    value = float(to_mpf(coefficient) * mpmath.power(-to_mpf(z), -to_mpf(p.a)))
    return AsymptoticTerm(coefficient=coefficient, exponent=-p.a, value=value)


@dataclass(frozen=True)
class ClosedFormSolution:
    """Evaluator of the regular solution a4(r) on an admissible block."""

    label: BlockLabel
    A4: float
    params: HypergeomParams

    def a4_mp(self, r: Real) -> mpmath.mpf:
        K, L = self.label.K, self.label.L
        with working_precision():
            r = to_mpf(r)
            sh, ch = mpmath.sinh(r), mpmath.cosh(r)
            return to_mpf(self.A4) * sh ** (L - 4) * ch ** (K - 2) * hyp2f1_mp(self.params, -sh**2)

    def a4(self, r: Real) -> float:
        return float(self.a4_mp(r))

    def da4_du_mp(self, r: Real) -> mpmath.mpf:
        """Derivative of a4 with respect to u = sinh(r)^2, for r > 0."""
        K, L = self.label.K, self.label.L
        p = self.params
        with working_precision():
            r = to_mpf(r)
            u = mpmath.sinh(r) ** 2
            prefactor = to_mpf(self.A4) * u ** (mpmath.mpf(L - 4) / 2) * (1 + u) ** (
                mpmath.mpf(K - 2) / 2
            )
            a, b, c = p.mp()
            value = prefactor * hyp2f1_mp(p, -u)
            slope = -(a * b / c) * prefactor * hyp2f1_mp(p.shifted(), -u)
            return value * ((L - 4) / (2 * u) + (K - 2) / (2 * (1 + u))) + slope


@dataclass(frozen=True)
class BoundaryValue:
    """Asymptotic coefficient and boundary spinor of the regular solution."""

    label: BlockLabel
    A4: float
    c_inf: Rational
    s_inf_plus: float
    numeric_c_inf: float
    s_inf_minus: Optional[float] = None

    @property
    def relative_error(self) -> float:
        exact = float(self.c_inf)
        return abs(self.numeric_c_inf - exact) / abs(exact)

    @property
    def agrees(self) -> bool:
        return self.relative_error <= BoundaryConfig.RELATIVE_TOLERANCE


def _require_admissible(label: BlockLabel) -> None:
    if not label.is_full:
        raise InadmissibleBlockError(
            ErrorMessages.INADMISSIBLE_BLOCK.format(K=label.K, L=label.L)
        )


def closed_form(label: BlockLabel, A4: float) -> ClosedFormSolution:
    _require_admissible(label)
    return ClosedFormSolution(label=label, A4=A4, params=HypergeomParams.for_block(label))


def c_infinity(label: BlockLabel) -> Rational:
    """C(L+2, (K+L)/2) / (L+2), exact."""
    _require_admissible(label)
    return Rational(sympy.binomial(label.L + 2, (label.K + label.L) // 2), label.L + 2)


def boundary_value(label: BlockLabel, A4: float) -> BoundaryValue:
    """Exact c_inf plus the numeric limit sinh(r)^4 a4(r) / A4 at the probe radius."""
    c_inf = c_infinity(label)
    solution = closed_form(label, A4)
    r = BoundaryConfig.PROBE_RADIUS
    with working_precision():
        numeric = mpmath.sinh(to_mpf(r)) ** 4 * solution.a4_mp(r) / to_mpf(A4)
    logger.debug("block %s: c_inf = %s, numeric %s", label, c_inf, mpmath.nstr(numeric, 12))
    return BoundaryValue(
        label=label,
        A4=A4,
        c_inf=c_inf,
        s_inf_plus=float(c_inf) * A4,
        numeric_c_inf=float(numeric),
    )


def injectivity_witness(label: BlockLabel) -> Optional[bool]:
    """True iff c_inf != 0; None (vacuous) when the block carries no harmonic spinor."""
    if not label.is_full:
        return None
    return c_infinity(label) != 0
