"""
Solver configuration constants for hypspinor.

This module contains the numerical defaults used throughout the library so
that tolerances, radii and sweep sizes are tuned in one place instead of
being repeated as magic numbers.
"""

from sympy import Rational


class AlgebraConfig:
    """Constants for the exact representation-theory layer."""

    # Weights of S1 (x) S3 carried by the two isotypic pieces
    S4_WEIGHTS = (4, 2, 0, -2, -4)
    S2_WEIGHTS = (2, 0, -2)

    # U1 weight sets of the invariant targets
    TARGET_WEIGHTS = {
        "S4": (4, 2, 0, -2, -4),
        "S2": (2, 0, -2),
        "C4": (4,),
        "C0": (0,),
    }

    # Smallest L with a full 5+3 invariant basis at K = 0
    MIN_FULL_L = 4


class IntegratorConfig:
    """Constants for the radial first-order system integration."""

    INITIAL_RADIUS = 0.5
    METHOD = "DOP853"
    RTOL = 1e-10
    ATOL = 1e-14

    # Relative residual bound for the tau-row constraint along the flow
    CONSTRAINT_TOLERANCE = 1e-8
    BLOWUP_THRESHOLD = 1e-6

    # Relative bound for the sigma-row Dirac residual, limited by the difference step
    DIRAC_TOLERANCE = 1e-6

    # Step for the central difference used by the Dirac residual
    DERIVATIVE_STEP = 1e-5

    MIN_RMAX = 1.0
    MIN_SAMPLES = 2
    DEFAULT_RMAX = 12.0
    DEFAULT_SAMPLES = 256

    # Decay rates e^{-rate r} of a4, a2, a0, a-2, a-4 at infinity
    DECAY_RATES = (4, 5, 6, 5, 4)


class SeriesConfig:
    """Constants for hypergeometric evaluation."""

    # Working precision (decimal digits) for mpmath evaluations
    WORKING_DPS = 40

    # Hard cap on the number of series terms; the series stops at working epsilon
    MAX_TERMS = 100_000

    # Arguments at or below this are mapped by the Pfaff transformation
    PFAFF_THRESHOLD = -0.5

    # Mapped arguments above this go to mpmath.hyp2f1
    SERIES_RADIUS = 0.9


class BoundaryConfig:
    """Constants for boundary values and residual sweeps."""

    PROBE_RADIUS = 12.0
    RELATIVE_TOLERANCE = 1e-4

    # Closed-form residual sweep
    RESIDUAL_R_MIN = 0.1
    RESIDUAL_R_MAX = 5.0
    RESIDUAL_SAMPLES = 512
    RESIDUAL_TOLERANCE = 1e-8

    # Central-difference step at working precision; truncation error ~ step^2
    RESIDUAL_STEP = 1e-12


class SweepConfig:
    """Constants for block sweeps and verification suites."""

    DEFAULT_LMAX = 12
    MIN_LMAX = 4
    CLAIM_LMAX = 16
    VPSSS_LEVELS = (8, 12, 16)
    PAIRING_LMAX = 12
    CASIMIR_LMAX = 20
    KERNEL_KMAX = 24
    KERNEL_LMAX = 20
    PFAFF_CHECK_LMAX = 16

    # Blocks used by the closed-form and integration checks
    REFERENCE_BLOCKS = ((0, 4), (0, 8), (2, 6), (4, 8))

    THREADS_ENV_VAR = "HYPSPINOR_THREADS"
    DEFAULT_THREADS = 1


class OutputConfig:
    """Constants for table emission."""

    FORMATS = ("json", "csv")
    DEFAULT_FORMAT = "json"
    SUITES = ("all", "algebra", "ode", "asymptotics", "moduli")

    PROFILE_COLUMNS = (
        "r", "a4", "a2", "a0", "a_neg2", "a_neg4",
        "dirac_residual", "constraint_residual",
    )


class CurvatureConstants:
    """Normalization of the complex hyperbolic metric."""

    # Ric = -6 g on CH2, hence scal = -24
    EINSTEIN_CONSTANT = -6
    REAL_DIMENSION = 4
    SCALAR_CURVATURE = REAL_DIMENSION * EINSTEIN_CONSTANT
    SCAL_SHIFT = Rational(SCALAR_CURVATURE, 4)

