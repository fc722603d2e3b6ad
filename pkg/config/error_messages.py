"""
Standardized error messages for hypspinor.

This module contains all error message templates to ensure consistent
reporting across the library and the command line.
"""


class ErrorMessages:
    """Standardized error message templates."""

    # Representation errors
    SL2_RELATION_FAILED = "sl2 relation {relation} fails on a module of dimension {dim}"
    CASIMIR_NOT_SCALAR = "Casimir is not scalar on a module of dimension {dim}"
    PAIRING_MISMATCH = (
        "Pairing operator realizations disagree on S{l1} (x) module of dimension {dim}"
    )
    PAIRING_NOT_EIGEN = (
        "Highest-weight vector of S{target} is not an eigenvector of the pairing operator"
    )
    NEGATIVE_WEIGHT = "Highest weight must be a natural number, got {value}"
    PAIRING_NEEDS_S1 = "Pairing spectrum is defined for S1 (x) module, got S{l1}"

    # Block errors
    INADMISSIBLE_BLOCK = (
        "Block (K={K}, L={L}) is not admissible: the operation needs |K| <= L-4 "
        "and K = L mod 2"
    )
    EMPTY_BLOCK = "Block (K={K}, L={L}) has no invariant vectors"
    INDICIAL_LEVEL = "Indicial table needs L >= {minimum} so that S_(L-4) occurs, got L={L}"
    NO_FUNCTION_BLOCK = (
        "Block (K={K}, L={L}) carries no function component (needs |K| <= L and parity)"
    )
    UNKNOWN_TARGET = "Unknown invariant target {target!r}; expected one of {choices}"
    BASIS_NOT_INVARIANT = "Operator {name} leaves the invariant span on block (K={K}, L={L})"

    # Radial errors
    ODE_MISMATCH = (
        "Reduction of block (K={K}, L={L}) disagrees with the expected ODE in the "
        "{coefficient} coefficient: {difference}"
    )
    ODE_UNUSED_TERM = (
        "Row {row} of block (K={K}, L={L}) has an unexpected coupling to {column}"
    )
    STEP_UNDERFLOW = "Integrator step size underflow on block (K={K}, L={L}): {details}"
    RESIDUAL_BLOWUP = (
        "Constraint residual {residual:.3e} exceeds {threshold:.1e} at r = {r:.6g} "
        "on block (K={K}, L={L})"
    )
    INVALID_RADIUS = "r_max must be at least {minimum}, got {value}"
    INVALID_SAMPLES = "samples must be at least {minimum}, got {value}"
    ZERO_AMPLITUDE = "Amplitude A4 must be nonzero"
    LAMBDA_TOO_SMALL = "Critical weights need lambda >= -4, got {value}"

    # Hypergeometric errors
    HYPERGEOMETRIC_POLE = "c = {c} is a nonpositive integer"
    HYPERGEOMETRIC_DOMAIN = "Argument z = {z} is outside the supported domain z < 1"
    HYPERGEOMETRIC_CONVERGENCE = (
        "Series for 2F1({a}, {b}; {c}; {z}) did not converge within {terms} terms"
    )
    ASYMPTOTIC_REGIME = "Leading asymptotic term needs a < b, got a = {a}, b = {b}"

    # Spectrum errors
    SPECTRUM_UNSUPPORTED = (
        "Coefficient at (K={K}, L={L}) lies outside the CR deformation blocks "
        "(-L-4 <= K <= L-4 with parity)"
    )
    SPECTRUM_REALITY = (
        "Real spectrum stores K <= 0 representatives only, got (K={K}, L={L})"
    )
    SPECTRUM_RECORD = "Malformed spectrum record {record!r}: {details}"
    UNKNOWN_DOMAIN = "Unknown kernel domain {domain!r}; expected one of {choices}"
    AUDIT_MISMATCH = "Transversality audit found {count} mismatch(es); first: {first}"

    # Configuration errors
    INVALID_TOLERANCE = "Tolerance must be positive, got {value}"
    INVALID_LMAX = "L_max must be at least {minimum}, got {value}"
    INVALID_THREADS = "{var} must be a positive integer, got {value!r}"
    INVALID_FORMAT = "Unknown output format {value!r}; expected one of {choices}"
    MISSING_BLOCK = "Command {command!r} needs both --K and --L"
    MISSING_SPECTRUM = "Command {command!r} needs --spectrum PATH"


class InfoMessages:
    """Standardized informational message templates."""

    CHECK_PASSED = "{name}: pass (error {error})"
    CHECK_FAILED = "{name}: FAIL (error {error}) {details}"
    SUITE_SUMMARY = "{passed}/{total} checks passed in suite {suite}"
    PROFILE_WRITTEN = "Radial profile for block (K={K}, L={L}) written to {path}"
    TABLE_WRITTEN = "Table written to {path}"
    SWEEP_STARTED = "Sweeping {count} blocks with {threads} thread(s)"


class TroubleshootingMessages:
    """Hints printed next to command-line failures."""

    INADMISSIBLE_BLOCK_HINT = (
        "Harmonic spinors exist only on blocks with |K| <= L-4 and K = L mod 2.\n"
        "Run 'hypspinor blocks --Lmax N' to list the admissible labels."
    )
    INTEGRATION_HINT = (
        "Try a smaller --rmax or a looser --tol; rerun with -v for solver statistics."
    )
    CONFIGURATION_HINT = "Check the command-line flags and the {var} environment variable."
    SPECTRUM_HINT = (
        "A spectrum file is a JSON list of records {{\"K\": int, \"L\": int, "
        "\"re\": float, \"im\": float}}."
    )
