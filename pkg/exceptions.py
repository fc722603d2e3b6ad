"""Exception hierarchy shared by every hypspinor module."""

from typing import Optional


class HypSpinorError(Exception):
    """Base exception for hypspinor errors"""
    pass


class RepresentationError(HypSpinorError):
    """Raised when sl2 relations or Casimir scalarity fail"""
    pass


class PairingMismatchError(RepresentationError):
    """Raised when the two realizations of the pairing operator disagree"""
    pass


class BlockError(HypSpinorError):
    """Base exception for Fourier block errors"""
    pass


class InadmissibleBlockError(BlockError):
    """Raised when an operation needs |K| <= L-4 with matching parity"""
    pass


class EmptyBlockError(BlockError):
    """Raised when a block has no invariant vectors"""
    pass


class NoFunctionBlockError(BlockError):
    """Raised when a block has no function (C0) component"""
    pass


class ODEReductionError(HypSpinorError):
    """Raised when the symbolic elimination disagrees with the expected ODE"""
    pass


class IntegrationError(HypSpinorError):
    """Base exception for radial integration errors"""
    pass


class StepSizeUnderflowError(IntegrationError):
    """Raised when the adaptive integrator cannot make progress"""
    pass


class ResidualBlowupError(IntegrationError):
    """Raised when the constraint residual leaves its tolerance"""

    def __init__(self, message: str, r: Optional[float] = None):
        super().__init__(message)
        self.r = r


class HypergeometricError(HypSpinorError):
    """Base exception for hypergeometric evaluation errors"""
    pass


class HypergeometricDomainError(HypergeometricError):
    """Raised when parameters or argument are outside the supported domain"""
    pass


class HypergeometricConvergenceError(HypergeometricError):
    """Raised when a series exceeds its term cap"""
    pass


class AsymptoticRegimeError(HypergeometricError):
    """Raised when the leading asymptotic term does not apply"""
    pass


class SpectrumError(HypSpinorError):
    """Raised for malformed or unsupported deformation spectra"""
    pass


class ConfigurationError(HypSpinorError):
    """Raised for invalid run configuration"""
    pass


class IndicialDomainError(HypSpinorError):
    """Raised when critical weights are requested below lambda = -4"""
    pass


class AuditMismatchError(HypSpinorError):
    """Raised when the transversality dimension ledger does not balance"""
    pass
