"""Exceptions raised by the qf-verify library modules.

Library code raises these; qf_verify.py maps them to exit codes and the
HTTP service maps them to 400 responses.
"""

from typing import Optional


class QfError(Exception):
    """Base class for all qf-verify errors."""


# matfield
class NonHermitian(QfError, ValueError):
    """Matrix is not hermitian within tolerance."""


class UnsupportedField(QfError, ValueError):
    """Operation is not defined for this field (usually quaternion)."""


class NotIsometry(QfError, ValueError):
    """Columns are not orthonormal."""


class ConvergenceError(QfError, RuntimeError):
    """Iterative solver exceeded its iteration budget."""


class DimensionMismatch(QfError, ValueError):
    """Operands have incompatible dimensions."""


# quantum_core
class InvalidProposition(QfError, ValueError):
    """Matrix is not an orthogonal projector."""


class InvalidState(QfError, ValueError):
    """Matrix is not a valid (sub)normalized density matrix."""


class ZeroPosterior(QfError, ValueError):
    """Conditioning on a proposition with zero probability."""


class NotMostAccurate(QfError, ValueError):
    """Proposition is not rank one."""


class NotPure(QfError, ValueError):
    """State is mixed."""


class NotJointlyDecidable(QfError, ValueError):
    """Propositions do not commute."""


class HypothesisViolated(QfError, ValueError):
    """prob(x|e0) is not one."""


class SamplingCapExceeded(QfError, RuntimeError):
    """Rejection sampler ran out of attempts."""


# zeno
class IdenticalEndpoints(QfError, ValueError):
    """Steering endpoints coincide."""


# mbqc
class NotUnitary(QfError, ValueError):
    """Matrix is not unitary within tolerance."""


class UnsupportedGate(QfError, ValueError):
    """Gate kind is not known to the compiler."""


class WireOutOfRange(QfError, ValueError):
    """Gate refers to a wire outside the circuit."""


class InvalidPattern(QfError, ValueError):
    """Pattern violates a structural, causality or standard-form rule."""

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(message if path is None else f"{path}: {message}")
        self.path = path
        self.message = message


class SimulationLimitExceeded(QfError, RuntimeError):
    """State vector would exceed the live-qubit cap."""


class NotTracePreserving(QfError, ValueError):
    """Kraus operators do not satisfy sum K†K = I."""


class TooManyKraus(QfError, ValueError):
    """More Kraus operators than the emulator supports."""


# io
class SchemaError(QfError, ValueError):
    """Input file does not follow the expected schema."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
