"""Exception hierarchy. Every error carries a machine-readable ``code``."""
from __future__ import annotations

from typing import Any


class DispheresError(ValueError):
    code = "ERROR"

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, **self.details}


class MalformedInputError(DispheresError):
    code = "MALFORMED"


class DimensionMismatchError(DispheresError):
    code = "DIMENSION_MISMATCH"


class ParameterRangeError(DispheresError):
    """A path parameter or homotopy time outside [0, 1]."""

    code = "OUT_OF_RANGE"


class NotMonotoneError(DispheresError):
    code = "NOT_MONOTONE"


class NotInGammaError(DispheresError):
    """Base for pairs that are not joined by any dipath on the sphere."""

    code = "NOT_IN_GAMMA"


class NotOnBoundaryError(NotInGammaError):
    code = "NOT_ON_BOUNDARY"


class NotOrderedError(NotInGammaError):
    code = "NOT_ORDERED"


class NotReachableError(NotInGammaError):
    code = "NOT_REACHABLE"


class ParameterError(DispheresError):
    code = "BAD_PARAMETER"


class GuardrailExceeded(DispheresError):
    code = "GUARDRAIL"


class VertexLookupError(DispheresError, LookupError):
    code = "NOT_A_VERTEX"
