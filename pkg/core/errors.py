# core/errors.py

"""
Exception hierarchy for Stabilizer.

Operations that can legitimately find nothing (a lift, a homotopy, a symmetry
certificate) return ``None``. Exceptions are for misuse and for objects that
fail their own validation.
"""
from typing import Any, Dict, Optional


class StabilizerError(Exception):
    """Base class for every error raised by the engine."""


class DimensionMismatchError(StabilizerError):
    """Matrix or complex shapes do not fit together."""


class PrimeMismatchError(StabilizerError):
    """Objects over different prime fields were combined."""


class ValidationError(StabilizerError):
    """An object failed an invariant check during construction."""

    def __init__(self, message: str, degree: Optional[int] = None, level: Optional[int] = None):
        self.degree = degree
        self.level = level
        where = []
        if level is not None:
            where.append(f"level {level}")
        if degree is not None:
            where.append(f"degree {degree}")
        if where:
            message = f"{message} (at {', '.join(where)})"
        super().__init__(message)


class NotALineError(StabilizerError):
    """The operation needs K to be one-dimensional."""


class UnstableColimitError(StabilizerError):
    """A sequential colimit changed between the chosen stage and the next one."""

    def __init__(self, message: str, stage: int, details: Optional[Dict[str, Any]] = None):
        self.stage = stage
        self.details = details or {}
        super().__init__(f"{message} (stage {stage})")


class NaturalityError(StabilizerError):
    """A supplied transformation is not natural on the probe set."""


class CodecError(StabilizerError):
    """JSON input does not describe a valid object."""
