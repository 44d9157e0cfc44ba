from typing import Any, Optional

class DomainException(Exception):
    """Base exception for the domain"""
    def __init__(self, message: str, code: str = "DOMAIN_ERROR", details: Optional[Any] = None):
        self.message = message
        self.code = code
        self.details = details
        super().__init__(self.message)

class NotFoundException(DomainException):
    """Registered name not found"""
    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message, "NOT_FOUND", details)

class ValidationException(DomainException):
    """Validation error"""
    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message, "VALIDATION_ERROR", details)

class InsufficientDataException(DomainException):
    """Not enough data"""
    def __init__(self, message: str, min_required: int, actual: int, code: str = "INSUFFICIENT_DATA"):
        super().__init__(
            message,
            code,
            {"min_required": min_required, "actual": actual}
        )

class EmptySampleException(InsufficientDataException):
    """Fewer than two distinct sample points"""
    def __init__(self, message: str, actual: int):
        super().__init__(message, min_required=2, actual=actual, code="EMPTY_SAMPLE")

class TargetNotNormedException(DomainException):
    """Target space has no vector structure"""
    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message, "TARGET_NOT_NORMED", details)

class LpNumericsException(DomainException):
    """LP solver did not reach the requested tolerance"""
    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message, "LP_NUMERICS", details)

class DegenerateStepException(DomainException):
    """Finite-difference step below the noise floor"""
    def __init__(self, message: str, step: float, floor: float):
        super().__init__(message, "DEGENERATE_STEP", {"step": step, "floor": floor})

class DegreeMismatchException(DomainException):
    """Form degree and chain degree differ"""
    def __init__(self, message: str, expected: int, actual: int):
        super().__init__(message, "DEGREE_MISMATCH", {"expected": expected, "actual": actual})

class DegreeZeroException(DomainException):
    """Boundary of a 0-chain requested"""
    def __init__(self, message: str = "Boundary is not defined on degree-0 chains"):
        super().__init__(message, "DEGREE_ZERO")

class DegreeNotZeroException(DomainException):
    """Augmentation of a chain of positive degree requested"""
    def __init__(self, message: str, degree: int):
        super().__init__(message, "DEGREE_NOT_ZERO", {"degree": degree})

class NotContainedException(DomainException):
    """Point set not contained in an open region"""
    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message, "NOT_CONTAINED", details)

class CoverViolationException(DomainException):
    """Point lies in neither region of a cover"""
    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message, "COVER_VIOLATION", details)

class NotInKernelException(DomainException):
    """Pair of measures does not cancel"""
    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message, "NOT_IN_KERNEL", details)

class NotAComplexException(DomainException):
    """Consecutive boundary matrices do not compose to zero"""
    def __init__(self, message: str, defect: float, tolerance: float):
        super().__init__(message, "NOT_A_COMPLEX", {"defect": defect, "tolerance": tolerance})

class NotACycleException(DomainException):
    """Chain has a nonzero boundary"""
    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message, "NOT_A_CYCLE", details)

class UnknownSuiteException(DomainException):
    """Suite name not registered"""
    def __init__(self, suite: str, known: Optional[Any] = None):
        super().__init__(f"Unknown suite '{suite}'", "UNKNOWN_SUITE", {"known": known})

class SchemaViolationException(DomainException):
    """Scenario parameters rejected by the suite schema"""
    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message, "SCHEMA_VIOLATION", details)
